#include "ccnet/sweep.hpp"

#include <cstdlib>
#include <string>

namespace ccnet {

std::size_t default_worker_count() {
    if (const char* env = std::getenv("CCNET_WORKERS")) {
        try {
            const long v = std::stol(env);
            if (v > 0) return static_cast<std::size_t>(v);
        } catch (const std::exception&) {
        }
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

}  // namespace ccnet
