#include <cstdlib>
#include <stdexcept>
#include <string>

#include "ccnet/kernels.hpp"

namespace ccnet::kernels {

namespace {

constexpr KernelTable kScalar{"scalar", scalar::mix_pairs, scalar::gram_schmidt, scalar::sparse_apply};
#ifdef CCNET_HAVE_AVX2_KERNELS
constexpr KernelTable kAvx2{"avx2", avx2::mix_pairs, avx2::gram_schmidt, avx2::sparse_apply};
#endif

const KernelTable& select() {
    const char* forced = std::getenv("CCNET_KERNELS");
    if (forced != nullptr && std::string(forced) == "scalar") return kScalar;
    if (backend_available(Backend::Avx2)) return table(Backend::Avx2);
    if (forced != nullptr && std::string(forced) == "avx2")
        throw std::runtime_error("CCNET_KERNELS=avx2 requested but AVX2/FMA is unavailable");
    return kScalar;
}

}  // namespace

bool backend_available(Backend backend) {
    if (backend == Backend::Scalar) return true;
#ifdef CCNET_HAVE_AVX2_KERNELS
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

const KernelTable& table(Backend backend) {
    if (!backend_available(backend)) throw std::runtime_error("kernel backend unavailable on this CPU");
#ifdef CCNET_HAVE_AVX2_KERNELS
    if (backend == Backend::Avx2) return kAvx2;
#endif
    return kScalar;
}

const KernelTable& active() {
    static const KernelTable& chosen = select();
    return chosen;
}

}  // namespace ccnet::kernels
