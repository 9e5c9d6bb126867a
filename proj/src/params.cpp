#include "ccnet/params.hpp"

#include <cmath>
#include <string>

#include "ccnet/types.hpp"

namespace ccnet {

ModelParams ModelParams::from_r(double r) {
    if (!(r >= 0.0 && r <= 1.0)) throw ValidationError("r must lie in [0,1], got " + std::to_string(r));
    return ModelParams(r, std::sqrt((1.0 - r) * (1.0 + r)));
}

ModelParams ModelParams::from_rt(double r, double t) {
    if (!(r >= 0.0 && r <= 1.0) || !(t >= 0.0 && t <= 1.0))
        throw ValidationError("r and t must lie in [0,1]");
    if (std::abs(r * r + t * t - 1.0) > 1e-14)
        throw ValidationError("r^2 + t^2 must equal 1 within 1e-14");
    return ModelParams(r, t);
}

void ModelParams::require_nondegenerate(std::string_view who) const {
    if (extreme())
        throw DomainError(std::string(who) + ": requires r*t != 0 (r=" + std::to_string(r_) +
                          ", t=" + std::to_string(t_) + ")");
}

}  // namespace ccnet
