#pragma once

#include <string_view>

namespace ccnet {

// Reflection/transmission amplitudes of a node, r^2 + t^2 = 1.
class ModelParams {
public:
    static ModelParams from_r(double r);
    static ModelParams from_rt(double r, double t);

    double r() const { return r_; }
    double t() const { return t_; }
    double rt() const { return r_ * t_; }
    bool extreme() const { return r_ == 0.0 || t_ == 0.0; }

    // Throws DomainError naming `who` when rt = 0.
    void require_nondegenerate(std::string_view who) const;

    friend bool operator==(const ModelParams&, const ModelParams&) = default;

private:
    ModelParams(double r, double t) : r_(r), t_(t) {}
    double r_;
    double t_;
};

}  // namespace ccnet
