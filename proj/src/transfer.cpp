#include "ccnet/transfer.hpp"

#include <string>

#include "ccnet/lattice.hpp"

namespace ccnet {

namespace {

void require_transfer_domain(cplx z, const ModelParams& params, const char* who) {
    if (z == cplx(0.0)) throw DomainError(std::string(who) + ": z must be nonzero");
    params.require_nondegenerate(who);
}

void require_units(const std::array<cplx, 3>& q, const char* who) {
    for (cplx v : q)
        if (!is_unit(v)) throw ValidationError(std::string(who) + ": phases must have modulus 1");
}

// (1/t)[[1/z, -r], [-r, z]]
Eigen::Matrix2cd eo_core(cplx z, const ModelParams& p) {
    Eigen::Matrix2cd b;
    b << 1.0 / z, -p.r(), -p.r(), z;
    return b / p.t();
}

// (1/r)[[z, -t], [t, -1/z]]
Eigen::Matrix2cd oe_core(cplx z, const ModelParams& p) {
    Eigen::Matrix2cd b;
    b << z, -p.t(), p.t(), -1.0 / z;
    return b / p.r();
}

kernels::PairCoeffs to_coeffs(const Eigen::Matrix2cd& m) { return {m(0, 0), m(0, 1), m(1, 0), m(1, 1)}; }

}  // namespace

TransferBlock t_eo(cplx z, const std::array<cplx, 3>& q, const ModelParams& params) {
    require_transfer_domain(z, params, "t_eo");
    require_units(q, "t_eo");
    const Eigen::Vector2cd left(q[0] * q[1], q[2]);
    const Eigen::Vector2cd right(q[2], std::conj(q[0]) * q[1]);
    return {left.asDiagonal() * eo_core(z, params) * right.asDiagonal(), z, TransferRole::EvenToOdd};
}

TransferBlock t_oe(cplx z, const std::array<cplx, 3>& q, const ModelParams& params) {
    require_transfer_domain(z, params, "t_oe");
    require_units(q, "t_oe");
    const Eigen::Vector2cd left(std::conj(q[2]), q[0] * q[1]);
    const Eigen::Vector2cd right(std::conj(q[0]) * q[1], std::conj(q[2]));
    return {left.asDiagonal() * oe_core(z, params) * right.asDiagonal(), z, TransferRole::OddToEven};
}

Eigen::VectorXd lorentz_signature(int n) {
    Eigen::VectorXd s(n);
    for (int i = 0; i < n; ++i) s(i) = (i % 2 == 0) ? 1.0 : -1.0;
    return s;
}

double u11_defect(const CMatrix& b) {
    const Eigen::VectorXd s = lorentz_signature(static_cast<int>(b.rows()));
    const CMatrix form = b.adjoint() * s.cast<cplx>().asDiagonal() * b;
    return (form - CMatrix(s.cast<cplx>().asDiagonal())).cwiseAbs().maxCoeff();
}

LayerMatrices layer_matrices(cplx z, int M, const ModelParams& params) {
    require_transfer_domain(z, params, "layer_matrices");
    if (M < 1) throw ValidationError("layer_matrices: M must be >= 1");
    const int n = 2 * M;
    LayerMatrices out{CMatrix::Zero(n, n), CMatrix::Zero(n, n)};
    const Eigen::Matrix2cd b1 = eo_core(z, params);
    const Eigen::Matrix2cd b2 = oe_core(z, params);
    for (int k = 0; k < M; ++k) {
        const int a1 = 2 * k, c1 = 2 * k + 1;
        const int a2 = 2 * k + 1, c2 = (2 * k + 2) % n;
        out.m1(a1, a1) += b1(0, 0);
        out.m1(a1, c1) += b1(0, 1);
        out.m1(c1, a1) += b1(1, 0);
        out.m1(c1, c1) += b1(1, 1);
        out.m2(a2, a2) += b2(0, 0);
        out.m2(a2, c2) += b2(0, 1);
        out.m2(c2, a2) += b2(1, 0);
        out.m2(c2, c2) += b2(1, 1);
    }
    return out;
}

LayerPhases::LayerPhases(int M) : M_(M), slots_(4 * static_cast<std::size_t>(M), 1.0) {
    if (M < 1) throw ValidationError("LayerPhases: M must be >= 1");
}

LayerPhases::LayerPhases(int M, std::vector<cplx> slots) : M_(M), slots_(std::move(slots)) {
    if (M < 1) throw ValidationError("LayerPhases: M must be >= 1");
    if (slots_.size() != 4 * static_cast<std::size_t>(M)) throw ValidationError("LayerPhases: need 4M slots");
    for (cplx v : slots_)
        if (!is_unit(v)) throw ValidationError("LayerPhases: phases must have modulus 1");
}

void LayerPhases::set_slot(int i, cplx v) {
    if (!is_unit(v)) throw ValidationError("LayerPhases: phases must have modulus 1");
    slots_.at(i) = v;
}

CVector LayerPhases::right() const {
    CVector v = CVector::Ones(2 * M_);
    for (int k = 0; k < M_; ++k) v(2 * k + 1) = slots_[2 * k + 1];
    return v;
}

CVector LayerPhases::left() const {
    CVector v = CVector::Ones(2 * M_);
    for (int k = 0; k < M_; ++k) v(2 * k) = slots_[2 * k];
    return v;
}

CVector LayerPhases::middle() const {
    CVector v(2 * M_);
    for (int i = 0; i < 2 * M_; ++i) v(i) = slots_[2 * M_ + i];
    return v;
}

namespace {

template <class PhaseAt>
LayerPhases slot_layer(int M, int j, PhaseAt&& q) {
    std::vector<cplx> s(4 * static_cast<std::size_t>(M));
    const int c = 2 * j;
    for (int k = 0; k < M; ++k) {
        s[2 * k] = q(c + 2, 2 * k);
        s[2 * k + 1] = std::conj(q(c, 2 * k + 1));
        s[2 * M + 2 * k] = q(c + 1, 2 * k);
        s[2 * M + 2 * k + 1] = std::conj(q(c + 1, 2 * k + 1));
    }
    return LayerPhases(M, std::move(s));
}

}  // namespace

LayerPhases phase_slotting(const PhaseField& phases, int j) {
    const Window& w = phases.window();
    if (!w.contains_column(2 * j) || !w.contains_column(2 * j + 2))
        throw ValidationError("phase_slotting: columns " + std::to_string(2 * j) + ".." + std::to_string(2 * j + 2) +
                              " are not inside the window");
    return slot_layer(w.M(), j, [&](int c, int k) { return phases.at(c, k); });
}

LayerPhases phase_slotting(const PhaseSource& source, int M, int j) {
    if (M < 1) throw ValidationError("phase_slotting: M must be >= 1");
    const int n = 2 * M;
    return slot_layer(M, j, [&](int c, int k) { return source.at(c, k % n); });
}

LayerPhases rotate_phases(cplx w, const LayerPhases& layer) {
    if (!is_unit(w)) throw ValidationError("rotate_phases: w must have modulus 1");
    std::vector<cplx> s = layer.slots();
    for (std::size_t i = 0; i < s.size(); ++i) s[i] *= (i % 2 == 0) ? std::conj(w) : w;
    return LayerPhases(layer.M(), std::move(s));
}

TransferMatrix cocycle_step(cplx z, const LayerPhases& layer, const ModelParams& params) {
    const LayerMatrices lm = layer_matrices(z, layer.M(), params);
    CMatrix a = lm.m2 * layer.middle().asDiagonal() * lm.m1 * layer.right().asDiagonal();
    a = layer.left().asDiagonal() * a;
    return {a, z};
}

double transfer_norm_bound(const ModelParams& params) {
    params.require_nondegenerate("transfer_norm_bound");
    return (1.0 + params.r()) * (1.0 + params.t()) / params.rt();
}

FusedStep fused_step(cplx z, const LayerPhases& layer, const ModelParams& params) {
    require_transfer_domain(z, params, "fused_step");
    const int M = layer.M();
    const Eigen::Matrix2cd b1 = eo_core(z, params);
    const Eigen::Matrix2cd b2 = oe_core(z, params);
    FusedStep f;
    f.first.reserve(M);
    f.second.reserve(M);
    for (int k = 0; k < M; ++k) {
        const Eigen::Vector2cd l1(layer.slot(2 * M + 2 * k), layer.slot(2 * M + 2 * k + 1));
        const Eigen::Vector2cd r1(1.0, layer.slot(2 * k + 1));
        f.first.push_back(to_coeffs(l1.asDiagonal() * b1 * r1.asDiagonal()));
        const Eigen::Vector2cd l2(1.0, layer.slot((2 * k + 2) % (2 * M)));
        f.second.push_back(to_coeffs(l2.asDiagonal() * b2));
    }
    return f;
}

Propagator propagate(cplx z, const ModelParams& params, const PhaseField& phases, int L) {
    const Window& w = phases.window();
    if (w.L() != L) throw ValidationError("propagate: phase window has L=" + std::to_string(w.L()) + ", expected " +
                                          std::to_string(L));
    require_transfer_domain(z, params, "propagate");
    const int n = w.ring_size();
    CMatrix p = CMatrix::Identity(n, n);
    for (int j = -L; j <= L - 1; ++j) p = cocycle_step(z, phase_slotting(phases, j), params).matrix * p;
    return {{p, z}, w};
}

ReconstructionResidual reconstruct_and_verify(cplx z, const ModelParams& params, const PhaseField& phases,
                                              const CVector& psi0, int N) {
    require_transfer_domain(z, params, "reconstruct_and_verify");
    const Window& w = phases.window();
    const int n = w.ring_size();
    if (psi0.size() != n) throw ValidationError("reconstruct_and_verify: psi0 must have length 2M");
    if (N < 0 || 2 * N > 4 * w.L())
        throw ValidationError("reconstruct_and_verify: window of " + std::to_string(4 * w.L()) +
                              " column steps is shorter than 2N = " + std::to_string(2 * N));
    const NodePhaseField nodes = lift_phases(phases);
    const int c0 = w.first_column();
    const int c_end = c0 + 2 * N;
    std::vector<CVector> columns(2 * N + 1, CVector::Zero(n));
    columns[0] = psi0;
    for (int m = 0; m < N; ++m) {
        const int c = c0 + 2 * m;
        const int j = c / 2;
        const CVector& even = columns[2 * m];
        CVector& odd = columns[2 * m + 1];
        CVector& next = columns[2 * m + 2];
        for (int k = 0; k < w.M(); ++k) {
            const NodePhases& p = nodes.at(j, k);
            const Eigen::Matrix2cd te = t_eo(z, {p[0], p[1], p[2]}, params).matrix;
            const Eigen::Vector2cd out = te * Eigen::Vector2cd(even(2 * k), even(2 * k + 1));
            odd(2 * k) = out(0);
            odd(2 * k + 1) = out(1);
        }
        for (int k = 0; k < w.M(); ++k) {
            const NodePhases& p = nodes.at(j, k);
            const Eigen::Matrix2cd to = t_oe(z, {p[3], p[4], p[5]}, params).matrix;
            const int hi = (2 * k + 2) % n;
            const Eigen::Vector2cd out = to * Eigen::Vector2cd(odd(2 * k + 1), odd(hi));
            next(2 * k + 1) = out(0);
            next(hi) = out(1);
        }
    }

    ReconstructionResidual result;
    CVector psi = CVector::Zero(w.dim());
    for (int m = 0; m <= 2 * N; ++m) {
        psi.segment(static_cast<Eigen::Index>(w.index(c0 + m, 0)), n) = columns[m];
        result.column_norms.push_back(columns[m].norm());
    }
    const double norm = psi.norm();
    const FiniteOperator op = build_cylinder_operator(params, phases, w.L(), w.M());
    const CVector image = op.apply(psi);
    auto built = [&](std::size_t idx) {
        const int c = w.site_at(idx).column;
        return c >= c0 && c <= c_end;
    };
    for (std::size_t row = 0; row < op.dim(); ++row) {
        if (op.structural_count(row) != 2 || !built(row)) continue;
        const auto e = op.row_entries(row);
        if (!built(e[0].col) || !built(e[1].col)) continue;
        if (norm > 0.0)
            result.eigen_residual = std::max(result.eigen_residual, std::abs(image(row) - z * psi(row)) / norm);
    }

    CMatrix phi = CMatrix::Identity(n, n);
    for (int m = 0; m < N; ++m) phi = cocycle_step(z, phase_slotting(phases, c0 / 2 + m), params).matrix * phi;
    const CVector predicted = phi * psi0;
    const double scale = std::max(columns[2 * N].norm(), predicted.norm());
    if (scale > 0.0) result.cocycle_residual = (predicted - columns[2 * N]).norm() / scale;
    return result;
}

}  // namespace ccnet
