#include "ccnet/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "ccnet/transfer.hpp"

namespace ccnet {

std::vector<cplx> trace_moments(const FiniteOperator& op, int K) {
    if (K < 0) throw ValidationError("trace_moments: K must be >= 0");
    const int n = static_cast<int>(op.dim());
    std::vector<cplx> traces(K + 1, 0.0);
    traces[0] = static_cast<double>(n);
    constexpr int kWidth = 64;
    for (int c0 = 0; c0 < n; c0 += kWidth) {
        const int width = std::min(kWidth, n - c0);
        kernels::SoaBlock x(n, width), y(n, width);
        for (int j = 0; j < width; ++j) x.set(c0 + j, j, 1.0);
        for (int k = 1; k <= K; ++k) {
            op.apply_block(x, y);
            std::swap(x, y);
            for (int j = 0; j < width; ++j) traces[k] += x.get(c0 + j, j);
        }
    }
    for (cplx& t : traces) t /= static_cast<double>(n);
    return traces;
}

double ks_uniform_statistic(std::vector<double> samples) {
    if (samples.empty()) throw ValidationError("ks_uniform_statistic: no samples");
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    double d = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        d = std::max(d, (static_cast<double>(i) + 1.0) / n - samples[i]);
        d = std::max(d, samples[i] - static_cast<double>(i) / n);
    }
    return d;
}

DOSHistogram dos_moments(const ModelParams& params, int M, int L, const std::vector<std::uint64_t>& seeds, int K,
                         int bins) {
    if (K < 1) throw ValidationError("dos_moments: K must be >= 1");
    if (bins < 1) throw ValidationError("dos_moments: bins must be >= 1");
    if (seeds.empty()) throw ValidationError("dos_moments: need at least one seed");
    DOSHistogram h;
    h.samples = static_cast<int>(seeds.size());
    h.N = Window(L, M).dim();
    for (int b = 0; b <= bins; ++b) h.edges.push_back(2.0 * kPi * b / bins);
    h.counts.assign(bins, 0);
    std::vector<std::vector<cplx>> per_seed;
    std::vector<double> pooled;
    for (std::uint64_t seed : seeds) {
        const FiniteOperator op = build_cylinder_operator(params, sample_phase_field(seed, L, M), L, M);
        per_seed.push_back(trace_moments(op, K));
        const SpectrumResult s = eigendecompose(op);
        for (double theta : s.eigenphases) {
            const int b = std::min(bins - 1, static_cast<int>(theta / (2.0 * kPi) * bins));
            ++h.counts[b];
            pooled.push_back(theta / (2.0 * kPi));
        }
    }
    const double S = static_cast<double>(seeds.size());
    for (int k = 0; k <= K; ++k) {
        cplx mean = 0.0;
        for (const auto& m : per_seed) mean += m[k];
        mean /= S;
        double spread = 0.0;
        for (const auto& m : per_seed) spread += std::norm(m[k] - mean);
        h.moments.push_back(mean);
        h.moment_stderr.push_back(seeds.size() > 1 ? std::sqrt(spread / (S - 1.0) / S) : 0.0);
    }
    h.ks_statistic = ks_uniform_statistic(pooled);
    h.ks_critical = 1.63 / std::sqrt(static_cast<double>(pooled.size()));
    return h;
}

ParityOperators build_parity_operators(cplx z, int M) {
    if (z == cplx(0.0)) throw DomainError("build_parity_operators: z must be nonzero");
    if (M < 1) throw ValidationError("build_parity_operators: M must be >= 1");
    const int n = 2 * M;
    const double s = 1.0 / std::sqrt(2.0);
    const cplx iz = 1.0 / z;
    ParityOperators p{z, CMatrix::Zero(n, n), CMatrix::Zero(n, n), CMatrix::Zero(n, n), CMatrix::Zero(n, n),
                      CMatrix::Zero(n, n)};
    for (int k = 0; k < M; ++k) {
        const int e = 2 * k, o = 2 * k + 1, e2 = (2 * k + 2) % n;
        p.even_projection(e, e) = 1.0;
        p.odd_projection(o, o) = 1.0;
        p.swap(e, o) = 1.0;
        p.swap(o, e) = 1.0;
        // W e_{2k+2} = (z e_{2k+1} + e_{2k+2}) / sqrt2, W e_{2k+1} = (-e_{2k+1} + e_{2k+2}/z) / sqrt2
        p.w(o, e2) += s * z;
        p.w(e2, e2) += s;
        p.w(o, o) += -s;
        p.w(e2, o) += s * iz;
        // V e_{2k} = (-e_{2k+1} + z e_{2k}) / sqrt2, V e_{2k+1} = (e_{2k} + e_{2k+1}/z) / sqrt2
        p.v(o, e) += -s;
        p.v(e, e) += s * z;
        p.v(e, o) += s;
        p.v(o, o) += s * iz;
    }
    const CMatrix id = CMatrix::Identity(n, n);
    p.w_square_defect = (p.w * p.w - id).cwiseAbs().maxCoeff();
    p.v_inverse_defect = (p.v * p.swap * p.v * p.swap - id).cwiseAbs().maxCoeff();
    p.swap_square_defect = (p.swap * p.swap - id).cwiseAbs().maxCoeff();
    if (p.w_square_defect > 1e-12 || p.v_inverse_defect > 1e-12 || p.swap_square_defect > 1e-12)
        throw NumericalError("build_parity_operators: algebraic identities violated beyond 1e-12");
    return p;
}

DeterminantCheck determinant_identity_residual(cplx z, const ModelParams& params, int M, int L,
                                               const PhaseField& phases, const SpectrumResult& spectrum) {
    if (z == cplx(0.0)) throw DomainError("determinant_identity_residual: z must be nonzero");
    params.require_nondegenerate("determinant_identity_residual");
    if (!(phases.window() == Window(L, M))) throw ValidationError("determinant_identity_residual: window mismatch");
    if (spectrum.eigenvalues.size() != Window(L, M).dim())
        throw ValidationError("determinant_identity_residual: spectrum does not belong to this window");
    DeterminantCheck out;
    out.z = z;
    // Leading coefficient of z^{(4L+1)M} det(...) has modulus 2^{-M} (rt)^{-2LM}.
    double log_rhs = -2.0 * L * M * std::log(params.rt()) - M * std::log(2.0);
    double nearest = std::numeric_limits<double>::infinity();
    for (cplx zi : spectrum.eigenvalues) {
        const double d = std::abs(z - zi);
        nearest = std::min(nearest, d);
        log_rhs += std::log(d);
    }
    const ParityOperators par = build_parity_operators(z, M);
    const CMatrix p = propagate(z, params, phases, L).transfer.matrix;
    const CMatrix full = par.swap * par.v * par.swap * p * par.w;
    CMatrix restricted(M, M);
    for (int a = 0; a < M; ++a)
        for (int b = 0; b < M; ++b) restricted(a, b) = full(2 * a, 2 * b);
    const Eigen::JacobiSVD<CMatrix> svd(restricted);
    const auto& sv = svd.singularValues();
    out.relative_min_singular = sv(sv.size() - 1) / sv(0);
    if (nearest <= 1e-12) {
        out.degenerate = true;
        return out;
    }
    const Eigen::PartialPivLU<CMatrix> lu(restricted);
    double log_det = 0.0;
    for (int i = 0; i < M; ++i) log_det += std::log(std::abs(lu.matrixLU()(i, i)));
    out.log_lhs = (4.0 * L + 1.0) * M * std::log(std::abs(z)) + log_det;
    out.log_rhs = log_rhs;
    out.relative_error = std::abs(std::expm1(out.log_lhs - out.log_rhs));
    out.printed_form_relative_error = std::abs(std::expm1(out.log_lhs - out.log_rhs - M * std::log(2.0)));
    return out;
}

DeterminantCheck determinant_identity_residual(cplx z, const ModelParams& params, int M, int L,
                                               const PhaseField& phases) {
    params.require_nondegenerate("determinant_identity_residual");
    const FiniteOperator op = build_cylinder_operator(params, phases, L, M);
    return determinant_identity_residual(z, params, M, L, phases, eigendecompose(op));
}

Eigen::Matrix2cd band_symbol(double x, double y, const ModelParams& params) {
    const double r = params.r(), t = params.t(), rt = params.rt();
    const cplx ex = std::polar(1.0, x), ey = std::polar(1.0, y);
    Eigen::Matrix2cd m;
    m << rt * (std::conj(ey) - std::conj(ex)), r * r * std::conj(ex) + t * t * std::conj(ey),
        t * t * ey + r * r * ex, rt * (ex - ey);
    return m;
}

BandStructure band_structure(const ModelParams& params, int M, int grid) {
    if (grid < 1) throw ValidationError("band_structure: grid must be >= 1");
    if (M < 0) throw ValidationError("band_structure: M must be >= 0");
    BandStructure bs;
    bs.M = M;
    bs.grid = grid;
    std::vector<double> xs, ys;
    for (int i = 0; i < grid; ++i) xs.push_back(2.0 * kPi * i / grid);
    if (M == 0)
        ys = xs;
    else
        for (int kappa = 0; kappa < M; ++kappa) ys.push_back(2.0 * kPi * kappa / M);
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    double max_sin_x = -1.0, min_sin_y = 1.0;
    for (double x : xs) max_sin_x = std::max(max_sin_x, std::sin(x));
    for (double y : ys) min_sin_y = std::min(min_sin_y, std::sin(y));
    for (double y : ys) {
        for (double x : xs) {
            BandPoint p;
            p.x = x;
            p.y = y;
            p.symbol = band_symbol(x, y, params);
            bs.max_det_defect = std::max(bs.max_det_defect, std::abs(p.symbol.determinant() + 1.0));
            const Eigen::ComplexEigenSolver<Eigen::Matrix2cd> es(p.symbol, false);
            std::array<cplx, 2> ev{es.eigenvalues()(0), es.eigenvalues()(1)};
            if (ev[0].real() < ev[1].real()) std::swap(ev[0], ev[1]);
            for (int i = 0; i < 2; ++i) {
                bs.max_modulus_defect = std::max(bs.max_modulus_defect, std::abs(std::abs(ev[i]) - 1.0));
                p.theta[i] = std::arg(ev[i]);
            }
            // principal branch: the eigenvalue with non-negative real part
            lo = std::min(lo, p.theta[0]);
            hi = std::max(hi, p.theta[0]);
            bs.points.push_back(p);
        }
    }
    bs.measured_edge = hi;
    bs.predicted_edge = std::asin(std::clamp(params.rt() * (max_sin_x - min_sin_y), -1.0, 1.0));
    bs.band_width = hi - lo;
    return bs;
}

std::string to_string(DecayStatus status) {
    switch (status) {
        case DecayStatus::Localized: return "localized";
        case DecayStatus::NotLocalized: return "not localized";
        case DecayStatus::CompactSupport: return "compact support";
        case DecayStatus::WindowTooShort: return "window too short";
    }
    return "unknown";
}

DecayFit eigenvector_decay_fit(const SpectrumResult& spectrum, std::size_t index) {
    if (spectrum.eigenvectors.size() == 0) throw ValidationError("eigenvector_decay_fit: eigenvectors not computed");
    if (index >= static_cast<std::size_t>(spectrum.eigenvectors.cols()))
        throw ValidationError("eigenvector_decay_fit: index out of range");
    const Window& w = spectrum.window;
    const CVector v = spectrum.eigenvectors.col(static_cast<Eigen::Index>(index));
    DecayFit fit;
    fit.eigenphase = spectrum.eigenphases[index];
    const int n = w.ring_size();
    for (int c = 0; c < w.column_count(); ++c) fit.column_norms.push_back(v.segment(c * n, n).norm());

    const double vmax = v.cwiseAbs().maxCoeff();
    int support_lo = w.column_count(), support_hi = -1;
    for (Eigen::Index i = 0; i < v.size(); ++i)
        if (std::abs(v(i)) > 1e-12 * vmax) {
            support_lo = std::min(support_lo, static_cast<int>(i / n));
            support_hi = std::max(support_hi, static_cast<int>(i / n));
        }
    const auto peak = std::max_element(fit.column_norms.begin(), fit.column_norms.end());
    const int peak_offset = static_cast<int>(peak - fit.column_norms.begin());
    fit.peak_column = peak_offset + w.first_column();
    if (support_hi - support_lo + 1 <= 2) {
        fit.status = DecayStatus::CompactSupport;
        return fit;
    }
    const int min_distance = std::max(1, w.L() / 4);
    const double floor = 1e-12 * *peak;
    std::vector<double> xs, ys;
    int available = 0;
    for (int c = 0; c < w.column_count(); ++c) {
        const int d = std::abs(c - peak_offset);
        if (d < min_distance) continue;
        ++available;
        if (fit.column_norms[c] <= floor) continue;
        xs.push_back(d);
        ys.push_back(std::log(fit.column_norms[c]));
    }
    if (available < 5 || w.L() < 4) {
        fit.status = DecayStatus::WindowTooShort;
        return fit;
    }
    fit.points = static_cast<int>(xs.size());
    if (xs.size() < 3) {
        fit.status = DecayStatus::NotLocalized;
        return fit;
    }
    const Eigen::Map<const Eigen::VectorXd> xv(xs.data(), static_cast<Eigen::Index>(xs.size()));
    const Eigen::Map<const Eigen::VectorXd> yv(ys.data(), static_cast<Eigen::Index>(ys.size()));
    const double mx = xv.mean(), my = yv.mean();
    const double sxx = (xv.array() - mx).square().sum();
    const double syy = (yv.array() - my).square().sum();
    const double sxy = ((xv.array() - mx) * (yv.array() - my)).sum();
    if (sxx <= 0.0 || syy <= 0.0) {
        fit.status = DecayStatus::NotLocalized;
        return fit;
    }
    const double slope = sxy / sxx;
    fit.r_squared = sxy * sxy / (sxx * syy);
    fit.rate = -slope;
    fit.status = (fit.r_squared >= 0.9 && fit.rate > 0.0) ? DecayStatus::Localized : DecayStatus::NotLocalized;
    return fit;
}

int krylov_rank(const ModelParams& params, const PhaseField& phases, int n) {
    params.require_nondegenerate("krylov_rank");
    const Window& w = phases.window();
    if (n < 0) throw ValidationError("krylov_rank: n must be >= 0");
    if (w.L() <= n) throw ValidationError("krylov_rank: window L must exceed n");
    const FiniteOperator op = build_cylinder_operator(params, phases, w.L(), w.M());
    const CMatrix u = op.dense();
    const int ring = w.ring_size();
    CMatrix vectors(static_cast<Eigen::Index>(op.dim()), static_cast<Eigen::Index>(ring) * (2 * n + 1));
    int col = 0;
    for (int mu = 0; mu < ring; ++mu) {
        CVector e = CVector::Zero(static_cast<Eigen::Index>(op.dim()));
        e(static_cast<Eigen::Index>(w.index(0, mu))) = 1.0;
        vectors.col(col++) = e;
        CVector fwd = e, bwd = e;
        for (int m = 1; m <= n; ++m) {
            fwd = op.apply(fwd);
            bwd = u.adjoint() * bwd;
            vectors.col(col++) = fwd;
            vectors.col(col++) = bwd;
        }
    }
    const Eigen::BDCSVD<CMatrix> svd(vectors);
    const auto& sv = svd.singularValues();
    int rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv(i) > 1e-10) ++rank;
    return rank;
}

}  // namespace ccnet
