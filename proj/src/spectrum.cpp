#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <string>

#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

#include "ccnet/spectral.hpp"

namespace ccnet {

namespace {

double wrap_phase(double theta) {
    double t = std::fmod(theta, 2.0 * kPi);
    if (t < 0.0) t += 2.0 * kPi;
    if (t >= 2.0 * kPi) t = 0.0;
    return t;
}

struct Bandwidth {
    int lower = 0;
    int upper = 0;
};

Bandwidth bandwidth_of(const FiniteOperator& op) {
    Bandwidth b;
    for (const Triplet& e : op.triplets()) {
        const long d = static_cast<long>(e.row) - static_cast<long>(e.col);
        b.lower = std::max<int>(b.lower, static_cast<int>(d));
        b.upper = std::max<int>(b.upper, static_cast<int>(-d));
    }
    return b;
}

struct CayleyPass {
    std::vector<double> phases;
    CMatrix vectors;
    double max_abs_tan = 0.0;
};

// Eigenphases of U through H = i (I - wU)(I + wU)^{-1}, w = exp(i alpha).
CayleyPass cayley_pass(const FiniteOperator& op, double alpha, bool want_vectors) {
    const lapack_int n = static_cast<lapack_int>(op.dim());
    const Bandwidth bw = bandwidth_of(op);
    const lapack_int kl = bw.lower, ku = bw.upper;
    const lapack_int ldab = 2 * kl + ku + 1;
    const cplx w = std::polar(1.0, alpha);
    std::vector<cplx> ab(static_cast<std::size_t>(ldab) * n, 0.0);
    CMatrix rhs = CMatrix::Identity(n, n);
    for (lapack_int j = 0; j < n; ++j) ab[static_cast<std::size_t>(kl + ku) + static_cast<std::size_t>(j) * ldab] = 1.0;
    for (const Triplet& e : op.triplets()) {
        const lapack_int i = static_cast<lapack_int>(e.row), j = static_cast<lapack_int>(e.col);
        ab[static_cast<std::size_t>(kl + ku + i - j) + static_cast<std::size_t>(j) * ldab] += w * e.value;
        rhs(i, j) -= w * e.value;
    }
    std::vector<lapack_int> ipiv(n);
    lapack_int info = LAPACKE_zgbsv(LAPACK_COL_MAJOR, n, kl, ku, n, ab.data(), ldab, ipiv.data(), rhs.data(), n);
    if (info != 0)
        throw NumericalError("eigendecompose: banded Cayley solve failed, info=" + std::to_string(info));
    CMatrix h = cplx(0.0, 1.0) * rhs;
    h = 0.5 * (h + h.adjoint()).eval();

    std::vector<double> tan_half(n);
    CayleyPass pass;
    if (want_vectors) {
        pass.vectors.resize(n, n);
        lapack_int found = 0;
        std::vector<lapack_int> support(2 * static_cast<std::size_t>(n));
        info = LAPACKE_zheevr(LAPACK_COL_MAJOR, 'V', 'A', 'L', n, h.data(), n, 0.0, 0.0, 0, 0, 0.0, &found,
                              tan_half.data(), pass.vectors.data(), n, support.data());
        if (info != 0 || found != n)
            throw NumericalError("eigendecompose: Hermitian eigensolver failed at index " + std::to_string(info));
    } else {
        info = LAPACKE_zheevd(LAPACK_COL_MAJOR, 'N', 'L', n, h.data(), n, tan_half.data());
        if (info != 0)
            throw NumericalError("eigendecompose: Hermitian eigensolver failed at index " + std::to_string(info));
    }
    for (lapack_int i = 0; i < n; ++i) {
        pass.max_abs_tan = std::max(pass.max_abs_tan, std::abs(tan_half[i]));
        pass.phases.push_back(wrap_phase(2.0 * std::atan(tan_half[i]) - alpha));
    }
    return pass;
}

// Alpha that rotates the middle of the widest spectral gap onto -1.
double gap_centering_rotation(std::vector<double> phases) {
    std::sort(phases.begin(), phases.end());
    double best_gap = phases.front() + 2.0 * kPi - phases.back();
    double middle = phases.back() + 0.5 * best_gap;
    for (std::size_t i = 1; i < phases.size(); ++i) {
        const double g = phases[i] - phases[i - 1];
        if (g > best_gap) {
            best_gap = g;
            middle = phases[i - 1] + 0.5 * g;
        }
    }
    return kPi - middle;
}

void sort_by_phase(SpectrumResult& r) {
    std::vector<std::size_t> order(r.eigenphases.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return r.eigenphases[a] < r.eigenphases[b]; });
    std::vector<double> phases;
    std::vector<cplx> values;
    for (std::size_t i : order) {
        phases.push_back(r.eigenphases[i]);
        values.push_back(r.eigenvalues[i]);
    }
    if (r.eigenvectors.size() > 0) {
        CMatrix v(r.eigenvectors.rows(), r.eigenvectors.cols());
        for (std::size_t i = 0; i < order.size(); ++i) v.col(static_cast<Eigen::Index>(i)) = r.eigenvectors.col(order[i]);
        r.eigenvectors = std::move(v);
    }
    r.eigenphases = std::move(phases);
    r.eigenvalues = std::move(values);
}

SpectrumResult general_route(const FiniteOperator& op, bool want_vectors) {
    const lapack_int n = static_cast<lapack_int>(op.dim());
    CMatrix a = op.dense();
    std::vector<cplx> values(n);
    SpectrumResult r;
    CMatrix right;
    if (want_vectors) right.resize(n, n);
    cplx dummy;
    const lapack_int info = LAPACKE_zgeev(LAPACK_COL_MAJOR, 'N', want_vectors ? 'V' : 'N', n, a.data(), n,
                                          values.data(), &dummy, 1, want_vectors ? right.data() : &dummy, n);
    if (info != 0)
        throw NumericalError("eigendecompose: QR iteration failed to converge at index " + std::to_string(info));
    r.eigenvalues = values;
    for (cplx v : values) r.eigenphases.push_back(wrap_phase(std::arg(v)));
    r.eigenvectors = std::move(right);
    return r;
}

}  // namespace

SpectrumResult eigendecompose(const FiniteOperator& op, const SpectrumOptions& options) {
    const std::size_t n = op.dim();
    if (n > options.max_dim)
        throw ValidationError("eigendecompose: dimension " + std::to_string(n) + " exceeds cap " +
                              std::to_string(options.max_dim));
    SpectrumResult result;
    if (options.method == EigenMethod::General) {
        result = general_route(op, options.vectors);
    } else {
        CayleyPass pass = cayley_pass(op, 0.5, options.vectors);
        if (pass.max_abs_tan > 1e4) pass = cayley_pass(op, gap_centering_rotation(pass.phases), options.vectors);
        result.eigenphases = std::move(pass.phases);
        for (double t : result.eigenphases) result.eigenvalues.push_back(std::polar(1.0, t));
        result.eigenvectors = std::move(pass.vectors);
    }
    result.window = op.window();

    if (options.vectors) {
        for (Eigen::Index i = 0; i < result.eigenvectors.cols(); ++i) {
            CVector v = result.eigenvectors.col(i);
            v /= v.norm();
            const CVector uv = op.apply(v);
            const cplx lambda = v.dot(uv);
            const double residual = (uv - lambda * v).norm();
            if (residual > options.residual_tolerance)
                throw NumericalError("eigendecompose: residual " + std::to_string(residual) + " at eigenpair index " +
                                     std::to_string(i));
            result.max_residual = std::max(result.max_residual, residual);
            result.eigenvectors.col(i) = v;
            result.eigenvalues[i] = lambda;
            result.eigenphases[i] = wrap_phase(std::arg(lambda));
        }
    }
    for (std::size_t i = 0; i < result.eigenvalues.size(); ++i) {
        const double d = std::abs(std::abs(result.eigenvalues[i]) - 1.0);
        if (d > 1e-8)
            throw NumericalError("eigendecompose: eigenvalue modulus defect " + std::to_string(d) + " at index " +
                                 std::to_string(i));
        result.max_modulus_defect = std::max(result.max_modulus_defect, d);
    }
    sort_by_phase(result);
    return result;
}

}  // namespace ccnet
