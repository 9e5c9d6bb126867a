#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ccnet/lattice.hpp"
#include "ccnet/params.hpp"
#include "ccnet/phases.hpp"
#include "ccnet/types.hpp"

namespace ccnet {

enum class EigenMethod {
    // Hermitian Cayley transform of the unitary, banded LU + zheevr.
    Cayley,
    // General complex Hessenberg-QR (zgeev).
    General,
};

struct SpectrumOptions {
    bool vectors = false;
    EigenMethod method = EigenMethod::Cayley;
    std::size_t max_dim = 4000;
    double residual_tolerance = 1e-8;
};

struct SpectrumResult {
    Window window{0, 1};
    // Sorted ascending in [0, 2 pi).
    std::vector<double> eigenphases;
    std::vector<cplx> eigenvalues;
    // Column i belongs to eigenvalues[i]; empty unless requested.
    CMatrix eigenvectors;
    double max_residual = 0.0;
    double max_modulus_defect = 0.0;
};

SpectrumResult eigendecompose(const FiniteOperator& op, const SpectrumOptions& options = {});

// (1/N) tr U^k for k = 0..K via repeated sparse application.
std::vector<cplx> trace_moments(const FiniteOperator& op, int K);

// sup |F_n(x) - x| of the samples against the uniform law on [0,1).
double ks_uniform_statistic(std::vector<double> samples);

struct DOSHistogram {
    std::vector<double> edges;
    std::vector<long> counts;
    int samples = 0;
    std::size_t N = 0;
    // moments[k] = average over samples of (1/N) tr U^k, k = 0..K.
    std::vector<cplx> moments;
    // Monte-Carlo standard error of |moments[k]| from the spread across samples.
    std::vector<double> moment_stderr;
    double ks_statistic = 0.0;
    // 1.63 / sqrt(N * samples), the 1% critical value.
    double ks_critical = 0.0;
};

DOSHistogram dos_moments(const ModelParams& params, int M, int L, const std::vector<std::uint64_t>& seeds, int K,
                         int bins = 64);

struct ParityOperators {
    cplx z;
    CMatrix even_projection;
    CMatrix odd_projection;
    CMatrix swap;
    CMatrix v;
    CMatrix w;
    double w_square_defect = 0.0;
    double v_inverse_defect = 0.0;
    double swap_square_defect = 0.0;
};
// Throws NumericalError if the algebraic identities fail beyond 1e-12.
ParityOperators build_parity_operators(cplx z, int M);

struct DeterminantCheck {
    cplx z;
    bool degenerate = false;
    double log_lhs = 0.0;
    double log_rhs = 0.0;
    double relative_error = 0.0;
    // Same comparison without the 2^{-M} leading-coefficient factor; equals 1 - 2^{-M}.
    double printed_form_relative_error = 0.0;
    // Smallest singular value of the E-restricted matrix over its largest.
    double relative_min_singular = 0.0;
};

// Both sides of |z|^{(4L+1)M} |det(Q_E V^-1 P W Q_E)| = 2^{-M} (rt)^{-2LM} prod |z - z_i|,
// compared in log space; eigenvalues are taken from `spectrum`.
DeterminantCheck determinant_identity_residual(cplx z, const ModelParams& params, int M, int L,
                                               const PhaseField& phases, const SpectrumResult& spectrum);
DeterminantCheck determinant_identity_residual(cplx z, const ModelParams& params, int M, int L,
                                               const PhaseField& phases);

Eigen::Matrix2cd band_symbol(double x, double y, const ModelParams& params);

struct BandPoint {
    double x = 0.0;
    double y = 0.0;
    Eigen::Matrix2cd symbol;
    // Eigenphases in (-pi, pi], ordered so that theta[0] is the one with cos >= 0.
    std::array<double, 2> theta{};
};

struct BandStructure {
    int M = 0;
    int grid = 0;
    std::vector<BandPoint> points;
    double max_det_defect = 0.0;
    double max_modulus_defect = 0.0;
    // max over the grid of the principal-branch eigenphase, and the closed form arcsin(2rt).
    double measured_edge = 0.0;
    double predicted_edge = 0.0;
    double band_width = 0.0;
};

// x on a uniform grid of `grid` points in [0, 2 pi); y = 2 pi kappa / M for the
// cylinder (M >= 1), or the same uniform grid when M = 0.
BandStructure band_structure(const ModelParams& params, int M, int grid);

enum class DecayStatus { Localized, NotLocalized, CompactSupport, WindowTooShort };
std::string to_string(DecayStatus status);

struct DecayFit {
    double eigenphase = 0.0;
    std::vector<double> column_norms;
    int peak_column = 0;
    double rate = 0.0;
    double r_squared = 0.0;
    int points = 0;
    DecayStatus status = DecayStatus::NotLocalized;
};

DecayFit eigenvector_decay_fit(const SpectrumResult& spectrum, std::size_t index);

// Numerical rank of {U^m e_mu : |m| <= n, mu in column 0}.
int krylov_rank(const ModelParams& params, const PhaseField& phases, int n);

}  // namespace ccnet
