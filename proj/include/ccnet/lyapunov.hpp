#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "ccnet/kernels.hpp"
#include "ccnet/params.hpp"
#include "ccnet/types.hpp"

namespace ccnet {

struct CocycleRunConfig {
    ModelParams params = ModelParams::from_r(0.7071067811865476);
    int M = 1;
    cplx z = 1.0;
    long n_steps = 100000;
    std::uint64_t seed = 1;
    int reorth_period = 1;
    // Negative selects 1% of n_steps.
    long burn_in = -1;
    int batch_count = 20;
    // Column-norm growth that triggers an early orthonormalization.
    double growth_guard = 1e6;

    long effective_burn_in() const;
    // Throws ValidationError / DomainError.
    void validate() const;
};

// Exponents are per lattice column: log growth over 2 n columns for n steps.
struct LyapunovResult {
    CocycleRunConfig config;
    std::vector<double> exponents;
    std::vector<double> stderrs;
    // batch_count x 2M per-batch exponent estimates, columns in exponent order.
    Eigen::MatrixXd batches;
    long counted_steps = 0;
    long orthonormalizations = 0;

    int M() const { return config.M; }
    std::vector<double> gammas() const;
    double mean_top() const;
    double mean_top_stderr() const;
    // Batch-means error of a linear combination sum_k c_k lambda_k.
    double combination_stderr(const Eigen::VectorXd& coefficients) const;
    double gap_stderr(int k) const;
    double symmetry_defect() const;
    bool symmetric_within(double n_sigma) const;
};

LyapunovResult lyapunov_spectrum(const CocycleRunConfig& config,
                                 const kernels::KernelTable& kt = kernels::active());

struct LocalizationLength {
    bool resolved = false;
    double xi = 0.0;
    double xi_stderr = 0.0;
};
LocalizationLength localization_length(const LyapunovResult& result);
LocalizationLength localization_length(double lambda_M, double stderr_M);

double thouless_rhs(cplx z, const ModelParams& params);

struct ZIndependenceReport {
    std::vector<double> difference;
    std::vector<double> tolerance;
    std::vector<bool> pass;
    bool all_pass = true;
    LyapunovResult first;
    LyapunovResult second;
};
ZIndependenceReport z_independence_check(const ModelParams& params, int M, cplx z1, cplx z2, long n_steps,
                                         std::pair<std::uint64_t, std::uint64_t> seeds);

std::vector<double> exponent_lower_bounds(double kappa, double delta, int M);

// 1/2 [log(1/rt) + log((1+r)(1+t))].
double lambda1_upper_bound(const ModelParams& params);

struct XiBound {
    bool vacuous = false;
    double value = 0.0;
};
XiBound xi_upper_bound(const ModelParams& params, int M);

struct SimplicityReport {
    bool resolved = false;
    long n_required = 0;
    LyapunovResult result;
    std::vector<double> gaps;
    std::vector<double> gap_stderrs;
};
// Doubles n from n_start until every gap lambda_k - lambda_{k+1} (k < M) and
// lambda_M exceed 3 sigma, or n would pass n_max.
SimplicityReport resolve_simplicity(const ModelParams& params, int M, std::uint64_t seed, long n_start, long n_max);

}  // namespace ccnet
