#include "ccnet/lyapunov.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "ccnet/phases.hpp"
#include "ccnet/transfer.hpp"

namespace ccnet {

long CocycleRunConfig::effective_burn_in() const { return burn_in >= 0 ? burn_in : n_steps / 100; }

void CocycleRunConfig::validate() const {
    params.require_nondegenerate("lyapunov");
    if (z == cplx(0.0)) throw DomainError("lyapunov: z must be nonzero");
    if (M < 1) throw ValidationError("lyapunov: M must be >= 1");
    if (batch_count < 2) throw ValidationError("lyapunov: batch_count must be >= 2");
    if (n_steps < batch_count) throw ValidationError("lyapunov: n_steps must be >= batch_count");
    if (reorth_period < 1) throw ValidationError("lyapunov: reorth_period must be >= 1");
    if (effective_burn_in() >= n_steps) throw ValidationError("lyapunov: burn_in must be < n_steps");
    if ((n_steps - effective_burn_in()) < static_cast<long>(batch_count) * reorth_period)
        throw ValidationError("lyapunov: too few post burn-in steps for batch_count * reorth_period");
    if (!(growth_guard > 1.0)) throw ValidationError("lyapunov: growth_guard must exceed 1");
}

namespace {

double max_column_norm2(const kernels::SoaBlock& frame) {
    double best = 0.0;
    for (int c = 0; c < frame.cols(); ++c) {
        double s = 0.0;
        for (int i = 0; i < frame.rows(); ++i) s += std::norm(frame.get(i, c));
        best = std::max(best, s);
    }
    return best;
}

}  // namespace

LyapunovResult lyapunov_spectrum(const CocycleRunConfig& config, const kernels::KernelTable& kt) {
    config.validate();
    const int n = 2 * config.M;
    const long burn = config.effective_burn_in();
    const long post = config.n_steps - burn;
    const int B = config.batch_count;

    kernels::SoaBlock frame(n, n);
    frame.set_identity();
    Eigen::MatrixXd log_sums = Eigen::MatrixXd::Zero(B, n);
    std::vector<long> batch_steps(B, 0);
    std::vector<double> logs(n);
    const PhaseSource source(config.seed);
    const double guard2 = config.growth_guard * config.growth_guard;

    LyapunovResult result;
    result.config = config;
    long since = 0;
    for (long s = 0; s < config.n_steps; ++s) {
        const FusedStep step = fused_step(config.z, phase_slotting(source, config.M, static_cast<int>(s)), config.params);
        kt.mix_pairs(frame, 0, step.first);
        kt.mix_pairs(frame, 1, step.second);
        ++since;
        bool due = since >= config.reorth_period || s == config.n_steps - 1;
        if (!due && max_column_norm2(frame) > guard2) due = true;
        if (!due) continue;
        std::fill(logs.begin(), logs.end(), 0.0);
        kt.gram_schmidt(frame, logs);
        kt.gram_schmidt(frame, logs);
        ++result.orthonormalizations;
        for (double v : logs)
            if (!std::isfinite(v)) throw NumericalError("lyapunov: frame lost rank at step " + std::to_string(s));
        if (s >= burn) {
            const int b = static_cast<int>(std::min<long>(B - 1, (s - burn) * B / post));
            for (int k = 0; k < n; ++k) log_sums(b, k) += logs[k];
            batch_steps[b] += since;
        }
        since = 0;
    }

    result.counted_steps = std::accumulate(batch_steps.begin(), batch_steps.end(), 0L);
    Eigen::MatrixXd est(B, n);
    for (int b = 0; b < B; ++b) {
        if (batch_steps[b] == 0) throw NumericalError("lyapunov: empty batch; lower reorth_period or batch_count");
        est.row(b) = log_sums.row(b) / (2.0 * static_cast<double>(batch_steps[b]));
    }
    const Eigen::VectorXd total = log_sums.colwise().sum().transpose() / (2.0 * static_cast<double>(result.counted_steps));

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return total(a) > total(b); });
    result.batches.resize(B, n);
    for (int k = 0; k < n; ++k) {
        result.exponents.push_back(total(order[k]));
        result.batches.col(k) = est.col(order[k]);
    }
    for (int k = 0; k < n; ++k) {
        Eigen::VectorXd e = Eigen::VectorXd::Zero(n);
        e(k) = 1.0;
        result.stderrs.push_back(result.combination_stderr(e));
    }
    return result;
}

std::vector<double> LyapunovResult::gammas() const {
    std::vector<double> g;
    for (double v : exponents) g.push_back(std::exp(v));
    return g;
}

double LyapunovResult::combination_stderr(const Eigen::VectorXd& c) const {
    const Eigen::VectorXd series = batches * c;
    const double mean = series.mean();
    const double var = (series.array() - mean).square().sum() / static_cast<double>(series.size() - 1);
    return std::sqrt(var / static_cast<double>(series.size()));
}

double LyapunovResult::mean_top() const {
    double s = 0.0;
    for (int k = 0; k < M(); ++k) s += exponents[k];
    return s / M();
}

double LyapunovResult::mean_top_stderr() const {
    Eigen::VectorXd c = Eigen::VectorXd::Zero(2 * M());
    c.head(M()).setConstant(1.0 / M());
    return combination_stderr(c);
}

double LyapunovResult::gap_stderr(int k) const {
    Eigen::VectorXd c = Eigen::VectorXd::Zero(2 * M());
    c(k) = 1.0;
    c(k + 1) = -1.0;
    return combination_stderr(c);
}

double LyapunovResult::symmetry_defect() const {
    const int n = 2 * M();
    double d = 0.0;
    for (int k = 0; k < n; ++k) d = std::max(d, std::abs(exponents[k] + exponents[n - 1 - k]));
    return d;
}

bool LyapunovResult::symmetric_within(double n_sigma) const {
    const int n = 2 * M();
    for (int k = 0; k < n; ++k)
        if (std::abs(exponents[k] + exponents[n - 1 - k]) > n_sigma * (stderrs[k] + stderrs[n - 1 - k])) return false;
    return true;
}

LocalizationLength localization_length(double lambda_M, double stderr_M) {
    LocalizationLength out;
    if (!(lambda_M > 3.0 * stderr_M) || lambda_M <= 0.0) return out;
    out.resolved = true;
    out.xi = 1.0 / lambda_M;
    out.xi_stderr = stderr_M / (lambda_M * lambda_M);
    return out;
}

LocalizationLength localization_length(const LyapunovResult& result) {
    const int k = result.M() - 1;
    return localization_length(result.exponents[k], result.stderrs[k]);
}

double thouless_rhs(cplx z, const ModelParams& params) {
    if (z == cplx(0.0)) throw DomainError("thouless_rhs: z must be nonzero");
    params.require_nondegenerate("thouless_rhs");
    const double mod = std::abs(z);
    return 2.0 * std::log(std::max(1.0, mod)) + 0.5 * std::log(1.0 / params.rt()) - std::log(mod);
}

ZIndependenceReport z_independence_check(const ModelParams& params, int M, cplx z1, cplx z2, long n_steps,
                                         std::pair<std::uint64_t, std::uint64_t> seeds) {
    if (!is_unit(z1) || !is_unit(z2)) throw ValidationError("z_independence_check: z1 and z2 must lie on the unit circle");
    CocycleRunConfig c1;
    c1.params = params;
    c1.M = M;
    c1.n_steps = n_steps;
    c1.z = z1;
    c1.seed = seeds.first;
    CocycleRunConfig c2 = c1;
    c2.z = z2;
    c2.seed = seeds.second;
    ZIndependenceReport report{{}, {}, {}, true, lyapunov_spectrum(c1), lyapunov_spectrum(c2)};
    for (int k = 0; k < 2 * M; ++k) {
        const double d = std::abs(report.first.exponents[k] - report.second.exponents[k]);
        const double tol = 3.0 * std::hypot(report.first.stderrs[k], report.second.stderrs[k]);
        report.difference.push_back(d);
        report.tolerance.push_back(tol);
        report.pass.push_back(d <= tol);
        report.all_pass = report.all_pass && d <= tol;
    }
    return report;
}

std::vector<double> exponent_lower_bounds(double kappa, double delta, int M) {
    if (!(kappa > 0.0)) throw ValidationError("exponent_lower_bounds: kappa must be > 0");
    if (!(delta >= 0.0)) throw ValidationError("exponent_lower_bounds: delta must be >= 0");
    if (M < 1) throw ValidationError("exponent_lower_bounds: M must be >= 1");
    std::vector<double> out;
    for (int j = 0; j < M; ++j) out.push_back(kappa - j * delta / (M - j));
    return out;
}

double lambda1_upper_bound(const ModelParams& params) {
    params.require_nondegenerate("lambda1_upper_bound");
    return 0.5 * (std::log(1.0 / params.rt()) + std::log((1.0 + params.r()) * (1.0 + params.t())));
}

XiBound xi_upper_bound(const ModelParams& params, int M) {
    params.require_nondegenerate("xi_upper_bound");
    if (M < 1) throw ValidationError("xi_upper_bound: M must be >= 1");
    const double denom =
        std::log(1.0 / params.rt()) - (M - 1) * std::log((1.0 + params.r()) * (1.0 + params.t()));
    if (!(denom > 0.0)) return {true, 0.0};
    return {false, 2.0 / denom};
}

SimplicityReport resolve_simplicity(const ModelParams& params, int M, std::uint64_t seed, long n_start, long n_max) {
    if (n_start < 20 || n_max < n_start) throw ValidationError("resolve_simplicity: need 20 <= n_start <= n_max");
    SimplicityReport report;
    for (long n = n_start; n <= n_max; n *= 2) {
        CocycleRunConfig c;
        c.params = params;
        c.M = M;
        c.n_steps = n;
        c.seed = seed;
        report.result = lyapunov_spectrum(c);
        report.n_required = n;
        report.gaps.clear();
        report.gap_stderrs.clear();
        bool ok = true;
        for (int k = 0; k < M; ++k) {
            report.gaps.push_back(report.result.exponents[k] - report.result.exponents[k + 1]);
            report.gap_stderrs.push_back(report.result.gap_stderr(k));
            ok = ok && report.gaps.back() > 3.0 * report.gap_stderrs.back();
        }
        ok = ok && report.result.exponents[M - 1] > 3.0 * report.result.stderrs[M - 1];
        if (ok) {
            report.resolved = true;
            return report;
        }
    }
    return report;
}

}  // namespace ccnet
