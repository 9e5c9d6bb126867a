#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "ccnet/io.hpp"
#include "ccnet/lattice.hpp"
#include "ccnet/lyapunov.hpp"
#include "ccnet/spectral.hpp"
#include "ccnet/sweep.hpp"
#include "ccnet/transfer.hpp"
#include "verify.hpp"

namespace ccnet::cli {

namespace {

constexpr double kCritical = 0.70710678118654752;

struct RunConfig {
    std::string command;
    std::vector<double> r;
    std::vector<int> M;
    std::optional<int> L;
    std::vector<double> z_mod{1.0};
    std::vector<double> z_arg{0.0};
    std::optional<long> n_steps;
    std::vector<std::uint64_t> seeds;
    int seed_count = 0;
    std::string out;
    std::string format = "csv";
    std::size_t workers = 0;
    int reorth = 1;
    int batches = 20;
    int K = 8;
    int bins = 64;
    int grid = 64;
    int nz = 20;
    bool quick = false;
    std::string table;
    std::string what = "operator";
};

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

bool is_failure(const std::string& status) { return status.rfind("fail", 0) == 0; }

bool cocycle_command(const std::string& c) { return c == "lyapunov" || c == "xi-scaling" || c == "det-check"; }

double elapsed(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void apply_defaults(RunConfig& c) {
    if (c.r.empty()) {
        if (c.command == "decay")
            c.r = {0.95};
        else if (c.command == "lyapunov" || c.command == "dos" || c.command == "det-check")
            c.r = {kCritical};
        else
            c.r = {0.6, kCritical, 0.8};
    }
    if (c.M.empty()) {
        if (c.command == "xi-scaling")
            c.M = {1, 2, 3, 4};
        else if (c.command == "dos")
            c.M = {3};
        else if (c.command == "bands")
            c.M = {0};
        else
            c.M = {2};
    }
    if (!c.L) c.L = c.command == "dos" ? 50 : c.command == "decay" ? 100 : 2;
    if (!c.n_steps) c.n_steps = 200000;
    if (c.seeds.empty()) {
        const int n = c.seed_count > 0 ? c.seed_count : (c.command == "dos" ? 20 : 1);
        for (int s = 1; s <= n; ++s) c.seeds.push_back(static_cast<std::uint64_t>(s));
    }
    if (c.workers == 0) c.workers = default_worker_count();
}

void validate(const RunConfig& c) {
    if (c.seeds.empty()) throw UsageError("seed: seed list must be non-empty");
    if (c.r.empty()) throw UsageError("r: parameter list must be non-empty");
    if (c.M.empty()) throw UsageError("M: parameter list must be non-empty");
    for (double r : c.r)
        if (!(r >= 0.0 && r <= 1.0)) throw UsageError("r: value " + format_double(r) + " outside [0,1]");
    if (cocycle_command(c.command))
        for (double r : c.r)
            if (!(r > 0.0 && r < 1.0))
                throw DomainError("r: " + c.command + " requires r in (0,1) so that r*t != 0, got " + format_double(r));
    for (int m : c.M)
        if (m < (c.command == "bands" ? 0 : 1)) throw UsageError("M: value " + std::to_string(m) + " out of range");
    if (*c.L < 0) throw UsageError("L: must be >= 0");
    if (c.z_mod.size() != c.z_arg.size() && c.z_mod.size() != 1 && c.z_arg.size() != 1)
        throw UsageError("z-mod/z-arg: lists must have equal length or length 1");
    for (double m : c.z_mod)
        if (!(m > 0.0)) throw DomainError("z-mod: modulus must be > 0");
    if (*c.n_steps < 1) throw UsageError("steps: must be >= 1");
    if (c.K < 1) throw UsageError("K: must be >= 1");
    if (c.bins < 1) throw UsageError("bins: must be >= 1");
    if (c.grid < 1) throw UsageError("grid: must be >= 1");
    parse_format(c.format);
}

std::vector<std::pair<double, double>> z_pairs(const RunConfig& c) {
    const std::size_t n = std::max(c.z_mod.size(), c.z_arg.size());
    std::vector<std::pair<double, double>> out;
    for (std::size_t i = 0; i < n; ++i)
        out.emplace_back(c.z_mod[c.z_mod.size() == 1 ? 0 : i], c.z_arg[c.z_arg.size() == 1 ? 0 : i]);
    return out;
}

cplx make_z(double mod, double arg_over_pi) {
    if (arg_over_pi == 0.0) return mod;
    return std::polar(mod, arg_over_pi * kPi);
}

ResultRecord base_record(const RunConfig& c, const ModelParams& p, int M, int L, double zm, double za,
                         std::uint64_t seed, long steps) {
    ResultRecord rec;
    rec.command = c.command;
    rec.r = p.r();
    rec.t = p.t();
    rec.M = M;
    rec.L = L;
    rec.z_mod = zm;
    rec.z_arg_over_pi = za;
    rec.seed = seed;
    rec.n_steps = steps;
    return rec;
}

// --- lyapunov -------------------------------------------------------------

ResultRecord lyapunov_cell(const RunConfig& c, double r, int M, std::pair<double, double> z, std::uint64_t seed) {
    const auto t0 = std::chrono::steady_clock::now();
    CocycleRunConfig cfg;
    cfg.params = ModelParams::from_r(r);
    cfg.M = M;
    cfg.z = make_z(z.first, z.second);
    cfg.n_steps = *c.n_steps;
    cfg.seed = seed;
    cfg.reorth_period = c.reorth;
    cfg.batch_count = c.batches;
    const LyapunovResult res = lyapunov_spectrum(cfg);
    ResultRecord rec = base_record(c, cfg.params, M, 0, z.first, z.second, seed, cfg.n_steps);
    rec.rows.push_back({0, res.mean_top(), res.mean_top_stderr()});
    for (int k = 0; k < 2 * M; ++k) rec.rows.push_back({k + 1, res.exponents[k], res.stderrs[k]});
    const LocalizationLength xi = localization_length(res);
    if (xi.resolved) rec.xi_M = xi.xi;
    const double target = thouless_rhs(cfg.z, cfg.params);
    const bool mean_ok = std::abs(res.mean_top() - target) <= 3.0 * res.mean_top_stderr();
    const bool sym_ok = !is_unit(cfg.z) || res.symmetric_within(3.0);
    const bool bound_ok = !is_unit(cfg.z) || res.exponents[0] <= lambda1_upper_bound(cfg.params) + 3.0 * res.stderrs[0];
    rec.status = !mean_ok ? "fail-mean-law" : !sym_ok ? "fail-symmetry" : !bound_ok ? "fail-lambda1-bound" : "ok";
    rec.extras = {{"mean_law_target", target},
                  {"mean_top", res.mean_top()},
                  {"mean_top_stderr", res.mean_top_stderr()},
                  {"symmetry_defect", res.symmetry_defect()},
                  {"lambda1_bound", lambda1_upper_bound(cfg.params)},
                  {"xi_stderr", xi.resolved ? nlohmann::json(xi.xi_stderr) : nlohmann::json(nullptr)},
                  {"orthonormalizations", res.orthonormalizations},
                  {"counted_steps", res.counted_steps},
                  {"burn_in", cfg.effective_burn_in()},
                  {"batch_count", cfg.batch_count},
                  {"reorth_period", cfg.reorth_period}};
    rec.wall_clock_s = elapsed(t0);
    return rec;
}

std::vector<ResultRecord> run_lyapunov(const RunConfig& c) {
    struct Cell {
        double r;
        int M;
        std::pair<double, double> z;
        std::uint64_t seed;
    };
    std::vector<Cell> cells;
    for (double r : c.r)
        for (int M : c.M)
            for (auto z : z_pairs(c))
                for (auto s : c.seeds) cells.push_back({r, M, z, s});
    return parallel_map<ResultRecord>(
        cells.size(), [&](std::size_t i) { return lyapunov_cell(c, cells[i].r, cells[i].M, cells[i].z, cells[i].seed); },
        c.workers);
}

// --- xi-scaling -----------------------------------------------------------

std::vector<ResultRecord> run_xi_scaling(const RunConfig& c) {
    struct Cell {
        double r;
        int M;
        std::uint64_t seed;
    };
    std::vector<Cell> cells;
    for (double r : c.r)
        for (int M : c.M)
            for (auto s : c.seeds) cells.push_back({r, M, s});
    return parallel_map<ResultRecord>(
        cells.size(),
        [&](std::size_t i) {
            const auto t0 = std::chrono::steady_clock::now();
            CocycleRunConfig cfg;
            cfg.params = ModelParams::from_r(cells[i].r);
            cfg.M = cells[i].M;
            cfg.n_steps = *c.n_steps;
            cfg.seed = cells[i].seed;
            cfg.reorth_period = c.reorth;
            cfg.batch_count = c.batches;
            const LyapunovResult res = lyapunov_spectrum(cfg);
            ResultRecord rec = base_record(c, cfg.params, cfg.M, 0, 1.0, 0.0, cfg.seed, cfg.n_steps);
            const int k = cfg.M - 1;
            rec.rows.push_back({cfg.M, res.exponents[k], res.stderrs[k]});
            const LocalizationLength xi = localization_length(res);
            const XiBound bound = xi_upper_bound(cfg.params, cfg.M);
            rec.extras = {{"xi_bound", bound.vacuous ? nlohmann::json("vacuous") : nlohmann::json(bound.value)},
                          {"lambda_1", res.exponents[0]},
                          {"mean_top", res.mean_top()}};
            if (xi.resolved) {
                rec.xi_M = xi.xi;
                rec.extras["xi_stderr"] = xi.xi_stderr;
                rec.status = (!bound.vacuous && xi.xi - 3.0 * xi.xi_stderr > bound.value) ? "fail-xi-bound" : "ok";
            } else {
                rec.status = "not-resolved";
            }
            rec.wall_clock_s = elapsed(t0);
            return rec;
        },
        c.workers);
}

// --- dos ------------------------------------------------------------------

std::vector<ResultRecord> run_dos(const RunConfig& c, std::ostream& err) {
    struct Cell {
        double r;
        int M;
    };
    std::vector<Cell> cells;
    for (double r : c.r)
        for (int M : c.M) cells.push_back({r, M});
    std::vector<DOSHistogram> hists(cells.size());
    auto records = parallel_map<ResultRecord>(
        cells.size(),
        [&](std::size_t i) {
            const auto t0 = std::chrono::steady_clock::now();
            const ModelParams p = ModelParams::from_r(cells[i].r);
            hists[i] = dos_moments(p, cells[i].M, *c.L, c.seeds, c.K, c.bins);
            const DOSHistogram& h = hists[i];
            ResultRecord rec = base_record(c, p, cells[i].M, *c.L, 1.0, 0.0, c.seeds.front(), 0);
            bool flat = true;
            nlohmann::json re = nlohmann::json::array(), im = nlohmann::json::array();
            for (int k = 1; k <= c.K; ++k) {
                rec.rows.push_back({k, std::abs(h.moments[k]), h.moment_stderr[k]});
                re.push_back(h.moments[k].real());
                im.push_back(h.moments[k].imag());
                if (h.samples > 1 && std::abs(h.moments[k]) > 3.0 * h.moment_stderr[k] + 1e-12) flat = false;
            }
            const bool ks_ok = h.ks_statistic <= h.ks_critical;
            rec.status = !flat ? "fail-moments" : !ks_ok ? "fail-ks" : "ok";
            rec.extras = {{"moment_re", re},          {"moment_im", im},
                          {"ks_statistic", h.ks_statistic}, {"ks_critical", h.ks_critical},
                          {"samples", h.samples},    {"N", h.N},
                          {"seeds", c.seeds}};
            rec.wall_clock_s = elapsed(t0);
            return rec;
        },
        c.workers);
    if (!c.table.empty()) {
        std::ofstream f(c.table);
        if (!f) throw std::runtime_error(c.table + ": " + std::strerror(errno));
        f << "r,M,L,bin_lo,bin_hi,count\n";
        for (std::size_t i = 0; i < cells.size(); ++i)
            for (std::size_t b = 0; b < hists[i].counts.size(); ++b)
                f << format_double(cells[i].r) << ',' << cells[i].M << ',' << *c.L << ','
                  << format_double(hists[i].edges[b]) << ',' << format_double(hists[i].edges[b + 1]) << ','
                  << hists[i].counts[b] << '\n';
        if (!f) err << "warning: failed writing " << c.table << '\n';
    }
    return records;
}

// --- det-check ------------------------------------------------------------

std::vector<ResultRecord> run_det_check(const RunConfig& c) {
    struct Cell {
        double r;
        int M;
        std::uint64_t seed;
    };
    std::vector<Cell> cells;
    for (double r : c.r)
        for (int M : c.M)
            for (auto s : c.seeds) cells.push_back({r, M, s});
    return parallel_map<ResultRecord>(
        cells.size(),
        [&](std::size_t i) {
            const auto t0 = std::chrono::steady_clock::now();
            const ModelParams p = ModelParams::from_r(cells[i].r);
            const int M = cells[i].M, L = *c.L;
            const PhaseField phases = sample_phase_field(cells[i].seed, L, M);
            const SpectrumResult spectrum = eigendecompose(build_cylinder_operator(p, phases, L, M));
            std::mt19937_64 rng(cells[i].seed);
            std::uniform_real_distribution<double> unit(0.0, 1.0);
            ResultRecord rec = base_record(c, p, M, L, 1.0, 0.0, cells[i].seed, 0);
            nlohmann::json zs = nlohmann::json::array();
            int degenerate = 0;
            double worst = 0.0;
            for (int n = 0; n < c.nz; ++n) {
                double mod = 1.0;
                while (std::abs(mod - 1.0) < 1e-3) mod = 0.5 * std::pow(4.0, unit(rng));
                const double arg = 2.0 * unit(rng);
                const DeterminantCheck d = determinant_identity_residual(make_z(mod, arg), p, M, L, phases, spectrum);
                zs.push_back({{"z_mod", mod}, {"z_arg_over_pi", arg}, {"degenerate", d.degenerate}});
                if (d.degenerate) {
                    ++degenerate;
                    continue;
                }
                worst = std::max(worst, d.relative_error);
                rec.rows.push_back({n, d.relative_error, std::nullopt});
            }
            rec.status = worst <= 1e-8 ? "ok" : "fail-determinant-identity";
            rec.extras = {{"z", zs}, {"degenerate", degenerate}, {"max_relative_error", worst}};
            rec.wall_clock_s = elapsed(t0);
            return rec;
        },
        c.workers);
}

// --- bands ----------------------------------------------------------------

std::vector<ResultRecord> run_bands(const RunConfig& c, std::ostream& err) {
    std::vector<ResultRecord> records;
    std::ofstream table;
    if (!c.table.empty()) {
        table.open(c.table);
        if (!table) throw std::runtime_error(c.table + ": " + std::strerror(errno));
        table << "r,M,x,y,theta_1,theta_2\n";
    }
    for (double r : c.r) {
        for (int M : c.M) {
            const auto t0 = std::chrono::steady_clock::now();
            const ModelParams p = ModelParams::from_r(r);
            const BandStructure bs = band_structure(p, M, c.grid);
            ResultRecord rec = base_record(c, p, M, 0, 1.0, 0.0, 0, 0);
            rec.rows.push_back({0, bs.measured_edge, std::nullopt});
            rec.rows.push_back({1, bs.band_width, std::nullopt});
            const bool det_ok = bs.max_det_defect <= 1e-12 && bs.max_modulus_defect <= 1e-12;
            const bool edge_ok = std::abs(bs.measured_edge - bs.predicted_edge) <= 1e-9;
            const bool width_ok = p.extreme() || bs.band_width > 0.0;
            rec.status = !det_ok ? "fail-determinant" : !edge_ok ? "fail-band-edge" : !width_ok ? "fail-flat-band" : "ok";
            rec.extras = {{"predicted_edge", bs.predicted_edge},
                          {"max_det_defect", bs.max_det_defect},
                          {"grid", c.grid}};
            rec.wall_clock_s = elapsed(t0);
            records.push_back(rec);
            if (table)
                for (const BandPoint& pt : bs.points)
                    table << format_double(r) << ',' << M << ',' << format_double(pt.x) << ',' << format_double(pt.y)
                          << ',' << format_double(pt.theta[0]) << ',' << format_double(pt.theta[1]) << '\n';
        }
    }
    if (!c.table.empty() && !table) err << "warning: failed writing " << c.table << '\n';
    return records;
}

// --- decay ----------------------------------------------------------------

std::vector<ResultRecord> run_decay(const RunConfig& c, std::ostream& err) {
    std::vector<ResultRecord> records;
    std::ofstream table;
    if (!c.table.empty()) {
        table.open(c.table);
        if (!table) throw std::runtime_error(c.table + ": " + std::strerror(errno));
        table << "r,M,L,seed,index,eigenphase,peak_column,rate,r_squared,status\n";
    }
    for (double r : c.r)
        for (int M : c.M)
            for (auto seed : c.seeds) {
                const auto t0 = std::chrono::steady_clock::now();
                const ModelParams p = ModelParams::from_r(r);
                const int L = *c.L;
                const FiniteOperator op = build_cylinder_operator(p, sample_phase_field(seed, L, M), L, M);
                SpectrumOptions opt;
                opt.vectors = true;
                const SpectrumResult s = eigendecompose(op, opt);
                std::vector<double> rates;
                std::map<std::string, int> tally;
                for (std::size_t i = 0; i < s.eigenphases.size(); ++i) {
                    const DecayFit fit = eigenvector_decay_fit(s, i);
                    if (std::abs(fit.peak_column) > L) continue;
                    ++tally[to_string(fit.status)];
                    if (fit.status == DecayStatus::Localized) rates.push_back(fit.rate);
                    if (table)
                        table << format_double(r) << ',' << M << ',' << L << ',' << seed << ',' << i << ','
                              << format_double(fit.eigenphase) << ',' << fit.peak_column << ','
                              << format_double(fit.rate) << ',' << format_double(fit.r_squared) << ','
                              << to_string(fit.status) << '\n';
                }
                ResultRecord rec = base_record(c, p, M, L, 1.0, 0.0, seed, p.extreme() ? 0 : *c.n_steps);
                rec.extras["status_counts"] = tally;
                if (!rates.empty()) {
                    std::nth_element(rates.begin(), rates.begin() + rates.size() / 2, rates.end());
                    const double median = rates[rates.size() / 2];
                    rec.rows.push_back({0, median, std::nullopt});
                    rec.status = "ok";
                    if (!p.extreme()) {
                        CocycleRunConfig cfg;
                        cfg.params = p;
                        cfg.M = M;
                        cfg.n_steps = *c.n_steps;
                        cfg.seed = seed;
                        const LyapunovResult lr = lyapunov_spectrum(cfg);
                        const double lo = lr.exponents[M - 1] - 0.1, hi = lr.exponents[0] + 0.1;
                        rec.extras["lambda_M"] = lr.exponents[M - 1];
                        rec.extras["lambda_1"] = lr.exponents[0];
                        if (median < lo || median > hi) rec.status = "flagged-outside-lyapunov-range";
                    }
                } else {
                    rec.status = tally.count("compact support") ? "compact-support" : "not-localized";
                }
                rec.wall_clock_s = elapsed(t0);
                records.push_back(rec);
            }
    if (!c.table.empty() && !table) err << "warning: failed writing " << c.table << '\n';
    return records;
}

// --- dump -----------------------------------------------------------------

int run_dump(const RunConfig& c, std::ostream& out) {
    const ModelParams p = ModelParams::from_r(c.r.front());
    const int M = c.M.front(), L = *c.L;
    const PhaseField phases = sample_phase_field(c.seeds.front(), L, M);
    std::ofstream file;
    std::ostream* sink = &out;
    if (!c.out.empty() && c.out != "-") {
        file.open(c.out);
        if (!file) throw std::runtime_error(c.out + ": " + std::strerror(errno));
        sink = &file;
    }
    if (c.what == "operator") {
        write_triplets(*sink, build_cylinder_operator(p, phases, L, M));
    } else if (c.what == "phases") {
        write_phase_field(*sink, phases);
    } else if (c.what == "transfer") {
        p.require_nondegenerate("dump transfer");
        const auto zp = z_pairs(c).front();
        const CMatrix m = propagate(make_z(zp.first, zp.second), p, phases, L).transfer.matrix;
        *sink << "row,col,re,im\n";
        for (Eigen::Index i = 0; i < m.rows(); ++i)
            for (Eigen::Index j = 0; j < m.cols(); ++j)
                *sink << i << ',' << j << ',' << format_double(m(i, j).real()) << ',' << format_double(m(i, j).imag())
                      << '\n';
    } else {
        throw UsageError("what: expected operator, phases or transfer, got " + c.what);
    }
    return 0;
}

void emit_to(const std::vector<ResultRecord>& records, const RunConfig& c, std::ostream& out) {
    const Format f = parse_format(c.format);
    if (c.out.empty() || c.out == "-") {
        if (f == Format::Csv)
            write_csv(out, records);
        else
            write_json_lines(out, records);
        return;
    }
    emit(records, f, c.out);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    RunConfig c;
    CLI::App app{"Network-model laboratory: cocycle Lyapunov spectra, spectra and exact identities"};
    app.set_config("--config", "", "Flat key = value file; command-line flags take precedence");
    app.fallthrough();
    app.require_subcommand(1, 1);
    app.add_option("--r", c.r, "Reflection amplitudes (t = sqrt(1 - r^2))");
    app.add_option("--M", c.M, "Half ring sizes (ring circumference 2M)");
    app.add_option("--L", c.L, "Window half length (columns -2L..2L)");
    app.add_option("--z-mod", c.z_mod, "Spectral parameter moduli");
    app.add_option("--z-arg", c.z_arg, "Spectral parameter angles in units of pi");
    app.add_option("--steps", c.n_steps, "Cocycle steps per run");
    app.add_option("--seed", c.seeds, "Seeds");
    app.add_option("--seed-count", c.seed_count, "Use seeds 1..n when --seed is absent");
    app.add_option("--out", c.out, "Output path (default stdout)");
    app.add_option("--format", c.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--workers", c.workers, "Concurrent cells")->envname("CCNET_WORKERS");
    app.add_option("--reorth", c.reorth, "Steps between orthonormalizations");
    app.add_option("--batches", c.batches, "Batch count for error bars");
    app.add_option("--K", c.K, "Highest trace moment");
    app.add_option("--bins", c.bins, "Histogram bins");
    app.add_option("--grid", c.grid, "Momentum grid points");
    app.add_option("--nz", c.nz, "Random off-circle z per seed");
    app.add_option("--table", c.table, "Detail table path (histogram, band table, decay fits)");
    app.add_option("--what", c.what, "dump: operator, phases or transfer");
    app.add_flag("--quick", c.quick, "verify: reduced sizes");
    for (const char* name : {"lyapunov", "xi-scaling", "dos", "det-check", "bands", "decay", "verify", "dump"})
        app.add_subcommand(name)->fallthrough();

    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? 0 : kExitUsage;
    }
    c.command = app.get_subcommands().front()->get_name();

    try {
        if (c.command == "verify") return run_verify_suite(c.quick, out) ? 0 : kExitCheckFailed;
        apply_defaults(c);
        validate(c);
        if (c.command == "dump") return run_dump(c, out);
        std::vector<ResultRecord> records;
        if (c.command == "lyapunov")
            records = run_lyapunov(c);
        else if (c.command == "xi-scaling")
            records = run_xi_scaling(c);
        else if (c.command == "dos")
            records = run_dos(c, err);
        else if (c.command == "det-check")
            records = run_det_check(c);
        else if (c.command == "bands")
            records = run_bands(c, err);
        else
            records = run_decay(c, err);
        sort_records(records);
        emit_to(records, c, out);
        const bool failed =
            std::any_of(records.begin(), records.end(), [](const ResultRecord& r) { return is_failure(r.status); });
        for (const auto& r : records)
            if (is_failure(r.status)) err << "check failed: " << r.command << " r=" << r.r << " M=" << r.M << ": " << r.status << '\n';
        return failed ? kExitCheckFailed : 0;
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const ValidationError& e) {
        err << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const DomainError& e) {
        err << "domain error: " << e.what() << '\n';
        return kExitDomain;
    }
}

}  // namespace ccnet::cli
