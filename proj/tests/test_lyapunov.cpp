#include <doctest.h>

#include "ccnet/lyapunov.hpp"
#include "oracles.hpp"

using namespace ccnet;

namespace {

constexpr double kCritical = 0.7071067811865476;

LyapunovResult run(double r, int M, long n, std::uint64_t seed = 1, cplx z = 1.0) {
    CocycleRunConfig c;
    c.params = ModelParams::from_r(r);
    c.M = M;
    c.n_steps = n;
    c.seed = seed;
    c.z = z;
    return lyapunov_spectrum(c);
}

}  // namespace

TEST_SUITE("lyapunov") {
    TEST_CASE("config validation") {
        CocycleRunConfig c;
        c.n_steps = 10;
        CHECK_THROWS_AS(c.validate(), ValidationError);
        c = {};
        c.reorth_period = 0;
        CHECK_THROWS_AS(c.validate(), ValidationError);
        c = {};
        c.params = ModelParams::from_r(1.0);
        CHECK_THROWS_AS(c.validate(), DomainError);
        c = {};
        c.z = 0.0;
        CHECK_THROWS_AS(c.validate(), DomainError);
        c = {};
        CHECK(c.effective_burn_in() == c.n_steps / 100);
    }

    TEST_CASE("spectrum is sorted, symmetric and obeys the mean law") {
        for (double r : {kCritical, 0.6}) {
            const LyapunovResult res = run(r, 2, 40000);
            REQUIRE(res.exponents.size() == 4);
            CHECK(std::is_sorted(res.exponents.rbegin(), res.exponents.rend()));
            CHECK(res.symmetric_within(3.0));
            const double target = 0.5 * std::log(1.0 / ModelParams::from_r(r).rt());
            CHECK(std::abs(res.mean_top() - target) <= 0.01);
            CHECK(res.exponents[0] <= lambda1_upper_bound(ModelParams::from_r(r)) + 3.0 * res.stderrs[0]);
            CHECK(res.gammas()[0] == doctest::Approx(std::exp(res.exponents[0])));
        }
    }

    TEST_CASE("runs are deterministic per seed") {
        const LyapunovResult a = run(0.6, 2, 5000, 7), b = run(0.6, 2, 5000, 7), c = run(0.6, 2, 5000, 8);
        CHECK(a.exponents == b.exponents);
        CHECK(a.stderrs == b.stderrs);
        CHECK(a.exponents != c.exponents);
    }

    TEST_CASE("early orthonormalization keeps long reorthogonalization periods correct") {
        CocycleRunConfig c;
        c.params = ModelParams::from_r(0.2);
        c.M = 3;
        c.n_steps = 20000;
        c.reorth_period = 200;
        const LyapunovResult sparse = lyapunov_spectrum(c);
        CHECK(sparse.orthonormalizations > c.n_steps / c.reorth_period);
        for (double v : sparse.exponents) CHECK(std::isfinite(v));
        c.reorth_period = 1;
        const LyapunovResult dense = lyapunov_spectrum(c);
        for (int k = 0; k < 6; ++k) CHECK(std::abs(sparse.exponents[k] - dense.exponents[k]) <= dense.stderrs[k]);
    }

    TEST_CASE("doubling the run shrinks the error bar by about root two") {
        double s1 = 0.0, s2 = 0.0;
        for (std::uint64_t seed = 1; seed <= 6; ++seed) {
            s1 += run(0.6, 1, 20000, seed).mean_top_stderr();
            s2 += run(0.6, 1, 40000, seed).mean_top_stderr();
        }
        const double ratio = s1 / s2;
        CHECK(ratio >= 1.1);
        CHECK(ratio <= 1.8);
    }

    TEST_CASE("localization length") {
        const LocalizationLength exact = localization_length(0.5, 0.0);
        CHECK(exact.resolved);
        CHECK(exact.xi == doctest::Approx(2.0));
        CHECK_FALSE(localization_length(0.01, 0.01).resolved);
        const LyapunovResult res = run(kCritical, 1, 40000);
        const LocalizationLength xi = localization_length(res);
        REQUIRE(xi.resolved);
        CHECK(std::abs(xi.xi - 1.0 / 0.3465735902799727) <= 0.1 * 2.885390081777927);
        CHECK(xi.xi_stderr > 0.0);
    }

    TEST_CASE("Thouless right-hand side against quadrature") {
        const ModelParams p = ModelParams::from_r(kCritical);
        CHECK(thouless_rhs(1.0, p) == doctest::Approx(0.346574).epsilon(1e-6));
        CHECK(thouless_rhs(2.0, p) == doctest::Approx(1.039721).epsilon(1e-6));
        CHECK(thouless_rhs(0.5, p) == doctest::Approx(1.039721).epsilon(1e-6));
        for (cplx z : {cplx(2.0), cplx(0.5), std::polar(1.7, 0.4), std::polar(0.3, 2.0)}) {
            const double expect = 2.0 * oracle::log_potential(z) + 0.5 * std::log(1.0 / p.rt()) - std::log(std::abs(z));
            CHECK(std::abs(thouless_rhs(z, p) - expect) <= 1e-10);
        }
        CHECK_THROWS_AS(thouless_rhs(0.0, p), DomainError);
    }

    TEST_CASE("off-circle mean law follows the Thouless right-hand side") {
        for (double mod : {0.5, 2.0}) {
            const cplx z = std::polar(mod, 0.3);
            const LyapunovResult res = run(0.6, 2, 40000, 3, z);
            CHECK(std::abs(res.mean_top() - thouless_rhs(z, ModelParams::from_r(0.6))) <= 3.0 * res.mean_top_stderr() + 1e-3);
        }
    }

    TEST_CASE("z-independence check") {
        const ModelParams p = ModelParams::from_r(0.6);
        const ZIndependenceReport same = z_independence_check(p, 2, 1.0, 1.0, 5000, {4, 4});
        CHECK(same.all_pass);
        for (double d : same.difference) CHECK(d == 0.0);
        const ZIndependenceReport rotated = z_independence_check(p, 2, 1.0, oracle::unit(kPi / 5), 40000, {4, 5});
        CHECK(rotated.all_pass);
        CHECK_THROWS_AS(z_independence_check(p, 2, 1.0, 2.0, 1000, {1, 1}), ValidationError);
    }

    TEST_CASE("exponent lower bounds") {
        const std::vector<double> b = exponent_lower_bounds(0.34657, 0.535, 4);
        REQUIRE(b.size() == 4);
        CHECK(b[0] == doctest::Approx(0.34657));
        CHECK(b[1] == doctest::Approx(0.34657 - 0.535 / 3.0));
        CHECK(b[1] == doctest::Approx(0.16824).epsilon(1e-4));
        for (double v : exponent_lower_bounds(0.3, 0.0, 5)) CHECK(v == 0.3);
    }

    TEST_CASE("localization length upper bound") {
        const XiBound one = xi_upper_bound(ModelParams::from_r(kCritical), 1);
        CHECK_FALSE(one.vacuous);
        CHECK(one.value == doctest::Approx(2.885390).epsilon(1e-6));
        CHECK(xi_upper_bound(ModelParams::from_r(kCritical), 2).vacuous);
        CHECK(xi_upper_bound(ModelParams::from_r(1e-8), 1).value < 0.2);
        const ModelParams crit = ModelParams::from_r(kCritical);
        CHECK(lambda1_upper_bound(crit) ==
              doctest::Approx(0.5 * (std::log(2.0) + std::log((1 + crit.r()) * (1 + crit.t())))));
    }

    TEST_CASE("simplicity resolves at M=1 quickly") {
        const SimplicityReport rep = resolve_simplicity(ModelParams::from_r(kCritical), 1, 1, 1000, 64000);
        CHECK(rep.resolved);
        CHECK(rep.n_required >= 1000);
        CHECK(rep.gaps.size() == 1);
    }
}
