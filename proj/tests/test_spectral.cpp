#include <doctest.h>

#include <random>

#include "ccnet/spectral.hpp"
#include "ccnet/transfer.hpp"
#include "oracles.hpp"

using namespace ccnet;

namespace {

constexpr double kCritical = 0.7071067811865476;

double circular_distance(double a, double b) {
    const double d = std::fmod(std::abs(a - b), 2.0 * kPi);
    return std::min(d, 2.0 * kPi - d);
}

}  // namespace

TEST_SUITE("spectral") {
    TEST_CASE("M=1 L=1 eigenphases match characteristic polynomial roots") {
        for (double r : {0.3, 0.6, 0.9}) {
            for (std::uint64_t seed : {0u, 3u}) {
                const PhaseField q = seed == 0 ? PhaseField(Window(1, 1)) : sample_phase_field(seed, 1, 1);
                const FiniteOperator op = build_cylinder_operator(ModelParams::from_r(r), q, 1, 1);
                const std::vector<cplx> roots = oracle::polynomial_roots(oracle::characteristic_polynomial(op.dense()));
                // repeated roots (trivial phases) limit the root finder to about sqrt(eps)
                const double tolerance = seed == 0 ? 1e-6 : 1e-9;
                for (EigenMethod method : {EigenMethod::Cayley, EigenMethod::General}) {
                    SpectrumOptions o;
                    o.method = method;
                    const SpectrumResult s = eigendecompose(op, o);
                    REQUIRE(s.eigenvalues.size() == 10);
                    std::vector<bool> used(10, false);
                    for (cplx root : roots) {
                        std::size_t best = 0;
                        double dist = 1e300;
                        for (std::size_t i = 0; i < 10; ++i)
                            if (!used[i] && std::abs(s.eigenvalues[i] - root) < dist) {
                                dist = std::abs(s.eigenvalues[i] - root);
                                best = i;
                            }
                        used[best] = true;
                        CHECK(dist <= tolerance);
                    }
                }
            }
        }
    }

    TEST_CASE("L=0 swap has eigenphases 0 and pi") {
        const SpectrumResult s = eigendecompose(build_cylinder_operator(ModelParams::from_r(0.6), sample_phase_field(1, 0, 1), 0, 1));
        REQUIRE(s.eigenphases.size() == 2);
        CHECK(circular_distance(s.eigenphases[0], 0.0) <= 1e-12);
        CHECK(std::abs(s.eigenphases[1] - kPi) <= 1e-12);
    }

    TEST_CASE("eigendecomposition: unit circle, residuals, sorted phases, cap") {
        const FiniteOperator op = build_cylinder_operator(ModelParams::from_r(0.6), sample_phase_field(2, 4, 3), 4, 3);
        SpectrumOptions o;
        o.vectors = true;
        const SpectrumResult s = eigendecompose(op, o);
        CHECK(s.eigenphases.size() == op.dim());
        CHECK(std::is_sorted(s.eigenphases.begin(), s.eigenphases.end()));
        CHECK(s.eigenphases.front() >= 0.0);
        CHECK(s.eigenphases.back() < 2.0 * kPi);
        double mass = 0.0;
        for (cplx l : s.eigenvalues) mass += std::norm(l);
        CHECK(std::abs(mass / double(op.dim()) - 1.0) <= 1e-8);
        CHECK(s.max_modulus_defect <= 1e-8);
        CHECK(s.max_residual <= 1e-8);
        const CMatrix u = op.dense();
        for (Eigen::Index i = 0; i < s.eigenvectors.cols(); i += 7) {
            const CVector v = s.eigenvectors.col(i);
            CHECK((u * v - s.eigenvalues[i] * v).norm() <= 1e-8 * v.norm());
        }
        SpectrumOptions capped;
        capped.max_dim = 10;
        CHECK_THROWS_AS(eigendecompose(op, capped), ValidationError);
    }

    TEST_CASE("eigensolver routes agree on a larger window") {
        const FiniteOperator op = build_cylinder_operator(ModelParams::from_r(kCritical), sample_phase_field(9, 10, 3), 10, 3);
        SpectrumOptions g;
        g.method = EigenMethod::General;
        const SpectrumResult a = eigendecompose(op), b = eigendecompose(op, g);
        for (std::size_t i = 0; i < a.eigenphases.size(); ++i) CHECK(circular_distance(a.eigenphases[i], b.eigenphases[i]) <= 1e-10);
    }

    TEST_CASE("trace moments equal eigenvalue power sums") {
        const FiniteOperator op = build_cylinder_operator(ModelParams::from_r(0.4), sample_phase_field(5, 6, 2), 6, 2);
        const SpectrumResult s = eigendecompose(op);
        const std::vector<cplx> m = trace_moments(op, 8);
        CHECK(m[0] == cplx(1.0));
        for (int k = 1; k <= 8; ++k) {
            cplx sum = 0.0;
            for (cplx l : s.eigenvalues) sum += std::pow(l, k);
            CHECK(std::abs(sum / double(op.dim()) - m[k]) <= 1e-12);
        }
    }

    TEST_CASE("Kolmogorov-Smirnov statistic") {
        CHECK(ks_uniform_statistic({0.5}) == doctest::Approx(0.5));
        std::vector<double> grid;
        for (int i = 0; i < 100; ++i) grid.push_back((i + 0.5) / 100.0);
        CHECK(ks_uniform_statistic(grid) == doctest::Approx(0.005));
        CHECK_THROWS_AS(ks_uniform_statistic({}), ValidationError);
    }

    TEST_CASE("density of states histogram and moments") {
        const std::vector<std::uint64_t> seeds{1, 2, 3, 4};
        const DOSHistogram h = dos_moments(ModelParams::from_r(kCritical), 2, 8, seeds, 8, 32);
        CHECK(h.samples == 4);
        CHECK(h.N == 2u * 2u * 33u);
        CHECK(h.edges.size() == 33);
        CHECK(h.edges.front() == 0.0);
        CHECK(h.edges.back() == doctest::Approx(2.0 * kPi));
        long total = 0;
        for (long c : h.counts) total += c;
        CHECK(total == static_cast<long>(h.N) * h.samples);
        CHECK(h.moments[0] == cplx(1.0));
        CHECK(h.moments.size() == 9);
        CHECK(h.ks_critical == doctest::Approx(1.63 / std::sqrt(double(h.N) * h.samples)));
        CHECK_THROWS_AS(dos_moments(ModelParams::from_r(0.5), 2, 2, {}, 4), ValidationError);
        CHECK_THROWS_AS(dos_moments(ModelParams::from_r(0.5), 2, 2, seeds, 0), ValidationError);
    }

    TEST_CASE("parity operator algebra") {
        std::mt19937_64 rng(1);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        for (int i = 0; i < 100; ++i) {
            const int M = 1 + i % 4;
            const cplx z = std::polar(0.25 * std::pow(16.0, u(rng)), 2.0 * kPi * u(rng));
            const ParityOperators po = build_parity_operators(z, M);
            const int n = 2 * M;
            const CMatrix id = CMatrix::Identity(n, n);
            CHECK((po.w * po.w - id).cwiseAbs().maxCoeff() <= 1e-12);
            CHECK((po.v * po.swap * po.v * po.swap - id).cwiseAbs().maxCoeff() <= 1e-12);
            CHECK((po.swap * po.swap - id).cwiseAbs().maxCoeff() == 0.0);
            CHECK((po.even_projection + po.odd_projection - id).cwiseAbs().maxCoeff() == 0.0);
            const CMatrix image = po.w * po.even_projection;
            for (int k = 0; k < M; ++k)
                for (int c = 0; c < n; ++c) CHECK(std::abs(image(2 * k + 1, c) - z * image((2 * k + 2) % n, c)) <= 1e-12);
        }
        CHECK_THROWS_AS(build_parity_operators(0.0, 2), DomainError);
    }

    TEST_CASE("determinant identity off the circle") {
        std::mt19937_64 rng(2);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        for (double r : {0.3, 0.6}) {
            const ModelParams p = ModelParams::from_r(r);
            for (int M = 1; M <= 3; ++M)
                for (int L = 0; L <= 3; ++L) {
                    const PhaseField f = sample_phase_field(10 * M + L, L, M);
                    const SpectrumResult s = eigendecompose(build_cylinder_operator(p, f, L, M));
                    for (int i = 0; i < 4; ++i) {
                        const cplx z = std::polar(0.5 * std::pow(4.0, u(rng)), 2.0 * kPi * u(rng));
                        const DeterminantCheck d = determinant_identity_residual(z, p, M, L, f, s);
                        REQUIRE_FALSE(d.degenerate);
                        CHECK(d.relative_error <= 1e-8);
                        CHECK(d.printed_form_relative_error == doctest::Approx(1.0 - std::pow(2.0, -M)).epsilon(1e-6));
                    }
                }
        }
    }

    TEST_CASE("determinant identity vanishes together at an eigenvalue") {
        const ModelParams p = ModelParams::from_r(0.6);
        const PhaseField f = sample_phase_field(4, 2, 2);
        const SpectrumResult s = eigendecompose(build_cylinder_operator(p, f, 2, 2));
        const DeterminantCheck d = determinant_identity_residual(s.eigenvalues[5], p, 2, 2, f, s);
        CHECK(d.degenerate);
        CHECK(d.relative_min_singular <= 1e-10);
        const DeterminantCheck away = determinant_identity_residual(cplx(1.5, 0.2), p, 2, 2, f, s);
        CHECK(away.relative_min_singular > 1e-6);
        CHECK_THROWS_AS(determinant_identity_residual(cplx(1.5), ModelParams::from_r(0.0), 2, 2, f), DomainError);
    }

    TEST_CASE("band symbol closed forms") {
        const ModelParams p = ModelParams::from_r(0.6);
        std::mt19937_64 rng(3);
        std::uniform_real_distribution<double> u(0.0, 2.0 * kPi);
        for (int i = 0; i < 200; ++i) {
            const double x = u(rng), y = u(rng);
            const Eigen::Matrix2cd s = band_symbol(x, y, p);
            CHECK(std::abs(s.determinant() + 1.0) <= 1e-12);
            CHECK(std::abs(s.trace() - cplx(0.0, 2.0 * p.rt() * (std::sin(x) - std::sin(y)))) <= 1e-12);
            Eigen::ComplexEigenSolver<Eigen::Matrix2cd> es(s);
            for (int k = 0; k < 2; ++k) {
                const cplx l = es.eigenvalues()(k);
                CHECK(std::abs(std::abs(l) - 1.0) <= 1e-12);
                CHECK(std::abs(std::sin(std::arg(l)) - p.rt() * (std::sin(x) - std::sin(y))) <= 1e-12);
            }
        }
        const ModelParams crit = ModelParams::from_r(kCritical);
        Eigen::ComplexEigenSolver<Eigen::Matrix2cd> es(band_symbol(kPi / 2, -kPi / 2, crit));
        CHECK(std::abs(es.eigenvalues()(0) - cplx(0, 1)) <= 1e-7);
        CHECK(std::abs(es.eigenvalues()(1) - cplx(0, 1)) <= 1e-7);
    }

    TEST_CASE("band structure on the plane and the cylinder") {
        for (double r : {0.2, 0.6, kCritical}) {
            const ModelParams p = ModelParams::from_r(r);
            const BandStructure plane = band_structure(p, 0, 64);
            CHECK(plane.points.size() == 64u * 64u);
            CHECK(plane.max_det_defect <= 1e-12);
            CHECK(plane.max_modulus_defect <= 1e-12);
            CHECK(plane.predicted_edge == doctest::Approx(std::asin(2.0 * p.rt())));
            CHECK(std::abs(plane.measured_edge - plane.predicted_edge) <= 1e-9);
            CHECK(plane.band_width > 0.0);
            const BandStructure strip = band_structure(p, 3, 32);
            CHECK(strip.points.size() == 32u * 3u);
            for (const BandPoint& pt : strip.points)
                CHECK(std::abs(std::remainder(pt.y * 3.0 / (2.0 * kPi), 1.0)) <= 1e-12);
        }
        CHECK(band_structure(ModelParams::from_r(0.0), 0, 16).band_width <= 1e-12);
    }

    TEST_CASE("trivial cylinder spectrum squares into the symbol bands") {
        const ModelParams p = ModelParams::from_r(0.6);
        const int M = 2, L = 10;
        const SpectrumResult s = eigendecompose(build_cylinder_operator(p, PhaseField(Window(L, M)), L, M));
        const double edge = std::asin(p.rt());
        for (double theta : s.eigenphases) {
            // e^{2 i theta} is a symbol eigenvalue with y in {0, pi}: sin(2 theta) in [-rt, rt]... up to sign of cos
            const double s2 = std::sin(2.0 * theta);
            CHECK(std::abs(s2) <= std::sin(edge) + 1e-9);
        }
    }

    TEST_CASE("decay fit statuses") {
        SpectrumOptions o;
        o.vectors = true;
        {
            const SpectrumResult s = eigendecompose(build_cylinder_operator(ModelParams::from_r(0.0), sample_phase_field(1, 8, 2), 8, 2), o);
            for (std::size_t i = 0; i < s.eigenphases.size(); i += 5)
                CHECK(eigenvector_decay_fit(s, i).status == DecayStatus::CompactSupport);
        }
        {
            const SpectrumResult s = eigendecompose(build_cylinder_operator(ModelParams::from_r(0.6), PhaseField(Window(24, 1)), 24, 1), o);
            int not_localized = 0;
            for (std::size_t i = 0; i < s.eigenphases.size(); ++i)
                not_localized += eigenvector_decay_fit(s, i).status == DecayStatus::NotLocalized;
            CHECK(not_localized >= static_cast<int>(s.eigenphases.size()) * 9 / 10);
        }
        {
            const SpectrumResult s = eigendecompose(build_cylinder_operator(ModelParams::from_r(0.6), sample_phase_field(2, 2, 2), 2, 2), o);
            CHECK(eigenvector_decay_fit(s, 0).status == DecayStatus::WindowTooShort);
            CHECK_THROWS_AS(eigenvector_decay_fit(s, 999), ValidationError);
        }
        {
            const SpectrumResult s = eigendecompose(build_cylinder_operator(ModelParams::from_r(0.95), sample_phase_field(3, 40, 2), 40, 2), o);
            int localized = 0;
            for (std::size_t i = 0; i < s.eigenphases.size(); ++i) {
                const DecayFit fit = eigenvector_decay_fit(s, i);
                if (fit.status == DecayStatus::Localized) {
                    ++localized;
                    CHECK(fit.rate > 0.0);
                    CHECK(fit.r_squared >= 0.9);
                }
                CHECK(fit.column_norms.size() == 161);
            }
            CHECK(localized > 0);
        }
        const SpectrumResult plain = eigendecompose(build_cylinder_operator(ModelParams::from_r(0.6), sample_phase_field(2, 2, 2), 2, 2));
        CHECK_THROWS_AS(eigenvector_decay_fit(plain, 0), ValidationError);
        CHECK(to_string(DecayStatus::WindowTooShort) == "window too short");
    }

    TEST_CASE("cyclic subspace rank") {
        const ModelParams p = ModelParams::from_r(0.6);
        for (int n = 0; n <= 3; ++n)
            for (std::uint64_t seed : {1u, 2u}) CHECK(krylov_rank(p, sample_phase_field(seed, n + 2, 2), n) == 4 * (2 * n + 1));
        CHECK(krylov_rank(p, sample_phase_field(1, 3, 1), 1) == 6);
        CHECK_THROWS_AS(krylov_rank(p, sample_phase_field(1, 2, 2), 2), ValidationError);
    }
}
