#include <doctest.h>

#include <random>
#include <sstream>

#include "ccnet/phases.hpp"
#include "oracles.hpp"

using namespace ccnet;

TEST_SUITE("phases") {
    TEST_CASE("sampling is deterministic and window-extension stable") {
        const PhaseField a = sample_phase_field(42, 2, 3), b = sample_phase_field(42, 2, 3);
        CHECK(a.values() == b.values());
        const PhaseField wide = sample_phase_field(42, 4, 3);
        for (int c = -4; c <= 4; ++c)
            for (int k = 0; k < 6; ++k) CHECK(wide.at(c, k) == a.at(c, k));
        CHECK(sample_phase_field(43, 2, 3).values() != a.values());
        for (cplx v : wide.values()) CHECK(std::abs(std::abs(v) - 1.0) <= 1e-14);
    }

    TEST_CASE("one site over many seeds has circular mean near zero") {
        cplx sum = 0.0;
        const int n = 100000;
        for (int s = 0; s < n; ++s) sum += PhaseSource(s).at(1, 1);
        CHECK(std::abs(sum / double(n)) <= 0.02);
        double lo = 10.0, hi = -1.0;
        for (int s = 0; s < 1000; ++s) {
            const double a = hashed_angle(s, -3, 5);
            lo = std::min(lo, a);
            hi = std::max(hi, a);
        }
        CHECK(lo >= 0.0);
        CHECK(hi < 2.0 * kPi);
    }

    TEST_CASE("phase field rejects non-unit values") {
        PhaseField f(Window(1, 1));
        CHECK_THROWS_AS(f.set(0, 0, cplx(0.5, 0.0)), ValidationError);
        CHECK_NOTHROW(f.set(0, 0, cplx(0.0, 1.0)));
        CHECK(f.at(0, 0) == cplx(0.0, 1.0));
    }

    TEST_CASE("phase export writes j,k,arg") {
        std::stringstream ss;
        write_phase_field(ss, PhaseField(Window(0, 1), cplx(0.0, 1.0)));
        std::string header, line;
        std::getline(ss, header);
        CHECK(header == "j,k,arg");
        std::getline(ss, line);
        CHECK(line.rfind("0,0,", 0) == 0);
    }

    TEST_CASE("reduction of all-ones is all-ones") {
        const Window w(2, 2);
        NodePhaseField full(w);
        const PhaseField q = reduce_phases(full);
        for (cplx v : q.values()) CHECK(std::abs(v - 1.0) <= 1e-15);
    }

    TEST_CASE("single node phase p1 appears on q(2j+1,2k)") {
        const Window w(2, 2);
        NodePhaseField full(w);
        NodePhases node;
        node.fill(1.0);
        const cplx alpha = oracle::unit(0.7);
        node[0] = alpha;
        full.set(0, 1, node);
        const PhaseField q = reduce_phases(full);
        CHECK(std::abs(q.at(1, 2) - alpha) <= 1e-15);
        CHECK(std::abs(q.at(0, 3) - alpha) <= 1e-15);
        int changed = 0;
        for (cplx v : q.values()) changed += std::abs(v - 1.0) > 1e-15;
        CHECK(changed == 2);
    }

    TEST_CASE("missing node is a validation error") {
        const Window w(2, 1);
        NodePhaseField narrow(w, 0, 1);
        CHECK_THROWS_AS(reduce_phases(narrow), ValidationError);
        CHECK_THROWS_AS(narrow.at(-3, 0), ValidationError);
    }

    TEST_CASE("reduced phases of independent nodes are uncorrelated") {
        const int samples = 10000;
        const Window w(1, 1);
        std::vector<std::vector<cplx>> draws;
        for (int s = 0; s < samples; ++s) draws.push_back(reduce_phases(sample_node_phase_field(1000 + s, 1, 1)).values());
        const std::size_t n = w.dim();
        double worst = 0.0;
        for (std::size_t a = 0; a < n; ++a) {
            cplx mean = 0.0;
            for (const auto& d : draws) mean += d[a];
            CHECK(std::abs(mean / double(samples)) <= 0.05);
            for (std::size_t b = a + 1; b < n; ++b) {
                cplx corr = 0.0;
                for (const auto& d : draws) corr += d[a] * std::conj(d[b]);
                worst = std::max(worst, std::abs(corr / double(samples)));
            }
        }
        CHECK(worst <= 0.05);
    }

    TEST_CASE("reduction is the product of the six-phase diagonals") {
        const NodePhaseField full = sample_node_phase_field(7, 2, 3);
        const PhaseField q = reduce_phases(full);
        const FullModelDiagonals d = full_model_diagonals(full);
        for (std::size_t i = 0; i < q.values().size(); ++i)
            CHECK(std::abs(d.outgoing.values()[i] * d.incoming.values()[i] - q.values()[i]) <= 1e-14);
    }

    TEST_CASE("lifting then reducing returns the field") {
        const PhaseField q = sample_phase_field(11, 3, 2);
        const PhaseField back = reduce_phases(lift_phases(q));
        for (std::size_t i = 0; i < q.values().size(); ++i) CHECK(std::abs(back.values()[i] - q.values()[i]) <= 1e-14);
    }
}
