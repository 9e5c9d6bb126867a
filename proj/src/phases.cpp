#include "ccnet/phases.hpp"

#include <cmath>
#include <ostream>
#include <string>

namespace ccnet {

Window::Window(int L, int M) : L_(L), M_(M) {
    if (L < 0) throw ValidationError("window: L must be >= 0, got " + std::to_string(L));
    if (M < 1) throw ValidationError("window: M must be >= 1, got " + std::to_string(M));
}

std::size_t Window::index(int column, int ring) const {
    if (!contains_column(column))
        throw ValidationError("window: column " + std::to_string(column) + " outside [" +
                              std::to_string(first_column()) + ", " + std::to_string(last_column()) + "]");
    return static_cast<std::size_t>(column - first_column()) * ring_size() + wrap(ring);
}

SiteIndex Window::site_at(std::size_t index) const {
    if (index >= dim()) throw ValidationError("window: flat index out of range");
    const int n = ring_size();
    return {static_cast<int>(index / n) + first_column(), static_cast<int>(index % n)};
}

namespace {

std::uint64_t mix64(std::uint64_t x) {
    x ^= x >> 30;
    x *= 0xbf58476d1ce4e5b9ULL;
    x ^= x >> 27;
    x *= 0x94d049bb133111ebULL;
    x ^= x >> 31;
    return x;
}

void require_unit(cplx v, const char* who) {
    if (!is_unit(v)) throw ValidationError(std::string(who) + ": phase must have modulus 1");
}

}  // namespace

double hashed_angle(std::uint64_t seed, std::int64_t a, std::int64_t b, std::int64_t c) {
    std::uint64_t h = mix64(seed + 0x9e3779b97f4a7c15ULL);
    h = mix64(h ^ static_cast<std::uint64_t>(a) * 0xd1b54a32d192ed03ULL);
    h = mix64(h ^ static_cast<std::uint64_t>(b) * 0x8cb92ba72f3d8dd7ULL);
    h = mix64(h ^ static_cast<std::uint64_t>(c) * 0xaef17502108ef2d9ULL);
    const double u = static_cast<double>(h >> 11) * 0x1.0p-53;
    return 2.0 * kPi * u;
}

PhaseField::PhaseField(Window window, cplx value) : window_(window), values_(window.dim(), value) {
    require_unit(value, "PhaseField");
}

PhaseField PhaseField::from_source(const PhaseSource& source, Window window) {
    PhaseField field(window);
    for (int j = window.first_column(); j <= window.last_column(); ++j)
        for (int k = 0; k < window.ring_size(); ++k) field.values_[window.index(j, k)] = source.at(j, k);
    field.seed_ = source.seed();
    return field;
}

PhaseField PhaseField::from_function(Window window, const std::function<cplx(int, int)>& f) {
    PhaseField field(window);
    for (int j = window.first_column(); j <= window.last_column(); ++j)
        for (int k = 0; k < window.ring_size(); ++k) field.set(j, k, f(j, k));
    return field;
}

void PhaseField::set(int column, int ring, cplx value) {
    require_unit(value, "PhaseField::set");
    values_[window_.index(column, ring)] = value;
    seed_.reset();
}

PhaseField sample_phase_field(std::uint64_t seed, int L, int M) {
    return PhaseField::from_source(PhaseSource(seed), Window(L, M));
}

void write_phase_field(std::ostream& out, const PhaseField& field) {
    const Window& w = field.window();
    out << "j,k,arg\n";
    out.precision(17);
    for (int j = w.first_column(); j <= w.last_column(); ++j)
        for (int k = 0; k < w.ring_size(); ++k) out << j << ',' << k << ',' << std::arg(field.at(j, k)) << '\n';
}

NodePhaseField::NodePhaseField(Window window, int first_pair, int last_pair)
    : window_(window), first_pair_(first_pair), last_pair_(last_pair) {
    if (last_pair < first_pair) throw ValidationError("NodePhaseField: empty pair range");
    NodePhases ones;
    ones.fill(1.0);
    values_.assign(static_cast<std::size_t>(last_pair - first_pair + 1) * window.M(), ones);
}

std::size_t NodePhaseField::slot(int pair, int k) const {
    if (!covers(pair))
        throw ValidationError("NodePhaseField: missing node pair " + std::to_string(pair) + " (coverage [" +
                              std::to_string(first_pair_) + ", " + std::to_string(last_pair_) + "])");
    const int m = window_.M();
    const int kk = ((k % m) + m) % m;
    return static_cast<std::size_t>(pair - first_pair_) * m + kk;
}

const NodePhases& NodePhaseField::at(int pair, int k) const { return values_[slot(pair, k)]; }

void NodePhaseField::set(int pair, int k, const NodePhases& phases) {
    for (cplx p : phases) require_unit(p, "NodePhaseField::set");
    values_[slot(pair, k)] = phases;
}

NodePhaseField sample_node_phase_field(std::uint64_t seed, int L, int M) {
    NodePhaseField field{Window(L, M)};
    for (int j = field.first_pair(); j <= field.last_pair(); ++j)
        for (int k = 0; k < M; ++k) {
            NodePhases p;
            for (int s = 0; s < 6; ++s) p[s] = std::polar(1.0, hashed_angle(seed, j, k, 1 + s));
            field.set(j, k, p);
        }
    return field;
}

PhaseField reduce_phases(const NodePhaseField& full) {
    const Window w = full.window();
    PhaseField out(w);
    auto p = [&](int pair, int k, int which) { return full.at(pair, k)[which - 1]; };
    auto floor_half = [](int v) { return v >= 0 ? v / 2 : -((-v + 1) / 2); };
    for (int c = w.first_column(); c <= w.last_column(); ++c) {
        for (int ring = 0; ring < w.ring_size(); ++ring) {
            const bool col_odd = (c & 1) != 0;
            const bool ring_odd = (ring & 1) != 0;
            cplx q;
            if (col_odd && !ring_odd) {
                // q(2j+1,2k) = conj p6(2j+1,2k-1) p1 p2(2j,2k)
                const int j = floor_half(c), k = ring / 2;
                q = std::conj(p(j, k - 1, 6)) * p(j, k, 1) * p(j, k, 2);
            } else if (!col_odd && ring_odd) {
                // q(2j,2k+1) = p6(2j-1,2k+1) p1 conj p2(2j,2k)
                const int j = c / 2, k = ring / 2;
                q = p(j - 1, k, 6) * p(j, k, 1) * std::conj(p(j, k, 2));
            } else if (!col_odd && !ring_odd) {
                // q(2j+2,2k+2) = p3(2j+2,2k+2) p4 p5(2j+1,2k+1)
                const int j = c / 2 - 1, k = ring / 2 - 1;
                q = p(j + 1, k + 1, 3) * p(j, k, 4) * p(j, k, 5);
            } else {
                // q(2j+1,2k+1) = conj p3(2j,2k) p4 conj p5(2j+1,2k+1)
                const int j = floor_half(c), k = ring / 2;
                q = std::conj(p(j, k, 3)) * p(j, k, 4) * std::conj(p(j, k, 5));
            }
            out.set(c, ring, q / std::abs(q));
        }
    }
    return out;
}

FullModelDiagonals full_model_diagonals(const NodePhaseField& full) {
    const Window w = full.window();
    FullModelDiagonals d{PhaseField(w), PhaseField(w)};
    std::vector<int> out_hits(w.dim(), 0), in_hits(w.dim(), 0);
    auto assign = [&](PhaseField& f, std::vector<int>& hits, int c, int ring, cplx v) {
        if (!w.contains_column(c)) return;
        f.set(c, ring, v);
        ++hits[w.index(c, ring)];
    };
    for (int j = full.first_pair(); j <= full.last_pair(); ++j) {
        for (int k = 0; k < w.M(); ++k) {
            const NodePhases& p = full.at(j, k);
            const int ce = 2 * j, re = 2 * k;
            assign(d.outgoing, out_hits, ce + 1, re, p[0] * p[1]);
            assign(d.outgoing, out_hits, ce, re + 1, p[0] * std::conj(p[1]));
            assign(d.outgoing, out_hits, ce + 2, re + 2, p[3] * p[4]);
            assign(d.outgoing, out_hits, ce + 1, re + 1, p[3] * std::conj(p[4]));
            assign(d.incoming, in_hits, ce, re, p[2]);
            assign(d.incoming, in_hits, ce + 1, re + 1, std::conj(p[2]));
            assign(d.incoming, in_hits, ce + 2, re + 1, p[5]);
            assign(d.incoming, in_hits, ce + 1, re + 2, std::conj(p[5]));
        }
    }
    for (std::size_t i = 0; i < w.dim(); ++i)
        if (out_hits[i] != 1 || in_hits[i] != 1)
            throw ValidationError("full_model_diagonals: node field does not cover the window");
    return d;
}

NodePhaseField lift_phases(const PhaseField& reduced) {
    const Window w = reduced.window();
    NodePhaseField full(w);
    auto q_or_one = [&](int c, int ring) { return w.contains_column(c) ? reduced.at(c, ring) : cplx(1.0); };
    // Splits (a, b) into (p, s) with p*s = a and p*conj(s) = b.
    auto split = [](cplx a, cplx b) {
        const cplx root = std::polar(1.0, 0.5 * std::arg(a * b));
        return std::pair<cplx, cplx>{root, a / root};
    };
    for (int j = full.first_pair(); j <= full.last_pair(); ++j) {
        for (int k = 0; k < w.M(); ++k) {
            const auto [p1, p2] = split(q_or_one(2 * j + 1, 2 * k), q_or_one(2 * j, 2 * k + 1));
            const auto [p4, p5] = split(q_or_one(2 * j + 2, 2 * k + 2), q_or_one(2 * j + 1, 2 * k + 1));
            full.set(j, k, NodePhases{p1, p2, 1.0, p4, p5, 1.0});
        }
    }
    return full;
}

}  // namespace ccnet
