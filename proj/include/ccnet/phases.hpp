#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <vector>

#include "ccnet/types.hpp"
#include "ccnet/window.hpp"

namespace ccnet {

// Counter-based uniform angle in [0, 2*pi) addressed by (seed, a, b, c).
double hashed_angle(std::uint64_t seed, std::int64_t a, std::int64_t b, std::int64_t c = 0);

// Lazy i.i.d. uniform phase per site, reproducible for every (seed, column, ring).
class PhaseSource {
public:
    explicit PhaseSource(std::uint64_t seed) : seed_(seed) {}
    std::uint64_t seed() const { return seed_; }
    double angle(int column, int ring) const { return hashed_angle(seed_, column, ring); }
    cplx at(int column, int ring) const { return std::polar(1.0, angle(column, ring)); }

private:
    std::uint64_t seed_;
};

// One unit phase per site of a window.
class PhaseField {
public:
    explicit PhaseField(Window window, cplx value = 1.0);

    static PhaseField from_source(const PhaseSource& source, Window window);
    static PhaseField from_function(Window window, const std::function<cplx(int column, int ring)>& f);

    const Window& window() const { return window_; }
    std::optional<std::uint64_t> seed() const { return seed_; }

    cplx at(int column, int ring) const { return values_[window_.index(column, ring)]; }
    cplx at(SiteIndex s) const { return at(s.column, s.ring); }
    // Throws ValidationError unless |value| = 1.
    void set(int column, int ring, cplx value);

    const std::vector<cplx>& values() const { return values_; }

private:
    Window window_;
    std::vector<cplx> values_;
    std::optional<std::uint64_t> seed_;
};

PhaseField sample_phase_field(std::uint64_t seed, int L, int M);

// Writes "j,k,arg" lines, arg in (-pi, pi].
void write_phase_field(std::ostream& out, const PhaseField& field);

// Six phases p1..p6 per node pair: p1..p3 at the even node (2j,2k),
// p4..p6 at the odd node (2j+1,2k+1). Stored zero-based: p[0] is p1.
using NodePhases = std::array<cplx, 6>;

// Node phases indexed by pair (j, k) with j in [first_pair, last_pair], k in [0, M).
class NodePhaseField {
public:
    // Default coverage [-L-1, L] is what the reduction on Window(L, M) needs.
    NodePhaseField(Window window, int first_pair, int last_pair);
    explicit NodePhaseField(Window window) : NodePhaseField(window, -window.L() - 1, window.L()) {}

    const Window& window() const { return window_; }
    int first_pair() const { return first_pair_; }
    int last_pair() const { return last_pair_; }
    bool covers(int pair) const { return pair >= first_pair_ && pair <= last_pair_; }

    // Throws ValidationError when (pair, k) lies outside the coverage.
    const NodePhases& at(int pair, int k) const;
    void set(int pair, int k, const NodePhases& phases);

private:
    std::size_t slot(int pair, int k) const;
    Window window_;
    int first_pair_;
    int last_pair_;
    std::vector<NodePhases> values_;
};

NodePhaseField sample_node_phase_field(std::uint64_t seed, int L, int M);

// Reduction g to one phase per site.
PhaseField reduce_phases(const NodePhaseField& full);

// Site diagonals of the six-phase model: U6 = D(outgoing) S D(incoming).
struct FullModelDiagonals {
    PhaseField outgoing;
    PhaseField incoming;
};
FullModelDiagonals full_model_diagonals(const NodePhaseField& full);

// A six-phase field with p3 = p6 = 1 whose reduction is `reduced`.
NodePhaseField lift_phases(const PhaseField& reduced);

}  // namespace ccnet
