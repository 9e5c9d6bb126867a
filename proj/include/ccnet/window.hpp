#pragma once

#include <cstddef>

namespace ccnet {

// Lattice site on the cylinder; ring is always reduced into [0, 2M).
struct SiteIndex {
    int column = 0;
    int ring = 0;
    friend bool operator==(const SiteIndex&, const SiteIndex&) = default;
};

// Sublattice parity of a site: (column + ring) mod 2.
inline int parity(SiteIndex s) { return ((s.column + s.ring) % 2 + 2) % 2; }

// Finite window {-2L..2L} x Z_{2M}. State vectors are column-major:
// index = (column + 2L) * 2M + ring.
class Window {
public:
    Window(int L, int M);

    int L() const { return L_; }
    int M() const { return M_; }
    int ring_size() const { return 2 * M_; }
    int first_column() const { return -2 * L_; }
    int last_column() const { return 2 * L_; }
    int column_count() const { return 4 * L_ + 1; }
    std::size_t dim() const { return static_cast<std::size_t>(ring_size()) * column_count(); }

    bool contains_column(int column) const { return column >= first_column() && column <= last_column(); }
    int wrap(int ring) const { return ((ring % ring_size()) + ring_size()) % ring_size(); }
    SiteIndex site(int column, int ring) const { return {column, wrap(ring)}; }

    // Throws ValidationError for out-of-window columns.
    std::size_t index(int column, int ring) const;
    std::size_t index(SiteIndex s) const { return index(s.column, s.ring); }
    SiteIndex site_at(std::size_t index) const;

    friend bool operator==(const Window&, const Window&) = default;

private:
    int L_;
    int M_;
};

}  // namespace ccnet
