#include "ccnet/lattice.hpp"

#include <algorithm>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>

namespace ccnet {

Eigen::Matrix2cd scattering_matrix(const std::array<cplx, 3>& q, const ModelParams& params) {
    for (cplx v : q)
        if (!is_unit(v)) throw ValidationError("scattering_matrix: phases must have modulus 1");
    const double r = params.r(), t = params.t();
    Eigen::Matrix2cd rotation;
    rotation << t, -r, r, t;
    const Eigen::Vector2cd left(q[0] * q[1], q[0] * std::conj(q[1]));
    const Eigen::Vector2cd right(q[2], std::conj(q[2]));
    return left.asDiagonal() * rotation * right.asDiagonal();
}

namespace {

struct FeedingRow {
    SiteIndex in0;
    cplx w0;
    SiteIndex in1;
    cplx w1;
    bool reflection;
};

// Node feeding output site (c, k) and the two input weights before the site phase.
FeedingRow feeding_node(const Window& w, double r, double t, int c, int k) {
    const bool col_odd = (c & 1) != 0;
    const bool ring_odd = (k & 1) != 0;
    if (!col_odd && ring_odd) {
        if (c == w.last_column()) return {w.site(c, k - 1), 1.0, {}, 0.0, true};
        return {w.site(c, k - 1), r, w.site(c + 1, k), t, false};
    }
    if (col_odd && !ring_odd) return {w.site(c - 1, k), t, w.site(c, k + 1), -r, false};
    if (!col_odd && !ring_odd) {
        if (c == w.first_column()) return {w.site(c, k - 1), 1.0, {}, 0.0, true};
        return {w.site(c, k - 1), t, w.site(c - 1, k), -r, false};
    }
    return {w.site(c + 1, k), r, w.site(c, k + 1), t, false};
}

}  // namespace

FiniteOperator build_cylinder_operator(const ModelParams& params, const PhaseField& phases, int L, int M) {
    const Window window(L, M);
    if (!(phases.window() == window))
        throw ValidationError("build_cylinder_operator: phase field window (L=" + std::to_string(phases.window().L()) +
                              ", M=" + std::to_string(phases.window().M()) + ") does not match (L=" +
                              std::to_string(L) + ", M=" + std::to_string(M) + ")");
    FiniteOperator op(window, params);
    const std::size_t n = window.dim();
    kernels::TwoBandRows& b = op.band_;
    b.c0.resize(n);
    b.c1.resize(n);
    b.v0re.resize(n);
    b.v0im.resize(n);
    b.v1re.resize(n);
    b.v1im.resize(n);
    b.count.resize(n);
    for (std::size_t row = 0; row < n; ++row) {
        const SiteIndex out = window.site_at(row);
        const FeedingRow feed = feeding_node(window, params.r(), params.t(), out.column, out.ring);
        const cplx phase = feed.reflection ? cplx(1.0) : phases.at(out);
        const cplx v0 = phase * feed.w0;
        const cplx v1 = phase * feed.w1;
        b.c0[row] = static_cast<std::int32_t>(window.index(feed.in0));
        b.c1[row] = feed.reflection ? b.c0[row] : static_cast<std::int32_t>(window.index(feed.in1));
        b.v0re[row] = v0.real();
        b.v0im[row] = v0.imag();
        b.v1re[row] = v1.real();
        b.v1im[row] = v1.imag();
        b.count[row] = feed.reflection ? 1 : 2;
    }
    return op;
}

std::array<Triplet, 2> FiniteOperator::row_entries(std::size_t row) const {
    return {Triplet{row, static_cast<std::size_t>(band_.c0[row]), cplx(band_.v0re[row], band_.v0im[row])},
            Triplet{row, static_cast<std::size_t>(band_.c1[row]), cplx(band_.v1re[row], band_.v1im[row])}};
}

std::vector<Triplet> FiniteOperator::triplets() const {
    std::vector<Triplet> out;
    out.reserve(2 * dim());
    for (std::size_t row = 0; row < dim(); ++row) {
        const auto e = row_entries(row);
        for (int s = 0; s < band_.count[row]; ++s) out.push_back(e[s]);
    }
    return out;
}

CMatrix FiniteOperator::dense() const {
    CMatrix m = CMatrix::Zero(dim(), dim());
    for (const Triplet& e : triplets()) m(e.row, e.col) += e.value;
    return m;
}

CVector FiniteOperator::apply(const CVector& v) const {
    if (static_cast<std::size_t>(v.size()) != dim())
        throw ValidationError("apply_operator: vector length " + std::to_string(v.size()) + " != operator dimension " +
                              std::to_string(dim()));
    CVector y(v.size());
    for (std::size_t row = 0; row < dim(); ++row)
        y(row) = cplx(band_.v0re[row], band_.v0im[row]) * v(band_.c0[row]) +
                 cplx(band_.v1re[row], band_.v1im[row]) * v(band_.c1[row]);
    return y;
}

void FiniteOperator::apply_block(const kernels::SoaBlock& x, kernels::SoaBlock& y,
                                 const kernels::KernelTable& kt) const {
    if (static_cast<std::size_t>(x.rows()) != dim() || static_cast<std::size_t>(y.rows()) != dim() ||
        x.stride() != y.stride())
        throw ValidationError("apply_block: block shape does not match operator");
    kt.sparse_apply(band_, x, y);
}

double FiniteOperator::unitarity_defect() const {
    // (U*U)_{a b} = sum over rows of conj(U_{row a}) U_{row b}.
    std::map<std::pair<std::size_t, std::size_t>, cplx> gram;
    for (std::size_t row = 0; row < dim(); ++row) {
        const auto e = row_entries(row);
        for (int s = 0; s < band_.count[row]; ++s)
            for (int u = 0; u < band_.count[row]; ++u)
                gram[{e[s].col, e[u].col}] += std::conj(e[s].value) * e[u].value;
    }
    double defect = 0.0;
    for (std::size_t i = 0; i < dim(); ++i)
        if (!gram.count({i, i})) defect = 1.0;
    for (const auto& [key, value] : gram)
        defect = std::max(defect, std::abs(value - (key.first == key.second ? 1.0 : 0.0)));
    return defect;
}

void write_triplets(std::ostream& out, const FiniteOperator& op) {
    out << "# L=" << op.window().L() << " M=" << op.window().M() << " N=" << op.dim() << " r=" << op.params().r()
        << " t=" << op.params().t() << '\n';
    out << "row,col,re,im\n";
    out.precision(17);
    for (const Triplet& e : op.triplets())
        out << e.row << ',' << e.col << ',' << e.value.real() << ',' << e.value.imag() << '\n';
}

std::vector<Triplet> read_triplets(std::istream& in) {
    std::vector<Triplet> out;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#' || line.rfind("row", 0) == 0) continue;
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream fields(line);
        Triplet e{};
        double re = 0.0, im = 0.0;
        if (!(fields >> e.row >> e.col >> re >> im)) throw ValidationError("read_triplets: malformed line: " + line);
        e.value = cplx(re, im);
        out.push_back(e);
    }
    return out;
}

std::vector<std::vector<std::size_t>> extreme_blocks(const Window& w, const ModelParams& params) {
    if (!params.extreme()) throw DomainError("extreme_blocks: requires r = 0 or t = 0");
    std::vector<std::vector<std::size_t>> blocks;
    const int L = w.L(), M = w.M();
    std::vector<std::size_t> boundary;
    if (params.r() == 0.0) {
        for (int j = -L; j <= L - 1; ++j)
            for (int k = 0; k < M; ++k)
                blocks.push_back({w.index(2 * j, 2 * k), w.index(2 * j + 1, 2 * k), w.index(2 * j + 1, 2 * k - 1),
                                  w.index(2 * j, 2 * k - 1)});
        for (int k = 0; k < w.ring_size(); ++k) boundary.push_back(w.index(w.last_column(), k));
    } else {
        for (int j = -L + 1; j <= L; ++j)
            for (int k = 0; k < M; ++k)
                blocks.push_back({w.index(2 * j, 2 * k), w.index(2 * j, 2 * k + 1), w.index(2 * j - 1, 2 * k + 1),
                                  w.index(2 * j - 1, 2 * k)});
        for (int k = 0; k < w.ring_size(); ++k) boundary.push_back(w.index(w.first_column(), k));
    }
    blocks.push_back(std::move(boundary));
    return blocks;
}

double extreme_block_check(const FiniteOperator& op) {
    if (!op.params().extreme())
        throw DomainError("extreme_block_check: contract violation, requires r = 0 or t = 0");
    const auto blocks = extreme_blocks(op.window(), op.params());
    std::vector<int> owner(op.dim(), -1);
    for (std::size_t b = 0; b < blocks.size(); ++b)
        for (std::size_t idx : blocks[b]) owner[idx] = static_cast<int>(b);
    if (std::find(owner.begin(), owner.end(), -1) != owner.end())
        throw NumericalError("extreme_block_check: block partition does not cover the window");
    double leakage = 0.0;
    for (const Triplet& e : op.triplets())
        if (owner[e.row] != owner[e.col]) leakage = std::max(leakage, std::abs(e.value));
    return leakage;
}

}  // namespace ccnet
