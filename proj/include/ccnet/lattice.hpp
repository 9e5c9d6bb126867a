#pragma once

#include <array>
#include <iosfwd>
#include <vector>

#include "ccnet/kernels.hpp"
#include "ccnet/params.hpp"
#include "ccnet/phases.hpp"
#include "ccnet/types.hpp"
#include "ccnet/window.hpp"

namespace ccnet {

// diag(q1 q2, q1 conj q2) [[t, -r], [r, t]] diag(q3, conj q3).
Eigen::Matrix2cd scattering_matrix(const std::array<cplx, 3>& q, const ModelParams& params);

struct Triplet {
    std::size_t row;
    std::size_t col;
    cplx value;
};

// U^D on a window with reflecting columns at +-2L. Each row has at most two
// structural entries: two for node outputs, one for reflected sites.
class FiniteOperator {
public:
    const Window& window() const { return window_; }
    const ModelParams& params() const { return params_; }
    std::size_t dim() const { return window_.dim(); }

    int structural_count(std::size_t row) const { return band_.count[row]; }
    std::array<Triplet, 2> row_entries(std::size_t row) const;
    std::vector<Triplet> triplets() const;
    const kernels::TwoBandRows& band() const { return band_; }

    CMatrix dense() const;
    CVector apply(const CVector& v) const;
    // Y = U X for a block of vectors.
    void apply_block(const kernels::SoaBlock& x, kernels::SoaBlock& y,
                     const kernels::KernelTable& kt = kernels::active()) const;

    double unitarity_defect() const;

private:
    friend FiniteOperator build_cylinder_operator(const ModelParams&, const PhaseField&, int, int);
    FiniteOperator(Window window, ModelParams params) : window_(window), params_(params) {}

    Window window_;
    ModelParams params_;
    kernels::TwoBandRows band_;
};

FiniteOperator build_cylinder_operator(const ModelParams& params, const PhaseField& phases, int L, int M);

// Writes "row,col,re,im" for every structural entry; rows and columns are flat
// column-major indices (column + 2L) * 2M + ring.
void write_triplets(std::ostream& out, const FiniteOperator& op);
std::vector<Triplet> read_triplets(std::istream& in);

// Invariant subspaces of an operator with r = 0 or t = 0, as flat index sets.
std::vector<std::vector<std::size_t>> extreme_blocks(const Window& window, const ModelParams& params);

// Largest |U_{mu nu}| coupling two different invariant subspaces. Throws
// DomainError unless r t = 0.
double extreme_block_check(const FiniteOperator& op);

}  // namespace ccnet
