#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace ccnet::kernels {

// Row-major complex matrix with split real/imaginary planes. Columns are
// padded to a multiple of 4; padding stays zero under every kernel.
class SoaBlock {
public:
    SoaBlock() = default;
    SoaBlock(int rows, int cols);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    int stride() const { return stride_; }

    double* re(int row) { return re_.data() + static_cast<std::size_t>(row) * stride_; }
    double* im(int row) { return im_.data() + static_cast<std::size_t>(row) * stride_; }
    const double* re(int row) const { return re_.data() + static_cast<std::size_t>(row) * stride_; }
    const double* im(int row) const { return im_.data() + static_cast<std::size_t>(row) * stride_; }

    std::complex<double> get(int row, int col) const { return {re(row)[col], im(row)[col]}; }
    void set(int row, int col, std::complex<double> v) {
        re(row)[col] = v.real();
        im(row)[col] = v.imag();
    }
    void set_identity();
    void set_zero();

private:
    int rows_ = 0;
    int cols_ = 0;
    int stride_ = 0;
    std::vector<double> re_;
    std::vector<double> im_;
};

// 2x2 complex mixing coefficients in the order c00, c01, c10, c11.
struct PairCoeffs {
    std::complex<double> c00, c01, c10, c11;
};

// Sparse rows with at most two entries: y[i] = v0[i] x[c0[i]] + v1[i] x[c1[i]].
// A row with one structural entry has c1 = c0 and v1 = 0.
struct TwoBandRows {
    std::vector<std::int32_t> c0, c1;
    std::vector<double> v0re, v0im, v1re, v1im;
    std::vector<std::int8_t> count;
    std::size_t size() const { return c0.size(); }
};

// Rows (a, b) = ((2p + offset) mod n, (2p + 1 + offset) mod n) are replaced by
// C (a, b) for every pair p; coeffs has n/2 entries.
using MixPairsFn = void (*)(SoaBlock& block, int offset, std::span<const PairCoeffs> coeffs);
// One right-looking modified Gram-Schmidt sweep over the columns; adds
// log of each diagonal normalizer to log_norms[k].
using GramSchmidtFn = void (*)(SoaBlock& block, std::span<double> log_norms);
using SparseApplyFn = void (*)(const TwoBandRows& rows, const SoaBlock& x, SoaBlock& y);

struct KernelTable {
    std::string_view name;
    MixPairsFn mix_pairs;
    GramSchmidtFn gram_schmidt;
    SparseApplyFn sparse_apply;
};

enum class Backend { Scalar, Avx2 };

bool backend_available(Backend backend);
const KernelTable& table(Backend backend);
// Fastest available backend, or the one named by CCNET_KERNELS (scalar|avx2).
const KernelTable& active();

namespace scalar {
void mix_pairs(SoaBlock& block, int offset, std::span<const PairCoeffs> coeffs);
void gram_schmidt(SoaBlock& block, std::span<double> log_norms);
void sparse_apply(const TwoBandRows& rows, const SoaBlock& x, SoaBlock& y);
}  // namespace scalar

namespace avx2 {
void mix_pairs(SoaBlock& block, int offset, std::span<const PairCoeffs> coeffs);
void gram_schmidt(SoaBlock& block, std::span<double> log_norms);
void sparse_apply(const TwoBandRows& rows, const SoaBlock& x, SoaBlock& y);
}  // namespace avx2

}  // namespace ccnet::kernels
