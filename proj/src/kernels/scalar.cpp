#include <cmath>

#include "ccnet/kernels.hpp"

namespace ccnet::kernels {

SoaBlock::SoaBlock(int rows, int cols)
    : rows_(rows), cols_(cols), stride_((cols + 3) / 4 * 4),
      re_(static_cast<std::size_t>(rows) * stride_, 0.0), im_(re_.size(), 0.0) {}

void SoaBlock::set_zero() {
    std::fill(re_.begin(), re_.end(), 0.0);
    std::fill(im_.begin(), im_.end(), 0.0);
}

void SoaBlock::set_identity() {
    set_zero();
    for (int i = 0; i < rows_ && i < cols_; ++i) re(i)[i] = 1.0;
}

namespace scalar {

void mix_pairs(SoaBlock& block, int offset, std::span<const PairCoeffs> coeffs) {
    const int n = block.rows();
    const int width = block.stride();
    for (std::size_t p = 0; p < coeffs.size(); ++p) {
        const int a = static_cast<int>((2 * p + offset) % n);
        const int b = static_cast<int>((2 * p + 1 + offset) % n);
        const PairCoeffs& c = coeffs[p];
        double* ar = block.re(a);
        double* ai = block.im(a);
        double* br = block.re(b);
        double* bi = block.im(b);
        for (int col = 0; col < width; ++col) {
            const double xr = ar[col], xi = ai[col], yr = br[col], yi = bi[col];
            ar[col] = c.c00.real() * xr - c.c00.imag() * xi + c.c01.real() * yr - c.c01.imag() * yi;
            ai[col] = c.c00.real() * xi + c.c00.imag() * xr + c.c01.real() * yi + c.c01.imag() * yr;
            br[col] = c.c10.real() * xr - c.c10.imag() * xi + c.c11.real() * yr - c.c11.imag() * yi;
            bi[col] = c.c10.real() * xi + c.c10.imag() * xr + c.c11.real() * yi + c.c11.imag() * yr;
        }
    }
}

void gram_schmidt(SoaBlock& block, std::span<double> log_norms) {
    const int n = block.rows();
    const int width = block.stride();
    std::vector<double> pr(width), pi(width);
    for (int k = 0; k < block.cols(); ++k) {
        double norm2 = 0.0;
        for (int i = 0; i < n; ++i) norm2 += block.re(i)[k] * block.re(i)[k] + block.im(i)[k] * block.im(i)[k];
        const double norm = std::sqrt(norm2);
        log_norms[k] += std::log(norm);
        const double inv = 1.0 / norm;
        for (int i = 0; i < n; ++i) {
            block.re(i)[k] *= inv;
            block.im(i)[k] *= inv;
        }
        std::fill(pr.begin(), pr.end(), 0.0);
        std::fill(pi.begin(), pi.end(), 0.0);
        for (int i = 0; i < n; ++i) {
            const double qr = block.re(i)[k], qi = block.im(i)[k];
            const double* xr = block.re(i);
            const double* xi = block.im(i);
            for (int j = 0; j < width; ++j) {
                pr[j] += qr * xr[j] + qi * xi[j];
                pi[j] += qr * xi[j] - qi * xr[j];
            }
        }
        for (int j = 0; j <= k; ++j) pr[j] = pi[j] = 0.0;
        for (int i = 0; i < n; ++i) {
            const double qr = block.re(i)[k], qi = block.im(i)[k];
            double* xr = block.re(i);
            double* xi = block.im(i);
            for (int j = 0; j < width; ++j) {
                xr[j] -= qr * pr[j] - qi * pi[j];
                xi[j] -= qr * pi[j] + qi * pr[j];
            }
        }
    }
}

void sparse_apply(const TwoBandRows& rows, const SoaBlock& x, SoaBlock& y) {
    const int width = x.stride();
    for (std::size_t r = 0; r < rows.size(); ++r) {
        const int row = static_cast<int>(r);
        const double* ar = x.re(rows.c0[r]);
        const double* ai = x.im(rows.c0[r]);
        const double* br = x.re(rows.c1[r]);
        const double* bi = x.im(rows.c1[r]);
        const double ur = rows.v0re[r], ui = rows.v0im[r], wr = rows.v1re[r], wi = rows.v1im[r];
        double* yr = y.re(row);
        double* yi = y.im(row);
        for (int col = 0; col < width; ++col) {
            yr[col] = ur * ar[col] - ui * ai[col] + wr * br[col] - wi * bi[col];
            yi[col] = ur * ai[col] + ui * ar[col] + wr * bi[col] + wi * br[col];
        }
    }
}

}  // namespace scalar
}  // namespace ccnet::kernels
