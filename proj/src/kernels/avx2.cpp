#include <immintrin.h>

#include <cmath>

#include "ccnet/kernels.hpp"

namespace ccnet::kernels::avx2 {

namespace {

// acc + c * x for complex broadcast c and 4 complex lanes x.
inline void cmadd(__m256d& accr, __m256d& acci, __m256d cr, __m256d ci, __m256d xr, __m256d xi) {
    accr = _mm256_fmadd_pd(cr, xr, accr);
    accr = _mm256_fnmadd_pd(ci, xi, accr);
    acci = _mm256_fmadd_pd(cr, xi, acci);
    acci = _mm256_fmadd_pd(ci, xr, acci);
}

}  // namespace

void mix_pairs(SoaBlock& block, int offset, std::span<const PairCoeffs> coeffs) {
    const int n = block.rows();
    const int width = block.stride();
    for (std::size_t p = 0; p < coeffs.size(); ++p) {
        const int a = static_cast<int>((2 * p + offset) % n);
        const int b = static_cast<int>((2 * p + 1 + offset) % n);
        const PairCoeffs& c = coeffs[p];
        const __m256d c00r = _mm256_set1_pd(c.c00.real()), c00i = _mm256_set1_pd(c.c00.imag());
        const __m256d c01r = _mm256_set1_pd(c.c01.real()), c01i = _mm256_set1_pd(c.c01.imag());
        const __m256d c10r = _mm256_set1_pd(c.c10.real()), c10i = _mm256_set1_pd(c.c10.imag());
        const __m256d c11r = _mm256_set1_pd(c.c11.real()), c11i = _mm256_set1_pd(c.c11.imag());
        double* ar = block.re(a);
        double* ai = block.im(a);
        double* br = block.re(b);
        double* bi = block.im(b);
        for (int col = 0; col < width; col += 4) {
            const __m256d xr = _mm256_loadu_pd(ar + col), xi = _mm256_loadu_pd(ai + col);
            const __m256d yr = _mm256_loadu_pd(br + col), yi = _mm256_loadu_pd(bi + col);
            __m256d nar = _mm256_setzero_pd(), nai = _mm256_setzero_pd();
            __m256d nbr = _mm256_setzero_pd(), nbi = _mm256_setzero_pd();
            cmadd(nar, nai, c00r, c00i, xr, xi);
            cmadd(nar, nai, c01r, c01i, yr, yi);
            cmadd(nbr, nbi, c10r, c10i, xr, xi);
            cmadd(nbr, nbi, c11r, c11i, yr, yi);
            _mm256_storeu_pd(ar + col, nar);
            _mm256_storeu_pd(ai + col, nai);
            _mm256_storeu_pd(br + col, nbr);
            _mm256_storeu_pd(bi + col, nbi);
        }
    }
}

void gram_schmidt(SoaBlock& block, std::span<double> log_norms) {
    const int n = block.rows();
    const int width = block.stride();
    alignas(32) double pr[64];
    alignas(32) double pi[64];
    std::vector<double> heap_r, heap_i;
    double* projr = pr;
    double* proji = pi;
    if (width > 64) {
        heap_r.resize(width);
        heap_i.resize(width);
        projr = heap_r.data();
        proji = heap_i.data();
    }
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
        for (int j = 0; j < width; j += 4) {
            __m256d sr = _mm256_setzero_pd(), si = _mm256_setzero_pd();
            for (int i = 0; i < n; ++i) {
                const __m256d qr = _mm256_set1_pd(block.re(i)[k]);
                const __m256d qi = _mm256_set1_pd(block.im(i)[k]);
                const __m256d xr = _mm256_loadu_pd(block.re(i) + j);
                const __m256d xi = _mm256_loadu_pd(block.im(i) + j);
                sr = _mm256_fmadd_pd(qr, xr, sr);
                sr = _mm256_fmadd_pd(qi, xi, sr);
                si = _mm256_fmadd_pd(qr, xi, si);
                si = _mm256_fnmadd_pd(qi, xr, si);
            }
            _mm256_storeu_pd(projr + j, sr);
            _mm256_storeu_pd(proji + j, si);
        }
        for (int j = 0; j <= k; ++j) projr[j] = proji[j] = 0.0;
        for (int i = 0; i < n; ++i) {
            const __m256d qr = _mm256_set1_pd(block.re(i)[k]);
            const __m256d qi = _mm256_set1_pd(block.im(i)[k]);
            double* xr = block.re(i);
            double* xi = block.im(i);
            for (int j = 0; j < width; j += 4) {
                const __m256d cr = _mm256_loadu_pd(projr + j), ci = _mm256_loadu_pd(proji + j);
                __m256d vr = _mm256_loadu_pd(xr + j), vi = _mm256_loadu_pd(xi + j);
                vr = _mm256_fnmadd_pd(qr, cr, vr);
                vr = _mm256_fmadd_pd(qi, ci, vr);
                vi = _mm256_fnmadd_pd(qr, ci, vi);
                vi = _mm256_fnmadd_pd(qi, cr, vi);
                _mm256_storeu_pd(xr + j, vr);
                _mm256_storeu_pd(xi + j, vi);
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
        const __m256d ur = _mm256_set1_pd(rows.v0re[r]), ui = _mm256_set1_pd(rows.v0im[r]);
        const __m256d wr = _mm256_set1_pd(rows.v1re[r]), wi = _mm256_set1_pd(rows.v1im[r]);
        double* yr = y.re(row);
        double* yi = y.im(row);
        for (int col = 0; col < width; col += 4) {
            __m256d sr = _mm256_setzero_pd(), si = _mm256_setzero_pd();
            cmadd(sr, si, ur, ui, _mm256_loadu_pd(ar + col), _mm256_loadu_pd(ai + col));
            cmadd(sr, si, wr, wi, _mm256_loadu_pd(br + col), _mm256_loadu_pd(bi + col));
            _mm256_storeu_pd(yr + col, sr);
            _mm256_storeu_pd(yi + col, si);
        }
    }
}

}  // namespace ccnet::kernels::avx2
