#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace qca::fft {

using cplx = std::complex<double>;

inline std::size_t next_pow2(std::size_t n) {
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

// Radix-2 plan for one transform length: twiddle table plus bit-reversal
// permutation, reused across rows of a 2-D pass.
class Pow2Plan {
public:
    explicit Pow2Plan(std::size_t n) : n_(n), rev_(n), roots_(n / 2) {
        if (n == 0 || (n & (n - 1)) != 0) throw std::invalid_argument("Pow2Plan: length must be a power of two");
        for (std::size_t i = 1, j = 0; i < n_; ++i) {
            std::size_t bit = n_ >> 1;
            for (; j & bit; bit >>= 1) j ^= bit;
            j ^= bit;
            rev_[i] = j;
        }
        for (std::size_t k = 0; k < n_ / 2; ++k) {
            double angle = -2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n_);
            roots_[k] = cplx(std::cos(angle), std::sin(angle));
        }
    }

    std::size_t length() const { return n_; }

    // In-place transform of n contiguous values. The inverse includes the
    // 1/n scaling.
    void run(cplx* a, bool inverse) const {
        if (n_ == 1) return;
        for (std::size_t i = 0; i < n_; ++i)
            if (i < rev_[i]) std::swap(a[i], a[rev_[i]]);
        for (std::size_t len = 2; len <= n_; len <<= 1) {
            std::size_t step = n_ / len;
            for (std::size_t block = 0; block < n_; block += len) {
                for (std::size_t k = 0; k < len / 2; ++k) {
                    cplx w = roots_[k * step];
                    if (inverse) w = std::conj(w);
                    cplx u = a[block + k];
                    cplx v = a[block + k + len / 2] * w;
                    a[block + k] = u + v;
                    a[block + k + len / 2] = u - v;
                }
            }
        }
        if (inverse) {
            double scale = 1.0 / static_cast<double>(n_);
            for (std::size_t i = 0; i < n_; ++i) a[i] *= scale;
        }
    }

private:
    std::size_t n_;
    std::vector<std::size_t> rev_;
    std::vector<cplx> roots_;
};

// 2-D transform of a rows x cols row-major grid, both dimensions powers of
// two. Single-threaded and schedule-free: output is bit-identical per input.
inline void transform2d_pow2(std::vector<cplx>& grid, std::size_t rows, std::size_t cols, bool inverse) {
    if (grid.size() != rows * cols) throw std::invalid_argument("transform2d_pow2: grid size mismatch");
    Pow2Plan row_plan(cols);
    for (std::size_t r = 0; r < rows; ++r) row_plan.run(grid.data() + r * cols, inverse);
    Pow2Plan col_plan(rows);
    std::vector<cplx> column(rows);
    for (std::size_t c = 0; c < cols; ++c) {
        for (std::size_t r = 0; r < rows; ++r) column[r] = grid[r * cols + c];
        col_plan.run(column.data(), inverse);
        for (std::size_t r = 0; r < rows; ++r) grid[r * cols + c] = column[r];
    }
}

// Discrete Fourier transform of arbitrary length n via Bluestein's chirp
// factorization: X_k = sum_j x_j exp(sign * 2 pi i j k / n). The quadratic
// phase exponents are reduced mod 2n in exact integer arithmetic so the
// chirp stays accurate at large n.
class ArbitraryDft {
public:
    ArbitraryDft(std::size_t n, int sign)
        : n_(n), sign_(sign), m_(next_pow2(2 * n - 1)), chirp_(n), kernel_fft_(m_, cplx(0.0, 0.0)), plan_(m_) {
        if (n == 0) throw std::invalid_argument("ArbitraryDft: length must be positive");
        if (sign != 1 && sign != -1) throw std::invalid_argument("ArbitraryDft: sign must be +-1");
        for (std::size_t j = 0; j < n_; ++j) {
            std::uint64_t sq = (static_cast<std::uint64_t>(j) * j) % (2 * n_);
            double angle = static_cast<double>(sign_) * std::numbers::pi * static_cast<double>(sq) /
                           static_cast<double>(n_);
            chirp_[j] = cplx(std::cos(angle), std::sin(angle));
        }
        for (std::size_t j = 0; j < n_; ++j) {
            cplx v = std::conj(chirp_[j]);
            kernel_fft_[j] = v;
            if (j != 0) kernel_fft_[m_ - j] = v;
        }
        plan_.run(kernel_fft_.data(), false);
    }

    std::size_t length() const { return n_; }

    // out[k], k in [0, n): transform of the first in_len inputs extended by
    // zeros. in_len <= n.
    void apply(const cplx* in, std::size_t in_len, cplx* out) const {
        if (in_len > n_) throw std::invalid_argument("ArbitraryDft: input longer than transform length");
        std::vector<cplx> work(m_, cplx(0.0, 0.0));
        for (std::size_t j = 0; j < in_len; ++j) work[j] = in[j] * chirp_[j];
        plan_.run(work.data(), false);
        for (std::size_t j = 0; j < m_; ++j) work[j] *= kernel_fft_[j];
        plan_.run(work.data(), true);
        for (std::size_t k = 0; k < n_; ++k) out[k] = work[k] * chirp_[k];
    }

private:
    std::size_t n_;
    int sign_;
    std::size_t m_;
    std::vector<cplx> chirp_;
    std::vector<cplx> kernel_fft_;
    Pow2Plan plan_;
};

} // namespace qca::fft
