#pragma once

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qca/arrays.hpp"
#include "qca/errors.hpp"
#include "qca/fft.hpp"
#include "qca/rational.hpp"

namespace qca {

enum class Engine { direct, spectral };

inline const char* engine_name(Engine e) { return e == Engine::direct ? "direct" : "spectral"; }

// Table of aperiodic autocorrelations C(u, v) for |u| < n, |v| < m, stored
// as a (2n-1) x (2m-1) block; values outside vanish (empty overlap).
class CorrelationSpectrum {
public:
    CorrelationSpectrum(std::int64_t n, std::int64_t m)
        : n_(n), m_(m), values_(static_cast<std::size_t>((2 * n - 1) * (2 * m - 1)), 0) {}

    std::int64_t n() const { return n_; }
    std::int64_t m() const { return m_; }

    std::int64_t at(std::int64_t u, std::int64_t v) const {
        if (u <= -n_ || u >= n_ || v <= -m_ || v >= m_) return 0;
        return values_[index(u, v)];
    }

    std::int64_t peak() const { return at(0, 0); }

    void set(std::int64_t u, std::int64_t v, std::int64_t value) {
        if (u <= -n_ || u >= n_ || v <= -m_ || v >= m_)
            throw std::out_of_range("CorrelationSpectrum: shift outside the stored table");
        values_[index(u, v)] = value;
    }

    const std::vector<std::int64_t>& values() const { return values_; }

    bool operator==(const CorrelationSpectrum&) const = default;

private:
    std::size_t index(std::int64_t u, std::int64_t v) const {
        return static_cast<std::size_t>((u + n_ - 1) * (2 * m_ - 1) + (v + m_ - 1));
    }

    std::int64_t n_;
    std::int64_t m_;
    std::vector<std::int64_t> values_;
};

// Exact integer engine: direct evaluation of C(u,v) = sum a_ij a_{i+u,j+v}
// over the overlap, O(n^2 m^2) total. Fills the half-plane u > 0 or
// (u = 0, v >= 0) and mirrors through C(-u,-v) = C(u,v).
inline CorrelationSpectrum autocorrelation_direct(const TernaryArray& a) {
    const std::int64_t n = a.n(), m = a.m();
    CorrelationSpectrum spec(n, m);
    for (std::int64_t u = 0; u < n; ++u) {
        std::int64_t v_start = u == 0 ? 0 : -(m - 1);
        for (std::int64_t v = v_start; v < m; ++v) {
            std::int64_t sum = 0;
            std::int64_t i_lo = u < 0 ? -u : 0;
            std::int64_t i_hi = u > 0 ? n - u : n;
            std::int64_t j_lo = v < 0 ? -v : 0;
            std::int64_t j_hi = v > 0 ? m - v : m;
            for (std::int64_t i = i_lo; i < i_hi; ++i)
                for (std::int64_t j = j_lo; j < j_hi; ++j) sum += a(i, j) * a(i + u, j + v);
            spec.set(u, v, sum);
            spec.set(-u, -v, sum);
        }
    }
    return spec;
}

// Spectral engine: zero-pad to powers of two at least twice each dimension,
// transform, square magnitudes, inverse-transform, and round. Rounding
// residuals above 0.25 signal a transform failure.
inline CorrelationSpectrum autocorrelation_spectral(const TernaryArray& a) {
    const std::int64_t n = a.n(), m = a.m();
    const std::size_t rows = fft::next_pow2(static_cast<std::size_t>(2 * n));
    const std::size_t cols = fft::next_pow2(static_cast<std::size_t>(2 * m));
    std::vector<fft::cplx> grid(rows * cols, fft::cplx(0.0, 0.0));
    for (std::int64_t i = 0; i < n; ++i)
        for (std::int64_t j = 0; j < m; ++j)
            grid[static_cast<std::size_t>(i) * cols + static_cast<std::size_t>(j)] = fft::cplx(a(i, j), 0.0);
    fft::transform2d_pow2(grid, rows, cols, false);
    for (auto& z : grid) z = fft::cplx(std::norm(z), 0.0);
    fft::transform2d_pow2(grid, rows, cols, true);

    CorrelationSpectrum spec(n, m);
    for (std::int64_t u = -(n - 1); u < n; ++u) {
        std::size_t r = static_cast<std::size_t>((u + static_cast<std::int64_t>(rows)) % static_cast<std::int64_t>(rows));
        for (std::int64_t v = -(m - 1); v < m; ++v) {
            std::size_t c =
                static_cast<std::size_t>((v + static_cast<std::int64_t>(cols)) % static_cast<std::int64_t>(cols));
            double value = grid[r * cols + c].real();
            double nearest = std::nearbyint(value);
            if (std::abs(value - nearest) > 0.25)
                throw numerical_error("autocorrelation_spectral: rounding residual " +
                                      std::to_string(std::abs(value - nearest)) + " at shift (" + std::to_string(u) +
                                      ", " + std::to_string(v) + ")");
            spec.set(u, v, static_cast<std::int64_t>(nearest));
        }
    }
    return spec;
}

// Total squared off-peak correlation, accumulated in 128-bit integers.
inline int128 sidelobe_energy(const CorrelationSpectrum& spec) {
    int128 total = 0;
    for (std::int64_t v : spec.values()) total += static_cast<int128>(v) * v;
    int128 peak = spec.peak();
    return total - peak * peak;
}

struct MeritReport {
    std::int64_t n = 0;
    std::int64_t m = 0;
    Rat merit;                 // peak^2 / sidelobe energy, exact
    double merit_float = 0.0;
    int128 sidelobe = 0;
    std::int64_t peak = 0;
    Engine engine = Engine::direct;
    double seconds = 0.0;
};

namespace detail {

inline Engine select_engine(const TernaryArray& a, std::optional<Engine> requested) {
    if (requested) return *requested;
    return a.size() <= 4096 ? Engine::direct : Engine::spectral;
}

} // namespace detail

// Merit factor peak^2 / energy. For binary arrays the peak is nm, giving the
// usual (nm)^2 / energy; for ternary arrays the peak is the nonzero count.
inline MeritReport merit_factor(const TernaryArray& a, std::optional<Engine> engine = std::nullopt) {
    auto start = std::chrono::steady_clock::now();
    Engine chosen = detail::select_engine(a, engine);
    CorrelationSpectrum spec =
        chosen == Engine::direct ? autocorrelation_direct(a) : autocorrelation_spectral(a);
    int128 energy = sidelobe_energy(spec);
    if (energy <= 0)
        throw undefined_merit_error("merit_factor: sidelobe energy is zero, merit undefined");
    MeritReport report;
    report.n = a.n();
    report.m = a.m();
    report.peak = spec.peak();
    report.sidelobe = energy;
    report.merit = Rat(static_cast<int128>(report.peak) * report.peak, energy);
    report.merit_float = report.merit.to_double();
    report.engine = chosen;
    report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

// Evaluates |A|^4 over the full 2n x 2m grid of (2n)-th by (2m)-th roots of
// unity with arbitrary-length transforms and returns the normalized sum
// (1/4nm) sum |A|^4, which equals sum_{u,v} C(u,v)^2 including the peak.
// The result must be an integer; a large distance to the nearest integer
// signals transform misuse.
inline double fourth_power_sum(const TernaryArray& a) {
    const std::size_t n = static_cast<std::size_t>(a.n());
    const std::size_t m = static_cast<std::size_t>(a.m());
    fft::ArbitraryDft row_dft(2 * n, +1);
    fft::ArbitraryDft col_dft(2 * m, +1);

    // Stage 1: transform along i for each original column.
    std::vector<fft::cplx> stage(2 * n * m);
    std::vector<fft::cplx> in(n), out(2 * n);
    for (std::size_t l = 0; l < m; ++l) {
        for (std::size_t i = 0; i < n; ++i) in[i] = fft::cplx(a(static_cast<std::int64_t>(i), static_cast<std::int64_t>(l)), 0.0);
        row_dft.apply(in.data(), n, out.data());
        for (std::size_t i = 0; i < 2 * n; ++i) stage[i * m + l] = out[i];
    }

    // Stage 2: transform along j and accumulate fourth powers.
    long double total = 0.0L;
    std::vector<fft::cplx> row_out(2 * m);
    for (std::size_t i = 0; i < 2 * n; ++i) {
        col_dft.apply(stage.data() + i * m, m, row_out.data());
        for (std::size_t j = 0; j < 2 * m; ++j) {
            long double mag2 = static_cast<long double>(std::norm(row_out[j]));
            total += mag2 * mag2;
        }
    }
    long double result = total / (4.0L * static_cast<long double>(n) * static_cast<long double>(m));
    long double nearest = std::nearbyintl(result);
    long double slack = std::max<long double>(0.25L, 1e-9L * std::abs(result));
    if (std::abs(result - nearest) > slack)
        throw numerical_error("fourth_power_sum: grid sum is not integral (residual " +
                              std::to_string(static_cast<double>(result - nearest)) + ")");
    return static_cast<double>(result);
}

// Spectrum export: same layout as the array text format with the table
// dimensions in the header; row u = 0 and column v = 0 sit in the middle.
inline std::string spectrum_to_text(const CorrelationSpectrum& spec) {
    std::string out = std::to_string(2 * spec.n() - 1) + " " + std::to_string(2 * spec.m() - 1) + "\n";
    for (std::int64_t u = -(spec.n() - 1); u < spec.n(); ++u) {
        for (std::int64_t v = -(spec.m() - 1); v < spec.m(); ++v) {
            if (v != -(spec.m() - 1)) out += ' ';
            out += std::to_string(spec.at(u, v));
        }
        out += '\n';
    }
    return out;
}

} // namespace qca
