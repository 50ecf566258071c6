#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "qca/asymptotics.hpp"
#include "qca/correlation.hpp"
#include "qca/prng.hpp"

namespace qca {

namespace detail {

inline std::string format_g12(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

// Static-chunk parallel loop. Each index is processed independently and
// written to its own slot, so results do not depend on the schedule.
inline void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& fn) {
    if (threads <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(threads), count);
    std::vector<std::thread> pool;
    std::exception_ptr first_error;
    std::mutex error_mutex;
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w]() {
            try {
                for (std::size_t i = w; i < count; i += workers) fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

// Correlation table of a +-1 array maintained under single-cell sign flips.
// A flip changes C(u,v) by da * (a_{r+u,c+v} + a_{r-u,c-v}) for every
// (u,v) != (0,0), so one Gray-code step costs O(nm) instead of a full
// O((nm)^2) recomputation. Only the half-plane u > 0 or (u = 0, v > 0) is
// stored; energy counts each pair (u,v), (-u,-v) twice.
class FlipCorrelation {
public:
    FlipCorrelation(std::int64_t n, std::int64_t m)
        : n_(n), m_(m), cells_(static_cast<std::size_t>(n * m), 1) {
        for (std::int64_t u = 0; u < n; ++u) {
            std::int64_t v_start = u == 0 ? 1 : -(m - 1);
            for (std::int64_t v = v_start; v < m; ++v) {
                shifts_.push_back({u, v});
                // All-ones start: C(u,v) is the overlap area.
                values_.push_back((n - u) * (m - (v < 0 ? -v : v)));
            }
        }
        energy_ = 0;
        for (std::int64_t c : values_) energy_ += 2 * c * c;
    }

    std::int64_t energy() const { return energy_; }

    void flip(std::int64_t r, std::int64_t c) {
        std::int8_t& cell = cells_[static_cast<std::size_t>(r * m_ + c)];
        cell = static_cast<std::int8_t>(-cell);
        const std::int64_t da = 2 * cell;
        for (std::size_t idx = 0; idx < shifts_.size(); ++idx) {
            const auto [u, v] = shifts_[idx];
            std::int64_t neighbors = at(r + u, c + v) + at(r - u, c - v);
            if (neighbors == 0) continue;
            std::int64_t old = values_[idx];
            std::int64_t updated = old + da * neighbors;
            values_[idx] = updated;
            energy_ += 2 * (updated * updated - old * old);
        }
    }

private:
    std::int64_t at(std::int64_t i, std::int64_t j) const {
        if (i < 0 || i >= n_ || j < 0 || j >= m_) return 0;
        return cells_[static_cast<std::size_t>(i * m_ + j)];
    }

    std::int64_t n_;
    std::int64_t m_;
    std::vector<std::int8_t> cells_;
    std::vector<std::pair<std::int64_t, std::int64_t>> shifts_;
    std::vector<std::int64_t> values_;
    std::int64_t energy_ = 0;
};

// Bit layout of candidate patterns: cell c (row-major) sits at bit
// nm-1-c with set = -1, so integer order on patterns is lexicographic
// order on arrays with +1 < -1.
inline TernaryArray pattern_to_array(std::uint32_t bits, std::int64_t n, std::int64_t m) {
    TernaryArray a(n, m);
    const std::int64_t nm = n * m;
    for (std::int64_t cell = 0; cell < nm; ++cell)
        a.set(cell / m, cell % m, (bits >> (nm - 1 - cell)) & 1u ? -1 : 1);
    return a;
}

} // namespace detail

struct BestMerit {
    Rat f;
    TernaryArray witness;
};

// Maximum merit factor over all 2^(nm) binary n x m arrays, with the
// lexicographically smallest maximizer as witness. Enumerates the a_00 = +1
// negation representatives in Gray-code order with incremental correlation
// updates; reversal symmetry keeps the merit of mirrored candidates equal,
// which the tie handling relies on when picking the witness.
inline BestMerit exhaustive_best_merit(std::int64_t n, std::int64_t m, std::int64_t cap = 24) {
    const std::int64_t nm = n * m;
    if (nm < 2) throw std::domain_error("exhaustive_best_merit: need nm > 1");
    if (nm > cap || nm > 32)
        throw std::length_error("exhaustive_best_merit: nm = " + std::to_string(nm) + " exceeds cap " +
                                std::to_string(std::min<std::int64_t>(cap, 32)));
    detail::FlipCorrelation corr(n, m);
    std::uint32_t pattern = 0; // all +1
    std::int64_t best_energy = corr.energy();
    std::uint32_t best_pattern = pattern;

    const int free_bits = static_cast<int>(nm - 1); // cell 0 pinned to +1
    const std::uint32_t steps = 1u << free_bits;
    for (std::uint32_t k = 1; k < steps; ++k) {
        int gray_bit = __builtin_ctz(k);
        std::int64_t cell = 1 + gray_bit; // cells 1..nm-1 in Gray order
        corr.flip(cell / m, cell % m);
        pattern ^= 1u << (nm - 1 - cell);
        std::int64_t e = corr.energy();
        if (e < best_energy || (e == best_energy && pattern < best_pattern)) {
            best_energy = e;
            best_pattern = pattern;
        }
    }
    if (best_energy == 0) throw undefined_merit_error("exhaustive_best_merit: zero sidelobe energy");
    return {Rat(static_cast<int128>(nm) * nm, best_energy), detail::pattern_to_array(best_pattern, n, m)};
}

// Mean of 1/F over all 2^(nm) binary arrays, exactly. Negation classes have
// equal energy, so the a_00 = +1 half carries the full mean. The result is
// asserted against the closed form 1 - 1/(nm).
inline Rat mean_inverse_merit_exhaustive(std::int64_t n, std::int64_t m, std::int64_t cap = 24) {
    const std::int64_t nm = n * m;
    if (nm < 2) throw std::domain_error("mean_inverse_merit_exhaustive: need nm > 1");
    if (nm > cap || nm > 32)
        throw std::length_error("mean_inverse_merit_exhaustive: nm = " + std::to_string(nm) + " exceeds cap " +
                                std::to_string(std::min<std::int64_t>(cap, 32)));
    detail::FlipCorrelation corr(n, m);
    int128 energy_sum = corr.energy();
    const std::uint32_t steps = 1u << (nm - 1);
    for (std::uint32_t k = 1; k < steps; ++k) {
        std::int64_t cell = 1 + __builtin_ctz(k);
        corr.flip(cell / m, cell % m);
        energy_sum += corr.energy();
    }
    Rat mean(energy_sum, static_cast<int128>(steps) * nm * nm);
    if (mean != Rat(nm - 1, nm))
        throw std::logic_error("mean_inverse_merit_exhaustive: mean " + mean.to_string() +
                               " differs from the closed form (implementation bug)");
    return mean;
}

struct SampledMean {
    double mean = 0.0;
    double std_error = 0.0;
    std::uint64_t count = 0;
    std::uint64_t seed = 0;
};

// Monte-Carlo estimate of the same mean for sizes beyond the exhaustive cap.
inline SampledMean mean_inverse_merit_sampled(std::int64_t n, std::int64_t m, std::uint64_t seed,
                                              std::uint64_t count) {
    if (n * m < 2) throw std::domain_error("mean_inverse_merit_sampled: need nm > 1");
    if (count < 2) throw std::domain_error("mean_inverse_merit_sampled: need at least two samples");
    const double denom = static_cast<double>(n * m) * static_cast<double>(n * m);
    double sum = 0.0, sum_sq = 0.0;
    for (std::uint64_t trial = 0; trial < count; ++trial) {
        SplitMix64 gen(derive_seed(seed, trial));
        TernaryArray a(n, m);
        for (std::int64_t i = 0; i < n; ++i)
            for (std::int64_t j = 0; j < m; ++j) a.set(i, j, gen.next_sign());
        double x = static_cast<double>(sidelobe_energy(autocorrelation_direct(a))) / denom;
        sum += x;
        sum_sq += x * x;
    }
    SampledMean result;
    result.count = count;
    result.seed = seed;
    result.mean = sum / static_cast<double>(count);
    double variance = (sum_sq - sum * sum / static_cast<double>(count)) / static_cast<double>(count - 1);
    result.std_error = std::sqrt(std::max(0.0, variance) / static_cast<double>(count));
    return result;
}

struct SweepSpec {
    Family family = Family::qr_array; // legendre_array or qr_array
    std::int64_t p = 3;
    std::int64_t q = 3;
    std::int64_t grid = 64; // divisible by 4 puts +-1/4 on the grid
    bool random_variant = false;
    std::uint64_t seed = 0; // sign pattern / basis seed when random_variant
    int y00 = 1;
    int threads = 1;
};

struct SweepRow {
    Rat s;
    Rat t;
    Rat f_measured;
    Rat f_predicted;
};

struct SweepResult {
    SweepSpec spec;
    std::vector<SweepRow> rows; // canonical order: s outer, t inner, ascending
};

namespace detail {

inline TernaryArray sweep_base_array(const SweepSpec& spec) {
    PrimeModulus p(spec.p);
    PrimeModulus q(spec.q);
    switch (spec.family) {
        case Family::legendre_array: {
            SignPattern v = spec.random_variant ? random_sign_pattern(spec.p, spec.q, spec.seed)
                                                : calabro_wolf_pattern(spec.p, spec.q);
            return legendre_array(p, q, v);
        }
        case Family::qr_array: {
            if (spec.p != spec.q) throw std::invalid_argument("rotation_sweep: qr family needs p = q");
            ExtFieldSpec field = spec.random_variant ? make_ext_field_random_basis(p, spec.seed) : make_ext_field(p);
            return qr_array(p, field, spec.y00);
        }
        default:
            throw std::invalid_argument("rotation_sweep: family must be legendre-array or qr");
    }
}

} // namespace detail

// Measures F over a uniform rotation grid on (-1/2, 1/2]^2 and pairs each
// point with the asymptotic prediction. Grid points are exact rationals
// k/grid; measurement uses the spectral engine.
inline SweepResult rotation_sweep(const SweepSpec& spec) {
    if (spec.grid < 1) throw std::invalid_argument("rotation_sweep: grid resolution must be positive");
    TernaryArray base = detail::sweep_base_array(spec);

    std::vector<Rat> points;
    for (std::int64_t k = -(spec.grid - 1) / 2; k <= spec.grid / 2; ++k) points.emplace_back(k, spec.grid);

    SweepResult result{spec, {}};
    result.rows.resize(points.size() * points.size());
    detail::parallel_for(result.rows.size(), spec.threads, [&](std::size_t idx) {
        const Rat& s = points[idx / points.size()];
        const Rat& t = points[idx % points.size()];
        TernaryArray rotated = rotate(base, Rotation(s, t));
        MeritReport report = merit_factor(rotated, Engine::spectral);
        Rat predicted_inv = spec.family == Family::legendre_array ? legendre_array_inv_merit(s, t)
                                                                  : qr_array_inv_merit(s, t);
        result.rows[idx] = SweepRow{s, t, report.merit, Rat(1) / predicted_inv};
    });
    return result;
}

inline std::string sweep_csv(const SweepResult& result) {
    std::string out = "s_num,s_den,t_num,t_den,F_measured,F_predicted\n";
    for (const auto& row : result.rows) {
        out += int128_to_string(row.s.num()) + "," + int128_to_string(row.s.den()) + ",";
        out += int128_to_string(row.t.num()) + "," + int128_to_string(row.t.den()) + ",";
        out += detail::format_g12(row.f_measured.to_double()) + ",";
        out += detail::format_g12(row.f_predicted.to_double()) + "\n";
    }
    return out;
}

struct ConvergenceSpec {
    Family family = Family::legendre_seq;
    std::vector<std::int64_t> primes; // strictly increasing odd primes
    Rotation rotation{Rat(0), Rat(0)};
    int trials_per_prime = 1;
    std::uint64_t seed = 0;
    int threads = 1;
};

struct ConvergenceRow {
    std::int64_t p = 0;
    std::int64_t q = 0;
    Rat s{0};
    Rat t{0};
    double measured = 0.0;  // 1/F, or the normalized power sum for ternary
    double predicted = 0.0;
    double residual = 0.0;
    std::uint64_t trial_seed = 0;
};

// Finite-p residuals of the asymptotic formulas: constructs family members
// (random sign pattern / random basis per trial where the family has that
// freedom), measures with the spectral engine, and subtracts the prediction.
inline std::vector<ConvergenceRow> convergence_study(const ConvergenceSpec& spec) {
    if (spec.trials_per_prime < 1) throw std::invalid_argument("convergence_study: need at least one trial");
    for (std::size_t i = 0; i < spec.primes.size(); ++i) {
        if (spec.primes[i] % 2 == 0 || !is_prime(spec.primes[i]))
            throw std::invalid_argument("convergence_study: " + std::to_string(spec.primes[i]) + " is not an odd prime");
        if (i > 0 && spec.primes[i] <= spec.primes[i - 1])
            throw std::invalid_argument("convergence_study: primes must be strictly increasing");
    }
    const Rat& s = spec.rotation.s;
    const Rat& t = spec.rotation.t;
    const double predicted = predicted_inv_merit(spec.family, s, t);
    const std::size_t trials = static_cast<std::size_t>(spec.trials_per_prime);

    std::vector<ConvergenceRow> rows(spec.primes.size() * trials);
    detail::parallel_for(rows.size(), spec.threads, [&](std::size_t idx) {
        const std::int64_t prime_value = spec.primes[idx / trials];
        const std::uint64_t trial_seed = derive_seed(spec.seed, idx);
        PrimeModulus p(prime_value);

        TernaryArray base(1, 1);
        std::int64_t q_value = 1;
        switch (spec.family) {
            case Family::legendre_seq: base = legendre_sequence(p, false); break;
            case Family::ternary_legendre_seq: base = legendre_sequence(p, true); break;
            case Family::legendre_array:
                q_value = prime_value;
                base = legendre_array(p, p, random_sign_pattern(prime_value, prime_value, trial_seed));
                break;
            case Family::qr_array:
                q_value = prime_value;
                base = qr_array(p, make_ext_field_random_basis(p, trial_seed), 1);
                break;
        }
        TernaryArray rotated = rotate(base, spec.rotation);
        MeritReport report = merit_factor(rotated, Engine::spectral);
        double norm = static_cast<double>(prime_value) * static_cast<double>(q_value);
        double measured = static_cast<double>(report.sidelobe) / (norm * norm);
        if (spec.family == Family::ternary_legendre_seq)
            measured += static_cast<double>(report.peak) * static_cast<double>(report.peak) / (norm * norm);
        rows[idx] = ConvergenceRow{prime_value, q_value, s,        t,
                                   measured,    predicted, std::abs(measured - predicted), trial_seed};
    });
    return rows;
}

inline std::string convergence_csv(const std::vector<ConvergenceRow>& rows) {
    std::string out = "p,q,s,t,inv_merit_measured,inv_merit_predicted,residual,trial_seed\n";
    for (const auto& row : rows) {
        out += std::to_string(row.p) + "," + std::to_string(row.q) + ",";
        out += detail::format_g12(row.s.to_double()) + "," + detail::format_g12(row.t.to_double()) + ",";
        out += detail::format_g12(row.measured) + "," + detail::format_g12(row.predicted) + ",";
        out += detail::format_g12(row.residual) + "," + std::to_string(row.trial_seed) + "\n";
    }
    return out;
}

} // namespace qca
