#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "qca/arrays.hpp"
#include "qca/finite_field.hpp"

namespace qca {

using cplx = std::complex<double>;

// eps_k = exp(2 pi i k / p) for k in [0, p).
inline std::vector<cplx> roots_of_unity(std::int64_t p) {
    std::vector<cplx> eps(static_cast<std::size_t>(p));
    for (std::int64_t k = 0; k < p; ++k) {
        double angle = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(p);
        eps[static_cast<std::size_t>(k)] = cplx(std::cos(angle), std::sin(angle));
    }
    return eps;
}

struct CheckReport {
    std::string name;
    std::int64_t p = 0;
    bool pass = true;
    double max_err = 0.0;
    std::vector<std::string> failures; // first few failing cells, for diagnostics

    void record(bool ok, double err, const std::string& where) {
        if (err > max_err) max_err = err;
        if (!ok) {
            pass = false;
            if (failures.size() < 8) failures.push_back(where);
        }
    }
};

namespace detail {

// chi over all of GF(p^2) as a flat table indexed by c0 * p + c1.
inline std::vector<std::int8_t> chi_table(const ExtFieldSpec& spec) {
    std::int64_t p = spec.p();
    std::vector<std::int8_t> table(static_cast<std::size_t>(p * p));
    for (std::int64_t c0 = 0; c0 < p; ++c0)
        for (std::int64_t c1 = 0; c1 < p; ++c1)
            table[static_cast<std::size_t>(c0 * p + c1)] = static_cast<std::int8_t>(chi({c0, c1}, spec));
    return table;
}

} // namespace detail

// Checks the Gaussian-sum evaluation of the generating function of the
// ternary quadratic-residue array at p-th roots of unity:
//   Z(eps_k, eps_l) = (-1)^{(p+1)/2} p chi(k beta + l beta')
// with {beta, beta'} the dual basis, by direct double summation. Also checks
// the magnitude corollary |Z| = 0 at (0,0) and p elsewhere.
inline CheckReport verify_gauss_sum(const PrimeModulus& p, const ExtFieldSpec& spec) {
    if (spec.p() != p.p) throw std::invalid_argument("verify_gauss_sum: spec is over a different prime");
    CheckReport report;
    report.name = "gauss_sum";
    report.p = p.p;
    const double tol = 1e-6 * static_cast<double>(p.p);
    const auto eps = roots_of_unity(p.p);
    const auto [beta, beta_prime] = dual_basis(spec);
    TernaryArray z = ternary_qr_array(p, spec);
    const double sign = (p.p + 1) / 2 % 2 == 0 ? 1.0 : -1.0;

    for (std::int64_t k = 0; k < p.p; ++k) {
        for (std::int64_t l = 0; l < p.p; ++l) {
            cplx sum(0.0, 0.0);
            for (std::int64_t i = 0; i < p.p; ++i)
                for (std::int64_t j = 0; j < p.p; ++j) {
                    int cell = z(i, j);
                    if (cell == 0) continue;
                    sum += static_cast<double>(cell) * eps[static_cast<std::size_t>(i * k % p.p)] *
                           eps[static_cast<std::size_t>(j * l % p.p)];
                }
            ExtFieldElement arg = ext_add(ext_scale(k, beta, spec), ext_scale(l, beta_prime, spec), spec);
            cplx expected = sign * static_cast<double>(p.p) * static_cast<double>(chi(arg, spec));
            double err = std::abs(sum - expected);
            report.record(err <= tol, err, "Z(eps_" + std::to_string(k) + ", eps_" + std::to_string(l) + ")");
            double expected_mag = (k == 0 && l == 0) ? 0.0 : static_cast<double>(p.p);
            double mag_err = std::abs(std::abs(sum) - expected_mag);
            report.record(mag_err <= tol, mag_err,
                          "|Z|(eps_" + std::to_string(k) + ", eps_" + std::to_string(l) + ")");
        }
    }
    return report;
}

// The quartic character sum
//   Omega(kappa, lambda, mu) = sum_{x in GF(p^2)} chi(x)chi(x+kappa)chi(x+lambda)chi(x+mu)
// by full enumeration. Capped at p <= 31 (p^4 character evaluations worst
// case across a full test sweep).
inline std::int64_t omega(const ExtFieldElement& kappa, const ExtFieldElement& lambda, const ExtFieldElement& mu,
                          const ExtFieldSpec& spec) {
    std::int64_t p = spec.p();
    if (p > 31) throw std::length_error("omega: enumeration capped at p <= 31");
    spec.check_element(kappa);
    spec.check_element(lambda);
    spec.check_element(mu);
    const auto table = detail::chi_table(spec);
    auto chi_at = [&](std::int64_t c0, std::int64_t c1) -> std::int64_t {
        return table[static_cast<std::size_t>(c0 * p + c1)];
    };
    std::int64_t sum = 0;
    for (std::int64_t c0 = 0; c0 < p; ++c0)
        for (std::int64_t c1 = 0; c1 < p; ++c1) {
            std::int64_t term = chi_at(c0, c1);
            if (term == 0) continue;
            term *= chi_at((c0 + kappa.c0) % p, (c1 + kappa.c1) % p);
            if (term == 0) continue;
            term *= chi_at((c0 + lambda.c0) % p, (c1 + lambda.c1) % p);
            if (term == 0) continue;
            term *= chi_at((c0 + mu.c0) % p, (c1 + mu.c1) % p);
            sum += term;
        }
    return sum;
}

// The root-of-unity kernel sum
//   Gamma(k, l, m) = sum_i eps_i^2 / ((1+eps_i)(eps_k+eps_i)(eps_l+eps_i)(eps_m+eps_i)).
// Denominators never vanish for odd p.
inline cplx gamma_sum(std::int64_t k, std::int64_t l, std::int64_t m, const PrimeModulus& p) {
    const auto eps = roots_of_unity(p.p);
    auto root = [&](std::int64_t idx) -> const cplx& {
        std::int64_t r = idx % p.p;
        if (r < 0) r += p.p;
        return eps[static_cast<std::size_t>(r)];
    };
    cplx sum(0.0, 0.0);
    for (std::int64_t i = 0; i < p.p; ++i) {
        const cplx& e = eps[static_cast<std::size_t>(i)];
        sum += e * e / ((1.0 + e) * (root(k) + e) * (root(l) + e) * (root(m) + e));
    }
    return sum;
}

// Checks the closed form
//   sum_{k=1}^{p-1} eps_k^j / |1 - eps_k|^2 = (p^2/2)(|j|/p - 1/2)^2 - (p^2+2)/24
// for |j| <= p, to relative 1e-9; the left side must be real to within a
// 1e-10 imaginary residue.
inline CheckReport exp_sum_check(const PrimeModulus& p, std::int64_t j) {
    if (j < -p.p || j > p.p) throw std::domain_error("exp_sum_check: |j| must be at most p");
    CheckReport report;
    report.name = "exp_sum";
    report.p = p.p;
    const auto eps = roots_of_unity(p.p);
    cplx lhs(0.0, 0.0);
    for (std::int64_t k = 1; k < p.p; ++k) {
        std::int64_t e = ((j % p.p) * k % p.p + p.p) % p.p;
        lhs += eps[static_cast<std::size_t>(e)] / std::norm(1.0 - eps[static_cast<std::size_t>(k)]);
    }
    double pd = static_cast<double>(p.p);
    double frac = std::abs(static_cast<double>(j)) / pd - 0.5;
    double rhs = pd * pd / 2.0 * frac * frac - (pd * pd + 2.0) / 24.0;
    double scale = std::max(1.0, std::abs(rhs));
    double err = std::abs(lhs.real() - rhs);
    report.record(err <= 1e-9 * scale, err / scale, "j=" + std::to_string(j));
    double imag_err = std::abs(lhs.imag());
    report.record(imag_err <= 1e-10 * scale, imag_err / scale, "imag j=" + std::to_string(j));
    return report;
}

// Lagrange interpolation of a degree <= p-1 polynomial from its values at
// the p-th roots of unity to the negated point:
//   P(-eps_i) = (2/p) sum_k P(eps_k) eps_k / (eps_k + eps_i).
inline cplx lagrange_negated_point(const std::vector<cplx>& values, std::int64_t i) {
    const std::int64_t p = static_cast<std::int64_t>(values.size());
    if (p < 1 || p % 2 == 0) throw std::invalid_argument("lagrange_negated_point: need values at p points, p odd");
    const auto eps = roots_of_unity(p);
    std::int64_t r = i % p;
    if (r < 0) r += p;
    const cplx& ei = eps[static_cast<std::size_t>(r)];
    cplx sum(0.0, 0.0);
    for (std::int64_t k = 0; k < p; ++k) {
        const cplx& ek = eps[static_cast<std::size_t>(k)];
        sum += values[static_cast<std::size_t>(k)] * ek / (ek + ei);
    }
    return 2.0 / static_cast<double>(p) * sum;
}

// Checks |A(zeta_d^j)| <= (2 log d) max_k |A(zeta_d^{2k})| for a sequence of
// odd length d > 1 at every (2d)-th root of unity; zeta_d = exp(i pi / d).
inline CheckReport interpolation_bound_check(const TernaryArray& a) {
    if (!a.is_sequence()) throw std::invalid_argument("interpolation_bound_check: input must be a sequence");
    const std::int64_t d = a.n();
    if (d <= 1 || d % 2 == 0) throw std::invalid_argument("interpolation_bound_check: length must be odd and > 1");
    CheckReport report;
    report.name = "interpolation_bound";
    report.p = d;

    std::vector<double> mags(static_cast<std::size_t>(2 * d));
    for (std::int64_t j = 0; j < 2 * d; ++j) {
        cplx z = std::polar(1.0, std::numbers::pi * static_cast<double>(j) / static_cast<double>(d));
        cplx value(0.0, 0.0);
        cplx zi(1.0, 0.0);
        for (std::int64_t i = 0; i < d; ++i) {
            value += static_cast<double>(a(i, 0)) * zi;
            zi *= z;
        }
        mags[static_cast<std::size_t>(j)] = std::abs(value);
    }
    double even_max = 0.0;
    for (std::int64_t k = 0; k < d; ++k) even_max = std::max(even_max, mags[static_cast<std::size_t>(2 * k % (2 * d))]);
    const double bound = 2.0 * std::log(static_cast<double>(d)) * even_max;
    for (std::int64_t j = 0; j < 2 * d; ++j) {
        double excess = mags[static_cast<std::size_t>(j)] - bound;
        report.record(excess <= 1e-9 * std::max(1.0, bound), std::max(0.0, excess), "j=" + std::to_string(j));
    }
    return report;
}

} // namespace qca
