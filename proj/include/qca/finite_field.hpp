#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

#include "qca/prng.hpp"

namespace qca {

namespace detail {

inline std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t powmod_u64(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    base %= m;
    while (exp > 0) {
        if (exp & 1u) r = mulmod_u64(r, base, m);
        base = mulmod_u64(base, base, m);
        exp >>= 1;
    }
    return r;
}

} // namespace detail

// Deterministic Miller-Rabin. The base set {2,3,5,7,11,13,17,19,23,29,31,37}
// is exact for all n < 3.3 * 10^24, which covers every 64-bit input.
inline bool is_prime(std::int64_t n) {
    if (n < 2) return false;
    for (std::int64_t d : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n == d) return true;
        if (n % d == 0) return false;
    }
    std::uint64_t u = static_cast<std::uint64_t>(n);
    std::uint64_t d = u - 1;
    int s = 0;
    while ((d & 1u) == 0) {
        d >>= 1;
        ++s;
    }
    for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        std::uint64_t x = detail::powmod_u64(a, d, u);
        if (x == 1 || x == u - 1) continue;
        bool composite = true;
        for (int r = 1; r < s; ++r) {
            x = detail::mulmod_u64(x, x, u);
            if (x == u - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

// An odd prime; p = 2 is rejected everywhere.
struct PrimeModulus {
    std::int64_t p;

    explicit PrimeModulus(std::int64_t prime) : p(prime) {
        if (p < 3 || p % 2 == 0 || !is_prime(p))
            throw std::domain_error("PrimeModulus: " + std::to_string(prime) + " is not an odd prime");
    }
};

// Legendre symbol (a|p) via Euler's criterion; periodic in a mod p.
inline int legendre_symbol(std::int64_t a, const PrimeModulus& p) {
    std::int64_t r = a % p.p;
    if (r < 0) r += p.p;
    if (r == 0) return 0;
    std::uint64_t e = detail::powmod_u64(static_cast<std::uint64_t>(r),
                                         static_cast<std::uint64_t>((p.p - 1) / 2),
                                         static_cast<std::uint64_t>(p.p));
    return e == 1 ? 1 : -1;
}

// Element of GF(p^2) as coordinates in the power basis {1, x} of
// GF(p)[x]/(x^2 - n). Coordinates are canonical residues in [0, p).
struct ExtFieldElement {
    std::int64_t c0 = 0;
    std::int64_t c1 = 0;

    bool operator==(const ExtFieldElement&) const = default;
    bool is_zero() const { return c0 == 0 && c1 == 0; }
};

// Fixes a concrete model of GF(p^2): the defining non-residue n of the
// irreducible x^2 - n, and a basis {alpha, alpha'} over GF(p).
class ExtFieldSpec {
public:
    ExtFieldSpec(PrimeModulus p, std::int64_t nonresidue, ExtFieldElement alpha, ExtFieldElement alpha_prime)
        : p_(p), nonresidue_(nonresidue), alpha_(alpha), alpha_prime_(alpha_prime) {
        if (legendre_symbol(nonresidue_, p_) != -1)
            throw std::domain_error("ExtFieldSpec: defining polynomial x^2 - n must be irreducible (n a non-residue)");
        check_element(alpha_);
        check_element(alpha_prime_);
        // Basis independence: det of the coordinate matrix is nonzero mod p.
        std::int64_t det = (alpha_.c0 * alpha_prime_.c1 - alpha_.c1 * alpha_prime_.c0) % p_.p;
        if (det == 0) throw std::domain_error("ExtFieldSpec: basis elements are linearly dependent");
    }

    std::int64_t p() const { return p_.p; }
    const PrimeModulus& prime() const { return p_; }
    std::int64_t nonresidue() const { return nonresidue_; }
    const ExtFieldElement& alpha() const { return alpha_; }
    const ExtFieldElement& alpha_prime() const { return alpha_prime_; }

    void check_element(const ExtFieldElement& a) const {
        if (a.c0 < 0 || a.c0 >= p_.p || a.c1 < 0 || a.c1 >= p_.p)
            throw std::domain_error("ExtFieldElement: coordinates outside [0, p) for this spec");
    }

private:
    PrimeModulus p_;
    std::int64_t nonresidue_;
    ExtFieldElement alpha_;
    ExtFieldElement alpha_prime_;
};

// Default model: n is the smallest positive non-residue, basis {1, x}.
// Deterministic for fixed p.
inline ExtFieldSpec make_ext_field(const PrimeModulus& p) {
    std::int64_t n = 2;
    while (legendre_symbol(n, p) != -1) ++n;
    return ExtFieldSpec(p, n, ExtFieldElement{1, 0}, ExtFieldElement{0, 1});
}

// Same field model but with a seeded random basis; the constructions are
// stated for an arbitrary basis and tests exercise that freedom.
inline ExtFieldSpec make_ext_field_random_basis(const PrimeModulus& p, std::uint64_t seed) {
    std::int64_t n = 2;
    while (legendre_symbol(n, p) != -1) ++n;
    SplitMix64 gen(seed);
    for (;;) {
        ExtFieldElement a{static_cast<std::int64_t>(gen.next_below(static_cast<std::uint64_t>(p.p))),
                          static_cast<std::int64_t>(gen.next_below(static_cast<std::uint64_t>(p.p)))};
        ExtFieldElement b{static_cast<std::int64_t>(gen.next_below(static_cast<std::uint64_t>(p.p))),
                          static_cast<std::int64_t>(gen.next_below(static_cast<std::uint64_t>(p.p)))};
        if ((a.c0 * b.c1 - a.c1 * b.c0) % p.p != 0) return ExtFieldSpec(p, n, a, b);
    }
}

inline ExtFieldElement ext_add(const ExtFieldElement& a, const ExtFieldElement& b, const ExtFieldSpec& spec) {
    spec.check_element(a);
    spec.check_element(b);
    return {(a.c0 + b.c0) % spec.p(), (a.c1 + b.c1) % spec.p()};
}

inline ExtFieldElement ext_sub(const ExtFieldElement& a, const ExtFieldElement& b, const ExtFieldSpec& spec) {
    spec.check_element(a);
    spec.check_element(b);
    return {(a.c0 - b.c0 + spec.p()) % spec.p(), (a.c1 - b.c1 + spec.p()) % spec.p()};
}

inline ExtFieldElement ext_neg(const ExtFieldElement& a, const ExtFieldSpec& spec) {
    spec.check_element(a);
    return {a.c0 == 0 ? 0 : spec.p() - a.c0, a.c1 == 0 ? 0 : spec.p() - a.c1};
}

// (a0 + a1 x)(b0 + b1 x) = a0 b0 + n a1 b1 + (a0 b1 + a1 b0) x.
inline ExtFieldElement ext_mul(const ExtFieldElement& a, const ExtFieldElement& b, const ExtFieldSpec& spec) {
    spec.check_element(a);
    spec.check_element(b);
    std::int64_t p = spec.p();
    std::int64_t c0 = (a.c0 * b.c0 + spec.nonresidue() % p * (a.c1 * b.c1 % p)) % p;
    std::int64_t c1 = (a.c0 * b.c1 + a.c1 * b.c0) % p;
    return {c0, c1};
}

// Scalar multiple c * a with c an integer reduced mod p.
inline ExtFieldElement ext_scale(std::int64_t c, const ExtFieldElement& a, const ExtFieldSpec& spec) {
    spec.check_element(a);
    std::int64_t r = c % spec.p();
    if (r < 0) r += spec.p();
    return {r * a.c0 % spec.p(), r * a.c1 % spec.p()};
}

inline ExtFieldElement ext_pow(const ExtFieldElement& a, std::uint64_t e, const ExtFieldSpec& spec) {
    spec.check_element(a);
    if (a.is_zero() && e == 0) throw std::domain_error("ext_pow: 0^0 is undefined");
    ExtFieldElement result{1, 0};
    ExtFieldElement base = a;
    while (e > 0) {
        if (e & 1u) result = ext_mul(result, base, spec);
        base = ext_mul(base, base, spec);
        e >>= 1;
    }
    return result;
}

inline ExtFieldElement frobenius(const ExtFieldElement& a, const ExtFieldSpec& spec) {
    if (a.is_zero()) return a;
    return ext_pow(a, static_cast<std::uint64_t>(spec.p()), spec);
}

// Tr(a) = a + a^p, an element of the base field returned as a residue.
inline std::int64_t trace(const ExtFieldElement& a, const ExtFieldSpec& spec) {
    ExtFieldElement t = ext_add(a, frobenius(a, spec), spec);
    // a + a^p is fixed by Frobenius, hence lies in GF(p).
    if (t.c1 != 0) throw std::logic_error("trace: result not in the base field");
    return t.c0;
}

// Quadratic character of GF(p^2) by Euler's criterion:
// a^((p^2-1)/2) is 1 for nonzero squares and p-1 (= -1) otherwise.
inline int chi(const ExtFieldElement& a, const ExtFieldSpec& spec) {
    spec.check_element(a);
    if (a.is_zero()) return 0;
    std::uint64_t e = static_cast<std::uint64_t>(spec.p()) * static_cast<std::uint64_t>(spec.p()) / 2;
    ExtFieldElement r = ext_pow(a, e, spec);
    if (r.c1 == 0 && r.c0 == 1) return 1;
    if (r.c1 == 0 && r.c0 == spec.p() - 1) return -1;
    throw std::logic_error("chi: Euler criterion produced a value other than +-1");
}

// Dual basis {beta, beta'} of {alpha, alpha'}: Tr(alpha beta) = 1,
// Tr(alpha beta') = 0, Tr(alpha' beta) = 0, Tr(alpha' beta') = 1.
// Solved as two 2x2 linear systems over GF(p).
inline std::pair<ExtFieldElement, ExtFieldElement> dual_basis(const ExtFieldSpec& spec) {
    std::int64_t p = spec.p();
    const ExtFieldElement x{0, 1};
    // Tr(alpha * (b0 + b1 x)) = b0 Tr(alpha) + b1 Tr(alpha x), and likewise
    // for alpha'; the coefficient matrix is therefore:
    std::int64_t m00 = trace(spec.alpha(), spec);
    std::int64_t m01 = trace(ext_mul(spec.alpha(), x, spec), spec);
    std::int64_t m10 = trace(spec.alpha_prime(), spec);
    std::int64_t m11 = trace(ext_mul(spec.alpha_prime(), x, spec), spec);
    std::int64_t det = ((m00 * m11 - m01 * m10) % p + p) % p;
    if (det == 0) throw std::logic_error("dual_basis: singular trace system for a valid basis");
    std::int64_t inv_det = static_cast<std::int64_t>(
        detail::powmod_u64(static_cast<std::uint64_t>(det), static_cast<std::uint64_t>(p - 2),
                           static_cast<std::uint64_t>(p)));
    auto solve = [&](std::int64_t r0, std::int64_t r1) -> ExtFieldElement {
        std::int64_t b0 = ((m11 * r0 - m01 * r1) % p + p) % p;
        std::int64_t b1 = ((m00 * r1 - m10 * r0) % p + p) % p;
        return {b0 * inv_det % p, b1 * inv_det % p};
    };
    return {solve(1, 0), solve(0, 1)};
}

// The element i*alpha + j*alpha' for integer coordinates i, j.
inline ExtFieldElement basis_combination(std::int64_t i, std::int64_t j, const ExtFieldSpec& spec) {
    return ext_add(ext_scale(i, spec.alpha(), spec), ext_scale(j, spec.alpha_prime(), spec), spec);
}

} // namespace qca
