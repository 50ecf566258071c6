#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "qca/arrays.hpp"
#include "qca/rational.hpp"

namespace qca {

enum class Family { legendre_seq, ternary_legendre_seq, legendre_array, qr_array };

inline const char* family_name(Family f) {
    switch (f) {
        case Family::legendre_seq: return "legendre-seq";
        case Family::ternary_legendre_seq: return "ternary-legendre-seq";
        case Family::legendre_array: return "legendre-array";
        case Family::qr_array: return "qr";
    }
    return "?";
}

namespace detail {

inline double wrap_half_interval(double s) {
    s -= std::floor(s);
    if (s > 0.5) s -= 1.0;
    return s;
}

inline double quarter_term(double s) {
    double d = std::abs(wrap_half_interval(s)) - 0.25;
    return 8.0 * d * d;
}

inline Rat quarter_term(const Rat& s) {
    Rat d = abs(wrap_half_interval(s)) - Rat(1, 4);
    return Rat(8) * d * d;
}

} // namespace detail

// Limiting 1/F of a rotated Legendre sequence: 1/6 + 8(|s| - 1/4)^2.
inline double legendre_seq_inv_merit(double s) { return 1.0 / 6.0 + detail::quarter_term(s); }
inline Rat legendre_seq_inv_merit(const Rat& s) { return Rat(1, 6) + detail::quarter_term(s); }

// Limiting normalized full power sum (1/p^2) sum C^2 of a rotated ternary
// Legendre sequence, peak included: 7/6 + 8(|s| - 1/4)^2.
inline double ternary_legendre_sidelobe(double s) { return 7.0 / 6.0 + detail::quarter_term(s); }
inline Rat ternary_legendre_sidelobe(const Rat& s) { return Rat(7, 6) + detail::quarter_term(s); }

// Limiting 1/F of a rotated p x q Legendre array.
inline double legendre_array_inv_merit(double s, double t) {
    return ternary_legendre_sidelobe(s) * ternary_legendre_sidelobe(t) - 1.0;
}
inline Rat legendre_array_inv_merit(const Rat& s, const Rat& t) {
    return ternary_legendre_sidelobe(s) * ternary_legendre_sidelobe(t) - Rat(1);
}

// Limiting 1/F of a rotated p x p quadratic-residue array.
inline double qr_array_inv_merit(double s, double t) {
    return 1.0 / 9.0 + (0.5 + detail::quarter_term(s)) * (0.5 + detail::quarter_term(t));
}
inline Rat qr_array_inv_merit(const Rat& s, const Rat& t) {
    return Rat(1, 9) + (Rat(1, 2) + detail::quarter_term(s)) * (Rat(1, 2) + detail::quarter_term(t));
}

// Merit factor of a product array from its factors' merit factors:
// 1/F = (1 + 1/FA)(1 + 1/FB) - 1, i.e. F = FA FB / (FA + FB + 1).
inline Rat compose_product_merit(const Rat& fa, const Rat& fb) {
    if (fa <= Rat(0) || fb <= Rat(0)) throw std::domain_error("compose_product_merit: merit factors must be positive");
    return fa * fb / (fa + fb + Rat(1));
}

struct OptimalRotation {
    std::vector<Rotation> rotations;
    Rat f_max;
};

// Analytic maximizers of the asymptotic merit factor. Each inverse-merit
// formula is a product/sum of terms minimized at |s| = 1/4, so the optima
// are the sign-flip orbit of (1/4, 1/4).
inline OptimalRotation optimal_rotation(Family family) {
    OptimalRotation result{{}, Rat(0)};
    switch (family) {
        case Family::legendre_seq:
            result.rotations = {Rotation(Rat(1, 4), Rat(0)), Rotation(Rat(-1, 4), Rat(0))};
            result.f_max = Rat(6);
            return result;
        case Family::legendre_array:
        case Family::qr_array:
            result.rotations = {Rotation(Rat(1, 4), Rat(1, 4)), Rotation(Rat(1, 4), Rat(-1, 4)),
                                Rotation(Rat(-1, 4), Rat(1, 4)), Rotation(Rat(-1, 4), Rat(-1, 4))};
            result.f_max = Rat(36, 13);
            return result;
        case Family::ternary_legendre_seq:
            break;
    }
    throw std::domain_error("optimal_rotation: no merit-factor optimum defined for this family");
}

// Prediction for the quantity measured by convergence studies: 1/F for the
// binary families, the normalized full power sum for the ternary sequence.
inline double predicted_inv_merit(Family family, const Rat& s, const Rat& t) {
    switch (family) {
        case Family::legendre_seq: return legendre_seq_inv_merit(s).to_double();
        case Family::ternary_legendre_seq: return ternary_legendre_sidelobe(s).to_double();
        case Family::legendre_array: return legendre_array_inv_merit(s, t).to_double();
        case Family::qr_array: return qr_array_inv_merit(s, t).to_double();
    }
    throw std::domain_error("predicted_inv_merit: unknown family");
}

} // namespace qca
