#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace qca {

using int128 = __int128;

inline std::string int128_to_string(int128 v) {
    if (v == 0) return "0";
    bool neg = v < 0;
    unsigned __int128 u = neg ? -static_cast<unsigned __int128>(v) : static_cast<unsigned __int128>(v);
    std::string digits;
    while (u > 0) {
        digits.push_back(static_cast<char>('0' + static_cast<int>(u % 10)));
        u /= 10;
    }
    if (neg) digits.push_back('-');
    return std::string(digits.rbegin(), digits.rend());
}

namespace detail {

inline unsigned __int128 gcd_u128(unsigned __int128 a, unsigned __int128 b) {
    while (b != 0) {
        unsigned __int128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

} // namespace detail

// Exact rational with 128-bit numerator and denominator, always stored
// reduced with a positive denominator.
class Rat {
public:
    Rat() = default;
    Rat(long long n) : num_(n), den_(1) {} // NOLINT: implicit by design
    Rat(int128 num, int128 den) : num_(num), den_(den) { normalize(); }

    int128 num() const { return num_; }
    int128 den() const { return den_; }

    double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

    std::string to_string() const {
        std::string s = int128_to_string(num_);
        if (den_ != 1) s += "/" + int128_to_string(den_);
        return s;
    }

    bool is_zero() const { return num_ == 0; }

    // Largest integer <= num/den.
    int128 floor() const {
        int128 q = num_ / den_;
        if (num_ % den_ != 0 && num_ < 0) --q;
        return q;
    }

    Rat operator-() const { return Rat(-num_, den_, already_reduced{}); }

    friend Rat operator+(const Rat& a, const Rat& b) { return Rat(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_); }
    friend Rat operator-(const Rat& a, const Rat& b) { return Rat(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_); }
    friend Rat operator*(const Rat& a, const Rat& b) { return Rat(a.num_ * b.num_, a.den_ * b.den_); }
    friend Rat operator/(const Rat& a, const Rat& b) {
        if (b.num_ == 0) throw std::domain_error("Rat: division by zero");
        return Rat(a.num_ * b.den_, a.den_ * b.num_);
    }

    Rat& operator+=(const Rat& o) { return *this = *this + o; }
    Rat& operator-=(const Rat& o) { return *this = *this - o; }
    Rat& operator*=(const Rat& o) { return *this = *this * o; }
    Rat& operator/=(const Rat& o) { return *this = *this / o; }

    friend bool operator==(const Rat& a, const Rat& b) { return a.num_ == b.num_ && a.den_ == b.den_; }
    friend bool operator!=(const Rat& a, const Rat& b) { return !(a == b); }
    friend bool operator<(const Rat& a, const Rat& b) { return a.num_ * b.den_ < b.num_ * a.den_; }
    friend bool operator>(const Rat& a, const Rat& b) { return b < a; }
    friend bool operator<=(const Rat& a, const Rat& b) { return !(b < a); }
    friend bool operator>=(const Rat& a, const Rat& b) { return !(a < b); }

    // Parses "n" or "n/d" with optional leading minus signs.
    static Rat parse(const std::string& text) {
        auto slash = text.find('/');
        auto parse_int = [](const std::string& part) -> int128 {
            if (part.empty()) throw std::invalid_argument("Rat: empty integer in '" + part + "'");
            std::size_t i = 0;
            bool neg = false;
            if (part[0] == '-' || part[0] == '+') {
                neg = part[0] == '-';
                i = 1;
            }
            if (i == part.size()) throw std::invalid_argument("Rat: sign without digits");
            int128 v = 0;
            for (; i < part.size(); ++i) {
                if (part[i] < '0' || part[i] > '9') throw std::invalid_argument("Rat: bad digit in '" + part + "'");
                v = v * 10 + (part[i] - '0');
            }
            return neg ? -v : v;
        };
        if (slash == std::string::npos) return Rat(parse_int(text), 1);
        return Rat(parse_int(text.substr(0, slash)), parse_int(text.substr(slash + 1)));
    }

private:
    struct already_reduced {};
    Rat(int128 num, int128 den, already_reduced) : num_(num), den_(den) {}

    void normalize() {
        if (den_ == 0) throw std::domain_error("Rat: zero denominator");
        if (den_ < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        if (num_ == 0) {
            den_ = 1;
            return;
        }
        unsigned __int128 a = num_ < 0 ? -static_cast<unsigned __int128>(num_) : static_cast<unsigned __int128>(num_);
        unsigned __int128 g = detail::gcd_u128(a, static_cast<unsigned __int128>(den_));
        num_ /= static_cast<int128>(g);
        den_ /= static_cast<int128>(g);
    }

    int128 num_ = 0;
    int128 den_ = 1;
};

inline Rat abs(const Rat& r) { return r.num() < 0 ? -r : r; }

// Reduces s modulo 1 into the half-open interval (-1/2, 1/2].
inline Rat wrap_half_interval(Rat s) {
    s = s - Rat(s.floor(), 1);          // now in [0, 1)
    if (s > Rat(1, 2)) s = s - Rat(1);  // now in (-1/2, 1/2]
    return s;
}

} // namespace qca
