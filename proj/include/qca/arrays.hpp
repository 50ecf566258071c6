#pragma once

#include <cassert>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "qca/finite_field.hpp"
#include "qca/prng.hpp"
#include "qca/rational.hpp"

namespace qca {

// Dense n x m matrix over {-1, 0, +1}, row-major. Cells outside the support
// rectangle are implicitly zero and never stored.
class TernaryArray {
public:
    TernaryArray(std::int64_t n, std::int64_t m) : n_(n), m_(m), cells_(check_dims(n, m), 0) {}

    TernaryArray(std::int64_t n, std::int64_t m, std::vector<std::int8_t> cells)
        : n_(n), m_(m), cells_(std::move(cells)) {
        if (cells_.size() != check_dims(n, m)) throw std::invalid_argument("TernaryArray: cell count mismatch");
        for (std::int8_t v : cells_)
            if (v < -1 || v > 1) throw std::invalid_argument("TernaryArray: entries must lie in {-1, 0, 1}");
    }

    std::int64_t n() const { return n_; }
    std::int64_t m() const { return m_; }
    std::int64_t size() const { return n_ * m_; }
    bool is_sequence() const { return m_ == 1; }

    int operator()(std::int64_t i, std::int64_t j) const {
        assert(i >= 0 && i < n_ && j >= 0 && j < m_);
        return cells_[static_cast<std::size_t>(i * m_ + j)];
    }

    // Value with the implicit zero extension outside the support.
    int at(std::int64_t i, std::int64_t j) const {
        if (i < 0 || i >= n_ || j < 0 || j >= m_) return 0;
        return cells_[static_cast<std::size_t>(i * m_ + j)];
    }

    void set(std::int64_t i, std::int64_t j, int v) {
        if (i < 0 || i >= n_ || j < 0 || j >= m_) throw std::out_of_range("TernaryArray: index outside support");
        if (v < -1 || v > 1) throw std::invalid_argument("TernaryArray: entries must lie in {-1, 0, 1}");
        cells_[static_cast<std::size_t>(i * m_ + j)] = static_cast<std::int8_t>(v);
    }

    bool is_binary() const {
        for (std::int8_t v : cells_)
            if (v == 0) return false;
        return true;
    }

    std::int64_t nonzero_count() const {
        std::int64_t count = 0;
        for (std::int8_t v : cells_) count += v != 0;
        return count;
    }

    const std::vector<std::int8_t>& cells() const { return cells_; }

    bool operator==(const TernaryArray&) const = default;

private:
    static std::size_t check_dims(std::int64_t n, std::int64_t m) {
        if (n < 1 || m < 1) throw std::invalid_argument("TernaryArray: dimensions must be positive");
        return static_cast<std::size_t>(n) * static_cast<std::size_t>(m);
    }

    std::int64_t n_;
    std::int64_t m_;
    std::vector<std::int8_t> cells_;
};

// Exact rational rotation parameters, canonicalized into (-1/2, 1/2]^2.
struct Rotation {
    Rat s;
    Rat t;

    Rotation(Rat s_in, Rat t_in) : s(wrap_half_interval(s_in)), t(wrap_half_interval(t_in)) {}
};

namespace detail {

// floor(n * s) reduced to [0, n). Exact: works from the rational directly.
inline std::int64_t shift_amount(const Rat& s, std::int64_t n) {
    Rat scaled = s * Rat(n);
    int128 f = scaled.floor();
    int128 r = f % n;
    if (r < 0) r += n;
    return static_cast<std::int64_t>(r);
}

} // namespace detail

inline std::int64_t rotation_row_shift(const Rotation& r, std::int64_t n) { return detail::shift_amount(r.s, n); }
inline std::int64_t rotation_col_shift(const Rotation& r, std::int64_t m) { return detail::shift_amount(r.t, m); }

// b_ij = a_{(i + floor(n s)) mod n, (j + floor(m t)) mod m}.
inline TernaryArray rotate(const TernaryArray& a, const Rotation& r) {
    std::int64_t dr = rotation_row_shift(r, a.n());
    std::int64_t dc = rotation_col_shift(r, a.m());
    TernaryArray b(a.n(), a.m());
    for (std::int64_t i = 0; i < a.n(); ++i) {
        std::int64_t src_i = i + dr >= a.n() ? i + dr - a.n() : i + dr;
        for (std::int64_t j = 0; j < a.m(); ++j) {
            std::int64_t src_j = j + dc >= a.m() ? j + dc - a.m() : j + dc;
            b.set(i, j, a(src_i, src_j));
        }
    }
    return b;
}

inline TernaryArray transpose(const TernaryArray& a) {
    TernaryArray b(a.m(), a.n());
    for (std::int64_t i = 0; i < a.n(); ++i)
        for (std::int64_t j = 0; j < a.m(); ++j) b.set(j, i, a(i, j));
    return b;
}

// The +-1 values placed on row 0 and column 0 of a p x q Legendre array
// (the cross where the ternary outer product vanishes). row_signs runs along
// row 0 (length q), col_signs along column 0 (length p); both share cell
// (0,0), so their first entries must agree.
class SignPattern {
public:
    SignPattern(std::vector<std::int8_t> col_signs, std::vector<std::int8_t> row_signs)
        : col_signs_(std::move(col_signs)), row_signs_(std::move(row_signs)) {
        if (col_signs_.empty() || row_signs_.empty())
            throw std::invalid_argument("SignPattern: empty sign vector");
        for (auto v : col_signs_)
            if (v != 1 && v != -1) throw std::invalid_argument("SignPattern: signs must be +-1");
        for (auto v : row_signs_)
            if (v != 1 && v != -1) throw std::invalid_argument("SignPattern: signs must be +-1");
        if (col_signs_[0] != row_signs_[0])
            throw std::invalid_argument("SignPattern: cell (0,0) sign disagrees between row and column");
    }

    std::int64_t p() const { return static_cast<std::int64_t>(col_signs_.size()); }
    std::int64_t q() const { return static_cast<std::int64_t>(row_signs_.size()); }
    int col_sign(std::int64_t i) const { return col_signs_[static_cast<std::size_t>(i)]; }
    int row_sign(std::int64_t j) const { return row_signs_[static_cast<std::size_t>(j)]; }

private:
    std::vector<std::int8_t> col_signs_;
    std::vector<std::int8_t> row_signs_;
};

// Column 0 all -1; row 0 entries +1 except the shared corner.
inline SignPattern calabro_wolf_pattern(std::int64_t p, std::int64_t q) {
    std::vector<std::int8_t> col(static_cast<std::size_t>(p), -1);
    std::vector<std::int8_t> row(static_cast<std::size_t>(q), 1);
    row[0] = -1;
    return SignPattern(std::move(col), std::move(row));
}

// Uniform over all 2^(p+q-1) patterns.
inline SignPattern random_sign_pattern(std::int64_t p, std::int64_t q, std::uint64_t seed) {
    SplitMix64 gen(seed);
    std::vector<std::int8_t> col(static_cast<std::size_t>(p));
    std::vector<std::int8_t> row(static_cast<std::size_t>(q));
    col[0] = row[0] = static_cast<std::int8_t>(gen.next_sign());
    for (std::int64_t i = 1; i < p; ++i) col[static_cast<std::size_t>(i)] = static_cast<std::int8_t>(gen.next_sign());
    for (std::int64_t j = 1; j < q; ++j) row[static_cast<std::size_t>(j)] = static_cast<std::int8_t>(gen.next_sign());
    return SignPattern(std::move(col), std::move(row));
}

// Legendre sequence of length p: index 0 is +1 (binary) or 0 (ternary), the
// rest are Legendre symbols.
inline TernaryArray legendre_sequence(const PrimeModulus& p, bool ternary = false) {
    TernaryArray a(p.p, 1);
    a.set(0, 0, ternary ? 0 : 1);
    for (std::int64_t i = 1; i < p.p; ++i) a.set(i, 0, legendre_symbol(i, p));
    return a;
}

// Product array (a_i b_j) of two sequences.
inline TernaryArray product_array(const TernaryArray& a, const TernaryArray& b) {
    if (!a.is_sequence() || !b.is_sequence())
        throw std::invalid_argument("product_array: both inputs must be sequences (m = 1)");
    TernaryArray out(a.n(), b.n());
    for (std::int64_t i = 0; i < a.n(); ++i)
        for (std::int64_t j = 0; j < b.n(); ++j) out.set(i, j, a(i, 0) * b(j, 0));
    return out;
}

// Legendre array: the outer product of the ternary Legendre sequences of
// lengths p and q, with the zero cross filled in by the sign pattern.
inline TernaryArray legendre_array(const PrimeModulus& p, const PrimeModulus& q, const SignPattern& v) {
    if (v.p() != p.p || v.q() != q.p)
        throw std::invalid_argument("legendre_array: sign pattern shape does not match (p, q)");
    TernaryArray l = legendre_sequence(p, /*ternary=*/true);
    TernaryArray k = legendre_sequence(q, /*ternary=*/true);
    TernaryArray x(p.p, q.p);
    for (std::int64_t i = 0; i < p.p; ++i)
        for (std::int64_t j = 0; j < q.p; ++j) {
            int cell = l(i, 0) * k(j, 0);
            if (i == 0) cell = v.row_sign(j);
            if (j == 0) cell = v.col_sign(i);
            x.set(i, j, cell);
        }
    return x;
}

// The classical p x q array: column 0 all -1, the rest of row 0 all +1,
// interior cells the product of Legendre symbols.
inline TernaryArray calabro_wolf_array(const PrimeModulus& p, const PrimeModulus& q) {
    TernaryArray x(p.p, q.p);
    for (std::int64_t i = 0; i < p.p; ++i)
        for (std::int64_t j = 0; j < q.p; ++j) {
            int cell;
            if (j == 0)
                cell = -1;
            else if (i == 0)
                cell = 1;
            else
                cell = legendre_symbol(i, p) * legendre_symbol(j, q);
            x.set(i, j, cell);
        }
    return x;
}

// Quadratic-residue array: y_ij = chi(i alpha + j alpha') away from the
// origin, with the free corner value y00 in {-1, +1}.
inline TernaryArray qr_array(const PrimeModulus& p, const ExtFieldSpec& spec, int y00) {
    if (spec.p() != p.p) throw std::invalid_argument("qr_array: field spec is over a different prime");
    if (y00 != 1 && y00 != -1) throw std::invalid_argument("qr_array: y00 must be +-1");
    TernaryArray y(p.p, p.p);
    for (std::int64_t i = 0; i < p.p; ++i) {
        ExtFieldElement row_part = ext_scale(i, spec.alpha(), spec);
        for (std::int64_t j = 0; j < p.p; ++j) {
            ExtFieldElement e = ext_add(row_part, ext_scale(j, spec.alpha_prime(), spec), spec);
            y.set(i, j, (i == 0 && j == 0) ? y00 : chi(e, spec));
        }
    }
    return y;
}

// Same with z_00 = chi(0) = 0.
inline TernaryArray ternary_qr_array(const PrimeModulus& p, const ExtFieldSpec& spec) {
    TernaryArray z = qr_array(p, spec, 1);
    z.set(0, 0, 0);
    return z;
}

// Text format: "n m\n" then n lines of m space-separated values from
// {-1, 0, 1}, with a required trailing newline.
inline std::string to_text(const TernaryArray& a) {
    std::string out = std::to_string(a.n()) + " " + std::to_string(a.m()) + "\n";
    for (std::int64_t i = 0; i < a.n(); ++i) {
        for (std::int64_t j = 0; j < a.m(); ++j) {
            if (j > 0) out += ' ';
            out += std::to_string(a(i, j));
        }
        out += '\n';
    }
    return out;
}

namespace detail {

inline std::vector<std::string> split_tokens(const std::string& line) {
    std::vector<std::string> tokens;
    std::size_t i = 0;
    while (i < line.size()) {
        if (line[i] == ' ') {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j < line.size() && line[j] != ' ') ++j;
        tokens.push_back(line.substr(i, j - i));
        i = j;
    }
    return tokens;
}

inline std::int64_t parse_positive_int(const std::string& tok) {
    if (tok.empty() || tok.size() > 18) throw std::invalid_argument("array text: bad dimension token '" + tok + "'");
    std::int64_t v = 0;
    for (char c : tok) {
        if (c < '0' || c > '9') throw std::invalid_argument("array text: bad dimension token '" + tok + "'");
        v = v * 10 + (c - '0');
    }
    if (v < 1) throw std::invalid_argument("array text: dimensions must be positive");
    return v;
}

} // namespace detail

// Strict parser for the text format above; rejects any unexpected token,
// missing trailing newline, or trailing garbage.
inline TernaryArray parse_text(const std::string& text) {
    if (text.empty() || text.back() != '\n') throw std::invalid_argument("array text: missing trailing newline");
    std::vector<std::string> lines;
    std::size_t start = 0;
    for (std::size_t i = 0; i < text.size(); ++i) {
        if (text[i] == '\n') {
            lines.push_back(text.substr(start, i - start));
            start = i + 1;
        }
    }
    if (lines.empty()) throw std::invalid_argument("array text: empty input");
    auto header = detail::split_tokens(lines[0]);
    if (header.size() != 2) throw std::invalid_argument("array text: header must be 'n m'");
    std::int64_t n = detail::parse_positive_int(header[0]);
    std::int64_t m = detail::parse_positive_int(header[1]);
    if (static_cast<std::int64_t>(lines.size()) != n + 1)
        throw std::invalid_argument("array text: expected exactly " + std::to_string(n) + " rows");
    TernaryArray a(n, m);
    for (std::int64_t i = 0; i < n; ++i) {
        auto tokens = detail::split_tokens(lines[static_cast<std::size_t>(i + 1)]);
        if (static_cast<std::int64_t>(tokens.size()) != m)
            throw std::invalid_argument("array text: row " + std::to_string(i) + " does not have " +
                                        std::to_string(m) + " entries");
        for (std::int64_t j = 0; j < m; ++j) {
            const std::string& tok = tokens[static_cast<std::size_t>(j)];
            int v;
            if (tok == "1")
                v = 1;
            else if (tok == "0")
                v = 0;
            else if (tok == "-1")
                v = -1;
            else
                throw std::invalid_argument("array text: bad cell token '" + tok + "'");
            a.set(i, j, v);
        }
    }
    return a;
}

} // namespace qca
