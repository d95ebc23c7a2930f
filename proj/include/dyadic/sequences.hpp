#pragma once

/**
 * @file sequences.hpp
 * @brief Combinatorics of shift-bounded words.
 *
 * The doubling map f(s) = s~ s', its limit d, the thresholds e_i = e(f^i(1)),
 * the prefix-suffix reduction p, e_i-minimal prefixes and the block code mu_u
 * that conjugates level i to level 1. All functions are pure.
 *
 * Notation used in comments: s* is the complement, s~ flips the last symbol,
 * s' is the length-|s| word of value 1 - value(s).
 */

#include "errors.hpp"
#include "fraction.hpp"
#include "word.hpp"

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace dyadic {

inline constexpr unsigned kDefaultMaxLevel = 20;
inline constexpr std::size_t kDefaultThresholdCap = 4096;
inline constexpr std::size_t kDefaultSearchLimit = 4096;

/// Position of a parameter relative to the thresholds e_0 < e_1 < ... < d(1).
struct LevelClass {
    unsigned level = 0; // 0 encodes "at or above d(1)"

    static LevelClass above_all() { return {}; }
    static LevelClass at(unsigned i) { return {i}; }

    bool is_above_all() const { return level == 0; }
    std::string str() const { return is_above_all() ? "ABOVE_ALL" : std::to_string(level); }
    friend bool operator==(const LevelClass&, const LevelClass&) = default;
};

/// Outcome of the e_i-minimal prefix search.
struct MinimalityReport {
    std::optional<std::size_t> m; // least admissible n, if one was found
    Word prefix;                  // g_m(s) when m is set
    std::size_t searched_up_to = 0;
    unsigned level = 0;

    bool found() const { return m.has_value(); }
};

namespace detail {

// a[off..] 0^inf against b 0^inf
inline int compare_shifted(const Word& a, std::size_t off, const Word& b) {
    const std::size_t la = a.size() - off;
    const std::size_t n = std::max(la, b.size());
    for (std::size_t i = 0; i < n; ++i) {
        const bool x = i < la && a[off + i];
        const bool y = i < b.size() && b[i];
        if (x != y) return x ? 1 : -1;
    }
    return 0;
}

inline void require_ends_in_one(const Word& s, const char* op) {
    if (s.empty() || !s.back())
        throw DomainError(std::string(op) + " needs a word ending in 1, got '" + s.str() + "'");
}

} // namespace detail

// ---------------------------------------------------------------------------
// f, d and Thue-Morse.

/// f(s) = s~ s'
inline Word f_map(const Word& s) {
    detail::require_ends_in_one(s, "f");
    return tilde(s) + prime(s);
}

inline Word f_power(const Word& s, unsigned k) {
    Word w = s;
    for (unsigned i = 0; i < k; ++i) w = f_map(w);
    return w;
}

namespace detail {

// d(1) to 8192 symbols; every symbol below |f^k(1)| is frozen once f^{k+1}(1) exists.
inline const Word& d_one_table() {
    static const Word table = f_power(Word("1"), 14).prefix(std::size_t{1} << 13);
    return table;
}

} // namespace detail

/// First m symbols of d(s) = lim f^k(s).
inline Word d_prefix(const Word& s, std::size_t m) {
    detail::require_ends_in_one(s, "d");
    if (s == Word("1") && m <= detail::d_one_table().size()) return detail::d_one_table().prefix(m);
    Word w = s;
    while (w.size() <= m) w = f_map(w);
    return w.prefix(m);
}

/// (a / 2^n) prod_{i>=0} (1 - 2^{-2^i n}), the real limit of f^k(a / 2^n).
inline double mirror_limit_real(std::uint64_t a, unsigned n, double tol) {
    if (n == 0 || n > 62 || a == 0 || a >= (std::uint64_t{1} << n))
        throw DomainError("mirror_limit_real needs 0 < a/2^n < 1");
    if (!(tol > 0)) throw DomainError("tolerance must be positive");
    double value = std::ldexp(static_cast<double>(a), -static_cast<int>(n));
    for (unsigned long long exponent = n;; exponent *= 2) {
        const double t = exponent > 1100 ? 0.0 : std::ldexp(1.0, -static_cast<int>(exponent));
        if (t <= tol) break;
        value *= 1.0 - t;
    }
    return value;
}

/// First m symbols of the Thue-Morse word 0110 1001 ...
inline Word thue_morse(std::size_t m) {
    Word t;
    for (std::size_t i = 0; i < m; ++i) t.push_back(i == 0 ? false : (i % 2 == 0 ? t[i / 2] : !t[i / 2]));
    return t;
}

/// sum_{i=1}^{bits} t_i / 2^i, exact; within 2^-bits of 0.41245403...
inline Fraction tm_constant(std::size_t bits) {
    BigInt den = 1;
    den <<= static_cast<unsigned>(bits);
    return Fraction(word_integer(thue_morse(bits)), den);
}

// ---------------------------------------------------------------------------
// e, g and the thresholds.

/// e(s) = s~ (s*)^inf
inline EPWord e_map(const Word& s) {
    detail::require_ends_in_one(s, "e");
    return EPWord(tilde(s), star(s));
}

namespace detail {

inline constexpr unsigned kCachedLevels = 14;

inline const std::vector<EPWord>& threshold_table() {
    static const std::vector<EPWord> table = [] {
        std::vector<EPWord> t;
        Word w("1");
        for (unsigned i = 0; i <= kCachedLevels; ++i) {
            t.push_back(e_map(w));
            if (i < kCachedLevels) w = f_map(w);
        }
        return t;
    }();
    return table;
}

} // namespace detail

/// e_i = e(f^i(1)); e_0 = 0^inf.
inline EPWord e_threshold(unsigned i, unsigned max_level = kDefaultMaxLevel) {
    if (i > max_level)
        throw ResourceError("level " + std::to_string(i) + " exceeds the configured maximum " +
                            std::to_string(max_level));
    if (i <= detail::kCachedLevels) return detail::threshold_table()[i];
    return e_map(f_power(Word("1"), i));
}

/// g_n(s) = s[1, n-1] 1
inline Word g_map(const Word& s, std::size_t n) {
    if (n == 0 || n > s.size())
        throw DomainError("g_n needs 1 <= n <= |s|, got n = " + std::to_string(n) + " for |s| = " +
                          std::to_string(s.size()));
    Word w = s.prefix(n - 1);
    w.push_back(true);
    return w;
}

inline Word g_map(const EPWord& s, std::size_t n) {
    if (n == 0) throw DomainError("g_n needs n >= 1");
    Word w = s.prefix(n - 1);
    w.push_back(true);
    return w;
}

// ---------------------------------------------------------------------------
// Shift-boundedness and the prefix-suffix reduction.

/// s' > sigma^n(s) > s for 0 < n < |s|, words read with a zero tail.
/// "1" is shift-bounded, "0" is not.
inline bool is_shift_bounded(const Word& s) {
    if (s.empty()) throw DomainError("shift-boundedness of the empty word");
    if (s == Word("1")) return true;
    if (!s.contains_one()) return false;
    const Word sp = prime(s);
    for (std::size_t n = 1; n < s.size(); ++n) {
        if (detail::compare_shifted(s, n, s) <= 0) return false;
        if (detail::compare_shifted(s, n, sp) >= 0) return false;
    }
    return true;
}

/// s = u v u* with u as long as possible (|u| <= |s|/2).
struct PrefixSuffixSplit {
    Word u;
    Word v;
};

inline PrefixSuffixSplit p_split(const Word& s) {
    if (s == Word("1") || s.empty()) throw DomainError("prefix-suffix reduction of '" + s.str() + "'");
    if (!is_shift_bounded(s)) throw DomainError("prefix-suffix reduction needs a shift-bounded word, got '" + s.str() + "'");
    const std::size_t n = s.size();
    for (std::size_t len = n / 2; len >= 1; --len) {
        bool match = true;
        for (std::size_t k = 0; k < len && match; ++k) match = s[k] != s[n - len + k];
        if (match) return {s.prefix(len), s.slice(len, n - 2 * len)};
    }
    // unreachable: a shift-bounded word of length >= 2 starts with 0 and ends with 1
    throw ConsistencyError("no prefix-suffix split for shift-bounded '" + s.str() + "'");
}

/// p(s) = (uv)~
inline Word p_reduce(const Word& s) {
    auto [u, v] = p_split(s);
    return tilde(u + v);
}

/// s, p(s), p^2(s), ... stopping at `target` or when the words get shorter than it.
inline std::vector<Word> p_chain(const Word& s, const Word& target) {
    std::vector<Word> chain{s};
    while (chain.back() != target && chain.back().size() > target.size()) chain.push_back(p_reduce(chain.back()));
    return chain;
}

// ---------------------------------------------------------------------------
// Levels and e_i-minimality.

/// The i with e_{i-1} <= c < e_i, or ABOVE_ALL when c >= d(1).
inline LevelClass level_of(const EPWord& c, unsigned max_level = kDefaultMaxLevel,
                           std::size_t threshold_cap = kDefaultThresholdCap) {
    if (!c.contains_one()) throw DomainError("level of the zero word");
    const EPWord cn = detail::dyadic_normal(c);
    // d(1) is aperiodic, so a mismatch with an eventually periodic c appears
    // within a bounded horizon; double the prefix until it does.
    bool decided = false;
    for (std::size_t m = 64;; m *= 2) {
        const std::size_t len = std::min(m, threshold_cap);
        const Word d = d_prefix(Word("1"), len);
        for (std::size_t i = 0; i < len; ++i) {
            if (cn.at(i) != d[i]) {
                if (cn.at(i)) return LevelClass::above_all();
                decided = true;
                break;
            }
        }
        if (decided) break;
        if (len == threshold_cap)
            throw DomainError("cannot separate '" + c.str() + "' from d(1) within " + std::to_string(threshold_cap) +
                              " symbols");
    }
    for (unsigned i = 1; i <= max_level; ++i)
        if (compare(cn, e_threshold(i, max_level)) < 0) return LevelClass::at(i);
    throw ResourceError("'" + c.str() + "' lies above e_" + std::to_string(max_level));
}

inline LevelClass level_of(const Word& c, unsigned max_level = kDefaultMaxLevel) {
    return level_of(EPWord::embed(c), max_level);
}

namespace detail {

template <class Seq>
MinimalityReport scan_minimal(const Seq& s, unsigned level, std::size_t limit) {
    MinimalityReport report;
    report.level = level;
    const std::size_t start = std::size_t{1} << level;
    for (std::size_t n = start; n <= limit; ++n) {
        report.searched_up_to = n;
        Word g = g_map(s, n);
        if (compare(e_map(g), s) <= 0 && compare(s, EPWord::periodic(g)) <= 0) {
            report.m = n;
            report.prefix = std::move(g);
            return report;
        }
    }
    return report;
}

} // namespace detail

/// Least n >= 2^i with e(g_n(s)) <= s <= g_n(s)^inf, scanning n <= |s|.
inline MinimalityReport minimal_prefix(const Word& s) {
    const LevelClass level = level_of(s);
    if (level.is_above_all()) throw DomainError("'" + s.str() + "' has no e_i level");
    return detail::scan_minimal(s, level.level, s.size());
}

/// As above for an infinite word; the scan stops at min(limit, |pre| + 2|per| + 2^i).
inline MinimalityReport minimal_prefix(const EPWord& s, std::size_t search_limit = kDefaultSearchLimit) {
    const LevelClass level = level_of(s);
    if (level.is_above_all()) throw DomainError("'" + s.str() + "' has no e_i level");
    const std::size_t horizon =
        s.preperiod().size() + 2 * s.period().size() + (std::size_t{1} << level.level);
    return detail::scan_minimal(s, level.level, std::min(search_limit, horizon));
}

inline bool is_minimal(const Word& s) {
    const auto report = minimal_prefix(s);
    return s.back() && report.found() && *report.m == s.size();
}

// ---------------------------------------------------------------------------
// The block code mu_u over {u~, u, u*, u'}.

namespace detail {

struct Blocks {
    explicit Blocks(const Word& u) : tilde_u(tilde(u)), u(u), star_u(star(u)), prime_u(prime(u)) {}
    Word tilde_u, u, star_u, prime_u;
};

} // namespace detail

/// (u~, u, u*, u') -> (0, 1, 0, 1), blocks following the transition rule
/// u~, u* -> u*, u'  and  u, u' -> u~, u.
inline Word mu_forward(const Word& x, const Word& u) {
    detail::require_ends_in_one(u, "mu");
    const std::size_t len = u.size();
    if (x.size() % len != 0)
        throw DecodeError("length " + std::to_string(x.size()) + " is not a multiple of |u| = " + std::to_string(len));
    const detail::Blocks b(u);
    Word out;
    for (std::size_t k = 0; k * len < x.size(); ++k) {
        const Word block = x.slice(k * len, len);
        bool symbol;
        if (k == 0) {
            if (block == b.tilde_u || block == b.star_u) symbol = false;
            else if (block == b.u || block == b.prime_u) symbol = true;
            else throw DecodeError("block '" + block.str() + "' is not one of u~, u, u*, u' for u = '" + u.str() + "'");
        } else {
            // after a 0-block only u* (0) or u' (1); after a 1-block only u~ (0) or u (1)
            const Word& zero = out.back() ? b.tilde_u : b.star_u;
            const Word& one = out.back() ? b.u : b.prime_u;
            if (block == zero) symbol = false;
            else if (block == one) symbol = true;
            else throw DecodeError("block " + std::to_string(k) + " '" + block.str() + "' breaks the transition rule for u = '" + u.str() + "'");
        }
        out.push_back(symbol);
    }
    return out;
}

/// First 0 of each run of zeros -> u~, later zeros -> u*; first 1 of each run of ones -> u', later ones -> u.
inline Word mu_inverse(const Word& w, const Word& u) {
    detail::require_ends_in_one(u, "mu");
    const detail::Blocks b(u);
    Word out;
    for (std::size_t k = 0; k < w.size(); ++k) {
        const bool run_start = k == 0 || w[k] != w[k - 1];
        if (w[k]) out += run_start ? b.prime_u : b.u;
        else out += run_start ? b.tilde_u : b.star_u;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Accumulating sequences and the bridge to (01)^inf.

/// a_k(s) = s~ (s*)^k u*, increasing to e(s).
inline Word accumulate_a(const Word& s, std::size_t k) {
    if (k == 0) throw DomainError("accumulate_a needs k >= 1");
    if (!is_minimal(s)) throw DomainError("accumulate_a needs an e_i-minimal word, got '" + s.str() + "'");
    const auto split = p_split(s);
    return tilde(s) + star(s).power(k) + star(split.u);
}

/// b_k(s) = s^k p(s), decreasing to s^inf.
inline Word accumulate_b(const Word& s, std::size_t k) {
    if (k == 0) throw DomainError("accumulate_b needs k >= 1");
    if (!is_minimal(s)) throw DomainError("accumulate_b needs an e_i-minimal word, got '" + s.str() + "'");
    return s.power(k) + p_reduce(s);
}

/// w = a_1^{n_1} ... a_N^{n_N} with a_k = p^k(c), a_N = 01, n_k = floor(|c| / |a_k|) + 1,
/// so that c w (01)^inf lies in F(c).
inline Word bridge_to_01(const Word& c) {
    const Word target("01");
    if (c == target) return {};
    if (level_of(c) != LevelClass::at(1) || !is_minimal(c))
        throw DomainError("bridge_to_01 needs an e_1-minimal word, got '" + c.str() + "'");
    Word w;
    Word a = c;
    while (a != target) {
        a = p_reduce(a);
        if (a.size() < target.size()) throw ConsistencyError("p-chain of '" + c.str() + "' skipped 01");
        w += a.power(c.size() / a.size() + 1);
    }
    return w;
}

} // namespace dyadic
