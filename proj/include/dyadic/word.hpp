#pragma once

/**
 * @file word.hpp
 * @brief Finite and eventually periodic binary words.
 *
 * A finite word is read as an infinite sequence by appending zeros, so
 * "01" and "0100" compare EQ but are different words (leading and trailing
 * zeros are significant for equality, never for order). Eventually periodic
 * words are kept in canonical form: the period is primitive and the
 * preperiod is as short as rotation of the period allows.
 *
 * Order is the lexicographic order of the infinite expansions, with the two
 * binary expansions of a dyadic rational (u0 1^inf and u1 0^inf) identified.
 */

#include "errors.hpp"
#include "fraction.hpp"

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <string>
#include <string_view>
#include <vector>

namespace dyadic {

inline constexpr std::size_t kMaxWordLength = std::size_t{1} << 21;

class Word {
public:
    Word() = default;

    explicit Word(std::string_view text) {
        check_length(text.size());
        bits_.reserve(text.size());
        for (char ch : text) {
            if (ch != '0' && ch != '1')
                throw DomainError("not a binary word: '" + std::string(text) + "'");
            bits_.push_back(ch == '1');
        }
    }

    /// The `len` low bits of `code`, most significant first.
    static Word from_code(std::uint64_t code, std::size_t len) {
        Word w;
        w.bits_.resize(len);
        for (std::size_t i = 0; i < len; ++i) w.bits_[i] = (code >> (len - 1 - i)) & 1u;
        return w;
    }

    static Word repeat(bool bit, std::size_t n) {
        check_length(n);
        Word w;
        w.bits_.assign(n, bit);
        return w;
    }

    std::size_t size() const noexcept { return bits_.size(); }
    bool empty() const noexcept { return bits_.empty(); }
    bool operator[](std::size_t i) const { return bits_[i]; }
    bool back() const { return bits_.back(); }
    bool front() const { return bits_.front(); }

    void push_back(bool bit) {
        check_length(bits_.size() + 1);
        bits_.push_back(bit);
    }
    void pop_back() { bits_.pop_back(); }
    void flip(std::size_t i) { bits_[i] = !bits_[i]; }

    Word& operator+=(const Word& other) {
        check_length(size() + other.size());
        bits_.insert(bits_.end(), other.bits_.begin(), other.bits_.end());
        return *this;
    }
    friend Word operator+(Word a, const Word& b) { return a += b; }

    Word slice(std::size_t pos, std::size_t len) const {
        Word w;
        w.bits_.assign(bits_.begin() + static_cast<std::ptrdiff_t>(pos),
                       bits_.begin() + static_cast<std::ptrdiff_t>(pos + len));
        return w;
    }
    Word prefix(std::size_t n) const { return slice(0, n); }
    Word drop(std::size_t n) const { return slice(n, size() - n); }

    Word power(std::size_t k) const {
        check_length(size() * k);
        Word w;
        w.bits_.reserve(size() * k);
        for (std::size_t i = 0; i < k; ++i) w.bits_.insert(w.bits_.end(), bits_.begin(), bits_.end());
        return w;
    }

    bool contains_one() const { return std::find(bits_.begin(), bits_.end(), true) != bits_.end(); }

    /// Bits as an integer, most significant first. Only for size() <= 64.
    std::uint64_t code() const {
        std::uint64_t c = 0;
        for (bool b : bits_) c = (c << 1) | static_cast<std::uint64_t>(b);
        return c;
    }

    std::string str() const {
        std::string s;
        s.reserve(size());
        for (bool b : bits_) s.push_back(b ? '1' : '0');
        return s;
    }

    friend bool operator==(const Word&, const Word&) = default;

    std::size_t hash() const { return std::hash<std::vector<bool>>{}(bits_); }

private:
    static void check_length(std::size_t n) {
        if (n > kMaxWordLength)
            throw ResourceError("word length " + std::to_string(n) + " exceeds the supported maximum " +
                                std::to_string(kMaxWordLength));
    }

    std::vector<bool> bits_;
};

struct WordHash {
    std::size_t operator()(const Word& w) const { return w.hash(); }
};

// ---------------------------------------------------------------------------
// Unary operators on finite words.

/// Bitwise complement.
inline Word star(Word w) {
    for (std::size_t i = 0; i < w.size(); ++i) w.flip(i);
    return w;
}

/// Last symbol inverted.
inline Word tilde(Word w) {
    if (w.empty()) throw DomainError("tilde of the empty word");
    w.flip(w.size() - 1);
    return w;
}

/// The length-|w| word with value 1 - value(w): for w = u 1 0^k this is u* 1 0^k.
inline Word prime(Word w) {
    std::size_t last_one = w.size();
    for (std::size_t i = w.size(); i-- > 0;) {
        if (w[i]) {
            last_one = i;
            break;
        }
    }
    if (last_one == w.size()) throw DomainError("prime of a word without a 1: '" + w.str() + "'");
    for (std::size_t i = 0; i < last_one; ++i) w.flip(i);
    return w;
}

inline Word shift(const Word& w, std::size_t n) {
    if (n > w.size())
        throw DomainError("shift by " + std::to_string(n) + " of a word of length " + std::to_string(w.size()));
    return w.drop(n);
}

// ---------------------------------------------------------------------------

/// Infinite word preperiod . period . period . ...
class EPWord {
public:
    EPWord() : EPWord(Word{}, Word("0")) {}

    EPWord(Word preperiod, Word period) : pre_(std::move(preperiod)), per_(std::move(period)) {
        if (per_.empty()) throw DomainError("eventually periodic word with an empty period");
        canonicalize();
    }

    /// w 0^inf
    static EPWord embed(const Word& w) { return EPWord(w, Word("0")); }
    /// w^inf
    static EPWord periodic(const Word& w) { return EPWord(Word{}, w); }

    /// Parses "pre(per)"; the preperiod may be empty, the period may not.
    static EPWord parse(std::string_view text) {
        auto open = text.find('(');
        if (open == std::string_view::npos || text.size() < open + 3 || text.back() != ')')
            throw DomainError("not an eventually periodic word: '" + std::string(text) + "'");
        return EPWord(Word(text.substr(0, open)), Word(text.substr(open + 1, text.size() - open - 2)));
    }

    const Word& preperiod() const noexcept { return pre_; }
    const Word& period() const noexcept { return per_; }

    bool at(std::size_t i) const {
        if (i < pre_.size()) return pre_[i];
        return per_[(i - pre_.size()) % per_.size()];
    }

    Word prefix(std::size_t n) const {
        Word w;
        for (std::size_t i = 0; i < n; ++i) w.push_back(at(i));
        return w;
    }

    bool contains_one() const { return per_.contains_one() || pre_.contains_one(); }

    std::string str() const { return pre_.str() + "(" + per_.str() + ")"; }

    friend bool operator==(const EPWord&, const EPWord&) = default;

private:
    void canonicalize() {
        // Primitive root of the period via the KMP failure function.
        const std::size_t n = per_.size();
        std::vector<std::size_t> fail(n + 1, 0);
        for (std::size_t i = 1, k = 0; i < n; ++i) {
            while (k > 0 && per_[i] != per_[k]) k = fail[k];
            if (per_[i] == per_[k]) ++k;
            fail[i + 1] = k;
        }
        const std::size_t p = n - fail[n];
        if (p < n && n % p == 0) per_ = per_.prefix(p);

        // Fold the preperiod into the period while the rotation allows it.
        while (!pre_.empty() && pre_.back() == per_.back()) {
            pre_.pop_back();
            per_ = per_.slice(per_.size() - 1, 1) + per_.prefix(per_.size() - 1);
        }
    }

    Word pre_;
    Word per_;
};

inline EPWord shift(const EPWord& w, std::size_t n) {
    const auto& pre = w.preperiod();
    const auto& per = w.period();
    if (n <= pre.size()) return EPWord(pre.drop(n), per);
    const std::size_t k = (n - pre.size()) % per.size();
    return EPWord(Word{}, per.drop(k) + per.prefix(k));
}

// ---------------------------------------------------------------------------
// Comparison.

namespace detail {

// Replace a u0 1^inf tail by u1 0^inf so both expansions of a dyadic
// rational compare equal. 1^inf itself has no other expansion in [0,1].
inline EPWord dyadic_normal(const EPWord& w) {
    if (w.period() != Word("1") || w.preperiod().empty()) return w;
    Word pre = w.preperiod();
    // canonical form guarantees the preperiod ends in 0 here
    pre.flip(pre.size() - 1);
    return EPWord(std::move(pre), Word("0"));
}

} // namespace detail

inline std::strong_ordering compare(const Word& a, const Word& b) {
    const std::size_t n = std::max(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i) {
        const bool x = i < a.size() && a[i];
        const bool y = i < b.size() && b[i];
        if (x != y) return x ? std::strong_ordering::greater : std::strong_ordering::less;
    }
    return std::strong_ordering::equal;
}

inline std::strong_ordering compare(const EPWord& a0, const EPWord& b0) {
    const EPWord a = detail::dyadic_normal(a0);
    const EPWord b = detail::dyadic_normal(b0);
    // Past both preperiods the words are periodic; agreeing on |per_a| + |per_b|
    // further symbols forces equality (Fine and Wilf).
    const std::size_t horizon = std::max(a.preperiod().size(), b.preperiod().size()) + a.period().size() +
                                b.period().size();
    for (std::size_t i = 0; i < horizon; ++i) {
        const bool x = a.at(i);
        const bool y = b.at(i);
        if (x != y) return x ? std::strong_ordering::greater : std::strong_ordering::less;
    }
    return std::strong_ordering::equal;
}

inline std::strong_ordering compare(const Word& a, const EPWord& b) { return compare(EPWord::embed(a), b); }
inline std::strong_ordering compare(const EPWord& a, const Word& b) { return compare(a, EPWord::embed(b)); }

// ---------------------------------------------------------------------------
// Rational values.

inline BigInt word_integer(const Word& w) {
    BigInt v = 0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        v <<= 1;
        if (w[i]) v += 1;
    }
    return v;
}

/// Exact value of w 0^inf.
inline Fraction value(const Word& w) {
    BigInt den = 1;
    den <<= static_cast<unsigned>(w.size());
    return Fraction(word_integer(w), den);
}

/// Exact value of an eventually periodic binary expansion.
inline Fraction to_fraction(const EPWord& w) {
    const auto a = static_cast<unsigned>(w.preperiod().size());
    const auto b = static_cast<unsigned>(w.period().size());
    BigInt cycle = 1;
    cycle <<= b;
    cycle -= 1;
    BigInt scale = 1;
    scale <<= a;
    BigInt num = word_integer(w.preperiod()) * cycle + word_integer(w.period());
    return Fraction(num, scale * cycle);
}

/// Canonical expansion of q in [0, 1]; dyadic rationals get the 0^inf tail.
inline EPWord from_fraction(const Fraction& q) {
    BigInt num = q.num();
    BigInt den = q.den();
    if (num < 0 || num > den) throw DomainError("fraction outside [0,1]: " + q.str());
    if (num == den) return EPWord(Word{}, Word("1"));

    // Long division in base 2; a repeated remainder closes the period.
    std::map<BigInt, std::size_t> seen;
    Word digits;
    BigInt r = num;
    while (true) {
        if (r == 0) return EPWord(digits, Word("0"));
        auto [it, inserted] = seen.emplace(r, digits.size());
        if (!inserted) return EPWord(digits.prefix(it->second), digits.drop(it->second));
        r <<= 1;
        if (r >= den) {
            digits.push_back(true);
            r -= den;
        } else {
            digits.push_back(false);
        }
    }
}

} // namespace dyadic
