#pragma once

/**
 * @file dimension.hpp
 * @brief The dimension function phi(c) = dim_H F(c) and its plateaus.
 *
 * phi(c) is computed from the e_i-minimal prefix r of c: at level i > 1, r is
 * decoded over blocks of u = f^{i-1}(1) to a level-1 word s and
 * phi(c) = log2 rho(A_s) / 2^{i-1}. phi is constant on [e(r), r^inf].
 */

#include "errors.hpp"
#include "fraction.hpp"
#include "sequences.hpp"
#include "sft.hpp"
#include "word.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <variant>
#include <vector>

namespace dyadic {

inline constexpr std::size_t kDefaultMaxLenCap = 12;
inline constexpr unsigned kMaxPlateauLevel = 6;
inline constexpr std::size_t kDefaultBoundsWindow = 16;

/// Spectral enclosures keyed by the level-1 word, shared across threads.
class SpectralCache {
public:
    struct Entry {
        double lower = 0;
        double upper = 0;
    };

    std::optional<Entry> find(const std::string& key) const {
        std::lock_guard lock(mutex_);
        auto it = entries_.find(key);
        if (it == entries_.end()) return std::nullopt;
        return it->second;
    }

    void insert(const std::string& key, Entry e) {
        std::lock_guard lock(mutex_);
        entries_[key] = e;
    }

    std::map<std::string, Entry> snapshot() const {
        std::lock_guard lock(mutex_);
        return entries_;
    }

    std::size_t size() const {
        std::lock_guard lock(mutex_);
        return entries_.size();
    }

private:
    mutable std::mutex mutex_;
    std::map<std::string, Entry> entries_;
};

struct DimensionOptions {
    double tol = 1e-9;
    std::size_t max_window = kDefaultMaxWindow;
    unsigned max_level = kDefaultMaxLevel;
    std::size_t search_limit = kDefaultSearchLimit;
    std::size_t bounds_window = kDefaultBoundsWindow; // truncation length for the fallback bracket
    unsigned workers = 1;
    std::size_t max_len_cap = kDefaultMaxLenCap;
    SpectralCache* cache = nullptr;
    std::atomic<std::size_t>* spectral_runs = nullptr; // counts radii actually computed
};

struct Plateau {
    Fraction left;
    Fraction right;
    EPWord left_word;
    EPWord right_word;
    double dim = 0; // midpoint of [dim_lower, dim_upper]
    double dim_lower = 0;
    double dim_upper = 0;
    unsigned level = 0;
    Word representative;
};

struct DimensionResult {
    double dim_lower = 0;
    double dim_upper = 0;
    LevelClass level;
    std::optional<Word> representative;
    Word reduced_e1;
    std::optional<Plateau> plateau;
    bool empty = false; // c >= 1/2, F(c) has no points

    double dim() const { return 0.5 * (dim_lower + dim_upper); }
};

struct DimBounds {
    double lower = 0;
    double upper = 0;
    Word below; // truncation of c from below, phi(below) >= phi(c)
    Word above; // truncation of c from above, phi(above) <= phi(c)
    LevelClass level; // below/above are level-1 words when level > 1 decoded
};

// ---------------------------------------------------------------------------
// Input forms.

using DimensionInput = std::variant<Word, EPWord, Fraction>;

/// Accepts "001", "000(110)" or "3/28". Decimal notation is rejected.
inline EPWord parse_parameter(std::string_view text) {
    if (text.find('.') != std::string_view::npos)
        throw DomainError("decimal input '" + std::string(text) + "' is not accepted; use a word, pre(per) or p/q");
    if (text.find('(') != std::string_view::npos) return EPWord::parse(text);
    if (text.find('/') != std::string_view::npos) return from_fraction(Fraction::parse(text));
    return EPWord::embed(Word(text));
}

inline EPWord as_sequence(const DimensionInput& c) {
    if (auto w = std::get_if<Word>(&c)) return EPWord::embed(*w);
    if (auto e = std::get_if<EPWord>(&c)) return *e;
    return from_fraction(std::get<Fraction>(c));
}

// ---------------------------------------------------------------------------

/// Exact value of d(1)[1..bits] from below; the paired upper bound adds 2^-bits.
inline Fraction zero_threshold(std::size_t bits) {
    if (bits == 0) throw DomainError("zero_threshold needs bits >= 1");
    return value(d_prefix(Word("1"), bits));
}

inline Fraction zero_threshold_upper(std::size_t bits) {
    BigInt den = 1;
    den <<= static_cast<unsigned>(bits);
    return zero_threshold(bits) + Fraction(BigInt(1), den);
}

namespace detail {

inline double log2_clamped(double rho) { return rho <= 1.0 ? 0.0 : std::log2(rho); }

inline SpectralCache::Entry radius_for(const Word& s, const DimensionOptions& opt) {
    const std::string key = s.str();
    if (opt.cache) {
        if (auto hit = opt.cache->find(key)) return *hit;
    }
    // d(log2 rho) = d rho / (rho ln 2) and rho >= 1 on every nonempty plateau
    const auto r = spectral_radius(build_sft(s, opt.max_window), opt.tol * std::log(2.0));
    if (opt.spectral_runs) opt.spectral_runs->fetch_add(1);
    const SpectralCache::Entry e{r.lower, r.upper};
    if (opt.cache) opt.cache->insert(key, e);
    return e;
}

inline Word level_block(unsigned level) { return f_power(Word("1"), level - 1); }

// phi on the plateau of an e_i-minimal representative r of level i
struct RepresentativeDim {
    double lower;
    double upper;
    Word reduced;
};

inline RepresentativeDim representative_dimension(const Word& r, unsigned level, const DimensionOptions& opt) {
    Word s = r;
    if (level > 1) {
        try {
            s = mu_forward(r, level_block(level));
        } catch (const DecodeError& e) {
            throw ConsistencyError("level-" + std::to_string(level) + " representative '" + r.str() +
                                   "' does not decode: " + e.what());
        }
    }
    const auto rho = radius_for(s, opt);
    const double scale = std::ldexp(1.0, -static_cast<int>(level - 1));
    return {log2_clamped(rho.lower) * scale, log2_clamped(rho.upper) * scale, std::move(s)};
}

inline Plateau make_plateau(const Word& r, unsigned level, double lower, double upper) {
    Plateau p;
    p.left_word = e_map(r);
    p.right_word = EPWord::periodic(r);
    p.left = to_fraction(p.left_word);
    p.right = to_fraction(p.right_word);
    p.dim_lower = lower;
    p.dim_upper = upper;
    p.dim = 0.5 * (lower + upper);
    p.level = level;
    p.representative = r;
    return p;
}

inline Word strip_trailing_zeros(Word w) {
    while (!w.empty() && !w.back()) w.pop_back();
    return w;
}

} // namespace detail

/// dim_H F(t) for a finite word t straight from its window system, no mu reduction.
inline std::pair<double, double> window_dimension(const Word& t, const DimensionOptions& opt = {}) {
    const Word w = detail::strip_trailing_zeros(t);
    if (w.empty()) return {1.0, 1.0};
    if (w.front()) return {0.0, 0.0};
    const auto rho = detail::radius_for(w, opt);
    return {detail::log2_clamped(rho.lower), detail::log2_clamped(rho.upper)};
}

/// Brackets phi(c) by two length-n truncations around c, using
/// c1 <= c2  =>  F(c2) subset of F(c1). At level i > 1 the truncations are
/// taken of mu_u(c) (n blocks of c) and the result is scaled by 2^{1-i};
/// if c does not decode, c itself is truncated.
inline DimBounds dim_bounds(const EPWord& c, std::size_t n, const DimensionOptions& opt = {}) {
    if (n < 2) throw DomainError("dim_bounds needs n >= 2");
    if (n > std::min(opt.max_window, kHardMaxWindow))
        throw ResourceError("dim_bounds truncation " + std::to_string(n) + " exceeds the window cap " +
                            std::to_string(std::min(opt.max_window, kHardMaxWindow)));
    if (!c.contains_one()) throw DomainError("dim_bounds of the zero word");
    const LevelClass level = level_of(c, opt.max_level);
    if (level.is_above_all()) throw DomainError("'" + c.str() + "' has no e_i level");

    Word head = c.prefix(n);
    double scale = 1.0;
    if (level.level > 1) {
        const Word u = detail::level_block(level.level);
        try {
            head = mu_forward(c.prefix(n * u.size()), u);
            scale = std::ldexp(1.0, -static_cast<int>(level.level - 1));
        } catch (const DecodeError&) {
        }
    }
    // head + 2^-n as an n-bit integer; the sequence never exceeds it
    Word up = head;
    std::size_t k = n;
    while (k > 0 && up[k - 1]) up.flip(--k);
    if (k == 0) throw DomainError("dim_bounds truncation overflows");
    up.flip(k - 1);

    DimBounds b;
    b.below = detail::strip_trailing_zeros(head);
    b.above = detail::strip_trailing_zeros(up);
    b.upper = window_dimension(b.below, opt).second * scale;
    b.lower = window_dimension(b.above, opt).first * scale;
    b.level = level;
    return b;
}

/// dim_H F(c).
inline DimensionResult phi(const DimensionInput& input, const DimensionOptions& opt = {}) {
    if (!(opt.tol > 0)) throw DomainError("tolerance must be positive");
    const EPWord c = as_sequence(input);
    if (!c.contains_one()) throw DomainError("phi needs c > 0");

    DimensionResult res;
    if (compare(c, EPWord::parse("1(0)")) >= 0) {
        res.empty = true;
        return res;
    }
    res.level = level_of(c, opt.max_level);
    if (res.level.is_above_all()) return res;

    const auto report = minimal_prefix(c, opt.search_limit);
    if (!report.found()) {
        const auto b = dim_bounds(c, std::min(opt.bounds_window, std::min(opt.max_window, kHardMaxWindow)), opt);
        res.dim_lower = b.lower;
        res.dim_upper = b.upper;
        return res;
    }
    const Word& r = report.prefix;
    const auto d = detail::representative_dimension(r, res.level.level, opt);
    res.dim_lower = d.lower;
    res.dim_upper = d.upper;
    res.representative = r;
    res.reduced_e1 = d.reduced;
    res.plateau = detail::make_plateau(r, res.level.level, d.lower, d.upper);
    return res;
}

/// The plateau [e(r), r^inf] through c.
inline Plateau interval(const DimensionInput& input, const DimensionOptions& opt = {}) {
    const EPWord c = as_sequence(input);
    if (!c.contains_one()) throw DomainError("interval needs c > 0");
    const LevelClass level = level_of(c, opt.max_level);
    if (level.is_above_all()) throw DomainError("'" + c.str() + "' lies above every e_i; no plateau");
    const auto report = minimal_prefix(c, opt.search_limit);
    if (!report.found())
        throw DomainError("no e_" + std::to_string(level.level) + "-minimal prefix of '" + c.str() + "' within " +
                          std::to_string(report.searched_up_to) + " symbols");
    const auto d = detail::representative_dimension(report.prefix, level.level, opt);
    return detail::make_plateau(report.prefix, level.level, d.lower, d.upper);
}

// ---------------------------------------------------------------------------
// Enumeration.

/// Words of length 2..max_len that are e_1-minimal, shortest first then lexicographic.
inline std::vector<Word> e1_minimal_words(std::size_t max_len) {
    std::vector<Word> out;
    for (std::size_t len = 2; len <= max_len; ++len) {
        // words 00...1; the leading "00" keeps them below e_1
        for (std::uint64_t code = 1; code < (std::uint64_t{1} << (len - 2)); code += 2) {
            const Word w = Word::from_code(code, len);
            if (level_of(w) == LevelClass::at(1) && is_minimal(w)) out.push_back(w);
        }
    }
    return out;
}

namespace detail {

template <class F>
void parallel_for(std::size_t n, unsigned workers, F&& body) {
    workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
    if (workers == 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < workers; ++t) {
        pool.emplace_back([&] {
            for (std::size_t i; (i = next.fetch_add(1)) < n;) {
                try {
                    body(i);
                } catch (...) {
                    std::lock_guard lock(failure_mutex);
                    if (!failure) failure = std::current_exception();
                    next = n;
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);
}

} // namespace detail

/// All plateaus of e_1-minimal words up to max_len and their images at levels 2..max_level.
inline std::vector<Plateau> plateaus(std::size_t max_len, unsigned max_level, const DimensionOptions& opt = {}) {
    if (max_len > opt.max_len_cap)
        throw ResourceError("max_len " + std::to_string(max_len) + " exceeds the cap " + std::to_string(opt.max_len_cap));
    if (max_level == 0 || max_level > kMaxPlateauLevel)
        throw ResourceError("max_level must lie in 1.." + std::to_string(kMaxPlateauLevel));

    const auto words = e1_minimal_words(max_len);
    std::vector<SpectralCache::Entry> rho(words.size());
    detail::parallel_for(words.size(), opt.workers, [&](std::size_t k) { rho[k] = detail::radius_for(words[k], opt); });

    std::vector<Plateau> out;
    for (unsigned level = 1; level <= max_level; ++level) {
        const Word u = detail::level_block(level);
        const double scale = std::ldexp(1.0, -static_cast<int>(level - 1));
        for (std::size_t k = 0; k < words.size(); ++k) {
            const Word r = level == 1 ? words[k] : mu_inverse(words[k], u);
            out.push_back(detail::make_plateau(r, level, detail::log2_clamped(rho[k].lower) * scale,
                                               detail::log2_clamped(rho[k].upper) * scale));
        }
    }
    std::sort(out.begin(), out.end(), [](const Plateau& a, const Plateau& b) { return a.left < b.left; });

    std::vector<Plateau> merged;
    for (auto& p : out) {
        if (!merged.empty() && merged.back().left == p.left && merged.back().right == p.right) {
            if (merged.back().representative != p.representative)
                throw ConsistencyError("plateaus of '" + merged.back().representative.str() + "' and '" +
                                       p.representative.str() + "' coincide");
            continue;
        }
        if (!merged.empty() && merged.back().right > p.left)
            throw ConsistencyError("plateaus of '" + merged.back().representative.str() + "' and '" +
                                   p.representative.str() + "' overlap");
        merged.push_back(std::move(p));
    }
    return merged;
}

/// phi at `samples` stratified finite words inside p, plus both endpoints,
/// all within tol of p.dim.
inline bool verify_plateau_constancy(const Plateau& p, std::size_t samples, const DimensionOptions& opt = {}) {
    if (samples == 0) throw DomainError("verify_plateau_constancy needs samples >= 1");
    auto agrees = [&](const DimensionResult& r) {
        return r.dim_lower <= p.dim_upper + opt.tol && r.dim_upper >= p.dim_lower - opt.tol;
    };
    if (!agrees(phi(p.left_word, opt)) || !agrees(phi(p.right_word, opt))) return false;

    const Fraction width = p.right - p.left;
    for (std::size_t k = 1; k <= samples; ++k) {
        const Fraction x = p.left + width * Fraction(BigInt(k), BigInt(samples + 1));
        const EPWord expansion = from_fraction(x);
        // shortest truncation that still lies inside the plateau
        Word t;
        for (std::size_t len = p.representative.size();; ++len) {
            t = detail::strip_trailing_zeros(expansion.prefix(len));
            if (!t.empty() && compare(t, p.left_word) >= 0 && compare(t, p.right_word) <= 0) break;
            if (len > opt.search_limit) throw ConsistencyError("no finite word inside plateau of '" + p.representative.str() + "'");
        }
        if (!agrees(phi(t, opt))) return false;
    }
    return true;
}

} // namespace dyadic
