#pragma once

/**
 * @file acceptance.hpp
 * @brief The end-to-end acceptance checks, shared by the acceptance test
 * binary and `dyadic verify`.
 *
 * Each check returns pass/fail plus a one-line detail. Tolerances are fixed
 * here; the only knob is the spectral tolerance in DimensionOptions, so a
 * loosened tolerance makes the golden checks fail instead of passing quietly.
 */

#include "dimension.hpp"
#include "report.hpp"
#include "sequences.hpp"
#include "sft.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace dyadic::acceptance {

struct Outcome {
    bool passed = false;
    std::string detail;
};

struct Check {
    std::string name;
    std::string title;
    std::function<Outcome(const DimensionOptions&)> run;
};

// float rounding allowance when an enclosure is compared with an independent root
inline constexpr double kRoundingSlack = 1e-12;

inline double golden_dim() { return std::log2((1.0 + std::sqrt(5.0)) / 2.0); }

/// Largest root of x^k = x^{k-1} + ... + 1 by bisection on [1, 2].
inline double k_run_root(unsigned k) {
    auto f = [k](double x) {
        double lhs = std::pow(x, k), rhs = 0;
        for (unsigned j = 0; j < k; ++j) rhs += std::pow(x, j);
        return lhs - rhs;
    };
    double lo = 1.0, hi = 2.0;
    if (f(lo) >= 0) return lo;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        (f(mid) < 0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

inline std::string fmt(double x, int digits = 12) {
    std::ostringstream s;
    s.precision(digits);
    s << x;
    return s.str();
}

/// All words of the given length, in increasing order.
inline std::vector<Word> all_words(std::size_t len) {
    std::vector<Word> out;
    for (std::uint64_t code = 0; code < (std::uint64_t{1} << len); ++code) out.push_back(Word::from_code(code, len));
    return out;
}

// ---------------------------------------------------------------------------

inline Outcome check_krun(const DimensionOptions& opt) {
    for (unsigned k = 1; k <= 12; ++k) {
        const Word c = Word::repeat(false, k) + Word("1");
        const auto r = spectral_radius(build_sft(c, opt.max_window), opt.tol);
        const double root = k_run_root(k);
        if (root < r.lower - kRoundingSlack || root > r.upper + kRoundingSlack)
            return {false, "k=" + std::to_string(k) + ": root " + fmt(root, 17) + " outside [" + fmt(r.lower, 17) +
                               ", " + fmt(r.upper, 17) + "]"};
        const double dim = std::log2(r.mid());
        if (std::abs(dim - std::log2(root)) > 1e-9)
            return {false, "k=" + std::to_string(k) + ": dim " + fmt(dim) + " vs " + fmt(std::log2(root))};
    }
    return {true, "k = 1..12 enclosures contain the bisection roots"};
}

inline Outcome check_two_point(const DimensionOptions& opt) {
    const auto ts = build_sft(Word("01"), opt.max_window);
    const auto comps = sccs(ts);
    if (ts.size() != 2 || ts.edge_count() != 2) return {false, "expected 2 states and 2 edges"};
    if (comps.size() != 1 || comps[0].trivial || comps[0].states.size() != 2) return {false, "expected one 2-cycle"};
    if (ts.successor(0, false) != 1 && ts.successor(0, true) != 1) return {false, "01 -> 10 missing"};
    const auto r = spectral_radius(ts, opt.tol);
    if (r.lower != 1.0 || r.upper != 1.0) return {false, "rho = [" + fmt(r.lower) + ", " + fmt(r.upper) + "]"};
    const auto d = window_dimension(Word("01"), opt);
    if (d.first != 0.0 || d.second != 0.0) return {false, "dim " + fmt(d.second)};
    return {true, "2 states, one 2-cycle, rho = 1, dim = 0"};
}

inline Outcome check_golden(const DimensionOptions& opt) {
    const Fraction left(BigInt(3), BigInt(28)), right(BigInt(1), BigInt(7));
    for (const char* s : {"001", "000111"}) {
        const auto r = phi(Word(s), opt);
        if (std::abs(r.dim() - golden_dim()) > 1e-9 || r.dim_upper - r.dim_lower > 1e-9)
            return {false, std::string(s) + ": dim " + fmt(r.dim())};
        if (!r.plateau || r.plateau->left != left || r.plateau->right != right)
            return {false, std::string(s) + ": plateau " +
                               (r.plateau ? r.plateau->left.str() + ", " + r.plateau->right.str() : "none")};
    }
    return {true, "dim " + fmt(golden_dim(), 11) + " on [3/28, 1/7] for 001 and 000111"};
}

inline Outcome check_self_similar(const DimensionOptions& opt) {
    const auto words = e1_minimal_words(8);
    for (const auto& c : words) {
        const Word image = mu_inverse(c, Word("01"));
        const auto a = phi(c, opt);
        const auto b = phi(image, opt);
        if (b.level != LevelClass::at(2) || std::abs(b.dim() - a.dim() / 2) > 1e-8)
            return {false, c.str() + " -> " + image.str() + ": " + fmt(b.dim()) + " vs " + fmt(a.dim() / 2)};
    }
    return {true, std::to_string(words.size()) + " e_1-minimal words, dimension halves"};
}

inline Outcome check_thue_morse(const DimensionOptions& opt) {
    const double tau = tm_constant(40).to_double();
    if (std::abs(tau - 0.41245403) > 1e-8) return {false, "tau = " + fmt(tau)};
    const double threshold = 1.0 - 2.0 * tau;
    const double mirror = mirror_limit_real(1, 2, 1e-15);
    const double d40 = value(d_prefix(Word("1"), 40)).to_double();
    if (std::abs(threshold - mirror) > 1e-11) return {false, "1-2tau vs product " + fmt(mirror, 15)};
    if (std::abs(threshold - d40) > 1e-11) return {false, "1-2tau vs d(1)[1..40] " + fmt(d40, 15)};
    const auto above = phi(Word("0011"), opt);
    if (above.dim_lower != 0.0 || above.dim_upper != 0.0) return {false, "phi(0011) = " + fmt(above.dim())};
    const auto below = phi(Word("0001"), opt);
    if (!(below.dim_lower > 0.4)) return {false, "phi(0001) = " + fmt(below.dim())};
    return {true, "tau = " + fmt(tau, 10) + ", 1-2tau = " + fmt(threshold, 11)};
}

inline Outcome check_e_dim(const DimensionOptions& opt) {
    const std::pair<unsigned, std::size_t> cases[] = {{1, 14}, {2, 16}};
    std::string detail;
    for (auto [i, n] : cases) {
        const auto b = dim_bounds(e_threshold(i), n, opt);
        const double target = std::ldexp(1.0, -static_cast<int>(i));
        if (!(b.lower <= target && target <= b.upper) || b.upper - b.lower > 0.02)
            return {false, "e_" + std::to_string(i) + ": [" + fmt(b.lower) + ", " + fmt(b.upper) + "]"};
        detail += "e_" + std::to_string(i) + " in [" + fmt(b.lower, 8) + ", " + fmt(b.upper, 8) + "] ";
    }
    detail.pop_back();
    return {true, detail};
}

inline Outcome check_oracle(const DimensionOptions& opt) {
    std::size_t compared = 0;
    for (std::size_t len = 2; len <= 6; ++len) {
        for (const auto& c : all_words(len)) {
            if (c.front() || !c.back()) continue;
            const auto ts = build_sft(c, opt.max_window);
            for (std::size_t n = 1; n <= 20; ++n) {
                const BigInt a = count_words(ts, n);
                const BigInt b = count_words_naive(c, n);
                ++compared;
                if (a != b) return {false, c.str() + ", n=" + std::to_string(n) + ": " + a.str() + " vs " + b.str()};
            }
        }
    }
    return {true, std::to_string(compared) + " (c, n) pairs, zero mismatches"};
}

inline Outcome check_maximality(const DimensionOptions& opt) {
    const auto base = phi(Word("001"), opt);
    for (std::size_t k = 1; k <= 4; ++k) {
        const Word a = accumulate_a(Word("001"), k);
        const auto r = phi(a, opt);
        if (!(r.dim_lower > base.dim_upper))
            return {false, "a_" + std::to_string(k) + " = " + a.str() + ": " + fmt(r.dim_lower) + " <= " + fmt(base.dim_upper)};
    }
    return {true, "a_1..a_4 of 001 all strictly above " + fmt(base.dim(), 10)};
}

inline Outcome check_bridge(const DimensionOptions&) {
    const auto words = e1_minimal_words(8);
    for (const auto& c : words) {
        const Word x = c + bridge_to_01(c) + Word("01").power(20);
        if (!window_valid(c, x)) return {false, c.str() + ": bridge word leaves F(c)"};
    }
    return {true, std::to_string(words.size()) + " e_1-minimal words bridged to (01)^inf"};
}

inline Outcome check_graph(const DimensionOptions& opt) {
    const auto start = std::chrono::steady_clock::now();
    DimensionOptions single = opt, many = opt;
    single.workers = 1;
    many.workers = std::max(2u, std::thread::hardware_concurrency());
    single.cache = many.cache = nullptr;
    const std::string a = plateaus_csv(plateaus(8, 3, single));
    const std::string b = plateaus_csv(plateaus(8, 3, many));
    const std::string again = plateaus_csv(plateaus(8, 3, many));
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (a != b || b != again) return {false, "CSV differs across runs or worker counts"};
    if (secs > 300) return {false, "took " + fmt(secs, 4) + " s"};

    const auto rows = parse_plateaus_csv(a);
    const Fraction zero_from = zero_threshold_upper(64);
    bool golden = false;
    for (std::size_t k = 0; k < rows.size(); ++k) {
        const auto& r = rows[k];
        if (k > 0 && rows[k - 1].right > r.left) return {false, "rows " + std::to_string(k) + " overlap or unsorted"};
        if (k > 0 && rows[k - 1].dim < r.dim) return {false, "dimension increases at row " + std::to_string(k)};
        if (r.dim > 0 && r.right > zero_from) return {false, "positive plateau beyond the threshold"};
        if (r.left == Fraction(BigInt(3), BigInt(28)) && r.right == Fraction(BigInt(1), BigInt(7)))
            golden = format_dim(r.dim) == "0.6942419136";
    }
    if (!golden) return {false, "plateau [3/28, 1/7] missing or not 0.6942419136"};
    return {true, std::to_string(rows.size()) + " rows, sorted, disjoint, non-increasing, deterministic"};
}

// Seq-calculus invariants over exhaustive word ranges.
inline Outcome check_lemmas(const DimensionOptions&) {
    std::size_t checked = 0;
    auto fail = [](const std::string& what, const Word& w) { return Outcome{false, what + " fails for " + w.str()}; };

    for (std::size_t len = 1; len <= 12; ++len) {
        for (const auto& s : all_words(len)) {
            if (!s.back()) continue;
            // sigma^n(s) > s for 0<n<N  <=>  s[1,n]^inf < s for 0<n<N
            bool shifts = true, prefixes = true;
            for (std::size_t n = 1; n < len; ++n) {
                shifts = shifts && compare(s.drop(n), s) > 0;
                prefixes = prefixes && compare(EPWord::periodic(s.prefix(n)), EPWord::embed(s)) < 0;
            }
            if (shifts != prefixes) return fail("shift/prefix duality", s);
            ++checked;

            if (!is_shift_bounded(s)) continue;
            if (!is_shift_bounded(f_map(s))) return fail("f preserves shift-boundedness", s);
            if (len > 1) {
                const Word p = p_reduce(s);
                if (!is_shift_bounded(p)) return fail("p preserves shift-boundedness", s);
                if (!(2 * p.size() >= len && p.size() < len && compare(s, p) < 0)) return fail("p shortens and raises", s);
            }
            const LevelClass level = level_of(s);
            if (!level.is_above_all()) {
                const Word target = f_power(Word("1"), level.level);
                if (p_chain(s, target).back() != target) return fail("p-chain reaches f^i(1)", s);
                const auto report = minimal_prefix(s);
                if (report.found()) {
                    if (!is_minimal(report.prefix)) return fail("minimal prefix is minimal", s);
                    if (!is_shift_bounded(report.prefix)) return fail("minimal words are shift-bounded", s);
                }
            }
        }
    }

    // mu: order preserving, invertible, and minimality transfers between levels
    for (unsigned level = 2; level <= 3; ++level) {
        const Word u = f_power(Word("1"), level - 1);
        for (std::size_t len = 2; len <= 7; ++len) {
            const auto words = all_words(len);
            std::vector<Word> images;
            for (const auto& x : words) {
                if (x.front()) continue;
                const Word y = mu_inverse(x, u);
                if (mu_forward(y, u) != x) return fail("mu_forward(mu_inverse(x)) = x", x);
                if (!images.empty() && compare(images.back(), y) >= 0) return fail("mu order preservation", x);
                images.push_back(y);
                if (x.back()) {
                    const bool m1 = level_of(x) == LevelClass::at(1) && is_minimal(x);
                    const LevelClass ly = level_of(y);
                    const bool mi = ly == LevelClass::at(level) && is_minimal(y);
                    if (m1 != mi) return fail("minimality transfer", x);
                }
                ++checked;
            }
        }
    }

    // a_k increases to e(s), b_k decreases to s^inf
    for (const auto& s : e1_minimal_words(8)) {
        const EPWord e = e_map(s);
        const EPWord s_inf = EPWord::periodic(s);
        for (std::size_t k = 1; k <= 5; ++k) {
            const Word a = accumulate_a(s, k), a_next = accumulate_a(s, k + 1);
            if (!(compare(a, a_next) < 0 && compare(a_next, e) < 0)) return fail("a_k increases to e(s)", s);
            if (!is_minimal(a) || level_of(a) != LevelClass::at(1)) return fail("a_k is e_1-minimal", a);
            const Word b = accumulate_b(s, k), b_next = accumulate_b(s, k + 1);
            if (!(compare(s_inf, b_next) < 0 && compare(b_next, b) < 0 && compare(s, b) < 0))
                return fail("b_k decreases to s^inf", s);
            if (level_of(b) != LevelClass::at(1)) return fail("b_k is an e_1-sequence", b);
            ++checked;
        }
    }
    return {true, std::to_string(checked) + " cases"};
}

inline const std::vector<Check>& checks() {
    static const std::vector<Check> all = {
        {"krun", "k-run family matches bisection roots", check_krun},
        {"two-point", "F(01) is the two-point set", check_two_point},
        {"golden", "golden plateau [3/28, 1/7]", check_golden},
        {"self-similar", "dimension halves under mu_01", check_self_similar},
        {"thue-morse", "zero threshold 1 - 2 tau", check_thue_morse},
        {"e-dim", "dim F(e_i) = 2^-i bracketed", check_e_dim},
        {"oracle", "count_words equals the naive count", check_oracle},
        {"maximality", "dimension jumps left of a plateau", check_maximality},
        {"bridge", "c w (01)^inf stays in F(c)", check_bridge},
        {"graph", "plateau graph is sorted and deterministic", check_graph},
        {"lemmas", "word lemma property suite", check_lemmas},
    };
    return all;
}

/// Runs the checks whose name matches `only` (all when empty); one line per check.
/// Returns the number of failures, or -1 if `only` names no check.
inline int run(const DimensionOptions& opt, std::ostream& out, const std::string& only = {}) {
    int failures = 0;
    bool any = false;
    for (const auto& check : checks()) {
        if (!only.empty() && check.name != only) continue;
        any = true;
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = check.run(opt);
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (!o.passed) ++failures;
        char timing[32];
        std::snprintf(timing, sizeof timing, "%.2f s", secs);
        out << (o.passed ? "PASS " : "FAIL ") << check.name << " - " << check.title << ": " << o.detail << " ("
            << timing << ")\n";
    }
    return any ? failures : -1;
}

} // namespace dyadic::acceptance
