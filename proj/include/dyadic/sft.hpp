#pragma once

/**
 * @file sft.hpp
 * @brief The subshift of finite type F(c) for a finite word c.
 *
 * For |c| = L, sigma^n(x) >= c^inf for all n iff every length-L factor of x is
 * >= c, and dually for the upper bound (c*)^inf. So F(c) = F(c^inf) is the
 * set of sequences whose length-L windows all lie in [c, c*], and the states
 * of the transition graph are exactly the integers code(c) .. code(c*).
 * Edges append one symbol: w -> (w << 1 | b) mod 2^L.
 */

#include "errors.hpp"
#include "fraction.hpp"
#include "word.hpp"
#include "sequences.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace dyadic {

inline constexpr std::size_t kDefaultMaxWindow = 24;
inline constexpr std::size_t kHardMaxWindow = 40;

class TransitionSystem {
public:
    static constexpr std::int64_t kNone = -1;

    TransitionSystem(std::size_t window_len, std::uint64_t lo, std::uint64_t hi)
        : window_len_(window_len), lo_(lo), hi_(hi) {}

    std::size_t window_len() const noexcept { return window_len_; }
    std::size_t size() const noexcept { return static_cast<std::size_t>(hi_ - lo_ + 1); }

    /// States are sorted; index i holds the window with code lo + i.
    Word state(std::size_t i) const { return Word::from_code(lo_ + i, window_len_); }

    std::optional<std::size_t> index_of(const Word& w) const {
        if (w.size() != window_len_) return std::nullopt;
        const std::uint64_t code = w.code();
        if (code < lo_ || code > hi_) return std::nullopt;
        return static_cast<std::size_t>(code - lo_);
    }

    /// Successor after appending `bit`, if that window is a state.
    std::int64_t successor(std::size_t i, bool bit) const {
        const std::uint64_t mask = window_len_ == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << window_len_) - 1;
        const std::uint64_t next = (((lo_ + i) << 1) & mask) | static_cast<std::uint64_t>(bit);
        if (next < lo_ || next > hi_) return kNone;
        return static_cast<std::int64_t>(next - lo_);
    }

    template <class F>
    void for_each_successor(std::size_t i, F&& f) const {
        for (bool bit : {false, true}) {
            const auto j = successor(i, bit);
            if (j != kNone) f(static_cast<std::size_t>(j));
        }
    }

    std::size_t edge_count() const {
        std::size_t n = 0;
        for (std::size_t i = 0; i < size(); ++i) for_each_successor(i, [&](std::size_t) { ++n; });
        return n;
    }

    std::uint64_t lowest_code() const noexcept { return lo_; }
    std::uint64_t highest_code() const noexcept { return hi_; }

    /// Stable text export: {"window_len": L, "states": [...], "edges": [[from, to], ...]}.
    std::string to_json() const {
        std::ostringstream out;
        out << "{\n  \"window_len\": " << window_len_ << ",\n  \"states\": [";
        for (std::size_t i = 0; i < size(); ++i) out << (i ? ", " : "") << '"' << state(i).str() << '"';
        out << "],\n  \"edges\": [";
        bool first = true;
        for (std::size_t i = 0; i < size(); ++i) {
            for_each_successor(i, [&](std::size_t j) {
                out << (first ? "" : ", ") << '[' << i << ", " << j << ']';
                first = false;
            });
        }
        out << "]\n}\n";
        return out.str();
    }

private:
    std::size_t window_len_;
    std::uint64_t lo_;
    std::uint64_t hi_;
};

namespace detail {

inline std::string memory_estimate(std::size_t window) {
    // two successor slots and a code per state, before SCC bookkeeping
    const double bytes = std::ldexp(24.0, static_cast<int>(window));
    std::ostringstream out;
    out.precision(3);
    out << bytes / (1024.0 * 1024.0) << " MiB";
    return out.str();
}

inline void check_window_word(const Word& c, std::size_t max_window) {
    if (c.size() < 2 || c.front() || !c.back())
        throw DomainError("window word must start with 0, end with 1 and have length >= 2, got '" + c.str() + "'");
    if (c.size() > std::min(max_window, kHardMaxWindow))
        throw ResourceError("window length " + std::to_string(c.size()) + " exceeds the cap " +
                            std::to_string(std::min(max_window, kHardMaxWindow)) + " (would need up to " +
                            memory_estimate(c.size()) + ")");
}

} // namespace detail

inline TransitionSystem build_sft(const Word& c, std::size_t max_window = kDefaultMaxWindow) {
    detail::check_window_word(c, max_window);
    return TransitionSystem(c.size(), c.code(), star(c).code());
}

/// Does every length-|c| window of x lie in [c, c*]?
inline bool window_valid(const Word& c, const Word& x) {
    if (c.empty() || x.size() < c.size()) return false;
    const Word upper = star(c);
    for (std::size_t k = 0; k + c.size() <= x.size(); ++k) {
        const Word w = x.slice(k, c.size());
        if (compare(w, c) < 0 || compare(w, upper) > 0) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Language counting.

/// Number of length-n words whose length-|c| windows all lie in [c, c*];
/// for n < |c|, the number of length-n prefixes of admissible windows.
inline BigInt count_words(const TransitionSystem& ts, std::size_t n) {
    if (n == 0) throw DomainError("count_words needs n >= 1");
    const std::size_t L = ts.window_len();
    if (n < L) {
        const unsigned drop = static_cast<unsigned>(L - n);
        return BigInt((ts.highest_code() >> drop) - (ts.lowest_code() >> drop) + 1);
    }
    std::vector<BigInt> ways(ts.size(), BigInt(1));
    std::vector<BigInt> next(ts.size());
    for (std::size_t step = L; step < n; ++step) {
        for (std::size_t i = 0; i < ts.size(); ++i) {
            next[i] = 0;
            ts.for_each_successor(i, [&](std::size_t j) { next[i] += ways[j]; });
        }
        ways.swap(next);
    }
    BigInt total = 0;
    for (const auto& w : ways) total += w;
    return total;
}

inline BigInt count_words(const Word& c, std::size_t n, std::size_t max_window = kDefaultMaxWindow) {
    return count_words(build_sft(c, max_window), n);
}

/// Same contract as count_words, by scanning all 2^n words. Test oracle only.
inline BigInt count_words_naive(const Word& c, std::size_t n) {
    if (n == 0) throw DomainError("count_words_naive needs n >= 1");
    if (n > 30) throw ResourceError("count_words_naive is limited to n <= 30");
    if (c.empty() || c.size() > 30) throw DomainError("count_words_naive needs 1 <= |c| <= 30");
    const std::size_t L = c.size();
    std::uint64_t lo = 0, hi = 0;
    for (std::size_t i = 0; i < L; ++i) {
        lo = lo * 2 + (c[i] ? 1 : 0);
        hi = hi * 2 + (c[i] ? 0 : 1);
    }
    const std::uint64_t mask = (std::uint64_t{1} << L) - 1;
    std::uint64_t count = 0;
    for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x) {
        bool ok = true;
        if (n >= L) {
            for (std::size_t k = 0; k + L <= n && ok; ++k) {
                const std::uint64_t w = (x >> (n - L - k)) & mask;
                ok = w >= lo && w <= hi;
            }
        } else {
            ok = false;
            const std::size_t pad = L - n;
            for (std::uint64_t v = 0; v < (std::uint64_t{1} << pad) && !ok; ++v) {
                const std::uint64_t w = (x << pad) | v;
                ok = w >= lo && w <= hi;
            }
        }
        if (ok) ++count;
    }
    return BigInt(count);
}

// ---------------------------------------------------------------------------
// Strongly connected components.

struct Component {
    std::vector<std::size_t> states;
    bool trivial = false; // single state without a self-loop
};

/// Tarjan's algorithm, iterative; components come out in topological order.
inline std::vector<Component> sccs(const TransitionSystem& ts) {
    const std::size_t n = ts.size();
    constexpr std::size_t kUnvisited = static_cast<std::size_t>(-1);
    std::vector<std::size_t> index(n, kUnvisited), low(n, 0);
    std::vector<bool> on_stack(n, false);
    std::vector<std::size_t> stack;
    std::vector<Component> out;
    std::size_t counter = 0;

    struct Frame {
        std::size_t v;
        int next_bit;
    };
    std::vector<Frame> call;

    for (std::size_t root = 0; root < n; ++root) {
        if (index[root] != kUnvisited) continue;
        call.push_back({root, 0});
        index[root] = low[root] = counter++;
        stack.push_back(root);
        on_stack[root] = true;
        while (!call.empty()) {
            Frame& frame = call.back();
            const std::size_t v = frame.v;
            if (frame.next_bit < 2) {
                const auto w = ts.successor(v, frame.next_bit == 1);
                ++frame.next_bit;
                if (w == TransitionSystem::kNone) continue;
                const auto u = static_cast<std::size_t>(w);
                if (index[u] == kUnvisited) {
                    index[u] = low[u] = counter++;
                    stack.push_back(u);
                    on_stack[u] = true;
                    call.push_back({u, 0});
                } else if (on_stack[u]) {
                    low[v] = std::min(low[v], index[u]);
                }
                continue;
            }
            if (low[v] == index[v]) {
                Component comp;
                std::size_t w;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on_stack[w] = false;
                    comp.states.push_back(w);
                } while (w != v);
                std::sort(comp.states.begin(), comp.states.end());
                bool self_loop = false;
                ts.for_each_successor(v, [&](std::size_t u) { self_loop = self_loop || u == v; });
                comp.trivial = comp.states.size() == 1 && !self_loop;
                out.push_back(std::move(comp));
            }
            call.pop_back();
            if (!call.empty()) {
                const std::size_t parent = call.back().v;
                low[parent] = std::min(low[parent], low[v]);
            }
        }
    }
    std::reverse(out.begin(), out.end());
    return out;
}

namespace detail {

// gcd of cycle lengths inside one strongly connected component
inline std::size_t component_period(const TransitionSystem& ts, const Component& comp) {
    std::vector<std::int64_t> depth(ts.size(), -1);
    std::vector<bool> member(ts.size(), false);
    for (auto s : comp.states) member[s] = true;
    std::vector<std::size_t> queue{comp.states.front()};
    depth[comp.states.front()] = 0;
    std::size_t g = 0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
        const std::size_t v = queue[head];
        ts.for_each_successor(v, [&](std::size_t u) {
            if (!member[u]) return;
            if (depth[u] < 0) {
                depth[u] = depth[v] + 1;
                queue.push_back(u);
            } else {
                const auto diff = depth[v] + 1 - depth[u];
                g = std::gcd(g, static_cast<std::size_t>(diff < 0 ? -diff : diff));
            }
        });
    }
    return g;
}

} // namespace detail

/// Exactly one nontrivial component (every other state transient) and it is aperiodic.
inline bool is_primitive(const TransitionSystem& ts) {
    const auto comps = sccs(ts);
    const Component* core = nullptr;
    for (const auto& comp : comps) {
        if (comp.trivial) continue;
        if (core) return false;
        core = &comp;
    }
    return core && detail::component_period(ts, *core) == 1;
}

// ---------------------------------------------------------------------------
// Spectral radius.

struct SpectralResult {
    double lower = 0;
    double upper = 0;
    std::size_t iterations = 0;
    std::int64_t component_id = -1; // component with the largest lower bound; -1 if none

    double mid() const { return 0.5 * (lower + upper); }
};

/// Collatz-Wielandt enclosure of rho(A) via power iteration on A + I in
/// each nontrivial component; rho(A) is the maximum over components.
inline SpectralResult spectral_radius(const TransitionSystem& ts, double tol) {
    if (!(tol > 0)) throw DomainError("tolerance must be positive");
    const auto comps = sccs(ts);
    const auto cap = static_cast<std::size_t>(200.0 * static_cast<double>(ts.window_len()) *
                                              std::max(1.0, std::log(1.0 / tol)));

    SpectralResult best;
    bool any = false;
    bool failed = false;
    std::vector<std::int64_t> local(ts.size(), -1);
    for (std::size_t id = 0; id < comps.size(); ++id) {
        const auto& comp = comps[id];
        if (comp.trivial) continue;
        const std::size_t m = comp.states.size();
        for (std::size_t k = 0; k < m; ++k) local[comp.states[k]] = static_cast<std::int64_t>(k);
        std::vector<std::vector<std::size_t>> adj(m);
        for (std::size_t k = 0; k < m; ++k)
            ts.for_each_successor(comp.states[k], [&](std::size_t u) {
                if (local[u] >= 0 && std::binary_search(comp.states.begin(), comp.states.end(), u))
                    adj[k].push_back(static_cast<std::size_t>(local[u]));
            });

        std::vector<double> v(m, 1.0), w(m);
        double lower = 0, upper = 0;
        std::size_t it = 0;
        bool converged = false;
        while (it < cap) {
            ++it;
            double lo = INFINITY, hi = 0, top = 0;
            for (std::size_t k = 0; k < m; ++k) {
                double s = v[k];
                for (auto j : adj[k]) s += v[j];
                w[k] = s;
                const double r = s / v[k];
                lo = std::min(lo, r);
                hi = std::max(hi, r);
                top = std::max(top, s);
            }
            lower = std::max(lower, lo - 1.0);
            upper = it == 1 ? hi - 1.0 : std::min(upper, hi - 1.0);
            for (std::size_t k = 0; k < m; ++k) v[k] = w[k] / top;
            if (upper - lower <= tol) {
                converged = true;
                break;
            }
        }
        if (!converged) failed = true;
        if (!any || lower > best.lower) best.component_id = static_cast<std::int64_t>(id);
        best.lower = any ? std::max(best.lower, lower) : lower;
        best.upper = any ? std::max(best.upper, upper) : upper;
        best.iterations += it;
        any = true;
        for (auto s : comp.states) local[s] = -1;
    }
    if (failed) {
        std::ostringstream msg;
        msg << "spectral iteration did not reach tolerance " << tol << " within " << cap
            << " steps; best enclosure [" << best.lower << ", " << best.upper << "]";
        throw ConvergenceError(msg.str(), best.lower, best.upper);
    }
    return best;
}

/// Additive slack lambda_v * 2 / lambda_v^{m|u| - m + 1} in the entropy
/// comparison lambda_u <= lambda_v (1 + 2 / lambda_v^{m|u| - m + 1}), where j
/// is the first position where u^inf and v differ and m is the largest
/// integer with m|u| < j.
inline double entropy_upper_gap(const Word& u, const Word& v, double lambda_v) {
    if (u.empty() || !is_shift_bounded(u)) throw DomainError("entropy estimate needs a shift-bounded u");
    if (v.size() < u.size() || v.prefix(u.size()) != u) throw DomainError("u must be a prefix of v");
    const EPWord u_inf = EPWord::periodic(u);
    if (compare(u_inf, v) >= 0) throw DomainError("entropy estimate needs u^inf < v");
    std::size_t j = 0; // 1-based first mismatch
    for (std::size_t i = 0;; ++i) {
        const bool vi = i < v.size() && v[i];
        if (u_inf.at(i) != vi) {
            j = i + 1;
            break;
        }
    }
    const std::size_t m = (j - 1) / u.size();
    const double exponent = static_cast<double>(m * u.size() - m + 1);
    return lambda_v * 2.0 / std::pow(lambda_v, exponent);
}

} // namespace dyadic
