#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "bsurv/errors.hpp"
#include "bsurv/expansions.hpp"
#include "bsurv/rational.hpp"
#include "bsurv/survivor.hpp"
#include "bsurv/word.hpp"

namespace bsurv {

// ---- the times-k map with k-1 translated holes ------------------------------------
//
// For 0 < a < 1/k < b < a + 1/k, the open holes (a + j/k, b + j/k) carve [0,1)
// into k closed strips, one per leading digit.  Written in base-k digits, orbit
// avoidance becomes a routed subshift: the head digit of each suffix decides
// which endpoint stream bounds its tail.  Everything stays exact because the
// hole endpoints enter as rationals, whose digit streams are eventually
// periodic.

// Raised where a_2 <= b_2 leaves only countably many survivors.
struct DegenerateWarning : std::runtime_error {
    explicit DegenerateWarning(const std::string& what) : std::runtime_error(what) {}
};

namespace detail {

template <typename Step>
PeriodicSeq radix_cycle(Rat x, std::size_t cap, const char* who, Step step) {
    std::map<Rat, std::size_t> seen;
    Word digits;
    for (std::size_t i = 0; i < cap; ++i) {
        auto it = seen.find(x);
        if (it != seen.end()) {
            Word pre(digits.begin(), digits.begin() + static_cast<std::ptrdiff_t>(it->second));
            Word per(digits.begin() + static_cast<std::ptrdiff_t>(it->second), digits.end());
            return PeriodicSeq(std::move(pre), std::move(per));
        }
        seen.emplace(x, i);
        digits.push_back(step(x));
    }
    throw resource_error(std::string(who) + ": orbit did not recur within the cap");
}

}  // namespace detail

// Base-k digit stream of x in [0,1), terminating form: the lexicographically
// largest expansion.  The right kind of upper endpoint for a closed
// lexicographic interval: every sequence with value <= x is <= this stream.
inline PeriodicSeq radix_greedy(const Rat& x, int k, std::size_t cap = 65536) {
    if (k < 2) throw domain_error("radix_greedy: base must be at least 2");
    if (x < 0 || x >= 1) throw domain_error("radix_greedy: value outside [0,1)");
    return detail::radix_cycle(x, cap, "radix_greedy", [k](Rat& v) {
        v *= k;
        Int d = rat_floor(v);
        v -= Rat(d);
        return static_cast<int>(d);
    });
}

// Base-k digit stream of x in (0,1], infinite form: the lexicographically
// least expansion, which never ends in 0^inf.  Dually, the right kind of
// lower endpoint: every sequence with value >= x is >= this stream.
inline PeriodicSeq radix_infinite(const Rat& x, int k, std::size_t cap = 65536) {
    if (k < 2) throw domain_error("radix_infinite: base must be at least 2");
    if (x <= 0 || x > 1) throw domain_error("radix_infinite: value outside (0,1]");
    return detail::radix_cycle(x, cap, "radix_infinite", [k](Rat& v) {
        v *= k;
        Int d = rat_ceil(v) - 1;  // keeps the remainder in (0,1]
        v -= Rat(d);
        return static_cast<int>(d);
    });
}

struct HoleSystem {
    int k = 2;
    Rat a, b;
    PeriodicSeq a_stream, b_stream;  // digit streams of the hole endpoints
    PeriodicSeq a_prime, b_prime;    // their tails a_2a_3..., b_2b_3...

    // Survivors shrink to a countable set once the strips lose interior.
    bool degenerate() const { return a_prime.first() <= b_prime.first(); }
};

inline HoleSystem hole_system(int k, const Rat& a, const Rat& b) {
    if (k < 2) throw domain_error("hole_system: need k >= 2");
    Rat cell(1, k);
    if (!(0 < a && a < cell && cell < b && b < a + cell))
        throw domain_error("hole_system: need 0 < a < 1/k < b < a + 1/k");
    HoleSystem h;
    h.k = k;
    h.a = a;
    h.b = b;
    h.a_stream = radix_greedy(a, k);
    h.b_stream = radix_infinite(b, k);
    h.a_prime = h.a_stream.shifted(1);
    h.b_prime = h.b_stream.shifted(1);
    return h;
}

// Sequences whose every suffix stays in the strip of its own head digit: the
// tail is capped by a_2a_3... unless the head is k-1, and floored by
// b_2b_3... unless the head is 0.  The truncation parameter is accepted for
// callers that feed truncated data; exact rational streams ignore it.
inline SubshiftAutomaton omega_automaton(const HoleSystem& h, std::size_t truncation = 0) {
    (void)truncation;
    if (h.degenerate())
        throw DegenerateWarning("omega_automaton: a_2 <= b_2 leaves a countable survivor set");
    return build_automaton(h.b_prime, h.a_prime, h.k - 1, SuffixRule::routed_by_head);
}

namespace detail {

// Deterministic extremal walk on the live part; state recurrence closes the
// period.  Lexicographic extremes are greedy because the state determines the
// full set of allowed continuations.
inline PeriodicSeq extremal_walk(const SubshiftAutomaton& a, bool want_max) {
    std::vector<int> first_seen(a.next.size(), -1);
    Word digits;
    std::size_t s = a.start;
    for (;;) {
        if (first_seen[s] >= 0) {
            Word pre(digits.begin(), digits.begin() + first_seen[s]);
            Word per(digits.begin() + first_seen[s], digits.end());
            return PeriodicSeq(std::move(pre), std::move(per));
        }
        first_seen[s] = static_cast<int>(digits.size());
        int pick = -1;
        for (int x = want_max ? a.top : 0; 0 <= x && x <= a.top; want_max ? --x : ++x) {
            int t = a.next[s][static_cast<std::size_t>(x)];
            if (t >= 0 && a.live[static_cast<std::size_t>(t)]) {
                pick = x;
                break;
            }
        }
        // a live state always has a live successor
        digits.push_back(pick);
        s = static_cast<std::size_t>(a.next[s][static_cast<std::size_t>(pick)]);
    }
}

}  // namespace detail

// Extremal elements of the subshift wedged between b' and a'.  The returned
// pair spans the same subshift; membership and the defining shift
// inequalities are re-checked on the spot, as is factor-count equality.
inline std::pair<PeriodicSeq, PeriodicSeq> normalize_bounds(const PeriodicSeq& b_prime,
                                                            const PeriodicSeq& a_prime) {
    if (seq_compare(b_prime, a_prime) >= 0)
        throw domain_error("normalize_bounds: lower bound must lie strictly below the upper");
    int top = std::max(b_prime.max_dig(), a_prime.max_dig());
    SubshiftAutomaton aut = build_automaton(b_prime, a_prime, top);
    if (!aut.start_live()) throw domain_error("normalize_bounds: empty subshift");
    PeriodicSeq lo = detail::extremal_walk(aut, false);
    PeriodicSeq hi = detail::extremal_walk(aut, true);

    auto inside = [&](const PeriodicSeq& s) {
        std::size_t span = s.pre.size() + s.per.size();
        for (std::size_t n = 0; n <= span; ++n) {
            PeriodicSeq sn = s.shifted(n);
            if (seq_compare(lo, sn) > 0 || seq_compare(sn, hi) > 0) return false;
        }
        return true;
    };
    if (!inside(lo) || !inside(hi))
        throw precision_error("normalize_bounds: extremal walk left the subshift");
    if (seq_compare(lo, hi) < 0) {
        SubshiftAutomaton tight = build_automaton(lo, hi, top);
        std::vector<Int> before = word_counts(aut, 12), after = word_counts(tight, 12);
        if (before != after)
            throw precision_error("normalize_bounds: tightened bounds changed the subshift");
    }
    return {lo, hi};
}

// The holes system recast as a survivor problem: a'' is the expansion of 1
// for a base in (1,k), and the hole size t is read off b'', greedy-adjusted
// to a finite form when some shift of b'' lands exactly on a''.
struct BridgeResult {
    Beta beta;
    ValueEnclosure t;
    PeriodicSeq lower, upper;      // expansions bounding the survivor subshift
    bool countable = false;        // degenerate or single-orbit: dimension 0
    bool greedy_adjusted = false;  // b'' replaced by the bumped finite form
    DimensionResult dim;           // survivor dimension through the bridge
};

inline BridgeResult bridge(const HoleSystem& h, const Rat& eps = Rat(1, Int(1) << 64),
                           const DimOptions& opt = {}) {
    BridgeResult r;
    if (h.degenerate()) {
        r.countable = true;
        return r;
    }
    auto [b2, a2] = normalize_bounds(h.b_prime, h.a_prime);
    r.lower = b2;
    r.upper = a2;
    r.beta = alpha_inverse(a2, eps);

    std::size_t span = b2.pre.size() + b2.per.size();
    std::optional<std::size_t> hit;
    for (std::size_t n = 0; n <= span && !hit; ++n)
        if (b2.shifted(n) == a2) hit = n;

    if (hit && *hit == 0) {
        // the wedge is one orbit: the hole reaches the expansion of 1
        r.countable = true;
        r.t = eval_pi(b2, r.beta);
        return r;
    }
    if (hit) {
        Word head = b2.prefix(*hit);
        if (head.back() + 1 > h.k - 1)
            throw precision_error("bridge: greedy adjustment overflows the alphabet");
        ++head.back();
        r.lower = PeriodicSeq::padded(head);
        r.greedy_adjusted = true;
    }
    r.t = eval_pi(r.lower, r.beta);
    r.dim = dim_survivor(r.beta, r.lower, opt);
    return r;
}

// Dimension of the survivor set measured three ways: off the routed
// automaton, off the wedged subshift, and through the (beta, t) bridge.  All
// three divide an entropy by log beta, so the enclosures are comparable.
struct HoleReport {
    BridgeResult bridge;
    EntropyEstimate omega_entropy, sigma_entropy;
    double omega_lo = 0, omega_hi = 0;
    double sigma_lo = 0, sigma_hi = 0;
    bool agree = true;  // the three enclosures pairwise overlap
};

inline HoleReport hole_report(const HoleSystem& h, const Rat& eps = Rat(1, Int(1) << 64),
                              const DimOptions& opt = {}) {
    HoleReport r;
    r.bridge = bridge(h, eps, opt);
    if (h.degenerate()) return r;  // nothing to measure: countable on all routes

    r.omega_entropy = entropy(omega_automaton(h));
    r.sigma_entropy = entropy(build_automaton(h.b_prime, h.a_prime, h.k - 1));

    double log_lo, log_hi;
    const Beta& b = r.bridge.beta;
    if (b.exact()) {
        log_lo = log_hi = std::log(b.lo.convert_to<double>());
    } else {
        double l = std::log(b.lo.convert_to<double>());
        double g = std::log(b.hi.convert_to<double>());
        log_lo = l - 1e-13 * std::max(1.0, std::fabs(l));
        log_hi = g + 1e-13 * std::max(1.0, std::fabs(g));
    }
    r.omega_lo = r.omega_entropy.lo <= 0 ? 0.0 : r.omega_entropy.lo / log_hi;
    r.omega_hi = r.omega_entropy.hi <= 0 ? 0.0 : r.omega_entropy.hi / log_lo;
    r.sigma_lo = r.sigma_entropy.lo <= 0 ? 0.0 : r.sigma_entropy.lo / log_hi;
    r.sigma_hi = r.sigma_entropy.hi <= 0 ? 0.0 : r.sigma_entropy.hi / log_lo;

    auto overlap = [](double alo, double ahi, double blo, double bhi) {
        return alo <= bhi + 1e-9 && blo <= ahi + 1e-9;
    };
    const DimensionResult& sv = r.bridge.dim;
    r.agree = overlap(r.omega_lo, r.omega_hi, r.sigma_lo, r.sigma_hi) &&
              overlap(r.omega_lo, r.omega_hi, sv.lo, sv.hi) &&
              overlap(r.sigma_lo, r.sigma_hi, sv.lo, sv.hi);
    return r;
}

}  // namespace bsurv
