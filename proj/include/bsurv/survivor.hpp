#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <queue>
#include <string>
#include <utility>
#include <vector>

#include "bsurv/errors.hpp"
#include "bsurv/expansions.hpp"
#include "bsurv/intervals.hpp"
#include "bsurv/word.hpp"

namespace bsurv {

// ---- two-sided subshifts -----------------------------------------------------
//
// Sequences over {0..top} whose every suffix is wedged between two eventually
// periodic bounds.  A state keeps, per bound, the set of positions at which
// some suffix still matches that bound digit for digit; a suffix strictly
// clear of a bound stops constraining and is dropped.  Positions are reduced
// into the bound's preperiod+period window, so the state space is finite.
// Keeping whole sets (rather than one deepest match) stays correct even when
// a bound is not itself a member of the subshift it delimits.

enum class SuffixRule {
    every_suffix,    // each suffix obeys both bounds
    routed_by_head,  // the head digit of a suffix picks the bounds for its
                     // tail: 0 keeps the upper bound, top keeps the lower
                     // one, interior digits keep both
};

struct SubshiftAutomaton {
    PeriodicSeq lower, upper;
    int top = 1;                         // digit alphabet 0..top
    SuffixRule rule = SuffixRule::every_suffix;
    std::size_t start = 0;
    std::vector<std::vector<int>> next;  // next[s][x], -1 when rejecting
    std::vector<char> live;              // has an infinite continuation
    std::size_t live_count = 0;

    bool start_live() const { return !next.empty() && live[start]; }
};

namespace detail {

// Offsets at or beyond pre+per fold back into the period.
inline int bound_offset_class(const PeriodicSeq& s, std::size_t o) {
    std::size_t p = s.pre.size(), q = s.per.size();
    if (o < p + q) return static_cast<int>(o);
    return static_cast<int>(p + (o - p) % q);
}

// Advance every still-matching offset past digit x, or report a violation.
inline std::optional<std::vector<int>> step_offsets(const PeriodicSeq& bound,
                                                    const std::vector<int>& offs, int x,
                                                    bool is_lower) {
    std::vector<int> out;
    out.reserve(offs.size());
    for (int o : offs) {
        int d = bound.digit(static_cast<std::size_t>(o));
        if (x == d) {
            out.push_back(bound_offset_class(bound, static_cast<std::size_t>(o) + 1));
            continue;
        }
        if (is_lower ? x < d : x > d) return std::nullopt;
        // strictly clear of the bound: this suffix no longer constrains
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

inline void push_offset_zero(std::vector<int>& v) {
    if (v.empty() || v.front() != 0) v.insert(v.begin(), 0);
}

constexpr std::size_t kStateCap = 500000;

}  // namespace detail

inline SubshiftAutomaton build_automaton(const PeriodicSeq& c, const PeriodicSeq& d, int top,
                                         SuffixRule rule = SuffixRule::every_suffix) {
    if (top < 1) throw domain_error("build_automaton: alphabet needs at least two digits");
    if (c.max_dig() > top || d.max_dig() > top)
        throw domain_error("build_automaton: bound digit exceeds the alphabet");
    if (rule == SuffixRule::every_suffix && seq_compare(c, d) >= 0)
        throw domain_error("build_automaton: lower bound must lie strictly below the upper");

    SubshiftAutomaton a;
    a.lower = c;
    a.upper = d;
    a.top = top;
    a.rule = rule;

    using Key = std::pair<std::vector<int>, std::vector<int>>;
    std::map<Key, int> index;
    std::vector<Key> keys;
    auto intern = [&](Key k) {
        auto it = index.find(k);
        if (it != index.end()) return it->second;
        int id = static_cast<int>(keys.size());
        if (keys.size() >= detail::kStateCap)
            throw resource_error("build_automaton: state cap exceeded");
        index.emplace(k, id);
        keys.push_back(std::move(k));
        a.next.emplace_back(top + 1, -1);
        return id;
    };

    a.start = static_cast<std::size_t>(intern({{}, {}}));
    std::queue<int> bfs;
    bfs.push(static_cast<int>(a.start));
    while (!bfs.empty()) {
        int s = bfs.front();
        bfs.pop();
        const Key cur = keys[static_cast<std::size_t>(s)];  // copy: keys grows below
        for (int x = 0; x <= top; ++x) {
            std::vector<int> lo = cur.first, up = cur.second;
            if (rule == SuffixRule::every_suffix) {
                detail::push_offset_zero(lo);
                detail::push_offset_zero(up);
            }
            auto lo2 = detail::step_offsets(c, lo, x, true);
            if (!lo2) continue;
            auto up2 = detail::step_offsets(d, up, x, false);
            if (!up2) continue;
            if (rule == SuffixRule::routed_by_head) {
                if (x < top) detail::push_offset_zero(*up2);
                if (x > 0) detail::push_offset_zero(*lo2);
            }
            bool fresh = index.find({*lo2, *up2}) == index.end();
            int t = intern({std::move(*lo2), std::move(*up2)});
            a.next[static_cast<std::size_t>(s)][static_cast<std::size_t>(x)] = t;
            if (fresh) bfs.push(t);
        }
    }

    // trim: a state survives only with at least one surviving successor
    a.live.assign(a.next.size(), 1);
    for (bool changed = true; changed;) {
        changed = false;
        for (std::size_t s = 0; s < a.next.size(); ++s) {
            if (!a.live[s]) continue;
            bool ok = false;
            for (int t : a.next[s])
                if (t >= 0 && a.live[static_cast<std::size_t>(t)]) {
                    ok = true;
                    break;
                }
            if (!ok) {
                a.live[s] = 0;
                changed = true;
            }
        }
    }
    for (char f : a.live) a.live_count += static_cast<std::size_t>(f);
    return a;
}

// ---- word counting -----------------------------------------------------------

// Numbers of length-1 .. length-nmax prefixes of infinite elements.  By shift
// invariance these are exactly the factor counts.
inline std::vector<Int> word_counts(const SubshiftAutomaton& a, std::size_t nmax) {
    std::vector<Int> out;
    out.reserve(nmax);
    std::size_t m = a.next.size();
    std::vector<Int> cur(m, 0), nxt(m, 0);
    if (a.start_live()) cur[a.start] = 1;
    for (std::size_t n = 1; n <= nmax; ++n) {
        std::fill(nxt.begin(), nxt.end(), Int(0));
        Int total = 0;
        for (std::size_t s = 0; s < m; ++s) {
            if (cur[s] == 0) continue;
            for (int t : a.next[s])
                if (t >= 0 && a.live[static_cast<std::size_t>(t)])
                    nxt[static_cast<std::size_t>(t)] += cur[s];
        }
        for (const Int& v : nxt) total += v;
        out.push_back(total);
        cur.swap(nxt);
    }
    return out;
}

inline Int word_count(const SubshiftAutomaton& a, std::size_t n) {
    if (n < 1) throw domain_error("word_count: length must be positive");
    return word_counts(a, n).back();
}

// ---- entropy -------------------------------------------------------------------

struct EntropyEstimate {
    double value = 0;
    double lo = 0, hi = 0;  // certified enclosure of the growth exponent
    std::string method = "exact-spectral";
    std::size_t n_lo = 0, n_hi = 0;  // word-length window used by a slope fit
    double residual = 0;
    bool warning = false;         // spectral pass failed to converge
    bool empty_language = false;  // no infinite element at all
};

namespace detail {

// strongly connected components, iterative to keep the stack flat
inline std::vector<int> scc_of(const std::vector<std::vector<int>>& adj) {
    std::size_t n = adj.size();
    std::vector<int> comp(n, -1), disc(n, -1), low(n, 0), stk;
    std::vector<char> on(n, 0);
    int timer = 0, ncomp = 0;
    std::vector<std::pair<int, std::size_t>> call;
    for (std::size_t r = 0; r < n; ++r) {
        if (disc[r] != -1) continue;
        call.emplace_back(static_cast<int>(r), 0);
        while (!call.empty()) {
            int v = call.back().first;
            std::size_t& ei = call.back().second;
            if (ei == 0) {
                disc[v] = low[v] = timer++;
                stk.push_back(v);
                on[static_cast<std::size_t>(v)] = 1;
            }
            if (ei < adj[static_cast<std::size_t>(v)].size()) {
                int w = adj[static_cast<std::size_t>(v)][ei++];
                if (disc[w] == -1)
                    call.emplace_back(w, 0);
                else if (on[static_cast<std::size_t>(w)])
                    low[v] = std::min(low[v], disc[w]);
            } else {
                if (low[v] == disc[v]) {
                    for (;;) {
                        int w = stk.back();
                        stk.pop_back();
                        on[static_cast<std::size_t>(w)] = 0;
                        comp[static_cast<std::size_t>(w)] = ncomp;
                        if (w == v) break;
                    }
                    ++ncomp;
                }
                call.pop_back();
                if (!call.empty()) low[call.back().first] = std::min(low[call.back().first], low[v]);
            }
        }
    }
    return comp;
}

// least squares y ~ slope*x + c; returns {slope, max abs deviation}
inline std::pair<double, double> ls_fit(const std::vector<double>& xs,
                                        const std::vector<double>& ys) {
    std::size_t m = xs.size();
    if (m < 2) return {0.0, 0.0};
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < m; ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= static_cast<double>(m);
    my /= static_cast<double>(m);
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < m; ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
    }
    double slope = sxx > 0 ? sxy / sxx : 0.0;
    double c = my - slope * mx, dev = 0;
    for (std::size_t i = 0; i < m; ++i)
        dev = std::max(dev, std::fabs(ys[i] - (slope * xs[i] + c)));
    return {slope, dev};
}

}  // namespace detail

// Growth exponent of the word counts: log of the spectral radius of the live
// transition count matrix.  Power iteration runs per strongly connected
// component on A+I (primitive there), and the returned enclosure comes from
// an exact rational ratio pass: for any positive v, componentwise
// min (Av)_i/v_i <= rho(A) <= max (Av)_i/v_i.
inline EntropyEstimate entropy(const SubshiftAutomaton& a, std::size_t slope_nmax = 48) {
    EntropyEstimate e;
    if (!a.start_live()) {
        e.empty_language = true;
        return e;
    }

    // compact live subgraph with transition multiplicities
    std::size_t m = a.next.size();
    std::vector<int> id(m, -1);
    std::vector<std::size_t> node;
    for (std::size_t s = 0; s < m; ++s)
        if (a.live[s]) {
            id[s] = static_cast<int>(node.size());
            node.push_back(s);
        }
    std::size_t L = node.size();
    std::vector<std::map<int, long>> mult(L);
    std::vector<std::vector<int>> adj(L);
    for (std::size_t i = 0; i < L; ++i) {
        for (int t : a.next[node[i]])
            if (t >= 0 && a.live[static_cast<std::size_t>(t)])
                ++mult[i][id[static_cast<std::size_t>(t)]];
        for (auto& kv : mult[i]) adj[i].push_back(kv.first);
    }

    std::vector<int> comp = detail::scc_of(adj);
    int ncomp = comp.empty() ? 0 : *std::max_element(comp.begin(), comp.end()) + 1;

    Rat lam_lo = 1, lam_hi = 1;
    bool cyclic = false, converged = true;
    for (int cid = 0; cid < ncomp; ++cid) {
        std::vector<int> members;
        for (std::size_t i = 0; i < L; ++i)
            if (comp[i] == cid) members.push_back(static_cast<int>(i));
        bool has_cycle = members.size() > 1;
        if (!has_cycle) {
            auto it = mult[static_cast<std::size_t>(members[0])].find(members[0]);
            has_cycle = it != mult[static_cast<std::size_t>(members[0])].end();
        }
        if (!has_cycle) continue;
        cyclic = true;

        std::vector<int> pos(L, -1);
        for (std::size_t j = 0; j < members.size(); ++j) pos[static_cast<std::size_t>(members[j])] = static_cast<int>(j);
        // rows of A+I restricted to the component
        std::size_t sz = members.size();
        std::vector<std::vector<std::pair<int, long>>> rows(sz);
        for (std::size_t j = 0; j < sz; ++j) {
            long self = 1;
            for (auto& kv : mult[static_cast<std::size_t>(members[j])]) {
                int p = pos[static_cast<std::size_t>(kv.first)];
                if (p < 0) continue;
                if (p == static_cast<int>(j))
                    self += kv.second;
                else
                    rows[j].emplace_back(p, kv.second);
            }
            rows[j].emplace_back(static_cast<int>(j), self);
        }

        std::vector<double> v(sz, 1.0 / static_cast<double>(sz)), w(sz);
        double gap = 1;
        for (std::size_t it = 0; it < 100000 && gap > 1e-13; ++it) {
            double sum = 0;
            for (std::size_t j = 0; j < sz; ++j) {
                double acc = 0;
                for (auto& pr : rows[j]) acc += static_cast<double>(pr.second) * v[static_cast<std::size_t>(pr.first)];
                w[j] = acc;
                sum += acc;
            }
            double rmin = 0, rmax = 0;
            for (std::size_t j = 0; j < sz; ++j) {
                double r = w[j] / v[j];
                if (j == 0 || r < rmin) rmin = r;
                if (j == 0 || r > rmax) rmax = r;
            }
            gap = (rmax - rmin) / rmax;
            for (std::size_t j = 0; j < sz; ++j) v[j] = w[j] / sum;
        }

        // exact ratio pass on the float vector, valid however rough v is
        std::vector<Rat> rv(sz);
        for (std::size_t j = 0; j < sz; ++j)
            rv[j] = v[j] > 0 ? Rat(v[j]) : Rat(1, Int(1) << 120);
        Rat rmin, rmax;
        for (std::size_t j = 0; j < sz; ++j) {
            Rat acc = 0;
            for (auto& pr : rows[j]) acc += Rat(pr.second) * rv[static_cast<std::size_t>(pr.first)];
            Rat r = acc / rv[j];
            if (j == 0 || r < rmin) rmin = r;
            if (j == 0 || r > rmax) rmax = r;
        }
        Rat clo = rmin - 1, chi = rmax - 1;  // back from A+I to A
        if (clo < 1) clo = 1;                // a cycle forces rho >= 1
        if (clo > lam_lo) lam_lo = clo;
        if (chi > lam_hi) lam_hi = chi;
        if ((chi - clo) / chi > Rat(1, 100000000)) converged = false;
    }

    if (!cyclic) return e;  // only transient states: counts stop growing

    if (lam_lo == lam_hi) {
        double l = lam_lo.convert_to<double>();
        e.lo = e.hi = e.value = lam_lo == 1 ? 0.0 : std::log(l);
        return e;
    }
    e.lo = lam_lo == 1 ? 0.0 : std::max(0.0, std::log(lam_lo.convert_to<double>()) - 1e-12);
    e.hi = std::log(lam_hi.convert_to<double>()) + 1e-12;
    e.value = (e.lo + e.hi) / 2;
    e.residual = e.hi - e.lo;

    if (!converged) {
        // keep the rational enclosure, but report the slope of log N_n instead
        e.warning = true;
        e.method = "word-count-slope";
        std::vector<Int> counts = word_counts(a, slope_nmax);
        std::vector<double> xs, ys;
        for (std::size_t n = std::max<std::size_t>(1, slope_nmax / 2); n <= slope_nmax; ++n) {
            if (counts[n - 1] == 0) continue;
            xs.push_back(static_cast<double>(n));
            ys.push_back(std::log(counts[n - 1].convert_to<double>()));
        }
        auto fit = detail::ls_fit(xs, ys);
        e.value = fit.first;
        e.residual = fit.second;
        e.n_lo = slope_nmax / 2;
        e.n_hi = slope_nmax;
    }
    return e;
}

// ---- survivor dimension --------------------------------------------------------

// Eventually periodic greedy expansion of t at an exact base, when the orbit
// of t under x -> beta x - floor(beta x) recurs within the cap.
inline std::optional<PeriodicSeq> greedy_seq(const Rat& t, const Rat& beta, std::size_t cap = 4096) {
    if (t < 0 || t >= 1) throw domain_error("greedy_seq: value outside [0,1)");
    if (beta <= 1) throw domain_error("greedy_seq: base must exceed 1");
    std::map<Rat, std::size_t> seen;
    Rat x = t;
    Word digits;
    for (std::size_t i = 0; i < cap; ++i) {
        auto it = seen.find(x);
        if (it != seen.end()) {
            Word pre(digits.begin(), digits.begin() + static_cast<std::ptrdiff_t>(it->second));
            Word per(digits.begin() + static_cast<std::ptrdiff_t>(it->second), digits.end());
            return PeriodicSeq(std::move(pre), std::move(per));
        }
        seen.emplace(x, i);
        x *= beta;
        Int d = rat_floor(x);
        digits.push_back(static_cast<int>(d));
        x -= Rat(d);
    }
    return std::nullopt;
}

struct DimOptions {
    std::size_t nmax = 40;         // truncation length for aperiodic digit data
    std::size_t cycle_cap = 4096;  // orbit steps tried when hunting a periodic form
};

struct DimensionResult {
    EntropyEstimate entropy;
    double lo = 0, hi = 0;  // dimension enclosure
    bool exact_mode = false;
};

namespace detail {

inline EntropyEstimate empty_entropy() {
    EntropyEstimate e;
    e.empty_language = true;
    return e;
}

// Survivor dimension from whatever digit data is available: exact bounds when
// both sequences are eventually periodic, otherwise a sandwich between the
// two tail relaxations (tail digits forced to 0 on one side, to top on the
// other), which bracket the true subshift.
inline DimensionResult dim_core(const Beta& b, const std::optional<PeriodicSeq>& cs,
                                const Word& cpref, const std::optional<PeriodicSeq>& ds,
                                const Word& dpref, const DimOptions& opt) {
    (void)opt;
    int top = b.alphabet_top();
    DimensionResult r;
    if (cs && ds) {
        r.exact_mode = true;
        int cmp = seq_compare(*cs, *ds);
        if (cmp > 0)
            throw domain_error("dim_survivor: lower bound exceeds the expansion of 1");
        if (cmp == 0) {
            r.entropy = EntropyEstimate{};  // single orbit: no growth
        } else {
            r.entropy = entropy(build_automaton(*cs, *ds, top));
        }
    } else {
        PeriodicSeq c_lo = PeriodicSeq::padded(cpref), c_hi = PeriodicSeq(cpref, {top});
        PeriodicSeq d_lo = PeriodicSeq::padded(dpref), d_hi = PeriodicSeq(dpref, {top});
        if (cs) c_lo = c_hi = *cs;
        if (ds) d_lo = d_hi = *ds;
        EntropyEstimate narrow = seq_compare(c_hi, d_lo) < 0
                                     ? entropy(build_automaton(c_hi, d_lo, top))
                                     : empty_entropy();
        if (seq_compare(c_lo, d_hi) >= 0)
            throw domain_error("dim_survivor: bounds cross even after relaxation");
        EntropyEstimate wide = entropy(build_automaton(c_lo, d_hi, top));
        r.entropy.lo = narrow.lo;
        r.entropy.hi = wide.hi;
        r.entropy.value = (narrow.lo + wide.hi) / 2;
        r.entropy.residual = wide.hi - narrow.lo;
        r.entropy.warning = narrow.warning || wide.warning;
        if (narrow.method == "word-count-slope" || wide.method == "word-count-slope")
            r.entropy.method = "word-count-slope";
    }

    double log_lo, log_hi;
    if (b.exact()) {
        log_lo = log_hi = std::log(b.lo.convert_to<double>());
    } else {
        double l = std::log(b.lo.convert_to<double>());
        double h = std::log(b.hi.convert_to<double>());
        log_lo = l - 1e-13 * std::max(1.0, std::fabs(l));
        log_hi = h + 1e-13 * std::max(1.0, std::fabs(h));
    }
    r.lo = r.entropy.lo <= 0 ? 0.0 : r.entropy.lo / log_hi;
    r.hi = r.entropy.hi <= 0 ? 0.0 : r.entropy.hi / log_lo;
    return r;
}

}  // namespace detail

// dim of the survivor set at (beta, t): growth exponent of the two-sided
// subshift between the greedy expansion of t and the expansion of 1, divided
// by log beta.
inline DimensionResult dim_survivor(const Beta& b, const Rat& t, const DimOptions& opt = {}) {
    if (t < 0 || t >= 1) throw domain_error("dim_survivor: t outside [0,1)");
    std::optional<PeriodicSeq> ds = alpha_seq(b, opt.cycle_cap);
    std::optional<PeriodicSeq> cs;
    Word cpref, dpref;
    if (b.exact()) {
        cs = greedy_seq(t, b.lo, opt.cycle_cap);
        if (!cs) cpref = greedy_digits(t, b.lo, opt.nmax);
    } else {
        cpref = greedy_digits_enclosed(ValueEnclosure::point(t), b, opt.nmax).digits;
    }
    if (!ds) dpref = alpha_digits(b, opt.nmax).digits;
    return detail::dim_core(b, cs, cpref, ds, dpref, opt);
}

// Same, for a t given by its greedy digit sequence.
inline DimensionResult dim_survivor(const Beta& b, const PeriodicSeq& tdigits,
                                    const DimOptions& opt = {}) {
    std::optional<PeriodicSeq> ds = alpha_seq(b, opt.cycle_cap);
    Word dpref;
    if (!ds) dpref = alpha_digits(b, opt.nmax).digits;
    return detail::dim_core(b, tdigits, {}, ds, dpref, opt);
}

// ---- growth of the rotation closure ---------------------------------------------

// Word counts for the subshift wedged between S^inf and its largest rotation,
// with a fitted growth diagnostic.  Counts staying polynomial is evidence of
// countability, not a proof.
struct GrowthTable {
    std::vector<Int> counts;  // counts[i] is the number of words of length i+1
    double fitted_power = 0;  // slope of log N_n against log n over the tail
    double residual = 0;      // max deviation of that fit
    std::string verdict;      // "polynomial" or "exponential-warning"
};

inline GrowthTable gamma_growth(const Word& s, std::size_t nmax = 40) {
    if (!is_lyndon(s)) throw domain_error("gamma_growth: needs a Lyndon word");
    GrowthTable g;
    if (s.size() == 1) {
        // both bounds collapse onto the same constant sequence
        g.counts.assign(nmax, 1);
        g.verdict = "polynomial";
        return g;
    }
    auto aut = build_automaton(PeriodicSeq::periodic(s), PeriodicSeq::periodic(largest_cyclic(s)),
                               max_digit(s));
    g.counts = word_counts(aut, nmax);
    std::vector<double> xs, ys;
    std::size_t half = std::max<std::size_t>(2, nmax / 2);
    for (std::size_t n = half; n <= nmax; ++n) {
        double cnt = g.counts[n - 1] == 0 ? 1.0 : g.counts[n - 1].convert_to<double>();
        xs.push_back(std::log(static_cast<double>(n)));
        ys.push_back(std::log(cnt));
    }
    auto fit = detail::ls_fit(xs, ys);
    g.fitted_power = fit.first;
    g.residual = fit.second;
    // Exponential growth bends the log-log tail upward: the fitted power blows up
    // and the fit stops being flat.  Polynomial counts keep a small stable slope.
    g.verdict = (g.fitted_power <= 2.5 && g.residual <= 0.25) ? "polynomial" : "exponential-warning";
    return g;
}

// ---- orbit membership ------------------------------------------------------------

// Does the orbit of t stay at or above t?  Exact rational orbits decide up to
// the horizon; enclosure bases escalate to undecided as soon as a digit or a
// comparison straddles.
struct OrbitCheck {
    Verdict verdict = Verdict::undecided;
    std::size_t witness = 0;  // failing step for `no`, first unresolved step otherwise
};

inline OrbitCheck bifurcation_member(const Beta& b, const Rat& t, std::size_t horizon = 10000) {
    if (t < 0 || t >= 1) throw domain_error("bifurcation_member: t outside [0,1)");
    if (b.exact()) {
        const Rat& beta = b.lo;
        Rat x = t;
        for (std::size_t n = 1; n <= horizon; ++n) {
            x *= beta;
            x -= Rat(rat_floor(x));
            if (x < t) return {Verdict::no, n};
        }
        return {Verdict::yes, 0};
    }
    ValueEnclosure x{t, t, true};
    for (std::size_t n = 1; n <= horizon; ++n) {
        Rat ylo = x.lo * b.lo, yhi = x.hi * b.hi;
        Int dlo = rat_floor(ylo), dhi = rat_floor(yhi);
        if (dlo != dhi) return {Verdict::undecided, n};
        x = ValueEnclosure{ylo - Rat(dlo), yhi - Rat(dlo), false};
        if (x.hi < t) return {Verdict::no, n};
        if (x.lo < t) return {Verdict::undecided, n};
    }
    return {Verdict::yes, 0};
}

// Symbolic form, for a t handed over as its greedy expansion: shifts of the
// digit sequence stand in for orbit points, and the finitely many distinct
// shifts decide every n.
inline OrbitCheck bifurcation_member(const PeriodicSeq& u, std::size_t horizon = 10000) {
    std::size_t span = u.pre.size() + u.per.size();
    for (std::size_t n = 1; n <= std::min(horizon, span); ++n)
        if (seq_compare(u.shifted(n), u) < 0) return {Verdict::no, n};
    return {Verdict::yes, 0};
}

// ---- isolated points --------------------------------------------------------------

// Whether (s^inf)_beta sits isolated in the bifurcation set: exactly when the
// base lies in the half-open window between the word's outer roots.
struct IsolatedResult {
    bool isolated = false;
    bool at_left = false, at_right = false;  // boundary hits
    int side = 0;  // -1 at/below the left root, 0 inside, +1 beyond the right root
};

inline IsolatedResult isolated_test(const Word& s, const Beta& b) {
    EndpointSeqs es = endpoint_seqs(s);
    auto cl = compare_beta_to_root(b, es.left);
    auto cr = compare_beta_to_root(b, es.right);
    if (!cl || !cr)
        throw precision_error("isolated_test: enclosure does not separate the window roots");
    IsolatedResult r;
    r.at_left = *cl == 0;
    r.at_right = *cr == 0;
    r.isolated = *cl > 0 && *cr <= 0;
    r.side = *cl <= 0 ? -1 : (*cr > 0 ? 1 : 0);
    return r;
}

// Family of isolated points at a fixed base, read off the expansion of 1:
// writing it as nonzero blocks separated by zero runs, each strictly new
// record zero-run length yields a word (prefix through that block, last digit
// lowered, rotated to its Lyndon representative) whose periodization lands in
// the bifurcation set, isolated.  Values decrease toward 0 along the family.
struct IsolatedPoint {
    Word word;
    ValueEnclosure t;
    bool certified = false;  // base strictly inside the word's window
};

inline std::vector<IsolatedPoint> isolated_construction(const Beta& b, std::size_t count,
                                                        std::size_t digit_budget = 4096) {
    std::vector<IsolatedPoint> out;
    if (count == 0) return out;
    Word a = alpha_digits(b, digit_budget).digits;
    std::size_t i = 0, record = 0;
    bool have_first = false;
    while (i < a.size()) {
        std::size_t bs = i;
        while (i < a.size() && a[i] != 0) ++i;
        if (i == bs || i == a.size()) break;  // no block, or block may continue
        std::size_t ze = i;
        while (ze < a.size() && a[ze] == 0) ++ze;
        if (ze == a.size()) break;  // zero run truncated: length unknown
        std::size_t mlen = ze - i;
        if (!have_first) {
            have_first = true;
            record = mlen;
        } else if (mlen > record) {
            record = mlen;
            Word prefix(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(i));
            Word w = smallest_cyclic(word_minus(prefix));
            if (is_lyndon(w)) {
                IsolatedPoint p;
                p.word = w;
                p.t = eval_pi(PeriodicSeq::periodic(w), b);
                auto cl = compare_beta_to_root(b, endpoint_seqs(w).left);
                auto cr = compare_beta_to_root(b, endpoint_seqs(w).right);
                p.certified = cl && cr && *cl > 0 && *cr < 0;
                out.push_back(std::move(p));
                if (out.size() == count) return out;
            }
        }
        i = ze;
    }
    return out;  // horizon exhausted: partial list
}

}  // namespace bsurv
