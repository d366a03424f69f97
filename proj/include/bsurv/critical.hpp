#pragma once
// The critical hole size tau(beta): the supremum of t for which the set of
// points whose orbit avoids [0,t) still has positive Hausdorff dimension
// (equivalently, the survivor set keeps uncountably many points).
//
// The value is assembled from the classification of beta:
//   - inside a closed-form interval of a word S it equals (S^- L(S)^inf)_beta;
//   - at the right root of S it equals (S 0^inf)_beta;
//   - strictly between, it is the image under the block substitution of the
//     shifted expansion of 1 in the conjugated base;
//   - outside every carrier it equals 1 - 1/beta;
//   - along an infinite factor tower it is the limit of (W_n 0^inf)_beta.
// Whenever beta lies in the carrier of S, the unconditional bracket
//   (S^- L(S)^inf)_beta <= tau(beta) <= (S 0^inf)_beta
// holds and is reported alongside the case-specific value.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <thread>
#include <utility>
#include <vector>

#include "bsurv/errors.hpp"
#include "bsurv/expansions.hpp"
#include "bsurv/intervals.hpp"
#include "bsurv/rational.hpp"
#include "bsurv/substitution.hpp"
#include "bsurv/word.hpp"

namespace bsurv {

struct TauResult {
    Classification cls;
    std::optional<PeriodicSeq> seq;  // exact expansion of tau when one is known
    std::optional<Word> seq_prefix;  // finite prefix when only a stream was available
    ValueEnclosure value;            // value under the classified-region hypothesis
    ValueEnclosure certified;        // unconditional enclosure
    bool bracket_only = false;

    const char* case_name() const {
        if (bracket_only) return "BracketOnly";
        switch (cls.kind) {
            case RegionKind::basic_interval: return "BasicInterval";
            case RegionKind::right_edge:
            case RegionKind::relative_exceptional: return "RelativeExceptional";
            case RegionKind::exceptional: return "ELocus";
            case RegionKind::renorm_limit: return "RenormalizableLimit";
            case RegionKind::undecided: return "BracketOnly";
        }
        return "BracketOnly";
    }
};

// Unconditional bracket for beta in the carrier of s.
inline ValueEnclosure tau_bracket(const Word& s, const Beta& b) {
    BlockAlphabet blocks(s);
    PeriodicSeq low(blocks.s_minus, blocks.ls);
    PeriodicSeq high = PeriodicSeq::padded(s);
    return ValueEnclosure::bounds(eval_pi(low, b).lo, eval_pi(high, b).hi);
}

inline ValueEnclosure global_bracket(const Beta& b) {
    return ValueEnclosure::bounds(Rat(0), 1 - 1 / b.hi);
}

namespace detail {

// tau on the open part of a carrier: (Phi_s(0 a_2 a_3 ...))_beta with
// 1 a_2 a_3 ... the expansion of 1 in the conjugated base, recovered by
// parsing alpha(beta) into blocks.  Falls back to the bracket when no digit
// stream or no block parse is available.
inline void tau_relative(TauResult& r, const Word& s, const Beta& b, const Rat& val_eps) {
    r.certified = tau_bracket(s, b);
    auto a = alpha_seq(b, 512);
    if (a) {
        PeriodicSeq hat = phi_parse(s, *a);
        if (hat.first() != 1) throw domain_error("carrier parse produced an invalid leading digit");
        PeriodicSeq tail = hat.shifted(1);
        Word pre{0};
        pre.insert(pre.end(), tail.pre.begin(), tail.pre.end());
        PeriodicSeq tseq(std::move(pre), tail.per);
        r.seq = phi_apply(s, tseq);
        r.value = eval_pi(*r.seq, b);
        return;
    }
    if (!b.exact()) {  // no digit source precise enough for block parsing
        r.value = r.certified;
        r.bracket_only = true;
        return;
    }
    // Stream enough digits of alpha(beta) to pin tau within val_eps.
    int top = b.alphabet_top();
    double lb = std::log(b.lo.convert_to<double>());
    double need = std::log((Rat(top + 1) / (val_eps * (b.lo - 1))).convert_to<double>());
    if (!(need / lb < 4.0e5)) throw resource_error("tau: digit budget exceeded");
    std::size_t tau_digits = static_cast<std::size_t>(std::max(0.0, need) / lb) + 2;
    std::size_t want = tau_digits / s.size() + 2;
    if (want * s.size() > 400000) throw resource_error("tau: digit budget exceeded");
    AlphaStream stream(b);
    Word hat = phi_parse_stream(s, [&](std::size_t i) { return stream.digit(i); }, want);
    if (hat.empty() || hat[0] != 1)
        throw domain_error("carrier parse produced an invalid leading digit");
    hat[0] = 0;
    Word prefix = phi_apply(s, hat);
    r.seq_prefix = prefix;
    r.value = eval_prefix(prefix, b, top);
}

}  // namespace detail

// Critical value with certification, driven by the classification of b.
inline TauResult tau(const Beta& b, std::size_t depth, std::size_t cap, const Rat& val_eps) {
    TauResult r;
    r.cls = classify(b, depth, cap);
    switch (r.cls.kind) {
        case RegionKind::basic_interval: {
            BlockAlphabet blocks(r.cls.product);
            r.seq = PeriodicSeq(blocks.s_minus, blocks.ls);
            r.value = eval_pi(*r.seq, b);
            r.certified = r.value;
            return r;
        }
        case RegionKind::right_edge: {
            r.seq = PeriodicSeq::padded(r.cls.product);
            r.value = eval_pi(*r.seq, b);
            r.certified = r.value;
            return r;
        }
        case RegionKind::relative_exceptional: {
            try {
                detail::tau_relative(r, r.cls.product, b, val_eps);
            } catch (const parse_error&) {
                r.value = tau_bracket(r.cls.product, b);
                r.certified = r.value;
                r.bracket_only = true;
            }
            return r;
        }
        case RegionKind::exceptional: {
            r.value = ValueEnclosure::bounds(1 - 1 / b.lo, 1 - 1 / b.hi);
            r.certified = global_bracket(b);
            return r;
        }
        case RegionKind::renorm_limit: {
            r.value = tau_bracket(r.cls.product, b);
            r.certified = r.value;
            return r;
        }
        case RegionKind::undecided: {
            r.value = global_bracket(b);
            r.certified = r.value;
            r.bracket_only = true;
            return r;
        }
    }
    return r;
}

// ---- jump at a right root ----------------------------------------------------

// tau is left-continuous at the right root of s with value (s 0^inf), while
// approaching from above it tends to the strictly larger (s^inf).
struct JumpResult {
    Word word;
    Beta right;
    ValueEnclosure at;     // tau at the right root
    ValueEnclosure above;  // limit from above
};

inline JumpResult jump_at(const Word& s, const Rat& eps) {
    EndpointSeqs es = endpoint_seqs(s);
    Beta br = alpha_inverse(es.right, eps);
    return JumpResult{s, br, eval_pi(PeriodicSeq::padded(s), br),
                      eval_pi(PeriodicSeq({}, s), br)};
}

// ---- smallest bases with a unique expansion of 1 ------------------------------

// Digit i (1-based) of the expansion of 1 in the m-th such base: a shifted
// parity sequence for odd m, its single-letter block image for even m.
inline int kl_alpha_digit(int m, std::size_t i) {
    auto parity = [](std::size_t n) {
        int p = 0;
        while (n) {
            p ^= static_cast<int>(n & 1);
            n >>= 1;
        }
        return p;
    };
    int k = (m + 1) / 2;
    int lam = parity(i);
    if (m % 2 == 1) return lam + (k - 1);
    int prev = parity(i - 1);  // i >= 1; parity(0) = 0 matches the leading block rule
    int mu;
    if (lam == 1) mu = (i > 1 && prev == 1) ? 1 : 2;
    else mu = (i > 1 && prev == 0) ? 1 : 0;
    return mu + (k - 1);
}

struct KLResult {
    int m;
    Beta beta;
    ValueEnclosure tau_value;  // m/(beta-1) - 1
};

// Bisection against truncated partial sums with an explicit geometric tail
// bound, so every accepted comparison is certain.
inline KLResult komornik_loreti(int m, const Rat& eps) {
    if (m < 1) throw domain_error("base count must be at least 1");
    int k = (m + 1) / 2;
    // odd m uses digits up to k, even m up to k+1, so the root shifts one up
    int floor_k = (m % 2 == 1) ? k : k + 1;
    Rat lo = floor_k, hi = floor_k + 1;
    std::size_t n = 64;
    Word digits;
    auto extend = [&](std::size_t upto) {
        while (digits.size() < upto) digits.push_back(kl_alpha_digit(m, digits.size() + 1));
    };
    while (hi - lo > eps) {
        Rat mid = (lo + hi) / 2;
        for (;;) {
            extend(n);
            Word head(digits.begin(), digits.begin() + static_cast<std::ptrdiff_t>(n));
            Rat fn = eval_word(head, mid);
            Rat tail = Rat(m) / (rat_pow(mid, static_cast<unsigned>(n)) * (mid - 1));
            if (fn > 1) {
                lo = mid;
                break;
            }
            if (fn + tail < 1) {
                hi = mid;
                break;
            }
            if (n > (std::size_t{1} << 20)) throw resource_error("digit budget exceeded");
            n *= 2;
        }
    }
    Beta b{lo, hi, std::nullopt};
    ValueEnclosure tv = ValueEnclosure::bounds(Rat(m) / (hi - 1) - 1, Rat(m) / (lo - 1) - 1);
    return KLResult{m, b, tv};
}

// Partial factor towers (s_1, 01, 01, ...) whose padded words bracket the
// critical value of the m-th base from both sides.
inline ValueEnclosure kl_tower_bracket(int m, const Beta& b, std::size_t levels) {
    int k = (m + 1) / 2;
    Word s1 = (m % 2 == 1) ? (k == 1 ? Word{0, 1} : theta(Word{0, 1}, k - 1)) : Word{k};
    Word w = s1;
    for (std::size_t i = 1; i < levels; ++i) w = bullet(w, Word{0, 1});
    return tau_bracket(w, b);
}

// ---- staircase over a rational grid -------------------------------------------

struct StaircaseRow {
    Rat beta;
    TauResult res;
};

inline std::vector<StaircaseRow> staircase(const Rat& lo, const Rat& hi, const Rat& step,
                                           std::size_t depth, std::size_t cap,
                                           const Rat& val_eps, std::size_t jobs = 1) {
    if (lo <= 1 || hi < lo || step <= 0) throw domain_error("bad grid");
    std::vector<Rat> grid;
    for (Rat x = lo; x <= hi; x += step) grid.push_back(x);
    std::vector<StaircaseRow> rows(grid.size());
    std::exception_ptr err;
    auto run = [&](std::size_t from, std::size_t stride) {
        try {
            for (std::size_t i = from; i < grid.size(); i += stride)
                rows[i] =
                    StaircaseRow{grid[i], tau(beta_from_rational(grid[i]), depth, cap, val_eps)};
        } catch (...) {
            err = std::current_exception();
        }
    };
    if (jobs <= 1) {
        run(0, 1);
    } else {
        std::vector<std::thread> pool;
        for (std::size_t j = 0; j < jobs; ++j) pool.emplace_back(run, j, jobs);
        for (auto& t : pool) t.join();
    }
    if (err) std::rethrow_exception(err);
    return rows;
}

}  // namespace bsurv
