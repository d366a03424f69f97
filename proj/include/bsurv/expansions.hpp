#pragma once
// Digit expansions in a real base beta > 1 and their certified numerics.
//
// A base enters either as an exact rational or as the root of (d)_beta = 1
// for an admissible sequence d; in the latter case d is alpha(beta) itself,
// so order comparisons against other such roots reduce to lexicographic
// comparisons and stay exact at any precision.

#include <map>
#include <optional>
#include <utility>

#include "bsurv/errors.hpp"
#include "bsurv/rational.hpp"
#include "bsurv/word.hpp"

namespace bsurv {

// ---- series evaluation ----------------------------------------------------

// Sum of w_i beta^-(i+1) over the word.
inline Rat eval_word(const Word& w, const Rat& beta) {
    Rat r = 0;
    for (std::size_t i = w.size(); i-- > 0;) r = (r + w[i]) / beta;
    return r;
}

// Exact value of an eventually periodic sequence at rational beta > 1.
inline Rat eval_pi(const PeriodicSeq& s, const Rat& beta) {
    if (beta <= 1) throw domain_error("eval_pi: base must exceed 1");
    Rat head = eval_word(s.pre, beta);
    Rat block = eval_word(s.per, beta);
    Rat bq = rat_pow(beta, static_cast<unsigned>(s.per.size()));
    Rat tail = block * bq / (bq - 1);
    return head + tail / rat_pow(beta, static_cast<unsigned>(s.pre.size()));
}

// ---- certified bases -------------------------------------------------------

struct Beta {
    Rat lo, hi;                           // certified enclosure, 1 < lo <= hi
    std::optional<PeriodicSeq> defining;  // alpha(beta), when beta is the root of (d)_beta = 1

    bool exact() const { return lo == hi; }

    // The integer k with beta in (k, k+1].
    int base_index() const {
        if (defining) return defining->first();
        Int k = rat_ceil(lo) - 1;
        if (!exact() && rat_ceil(hi) - 1 != k && Rat(rat_ceil(lo)) != hi)
            throw precision_error("base enclosure straddles an integer");
        return static_cast<int>(k);
    }

    int alphabet_top() const { return base_index(); }  // digits run over 0..k
};

inline Beta beta_from_rational(const Rat& r) {
    if (r <= 1) throw domain_error("base must exceed 1");
    return Beta{r, r, std::nullopt};
}

// Sequence admissibility: exactly the image of beta -> alpha(beta), i.e.
// every shift is lexicographically at most the sequence itself, the first
// digit is positive, and the sequence does not end in 0^inf.
inline bool is_alpha_admissible(const PeriodicSeq& s) {
    if (s.first() < 1 || s.ends_zero()) return false;
    std::size_t horizon = s.pre.size() + s.per.size();
    for (std::size_t n = 1; n < horizon; ++n)
        if (seq_compare(s.shifted(n), s) > 0) return false;
    return true;
}

// The unique beta in (k, k+1] with (d)_beta = 1, bisected to width eps.
// Rational roots are detected and returned exactly.
inline Beta alpha_inverse(const PeriodicSeq& d, const Rat& eps,
                          unsigned max_iter = 1000000) {
    if (!is_alpha_admissible(d))
        throw domain_error("alpha_inverse: sequence is not an admissible alpha image");
    int k = d.first();
    if (d.pre.empty() && d.per == Word{k})  // k^inf
        return Beta{Rat(k + 1), Rat(k + 1), d};
    Rat lo = k, hi = k + 1;
    for (unsigned it = 0;; ++it) {
        if (hi - lo <= eps) break;
        if (it >= max_iter) throw resource_error("alpha_inverse: iteration cap hit");
        Rat mid = (lo + hi) / 2;
        Rat v = eval_pi(d, mid);
        if (v > 1) lo = mid;
        else if (v < 1) hi = mid;
        else return Beta{mid, mid, d};
    }
    return Beta{lo, hi, d};
}

// Narrow an enclosure that carries a defining sequence.
inline void refine_beta(Beta& b, const Rat& eps) {
    if (b.exact() || !b.defining) return;
    while (b.hi - b.lo > eps) {
        Rat mid = (b.lo + b.hi) / 2;
        Rat v = eval_pi(*b.defining, mid);
        if (v > 1) b.lo = mid;
        else if (v < 1) b.hi = mid;
        else {
            b.lo = b.hi = mid;
            return;
        }
    }
}

inline Beta beta_from_seq(const PeriodicSeq& d, const Rat& eps) { return alpha_inverse(d, eps); }

// Value enclosure of an eventually periodic sequence at a certified base
// (the series is decreasing in the base).
inline ValueEnclosure eval_pi(const PeriodicSeq& s, const Beta& b) {
    Rat vhi = eval_pi(s, b.lo);
    if (b.exact()) return ValueEnclosure{vhi, vhi, true};
    return ValueEnclosure{eval_pi(s, b.hi), vhi, false};
}

// Enclosure for a sequence known only through a length-n prefix: the tail
// contributes between 0 and top/(beta^n (beta - 1)).
inline ValueEnclosure eval_prefix(const Word& prefix, const Beta& b, int top) {
    Rat lo = eval_word(prefix, b.hi);
    Rat bn = rat_pow(b.lo, static_cast<unsigned>(prefix.size()));
    Rat hi = eval_word(prefix, b.lo) + Rat(top) / (bn * (b.lo - 1));
    return ValueEnclosure{lo, hi, false};
}

// Sign of beta minus the root of (e)_beta = 1, or nullopt when the enclosure
// cannot separate them.  With a defining sequence the comparison is purely
// lexicographic and always resolves.
inline std::optional<int> compare_beta_to_root(const Beta& b, const PeriodicSeq& e) {
    if (b.defining) return seq_compare(*b.defining, e);
    if (b.exact()) {
        Rat v = eval_pi(e, b.lo);
        return v > 1 ? -1 : (v < 1 ? 1 : 0);
    }
    if (eval_pi(e, b.hi) > 1) return -1;  // root beyond hi
    if (eval_pi(e, b.lo) < 1) return 1;   // root below lo
    return std::nullopt;
}

// ---- digit streams ---------------------------------------------------------

struct DigitStreamResult {
    Word digits;
    std::optional<std::size_t> undecided;  // index of the first unresolvable digit
    bool complete(std::size_t n) const { return !undecided && digits.size() >= n; }
};

// Greedy digits of x in [0, 1): b_i = floor(beta x_{i-1}).
inline Word greedy_digits(Rat x, const Rat& beta, std::size_t n) {
    if (x < 0 || x >= 1) throw domain_error("greedy_digits: x outside [0,1)");
    Word out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        x *= beta;
        Int d = rat_floor(x);
        out.push_back(static_cast<int>(d));
        x -= Rat(d);
    }
    return out;
}

// Quasi-greedy digits of x in (0, 1]: a_i = ceil(beta x_{i-1}) - 1, which
// keeps every remainder inside (0, 1] and so never produces a 0^inf tail.
inline Word quasi_greedy_digits(Rat x, const Rat& beta, std::size_t n) {
    if (x <= 0 || x > 1) throw domain_error("quasi_greedy_digits: x outside (0,1]");
    Word out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        x *= beta;
        Int d = rat_ceil(x) - 1;
        out.push_back(static_cast<int>(d));
        x -= Rat(d);
    }
    return out;
}

// Interval versions: digits are emitted while both endpoints agree and the
// first straddled digit is reported as undecided.
inline DigitStreamResult greedy_digits_enclosed(ValueEnclosure x, const Beta& b, std::size_t n) {
    DigitStreamResult r;
    for (std::size_t i = 0; i < n; ++i) {
        Rat ylo = x.lo * b.lo, yhi = x.hi * b.hi;
        Int dlo = rat_floor(ylo), dhi = rat_floor(yhi);
        if (dlo != dhi) {
            r.undecided = i;
            return r;
        }
        r.digits.push_back(static_cast<int>(dlo));
        x = ValueEnclosure{ylo - Rat(dlo), yhi - Rat(dlo), false};
    }
    return r;
}

inline DigitStreamResult quasi_greedy_digits_enclosed(ValueEnclosure x, const Beta& b,
                                                      std::size_t n) {
    DigitStreamResult r;
    for (std::size_t i = 0; i < n; ++i) {
        Rat ylo = x.lo * b.lo, yhi = x.hi * b.hi;
        Int dlo = rat_ceil(ylo) - 1, dhi = rat_ceil(yhi) - 1;
        if (dlo != dhi) {
            r.undecided = i;
            return r;
        }
        r.digits.push_back(static_cast<int>(dlo));
        x = ValueEnclosure{ylo - Rat(dlo), yhi - Rat(dlo), false};
    }
    return r;
}

// alpha(beta): the quasi-greedy expansion of 1.
inline DigitStreamResult alpha_digits(const Beta& b, std::size_t n) {
    DigitStreamResult r;
    if (b.defining) {
        r.digits = b.defining->prefix(n);
        return r;
    }
    if (b.exact()) {
        r.digits = quasi_greedy_digits(Rat(1), b.lo, n);
        return r;
    }
    return quasi_greedy_digits_enclosed(ValueEnclosure::point(1), b, n);
}

// Eventually periodic form of alpha(beta) when one is reachable: either the
// defining sequence itself or, for exact rational bases, detected by remainder
// recurrence within the step cap.
inline std::optional<PeriodicSeq> alpha_seq(const Beta& b, std::size_t cap = 4096) {
    if (b.defining) return *b.defining;
    if (!b.exact()) return std::nullopt;
    const Rat& beta = b.lo;
    std::map<Rat, std::size_t> seen;
    Rat x = 1;
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
        Int d = rat_ceil(x) - 1;
        digits.push_back(static_cast<int>(d));
        x -= Rat(d);
    }
    return std::nullopt;
}

// A stateful exact digit source for alpha(beta); serves any prefix length.
class AlphaStream {
  public:
    explicit AlphaStream(const Beta& b) : b_(b) {
        if (!b.defining && !b.exact())
            throw precision_error("alpha stream needs an exact or sequence-defined base");
        if (b.exact() && !b.defining) x_ = 1;
    }

    int digit(std::size_t i) {
        if (b_.defining) return b_.defining->digit(i);
        while (buf_.size() <= i) {
            x_ *= b_.lo;
            Int d = rat_ceil(x_) - 1;
            buf_.push_back(static_cast<int>(d));
            x_ -= Rat(d);
        }
        return buf_[i];
    }

  private:
    Beta b_;
    Rat x_;
    Word buf_;
};

// ---- admissibility against alpha(beta) -------------------------------------

enum class Verdict { yes, no, undecided };

// Checks sigma^n(z) < alpha(beta) (strict mode) or <= (weak mode) for all
// n below the horizon.  Symbolic when both sides are eventually periodic.
inline Verdict is_admissible(const PeriodicSeq& z, const Beta& b, bool strict,
                             std::size_t horizon) {
    auto a = alpha_seq(b);
    if (a) {
        std::size_t shifts = z.pre.size() + z.per.size();
        for (std::size_t n = 0; n < std::max<std::size_t>(shifts, 1); ++n) {
            int c = seq_compare(z.shifted(n), *a);
            if (c > 0 || (strict && c == 0)) return Verdict::no;
        }
        return Verdict::yes;
    }
    DigitStreamResult ad = alpha_digits(b, horizon);
    std::size_t usable = ad.undecided ? *ad.undecided : ad.digits.size();
    for (std::size_t n = 0; n < horizon; ++n) {
        bool decided = false;
        for (std::size_t i = 0; i < usable; ++i) {
            int x = z.digit(n + i), y = ad.digits[i];
            if (x != y) {
                if (x > y) return Verdict::no;
                decided = true;
                break;
            }
        }
        if (!decided && strict) return Verdict::undecided;
    }
    return ad.undecided ? Verdict::undecided : Verdict::yes;
}

// ---- conjugation maps ------------------------------------------------------

// Digit-shift conjugation: alpha^-1 (theta (alpha(beta))).
inline Beta phi_map(const Beta& b, const Rat& eps) {
    auto a = alpha_seq(b);
    if (!a) throw precision_error("phi_map: alpha(beta) is not eventually periodic at this input");
    PeriodicSeq up(theta(a->pre, 1), theta(a->per, 1));
    return alpha_inverse(up, eps);
}

}  // namespace bsurv
