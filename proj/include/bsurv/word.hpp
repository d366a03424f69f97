#pragma once
// Finite digit words and eventually periodic digit sequences, together with
// the lexicographic machinery everything else is built on.

#include <algorithm>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "bsurv/errors.hpp"

namespace bsurv {

using Word = std::vector<int>;

inline int max_digit(const Word& w) {
    int m = 0;
    for (int d : w) m = std::max(m, d);
    return m;
}

inline int min_digit(const Word& w) {
    int m = w.empty() ? 0 : w.front();
    for (int d : w) m = std::min(m, d);
    return m;
}

// w^+: increment the last digit.
inline Word word_plus(Word w) {
    if (w.empty()) throw domain_error("word_plus on empty word");
    ++w.back();
    return w;
}

// w^-: decrement the last digit; defined only when it is positive.
inline Word word_minus(Word w) {
    if (w.empty()) throw domain_error("word_minus on empty word");
    if (w.back() == 0) throw domain_error("word_minus: last digit is 0");
    --w.back();
    return w;
}

// Digit-wise shift by k; digits must stay nonnegative.
inline Word theta(Word w, int k = 1) {
    for (int& d : w) {
        d += k;
        if (d < 0) throw domain_error("theta: negative digit");
    }
    return w;
}

inline Word rotate_left(Word w, std::size_t n) {
    if (w.empty()) return w;
    n %= w.size();
    std::rotate(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(n), w.end());
    return w;
}

// Lexicographically largest cyclic permutation.
inline Word largest_cyclic(const Word& w) {
    if (w.empty()) throw domain_error("largest_cyclic on empty word");
    Word best = w;
    for (std::size_t i = 1; i < w.size(); ++i) best = std::max(best, rotate_left(w, i));
    return best;
}

inline Word smallest_cyclic(const Word& w) {
    if (w.empty()) throw domain_error("smallest_cyclic on empty word");
    Word best = w;
    for (std::size_t i = 1; i < w.size(); ++i) best = std::min(best, rotate_left(w, i));
    return best;
}

// Lyndon: strictly smaller than every proper cyclic rotation (hence aperiodic).
inline bool is_lyndon(const Word& w) {
    if (w.empty()) return false;
    for (std::size_t i = 1; i < w.size(); ++i)
        if (!(w < rotate_left(w, i))) return false;
    return true;
}

inline bool is_palindrome(const Word& w) {
    return std::equal(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(w.size() / 2), w.rbegin());
}

inline Word reversed(Word w) {
    std::reverse(w.begin(), w.end());
    return w;
}

// Digit words print as plain digit strings while every digit is at most 9,
// and comma-separated otherwise.
inline std::string word_string(const Word& w) {
    if (max_digit(w) <= 9) {
        std::string s;
        for (int d : w) s += static_cast<char>('0' + d);
        return s;
    }
    std::string s;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(w[i]);
    }
    return s;
}

inline Word parse_word(const std::string& s) {
    Word w;
    if (s.find(',') != std::string::npos) {
        std::size_t i = 0;
        while (i < s.size()) {
            std::size_t j = s.find(',', i);
            if (j == std::string::npos) j = s.size();
            w.push_back(std::stoi(s.substr(i, j - i)));
            i = j + 1;
        }
    } else {
        for (char c : s) {
            if (c < '0' || c > '9') throw domain_error("bad digit '" + std::string(1, c) + "' in word");
            w.push_back(c - '0');
        }
    }
    for (int d : w)
        if (d < 0) throw domain_error("negative digit in word");
    return w;
}

// An eventually periodic one-sided digit sequence  pre per per per ...
// Canonical form: the period is primitive and the preperiod is minimal, so
// equal sequences compare equal structurally.  A sequence ending in 0^inf
// canonicalizes to period {0} with a preperiod free of trailing zeros.
struct PeriodicSeq {
    Word pre, per;

    PeriodicSeq() : per{0} {}
    PeriodicSeq(Word pre_, Word per_) : pre(std::move(pre_)), per(std::move(per_)) {
        if (per.empty()) throw domain_error("empty period");
        canonicalize();
    }

    static PeriodicSeq periodic(Word p) { return PeriodicSeq({}, std::move(p)); }
    // w followed by 0^inf
    static PeriodicSeq padded(Word w) { return PeriodicSeq(std::move(w), {0}); }

    int digit(std::size_t i) const {
        if (i < pre.size()) return pre[i];
        return per[(i - pre.size()) % per.size()];
    }

    bool ends_zero() const { return per.size() == 1 && per[0] == 0; }
    bool is_zero() const { return pre.empty() && ends_zero(); }

    int first() const { return digit(0); }

    int max_dig() const { return std::max(max_digit(pre), max_digit(per)); }

    Word prefix(std::size_t n) const {
        Word w(n);
        for (std::size_t i = 0; i < n; ++i) w[i] = digit(i);
        return w;
    }

    PeriodicSeq shifted(std::size_t n) const {
        PeriodicSeq s = *this;
        if (n <= s.pre.size()) {
            s.pre.erase(s.pre.begin(), s.pre.begin() + static_cast<std::ptrdiff_t>(n));
        } else {
            std::size_t k = (n - s.pre.size()) % s.per.size();
            s.pre.clear();
            s.per = rotate_left(s.per, k);
        }
        s.canonicalize();
        return s;
    }

    bool operator==(const PeriodicSeq& o) const { return pre == o.pre && per == o.per; }

    void canonicalize() {
        // primitive period
        for (std::size_t d = 1; d <= per.size() / 2; ++d) {
            if (per.size() % d) continue;
            bool rep = true;
            for (std::size_t i = d; i < per.size() && rep; ++i) rep = per[i] == per[i - d];
            if (rep) {
                per.resize(d);
                break;
            }
        }
        // minimal preperiod
        while (!pre.empty() && pre.back() == per.back()) {
            std::rotate(per.begin(), per.end() - 1, per.end());
            pre.pop_back();
        }
    }
};

// Three-way lexicographic comparison; sequences agreeing through the shared
// preperiods plus one period cycle are equal.
inline int seq_compare(const PeriodicSeq& a, const PeriodicSeq& b) {
    std::size_t lcm = std::lcm(a.per.size(), b.per.size());
    std::size_t horizon = std::max(a.pre.size(), b.pre.size()) + lcm;
    for (std::size_t i = 0; i < horizon; ++i) {
        int x = a.digit(i), y = b.digit(i);
        if (x != y) return x < y ? -1 : 1;
    }
    return 0;
}

inline bool seq_less(const PeriodicSeq& a, const PeriodicSeq& b) { return seq_compare(a, b) < 0; }
inline bool seq_leq(const PeriodicSeq& a, const PeriodicSeq& b) { return seq_compare(a, b) <= 0; }

// Word-versus-sequence comparison.  By default the word is implicitly padded
// with 0^inf; prefix mode compares only the word's own digits.
inline int word_seq_compare(const Word& w, const PeriodicSeq& s, bool prefix_only = false) {
    for (std::size_t i = 0; i < w.size(); ++i) {
        int x = w[i], y = s.digit(i);
        if (x != y) return x < y ? -1 : 1;
    }
    if (prefix_only) return 0;
    return seq_compare(PeriodicSeq::padded(w), s);
}

inline std::string seq_string(const PeriodicSeq& s) {
    return word_string(s.pre) + ":" + word_string(s.per);
}

// Text form "pre:per", e.g. "2:10" for 2(10)^inf and ":1" for 1^inf.
inline PeriodicSeq parse_seq(const std::string& text) {
    auto colon = text.find(':');
    if (colon == std::string::npos) throw domain_error("sequence literal needs ':' separator");
    Word pre = parse_word(text.substr(0, colon));
    Word per = parse_word(text.substr(colon + 1));
    if (per.empty()) throw domain_error("sequence literal has empty period");
    return PeriodicSeq(std::move(pre), std::move(per));
}

}  // namespace bsurv
