#pragma once
// The block substitution built from a Lyndon word s.  A binary sequence is
// transcribed block by block: a digit maps to one of the four blocks
// s, s^-, L(s), L(s)^+ depending on the digit and its predecessor.  The map
// is injective and the parser inverts it with one block of lookahead.

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "bsurv/errors.hpp"
#include "bsurv/farey.hpp"
#include "bsurv/word.hpp"

namespace bsurv {

struct BlockAlphabet {
    Word s, s_minus, ls, ls_plus;

    explicit BlockAlphabet(const Word& w) : s(w) {
        if (!is_lyndon(w) || w == Word{0})
            throw domain_error("substitution base must be a Lyndon word other than 0");
        s_minus = word_minus(s);
        ls = largest_cyclic(s);
        ls_plus = word_plus(ls);
    }

    // Block emitted for digit `cur` when the previous digit was `prev`
    // (prev < 0 at the start of the sequence).
    const Word& block(int cur, int prev) const {
        if (cur == 1) return prev == 1 ? s : ls_plus;
        return (prev == 0) ? ls : s_minus;
    }
};

// Image of a finite binary word.
inline Word phi_apply(const Word& s, const Word& r) {
    BlockAlphabet blocks(s);
    Word out;
    out.reserve(r.size() * s.size());
    int prev = -1;
    for (int d : r) {
        if (d != 0 && d != 1) throw domain_error("substitution input must be binary");
        const Word& b = blocks.block(d, prev);
        out.insert(out.end(), b.begin(), b.end());
        prev = d;
    }
    return out;
}

// Image of an eventually periodic binary sequence.  The block at position i
// depends on the digit pair at (i-1, i), so unrolling one extra digit into
// the preperiod makes the output literally (pre', per'-periodic).
inline PeriodicSeq phi_apply(const Word& s, const PeriodicSeq& r) {
    BlockAlphabet blocks(s);
    std::size_t p = r.pre.size(), q = r.per.size();
    Word pre, per;
    int prev = -1;
    for (std::size_t i = 0; i <= p; ++i) {
        int d = r.digit(i);
        if (d != 0 && d != 1) throw domain_error("substitution input must be binary");
        const Word& b = blocks.block(d, prev);
        pre.insert(pre.end(), b.begin(), b.end());
        prev = d;
    }
    for (std::size_t i = p + 1; i <= p + q; ++i) {
        int d = r.digit(i);
        if (d != 0 && d != 1) throw domain_error("substitution input must be binary");
        const Word& b = blocks.block(d, prev);
        per.insert(per.end(), b.begin(), b.end());
        prev = d;
    }
    return PeriodicSeq(std::move(pre), std::move(per));
}

// s . r for words: the composition product on Lyndon words.
inline Word bullet(const Word& s, const Word& r) {
    if (r.size() < 2 || max_digit(r) > 1 || !is_lyndon(r))
        throw domain_error("bullet: right factor must be a binary Lyndon word of length >= 2");
    return phi_apply(s, r);
}

namespace detail {

inline bool match_block(const Word& b, const std::function<int(std::size_t)>& digit, std::size_t at) {
    for (std::size_t i = 0; i < b.size(); ++i)
        if (digit(at + i) != b[i]) return false;
    return true;
}

}  // namespace detail

// Inverse transcription of a digit stream.  `digit` serves the input on
// demand; `want` preimage digits are produced (throws parse_error when no
// block continuation matches).
inline Word phi_parse_stream(const Word& s, const std::function<int(std::size_t)>& digit,
                             std::size_t want) {
    BlockAlphabet blocks(s);
    Word out;
    out.reserve(want);
    std::size_t at = 0;
    int prev = -1;
    while (out.size() < want) {
        const Word& b0 = blocks.block(0, prev);
        const Word& b1 = blocks.block(1, prev);
        if (detail::match_block(b0, digit, at)) out.push_back(0);
        else if (detail::match_block(b1, digit, at)) out.push_back(1);
        else throw parse_error("no substitution block matches", at);
        prev = out.back();
        at += s.size();
    }
    return out;
}

inline Word phi_parse(const Word& s, const Word& x) {
    if (x.size() % s.size())
        throw parse_error("input length is not a multiple of the block length", x.size());
    auto digit = [&x](std::size_t i) { return i < x.size() ? x[i] : -1; };
    return phi_parse_stream(s, digit, x.size() / s.size());
}

// Inverse transcription of an eventually periodic sequence.  The parser
// state (input offset class, previous preimage digit) lives in a finite set,
// so the preimage is again eventually periodic.
inline PeriodicSeq phi_parse(const Word& s, const PeriodicSeq& x) {
    std::size_t p = x.pre.size(), q = x.per.size();
    auto cls = [&](std::size_t o) { return o < p + q ? o : p + (o - p) % q; };
    BlockAlphabet blocks(s);
    Word out;
    std::map<std::pair<std::size_t, int>, std::size_t> seen;
    std::size_t at = 0;
    int prev = -1;
    for (;;) {
        auto key = std::make_pair(cls(at), prev);
        auto it = seen.find(key);
        if (it != seen.end()) {
            Word pre(out.begin(), out.begin() + static_cast<std::ptrdiff_t>(it->second));
            Word per(out.begin() + static_cast<std::ptrdiff_t>(it->second), out.end());
            return PeriodicSeq(std::move(pre), std::move(per));
        }
        seen.emplace(key, out.size());
        auto digit = [&x](std::size_t i) { return x.digit(i); };
        const Word& b0 = blocks.block(0, prev);
        const Word& b1 = blocks.block(1, prev);
        if (detail::match_block(b0, digit, at)) out.push_back(0);
        else if (detail::match_block(b1, digit, at)) out.push_back(1);
        else throw parse_error("no substitution block matches", at);
        prev = out.back();
        at += s.size();
    }
}

// All composition products of Farey-family words up to the given length and
// digit bound: the index set of derived base intervals.  Sorted and unique.
inline std::vector<Word> lambda_enumerate(std::size_t max_len = 64, int max_dig = 9) {
    if (max_len > 4096) throw resource_error("lambda_enumerate: length cap too large");
    // binary Farey words of length >= 2 up to max_len
    std::vector<Word> farey;
    {
        std::vector<Word> cur = {{0}, {1}};
        for (;;) {
            bool grew = false;
            std::vector<Word> next;
            next.reserve(cur.size() * 2 - 1);
            for (std::size_t i = 0; i + 1 < cur.size(); ++i) {
                next.push_back(cur[i]);
                if (cur[i].size() + cur[i + 1].size() <= max_len) {
                    Word mid = cur[i];
                    mid.insert(mid.end(), cur[i + 1].begin(), cur[i + 1].end());
                    farey.push_back(mid);
                    next.push_back(std::move(mid));
                    grew = true;
                }
            }
            next.push_back(cur.back());
            cur = std::move(next);
            if (!grew) break;
        }
    }
    std::set<Word> out;
    // theta-shifted generators: Farey words and the single letters
    for (int k = 1; k <= max_dig; ++k) out.insert(Word{k});
    for (const Word& f : farey)
        for (int k = 0; max_digit(f) + k <= max_dig; ++k) out.insert(theta(f, k));
    // close under right composition with binary Farey words
    std::vector<Word> queue(out.begin(), out.end());
    while (!queue.empty()) {
        Word s = std::move(queue.back());
        queue.pop_back();
        for (const Word& r : farey) {
            if (s.size() * r.size() > max_len) continue;
            Word prod = phi_apply(s, r);
            if (max_digit(prod) > max_dig) continue;
            if (out.insert(prod).second) queue.push_back(prod);
        }
    }
    return {out.begin(), out.end()};
}

// theta^k of a composition of Farey words, k chosen so digits reach 0: the
// full index set of base intervals.  Single letters >= 1 qualify through
// the letter 1.
inline bool is_lambda_e(const Word& w) {
    if (w.empty()) return false;
    if (w.size() == 1) return w[0] >= 1;
    int m = min_digit(w);
    Word u = theta(w, -m);
    int top = max_digit(u);
    if (top == 1) return is_lambda_word(u);
    if (top == 2) {
        try {
            Word r = phi_parse(Word{1}, u);
            return is_lambda_word(r);
        } catch (const parse_error&) {
            return false;
        }
    }
    return false;
}

}  // namespace bsurv
