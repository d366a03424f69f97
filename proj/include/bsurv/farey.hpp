#pragma once
// Farey word levels, the L/M/R desubstitution parser, and the membership
// predicates for the word families the interval machinery is indexed by.

#include <optional>
#include <string>
#include <vector>

#include "bsurv/errors.hpp"
#include "bsurv/word.hpp"

namespace bsurv {

inline constexpr int kFareyLevelCap = 24;

// Level n of the binary Farey tuple: level 0 is (0, 1) and each level inserts
// the concatenation of every adjacent pair.  Tuple size is 2^n + 1.
inline std::vector<Word> farey_level(int n, int cap = kFareyLevelCap) {
    if (n < 0) throw domain_error("farey_level: negative level");
    if (n > cap) throw resource_error("farey_level: level beyond cap " + std::to_string(cap));
    std::vector<Word> cur = {{0}, {1}};
    for (int lvl = 0; lvl < n; ++lvl) {
        std::vector<Word> next;
        next.reserve(cur.size() * 2 - 1);
        for (std::size_t i = 0; i + 1 < cur.size(); ++i) {
            next.push_back(cur[i]);
            Word mid = cur[i];
            mid.insert(mid.end(), cur[i + 1].begin(), cur[i + 1].end());
            next.push_back(std::move(mid));
        }
        next.push_back(cur.back());
        cur = std::move(next);
    }
    return cur;
}

namespace detail {

// Inverses of the three elementary substitutions
//   L: 0 -> 0, 1 -> 10     M: 0 -> 01, 1 -> 10     R: 0 -> 01, 1 -> 1
// Each block code is prefix-free, so the inverses are deterministic scans.
inline std::optional<Word> un_l(const Word& u) {
    Word out;
    for (std::size_t i = 0; i < u.size();) {
        if (u[i] == 1) {
            if (i + 1 >= u.size() || u[i + 1] != 0) return std::nullopt;
            out.push_back(1);
            i += 2;
        } else {
            out.push_back(0);
            ++i;
        }
    }
    return out;
}

inline std::optional<Word> un_m(const Word& u) {
    if (u.size() % 2) return std::nullopt;
    Word out;
    for (std::size_t i = 0; i < u.size(); i += 2) {
        if (u[i] == 0 && u[i + 1] == 1) out.push_back(0);
        else if (u[i] == 1 && u[i + 1] == 0) out.push_back(1);
        else return std::nullopt;
    }
    return out;
}

inline std::optional<Word> un_r(const Word& u) {
    Word out;
    for (std::size_t i = 0; i < u.size();) {
        if (u[i] == 0) {
            if (i + 1 >= u.size() || u[i + 1] != 1) return std::nullopt;
            out.push_back(0);
            i += 2;
        } else {
            out.push_back(1);
            ++i;
        }
    }
    return out;
}

inline bool lmr_search(const Word& u, std::string& acc) {
    if (u.size() == 1) {
        if (u[0] != 1) return false;
        return !acc.empty() && acc.back() == 'M';
    }
    for (char c : {'L', 'M', 'R'}) {
        std::optional<Word> prev;
        switch (c) {
            case 'L': prev = un_l(u); break;
            case 'M': prev = un_m(u); break;
            default: prev = un_r(u); break;
        }
        if (!prev || *prev == u) continue;
        acc.push_back(c);
        if (lmr_search(*prev, acc)) return true;
        acc.pop_back();
    }
    return false;
}

}  // namespace detail

// Forward application: the word sigma_c(phi(1)) for a letter string phi,
// where sigma_c cycles the first letter to the back.
inline Word lmr_apply(const std::string& phi) {
    Word w = {1};
    for (auto it = phi.rbegin(); it != phi.rend(); ++it) {
        Word out;
        for (int d : w) {
            switch (*it) {
                case 'L':
                    if (d == 0) out.push_back(0);
                    else { out.push_back(1); out.push_back(0); }
                    break;
                case 'M':
                    if (d == 0) { out.push_back(0); out.push_back(1); }
                    else { out.push_back(1); out.push_back(0); }
                    break;
                case 'R':
                    if (d == 0) { out.push_back(0); out.push_back(1); }
                    else out.push_back(1);
                    break;
                default: throw domain_error("lmr_apply: bad letter");
            }
        }
        w = std::move(out);
    }
    return rotate_left(w, 1);
}

// Greedy desubstitution of a binary word into a letter string ending in M.
// The string has one M per composition factor; plain Farey words yield
// exactly one M.  Returns nullopt when the word has no such factorization.
inline std::optional<std::string> lmr_decompose(const Word& w) {
    if (w.size() < 2) return std::nullopt;
    for (int d : w)
        if (d != 0 && d != 1) return std::nullopt;
    Word u = rotate_left(w, w.size() - 1);  // undo sigma_c
    std::string acc;
    if (!detail::lmr_search(u, acc)) return std::nullopt;
    return acc;
}

// Member of some Farey tuple (the single letters 0 and 1 included).
inline bool is_farey(const Word& w) {
    if (w.size() == 1) return w[0] == 0 || w[0] == 1;
    auto dec = lmr_decompose(w);
    return dec && std::count(dec->begin(), dec->end(), 'M') == 1;
}

// Composition of Farey words of length >= 2 (the binary index set of the
// derived intervals inside a fixed unit interval of bases).
inline bool is_lambda_word(const Word& w) { return lmr_decompose(w).has_value(); }

// Shifted Farey words: theta^k of a Farey word or of the single letter 1.
inline bool is_extended_farey(const Word& w) {
    if (w.empty()) return false;
    if (w.size() == 1) return w[0] >= 1;
    int m = min_digit(w);
    Word u = theta(w, -m);
    if (max_digit(u) != 1) return false;
    return is_farey(u);
}

}  // namespace bsurv
