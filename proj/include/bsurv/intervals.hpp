#pragma once
// Parameter intervals attached to a Lyndon word S and the classification of
// bases into them.
//
// Each admissible word S spawns three bases, the roots of
//     (L(S)^inf) = 1,   (L(S)^+ S^- L(S)^inf) = 1,   (L(S)^+ S^inf) = 1,
// giving the closed interval [left, star] on which the critical value has a
// closed form, and the half-open carrier (star, right] reached from a shorter
// base via the block substitution.  Carriers of distinct words are disjoint,
// so a base is located by walking the binary mediant tree: the mediant of two
// neighbours is their concatenation, and membership tests are exact sign
// comparisons against the endpoint roots.

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "bsurv/errors.hpp"
#include "bsurv/expansions.hpp"
#include "bsurv/farey.hpp"
#include "bsurv/rational.hpp"
#include "bsurv/substitution.hpp"
#include "bsurv/word.hpp"

namespace bsurv {

// ---- endpoint roots ---------------------------------------------------------

struct EndpointSeqs {
    PeriodicSeq left, star, right;
};

inline EndpointSeqs endpoint_seqs(const Word& s) {
    BlockAlphabet blocks(s);
    Word pre_star = blocks.ls_plus;
    pre_star.insert(pre_star.end(), blocks.s_minus.begin(), blocks.s_minus.end());
    return EndpointSeqs{
        PeriodicSeq({}, blocks.ls),
        PeriodicSeq(std::move(pre_star), blocks.ls),
        PeriodicSeq(blocks.ls_plus, s),
    };
}

struct IntervalTriple {
    Word word;
    Beta left, star, right;
};

inline IntervalTriple interval_triple(const Word& s, const Rat& eps) {
    EndpointSeqs es = endpoint_seqs(s);
    return IntervalTriple{s, alpha_inverse(es.left, eps), alpha_inverse(es.star, eps),
                          alpha_inverse(es.right, eps)};
}

// ---- conjugation onto a carrier ---------------------------------------------

// Image of bhat in (1,2] under the substitution attached to s; lands in
// (star, right].  Needs an eventually periodic alpha on the input.
inline Beta psi_map(const Word& s, const Beta& bhat, const Rat& eps) {
    if (bhat.lo > 2) throw domain_error("psi_map: input base must lie in (1,2]");
    auto a = alpha_seq(bhat);
    if (!a) throw precision_error("psi_map: alpha of the input is not eventually periodic");
    if (a->first() != 1) throw domain_error("psi_map: input base must lie in (1,2]");
    return alpha_inverse(phi_apply(s, *a), eps);
}

inline Beta psi_inverse(const Word& s, const Beta& b, const Rat& eps) {
    auto a = alpha_seq(b);
    if (!a) throw precision_error("psi_inverse: alpha of the input is not eventually periodic");
    return alpha_inverse(phi_parse(s, *a), eps);
}

// ---- classification ---------------------------------------------------------

enum class RegionKind {
    basic_interval,        // beta in [left(S), star(S)]: closed-form critical value
    right_edge,            // beta = right(S) exactly
    relative_exceptional,  // beta in (star(S), right(S)), no deeper factor within the cap
    exceptional,           // beta in no carrier at all within the cap
    renorm_limit,          // factor tower still descending when the depth cap hit
    undecided              // base enclosure too coarse to resolve a comparison
};

inline const char* region_name(RegionKind k) {
    switch (k) {
        case RegionKind::basic_interval: return "BasicInterval";
        case RegionKind::right_edge: return "RightEdge";
        case RegionKind::relative_exceptional: return "RelativeExceptional";
        case RegionKind::exceptional: return "ELocus";
        case RegionKind::renorm_limit: return "RenormalizableLimit";
        case RegionKind::undecided: return "Undecided";
    }
    return "?";
}

struct Classification {
    RegionKind kind = RegionKind::undecided;
    std::vector<Word> factors;  // bullet factors; first over the full alphabet, rest binary
    Word product;               // factors multiplied out (empty when factors is)
    std::size_t depth_used = 0;
    std::size_t cap = 0;
    // True when a finite search cannot certify the region (deeper carriers may
    // have been missed); basic_interval and right_edge are always certified.
    bool candidate = false;
};

namespace detail {

enum class DescendStatus { found, cap_out, undecided };

struct DescendOut {
    DescendStatus status;
    Word factor;  // binary, set when found
};

// Walks mediants between binary neighbours u < v until a carrier containing
// beta is found.  `lift` maps the binary factor to the word actually tested.
template <typename Lift>
DescendOut descend(const Beta& b, Lift&& lift, std::size_t cap) {
    Word u{0}, v{1};
    for (;;) {
        Word m = u;
        m.insert(m.end(), v.begin(), v.end());
        Word w = lift(m);
        if (w.size() > cap) return {DescendStatus::cap_out, {}};
        EndpointSeqs es = endpoint_seqs(w);
        auto cl = compare_beta_to_root(b, es.left);
        if (!cl) return {DescendStatus::undecided, {}};
        if (*cl < 0) {
            v = std::move(m);
            continue;
        }
        auto cr = compare_beta_to_root(b, es.right);
        if (!cr) return {DescendStatus::undecided, {}};
        if (*cr > 0) {
            u = std::move(m);
            continue;
        }
        return {DescendStatus::found, std::move(m)};
    }
}

}  // namespace detail

// Locates beta in the carrier tree: first the top-level word (single letter or
// a mediant descendant over the gap), then repeated factor extraction until
// beta falls into a closed-form interval or the caps run out.
inline Classification classify(const Beta& b, std::size_t depth, std::size_t cap) {
    Classification out;
    out.cap = cap;
    int k = b.base_index();

    auto undecided = [&] {
        out.kind = RegionKind::undecided;
        out.candidate = true;
        return out;
    };

    // beta = k+1 is the left end of the single-letter interval of k.
    auto ctop = compare_beta_to_root(b, PeriodicSeq({}, Word{k}));
    if (!ctop) return undecided();

    Word s;
    if (*ctop == 0) {
        s = Word{k};
        out.factors.push_back(s);
    } else if (k >= 2) {
        // (k, k+1) opens inside the carrier of {k-1}; check its right root.
        EndpointSeqs prev = endpoint_seqs(Word{k - 1});
        auto cr = compare_beta_to_root(b, prev.right);
        if (!cr) return undecided();
        if (*cr <= 0) {
            s = Word{k - 1};
            out.factors.push_back(s);
        }
    }

    if (s.empty()) {
        auto top = detail::descend(
            b, [&](const Word& m) { return theta(m, k - 1); }, cap);
        if (top.status == detail::DescendStatus::undecided) return undecided();
        if (top.status == detail::DescendStatus::cap_out) {
            out.kind = RegionKind::exceptional;
            out.candidate = true;
            return out;
        }
        s = theta(top.factor, k - 1);
        out.factors.push_back(s);
    }

    for (std::size_t level = 0; level < depth; ++level) {
        out.depth_used = level + 1;
        out.product = s;
        EndpointSeqs es = endpoint_seqs(s);
        auto cstar = compare_beta_to_root(b, es.star);
        if (!cstar) return undecided();
        if (*cstar <= 0) {
            out.kind = RegionKind::basic_interval;
            return out;
        }
        auto cright = compare_beta_to_root(b, es.right);
        if (!cright) return undecided();
        if (*cright == 0) {
            out.kind = RegionKind::right_edge;
            return out;
        }
        auto nxt = detail::descend(
            b, [&](const Word& m) { return bullet(s, m); }, cap);
        if (nxt.status == detail::DescendStatus::undecided) return undecided();
        if (nxt.status == detail::DescendStatus::cap_out) {
            out.kind = RegionKind::relative_exceptional;
            out.candidate = true;
            return out;
        }
        out.factors.push_back(nxt.factor);
        s = bullet(s, nxt.factor);
    }
    out.product = s;
    out.kind = RegionKind::renorm_limit;
    out.candidate = true;
    return out;
}

}  // namespace bsurv
