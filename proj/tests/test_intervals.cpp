#include <catch2/catch_amalgamated.hpp>

#include "bsurv/intervals.hpp"

using namespace bsurv;

namespace {
const Rat kEps = Rat(1, Int(1) << 48);

bool contains_decimal(const Beta& b, const char* lo, const char* hi) {
    return b.lo > parse_rational(lo) && b.hi < parse_rational(hi);
}
}  // namespace

TEST_CASE("endpoint sequences") {
    EndpointSeqs e = endpoint_seqs(parse_word("01"));
    CHECK(e.left == PeriodicSeq({}, {1, 0}));
    CHECK(e.star == PeriodicSeq({1, 1, 0, 0}, {1, 0}));
    CHECK(e.right == PeriodicSeq({1}, {1, 0}));

    EndpointSeqs k1 = endpoint_seqs(parse_word("1"));
    CHECK(k1.left == PeriodicSeq({}, {1}));
    CHECK(k1.star == PeriodicSeq({2, 0}, {1}));
    CHECK(k1.right == PeriodicSeq({2}, {1}));

    for (auto s : {parse_word("01"), parse_word("011"), parse_word("1"), parse_word("12"),
                   parse_word("0010101")}) {
        EndpointSeqs es = endpoint_seqs(s);
        CHECK(is_alpha_admissible(es.left));
        CHECK(is_alpha_admissible(es.star));
        CHECK(is_alpha_admissible(es.right));
        CHECK(seq_less(es.left, es.star));
        CHECK(seq_less(es.star, es.right));
    }
}

TEST_CASE("single-letter roots") {
    for (int k = 1; k <= 4; ++k) {
        IntervalTriple t = interval_triple(Word{k}, kEps);
        CHECK(t.left.exact());
        CHECK(t.left.lo == k + 1);
        // right root solves x^2 - (k+2)x + 1 = 0
        auto quad = [&](const Rat& x) { return x * x - (k + 2) * x + 1; };
        CHECK(quad(t.right.lo) < 0);
        CHECK(quad(t.right.hi) > 0);
        // star root solves x^3 - (k+2)x^2 + 2x - 1 = 0
        auto cubic = [&](const Rat& x) { return x * x * x - (k + 2) * x * x + 2 * x - 1; };
        CHECK(cubic(t.star.lo) < 0);
        CHECK(cubic(t.star.hi) > 0);
        if (k >= 2) {
            CHECK(t.star.lo > Rat(k + 2) - Rat(2, k + 2));
            CHECK(t.star.hi < k + 2);
        }
        CHECK(t.left.lo < t.star.lo);
        CHECK(t.star.hi < t.right.hi);
    }
}

TEST_CASE("binary word roots") {
    IntervalTriple t = interval_triple(parse_word("01"), kEps);
    CHECK(contains_decimal(t.left, "1.6180339887", "1.6180339888"));
    // star of 01 solves x^5 - x^4 - 2x^3 + x^2 + x - 1 = 0
    auto quintic = [](const Rat& x) {
        return ((((x - 1) * x - 2) * x + 1) * x + 1) * x - 1;
    };
    CHECK(quintic(t.star.lo) < 0);
    CHECK(quintic(t.star.hi) > 0);
    CHECK(contains_decimal(t.star, "1.73", "1.74"));
    CHECK(contains_decimal(t.right, "1.8019", "1.8020"));

    // golden-ratio square sits at the right root of the word 1
    IntervalTriple u = interval_triple(parse_word("1"), kEps);
    CHECK(contains_decimal(u.right, "2.6180339887", "2.6180339888"));
}

TEST_CASE("conjugation transports endpoints") {
    std::vector<Word> ss = {parse_word("01"), parse_word("1"), parse_word("011"),
                            parse_word("12")};
    std::vector<Word> rs = {parse_word("01"), parse_word("011"), parse_word("001")};
    for (const auto& s : ss) {
        for (const auto& r : rs) {
            Word sr = bullet(s, r);
            EndpointSeqs inner = endpoint_seqs(r), outer = endpoint_seqs(sr);
            CHECK(phi_apply(s, inner.left) == outer.left);
            CHECK(phi_apply(s, inner.star) == outer.star);
            CHECK(phi_apply(s, inner.right) == outer.right);
        }
    }
}

TEST_CASE("conjugation of bases") {
    // the right root of s is the image of 2
    Beta img = psi_map(parse_word("01"), beta_from_rational(Rat(2)), kEps);
    REQUIRE(img.defining);
    CHECK(*img.defining == endpoint_seqs(parse_word("01")).right);

    Beta golden = alpha_inverse(PeriodicSeq({}, {1, 0}), kEps);
    Beta moved = psi_map(parse_word("01"), golden, kEps);
    Beta back = psi_inverse(parse_word("01"), moved, kEps);
    REQUIRE(back.defining);
    CHECK(*back.defining == PeriodicSeq({}, {1, 0}));

    CHECK_THROWS_AS(psi_map(parse_word("01"), beta_from_rational(Rat(5, 2)), kEps), domain_error);
}

TEST_CASE("classification landmarks") {
    auto c2 = classify(beta_from_rational(Rat(2)), 8, 40);
    CHECK(c2.kind == RegionKind::basic_interval);
    CHECK(c2.product == Word{1});
    CHECK_FALSE(c2.candidate);

    auto c4 = classify(beta_from_rational(Rat(4)), 8, 40);
    CHECK(c4.kind == RegionKind::basic_interval);
    CHECK(c4.product == Word{3});

    // 9/4 lies before the star root of the word 1
    auto c94 = classify(beta_from_rational(Rat(9, 4)), 8, 40);
    CHECK(c94.kind == RegionKind::basic_interval);
    CHECK(c94.product == Word{1});

    // 7/2 lies inside the closed-form interval of the word 2
    auto c72 = classify(beta_from_rational(Rat(7, 2)), 8, 40);
    CHECK(c72.kind == RegionKind::basic_interval);
    CHECK(c72.product == Word{2});

    // the left root of a word classifies into its own interval
    Beta golden = alpha_inverse(PeriodicSeq({}, {1, 0}), kEps);
    auto cg = classify(golden, 8, 40);
    CHECK(cg.kind == RegionKind::basic_interval);
    CHECK(cg.product == parse_word("01"));

    // right roots are recognized exactly
    Beta br = alpha_inverse(PeriodicSeq({2}, {1}), kEps);
    auto cr = classify(br, 8, 40);
    CHECK(cr.kind == RegionKind::right_edge);
    CHECK(cr.product == Word{1});
    CHECK_FALSE(cr.candidate);

    // a two-level tower: the left root of 01*01
    Beta deep = alpha_inverse(PeriodicSeq({}, {1, 1, 0, 0}), kEps);
    auto cd = classify(deep, 8, 40);
    CHECK(cd.kind == RegionKind::basic_interval);
    CHECK(cd.product == parse_word("0011"));
    REQUIRE(cd.factors.size() == 2);
    CHECK(cd.factors[0] == parse_word("01"));
    CHECK(cd.factors[1] == parse_word("01"));
}

TEST_CASE("classification is internally consistent") {
    for (int i = 0; i < 60; ++i) {
        Rat beta = Rat(11, 10) + Rat(i * 5, 100);  // 1.1 .. 4.05
        Beta b = beta_from_rational(beta);
        auto c = classify(b, 8, 40);
        INFO("beta = " << rat_string(beta));
        REQUIRE(c.kind != RegionKind::undecided);
        if (c.factors.empty()) {
            CHECK(c.kind == RegionKind::exceptional);
            continue;
        }
        CHECK(is_extended_farey(c.factors[0]));
        Word prod = c.factors[0];
        for (std::size_t j = 1; j < c.factors.size(); ++j) {
            CHECK(is_farey(c.factors[j]));
            CHECK(c.factors[j].size() >= 2);
            prod = bullet(prod, c.factors[j]);
            // beta stays inside the carrier of every tower prefix
        }
        CHECK(prod == c.product);
        EndpointSeqs es = endpoint_seqs(c.product);
        auto cl = compare_beta_to_root(b, es.left);
        auto cs = compare_beta_to_root(b, es.star);
        auto cr = compare_beta_to_root(b, es.right);
        REQUIRE((cl && cs && cr));
        switch (c.kind) {
            case RegionKind::basic_interval:
                CHECK(*cl >= 0);
                CHECK(*cs <= 0);
                break;
            case RegionKind::right_edge: CHECK(*cr == 0); break;
            case RegionKind::relative_exceptional:
            case RegionKind::renorm_limit:
                CHECK(*cs > 0);
                CHECK(*cr < 0);
                break;
            default: FAIL("unexpected kind"); break;
        }
    }
}

TEST_CASE("carriers of distinct words are disjoint") {
    // sample words from different levels; compare carrier intervals pairwise
    std::vector<Word> words = {parse_word("1"),   parse_word("2"),    parse_word("01"),
                               parse_word("011"), parse_word("001"),  parse_word("12"),
                               parse_word("02"),  parse_word("0011"), parse_word("0111")};
    std::vector<IntervalTriple> ts;
    for (auto& w : words) ts.push_back(interval_triple(w, kEps));
    // 0011 = 01*01 and 02 = 1*01 nest inside 01 and 1 respectively
    auto nested = [](const Word& outer, const Word& inner) {
        return (outer == parse_word("01") && inner == parse_word("0011")) ||
               (outer == parse_word("1") && inner == parse_word("02"));
    };
    for (std::size_t i = 0; i < ts.size(); ++i) {
        for (std::size_t j = i + 1; j < ts.size(); ++j) {
            INFO(word_string(words[i]) << " vs " << word_string(words[j]));
            if (nested(words[i], words[j]) || nested(words[j], words[i])) {
                std::size_t o = nested(words[i], words[j]) ? i : j;
                std::size_t n = o == i ? j : i;
                CHECK(ts[o].star.hi <= ts[n].left.lo);
                CHECK(ts[n].right.hi <= ts[o].right.hi + kEps * 4);
                continue;
            }
            bool disjoint =
                ts[i].right.hi <= ts[j].left.lo || ts[j].right.hi <= ts[i].left.lo;
            CHECK(disjoint);
        }
    }
}

TEST_CASE("coarse enclosures refuse to guess") {
    Beta wide{parse_rational("1.617"), parse_rational("1.619"), std::nullopt};
    auto c = classify(wide, 8, 40);
    CHECK(c.kind == RegionKind::undecided);
}
