#include <gtest/gtest.h>

#include <aufusion/normality.hpp>
#include <aufusion/serialize.hpp>

using namespace aufusion;

namespace
{
Word w(const char *s)
{
    return parse_word(s);
}

AdConfig ad_config(std::size_t work_len, std::size_t report_len, std::size_t ad_len, std::size_t seed_len)
{
    AdConfig c;
    c.closure.work_len = work_len;
    c.closure.report_len = report_len;
    c.ad_len = ad_len;
    c.seed_len = seed_len;
    return c;
}

bool has_candidate(const std::vector<AdCandidate> &cs, const Word &conj, const Word &result)
{
    return std::any_of(cs.begin(), cs.end(),
                       [&](const AdCandidate &c) { return c.conjugator == conj && c.result == result; });
}

const std::vector<Word> pair_gens{parse_word("01"), parse_word("10")};
} // namespace

TEST(Ambient, Kinds)
{
    EXPECT_TRUE(Ambient::full().contains(w("001")));
    EXPECT_FALSE(Ambient::projective().contains(w("001")));
    EXPECT_TRUE(Ambient::projective().contains(w("0011")));
    ClosureConfig c;
    const auto gen = Ambient::generated(pair_gens, c);
    EXPECT_TRUE(gen.contains(w("100110")));
    EXPECT_FALSE(gen.contains(w("0011")));
    EXPECT_EQ(gen.descriptor(), "gen:01,10");
    EXPECT_EQ(Ambient::projective().simples_up_to(4), enumerate_words(WordFilter::balanced, 4));
}

TEST(AdCandidates, Examples)
{
    EXPECT_TRUE(has_candidate(ad_candidates(w("01"), Ambient::full(), 2), w("10"), w("100110")));
    EXPECT_TRUE(has_candidate(ad_candidates(w("01"), Ambient::full(), 1), w("0"), w("0011")));
    // y y* always has at least the k = 0 and k = |y| terms
    EXPECT_TRUE(ad_candidates(Word{}, Ambient::full(), 4).empty());
    EXPECT_TRUE(ad_candidates(Word{}, Ambient::projective(), 6).empty());
}

TEST(AdCandidates, SoundOnRecomputation)
{
    for (const auto &x : enumerate_words(WordFilter::all, 4)) {
        for (const auto &c : ad_candidates(x, Ambient::full(), 4)) {
            const Element ex(x), ey(c.conjugator), ed(involute(c.conjugator));
            const auto triple = c.side == AdSide::left ? mul_many({ey, ex, ed}) : mul_many({ed, ex, ey});
            EXPECT_EQ(triple, Element(c.result));
        }
    }
}

TEST(AdCandidates, CompleteAgainstMulMany)
{
    // every conjugation that is a single simple gets reported
    const auto x = w("0110");
    const auto cs = ad_candidates(x, Ambient::full(), 3);
    for (const auto &y : enumerate_words(WordFilter::all, 3)) {
        if (y.empty()) {
            continue;
        }
        const auto left = mul_many({Element(y), Element(x), Element(involute(y))});
        if (left.size() == 1 && left.begin()->second == 1) {
            EXPECT_TRUE(has_candidate(cs, y, left.begin()->first)) << y;
        }
    }
}

TEST(AdClosure, LemmaSteps)
{
    const auto r = ad_closure({w("01")}, Ambient::full(), ad_config(12, 6, 8, 6));
    EXPECT_TRUE(r.contains(w("100110")));
    EXPECT_TRUE(r.contains(w("10")));
    EXPECT_TRUE(r.uses_adjoint_steps());
    // "10" is a summand of 100110 * 100110
    EXPECT_EQ(mul_simple(w("100110"), w("100110")).multiplicity(w("10")), 1u);
}

TEST(AdClosure, EmptySeeds)
{
    const auto r = ad_closure({}, Ambient::projective(), ad_config(10, 4, 6, 4));
    EXPECT_EQ(r.members(), std::vector<Word>{Word{}});
}

TEST(AdClosure, RejectsNonAmbientSeed)
{
    EXPECT_THROW(ad_closure({w("001")}, Ambient::projective(), ad_config(10, 4, 6, 4)), std::invalid_argument);
    EXPECT_THROW(ad_closure({w("0011")}, Ambient::generated(pair_gens, {}), ad_config(12, 6, 8, 6)),
                 std::invalid_argument);
    EXPECT_THROW(ad_closure({w("01")}, Ambient::projective(), ad_config(10, 4, 12, 4)), std::invalid_argument);
}

TEST(AdClosure, SmallTheoremInstance)
{
    const auto r = ad_closure({w("0011")}, Ambient::projective(), ad_config(10, 4, 6, 4));
    for (const auto &t : enumerate_words(WordFilter::balanced, 4)) {
        EXPECT_TRUE(r.contains(t)) << t;
    }
}

TEST(AdClosure, AmbientConfinedAndCertified)
{
    const auto gen = Ambient::generated(pair_gens, ClosureConfig{});
    for (const auto &ambient : {Ambient::projective(), gen}) {
        const auto r = ad_closure({w("0110")}, ambient, ad_config(12, 6, 8, 6));
        for (const auto &m : r.members()) {
            ASSERT_TRUE(ambient.contains(m)) << m;
            const auto cert = witness(r, m);
            ASSERT_TRUE(cert);
            const auto v = verify_certificate(*cert, r.generators());
            ASSERT_TRUE(v) << m << ": " << v.diagnostic;
        }
    }
}

TEST(AdClosure, MonotoneInBounds)
{
    const auto base = ad_closure({w("01")}, Ambient::projective(), ad_config(8, 4, 4, 4));
    for (const auto &cfg : {ad_config(10, 4, 4, 4), ad_config(8, 4, 6, 4)}) {
        const auto bigger = ad_closure({w("01")}, Ambient::projective(), cfg);
        EXPECT_TRUE(std::includes(bigger.members().begin(), bigger.members().end(), base.members().begin(),
                                  base.members().end()));
    }
    const auto more_seeds = ad_closure({w("01"), w("0011")}, Ambient::projective(), ad_config(8, 4, 4, 4));
    EXPECT_TRUE(std::includes(more_seeds.members().begin(), more_seeds.members().end(), base.members().begin(),
                              base.members().end()));
}

// The proof's milestones, seeded by every nontrivial balanced word of length
// <= 6: first 01 and 10, then the two-block words, then everything up to the
// report length. Retaining words of length 2 * report + 2 leaves room for the
// conjugation 0^n 1^n . 10 . 0^n 1^n.
TEST(AdClosure, ProofMilestonesInProjectiveQuotient)
{
    const auto config = ad_config(10, 4, 6, 6);
    const auto targets = enumerate_words(WordFilter::balanced, 4);
    for (const auto &seed : enumerate_words(WordFilter::balanced, 6)) {
        if (seed.empty()) {
            continue;
        }
        const auto r = ad_closure({seed}, Ambient::projective(), config);
        EXPECT_TRUE(r.contains(w("01")) && r.contains(w("10"))) << seed;
        EXPECT_TRUE(r.contains(w("0011")) && r.contains(w("1100"))) << seed;
        for (const auto &t : targets) {
            EXPECT_TRUE(r.contains(t)) << seed << " misses " << t;
        }
    }
}

TEST(AdClosure, DeterministicAcrossThreadCounts)
{
    const auto one = ad_closure({w("0")}, Ambient::full(), ad_config(8, 4, 4, 4), {1});
    const auto four = ad_closure({w("0")}, Ambient::full(), ad_config(8, 4, 4, 4), {4});
    EXPECT_EQ(closure_to_json(one).dump(), closure_to_json(four).dump());
    EXPECT_EQ(one.discovery_order(), four.discovery_order());
}

TEST(Simplicity, SmallProjectiveAndGenerated)
{
    const auto config = ad_config(10, 4, 6, 4);
    const auto pu = check_simplicity(Ambient::projective(), config);
    EXPECT_EQ(pu.overall, Verdict::pass);
    EXPECT_EQ(pu.records.size(), 8u);
    const auto gen = check_simplicity(Ambient::generated(pair_gens, config.closure), config);
    EXPECT_EQ(gen.overall, Verdict::pass);
    for (const auto *report : {&pu, &gen}) {
        for (const auto &c : report->certificates) {
            EXPECT_TRUE(verify_certificate(*c.certificate, c.generators));
        }
    }
}

TEST(Simplicity, FullAuFailsExactlyOnUnbalancedTargets)
{
    const auto r = check_simplicity(Ambient::full(), ad_config(8, 2, 4, 2));
    EXPECT_EQ(r.overall, Verdict::fail);
    for (const auto &rec : r.records) {
        for (const auto &m : rec.missing) {
            EXPECT_FALSE(is_balanced(m)) << rec.seed << " misses balanced " << m;
            EXPECT_EQ(member(ad_closure({rec.seed}, Ambient::full(), ad_config(8, 2, 4, 2)), m).reason,
                      AbsenceReason::degree);
        }
        // an even-degree seed keeps every member at even degree
        if (degree(rec.seed) % 2 == 0) {
            EXPECT_EQ(rec.verdict, Verdict::fail) << rec.seed;
        } else {
            EXPECT_EQ(rec.verdict, Verdict::pass) << rec.seed;
        }
    }
}

TEST(Simplicity, BoundExhaustionIsInconclusiveNotPass)
{
    // report 6 needs 000111, which needs a conjugate of length 14
    const auto r = check_simplicity(Ambient::projective(), ad_config(12, 6, 8, 2));
    EXPECT_EQ(r.overall, Verdict::inconclusive);
    for (const auto &rec : r.records) {
        EXPECT_EQ(rec.verdict, Verdict::inconclusive);
        EXPECT_EQ(rec.missing, (std::vector<Word>{w("000111"), w("111000")}));
    }
}

TEST(Simplicity, CircleCorollarySmall)
{
    const auto r = check_circle_corollary(ad_config(10, 4, 6, 3));
    EXPECT_EQ(r.overall, Verdict::pass);
    EXPECT_EQ(r.records.size(), 14u);
    EXPECT_EQ(r.records.front().seed, w("0"));
}

TEST(Simplicity, ReportDeterministicAcrossThreads)
{
    const auto config = ad_config(10, 4, 6, 4);
    const auto a = report_to_json(check_simplicity(Ambient::projective(), config, {1})).dump();
    const auto b = report_to_json(check_simplicity(Ambient::projective(), config, {3})).dump();
    EXPECT_EQ(a, b);
}

TEST(NonFiniteGeneration, TwoBlockWordsEscapePlainClosures)
{
    for (std::size_t k : {1u, 2u}) {
        const auto gens = enumerate_words(WordFilter::balanced, 2 * k);
        const auto r = generate(gens, ClosureConfig{});
        const auto target = concat(Word::repeat(Symbol::Zero, k + 1), Word::repeat(Symbol::One, k + 1));
        EXPECT_EQ(member(r, target), (Membership{MembershipStatus::absent_certified, AbsenceReason::run_bound}))
            << target;
    }
}

TEST(PropertyF, PlainClosureOfZeroOneIsNotAdClosed)
{
    ClosureConfig c;
    const auto ambient = Ambient::generated(pair_gens, c);
    const auto plain = generate({w("01")}, c);
    const auto cs = ad_candidates(w("01"), ambient, 6);
    ASSERT_FALSE(cs.empty());
    EXPECT_TRUE(std::any_of(cs.begin(), cs.end(), [&](const AdCandidate &a) { return !plain.contains(a.result); }));
}

TEST(Invertibles, OnlyTheUnit)
{
    EXPECT_EQ(find_invertibles(0), std::vector<Word>{Word{}});
    EXPECT_EQ(find_invertibles(6), std::vector<Word>{Word{}});
    EXPECT_EQ(find_invertibles(8), std::vector<Word>{Word{}});
}
