#include "souslin/seqtree.hpp"

#include <gtest/gtest.h>

#include <cstddef>
#include <optional>
#include <vector>

#include "souslin/scheme.hpp"

namespace souslin {
namespace {

constexpr std::size_t kBudget = 64;

Branch zeros() { return Branch(FinSeq{}, TailZero{}); }

TEST(FinSeqBasics, TakeReturnsInitialSegments) {
    FinSeq s{5, 3, 7};
    EXPECT_EQ(s.take(2), (FinSeq{5, 3}));
    EXPECT_EQ(s.take(0), FinSeq{});
    EXPECT_EQ(s.take(3), s);
    EXPECT_THROW(s.take(4), std::out_of_range);
}

TEST(FinSeqBasics, ExtendedAppendsOneEntry) {
    FinSeq s{1, 2};
    EXPECT_EQ(s.extended(9), (FinSeq{1, 2, 9}));
    EXPECT_EQ(FinSeq{}.extended(0), FinSeq{0});
}

TEST(FinSeqBasics, StrUsesAngleBrackets) {
    EXPECT_EQ((FinSeq{1, 0, 2}).str(), "<1,0,2>");
    EXPECT_EQ(FinSeq{}.str(), "<>");
}

TEST(FinSeqBasics, PrefixOrder) {
    EXPECT_TRUE(is_prefix(FinSeq{1, 2}, FinSeq{1, 2, 9}));
    EXPECT_FALSE(is_prefix(FinSeq{1, 3}, FinSeq{1, 2, 9}));
    EXPECT_TRUE(is_prefix(FinSeq{}, FinSeq{4, 4}));
    EXPECT_TRUE(is_prefix(FinSeq{}, FinSeq{}));
    EXPECT_TRUE(is_prefix(FinSeq{1, 2}, FinSeq{1, 2}));
    EXPECT_FALSE(is_prefix(FinSeq{1, 2, 9}, FinSeq{1, 2}));
}

TEST(BranchEntries, TailRulesExpandDeterministically) {
    Branch z(FinSeq{1}, TailZero{});
    EXPECT_EQ(z.take(3), (FinSeq{1, 0, 0}));
    EXPECT_EQ(z.at(0), 1u);
    EXPECT_EQ(z.at(100), 0u);

    Branch c(FinSeq{0}, TailConst{3});
    EXPECT_EQ(c.take(4), (FinSeq{0, 3, 3, 3}));

    Branch p(FinSeq{7}, TailPeriodic{FinSeq{2, 5}});
    EXPECT_EQ(p.take(6), (FinSeq{7, 2, 5, 2, 5, 2}));
    EXPECT_EQ(p.at(100), (100 - 1) % 2 == 0 ? 2u : 5u);
}

TEST(BranchEntries, EncodedTailFollowsTheCodingWalk) {
    Branch b = encode_branch(Rat(3, 4));
    for (std::size_t depth = 1; depth <= 12; ++depth) {
        EXPECT_EQ(b.take(depth), encode(Rat(3, 4), depth));
    }
}

TEST(BranchEntries, PeriodicTailRequiresNonemptyPeriod) {
    EXPECT_THROW(Branch(FinSeq{}, TailPeriodic{FinSeq{}}), invalid_input);
}

TEST(BranchPeriodicity, ExplicitPeriodsAreExposed) {
    Branch z(FinSeq{4, 2}, TailZero{});
    ASSERT_TRUE(z.has_explicit_period());
    EXPECT_EQ(z.period(), std::vector<SeqEntry>{0});

    Branch c(FinSeq{}, TailConst{9});
    ASSERT_TRUE(c.has_explicit_period());
    EXPECT_EQ(c.period(), std::vector<SeqEntry>{9});

    Branch p(FinSeq{1}, TailPeriodic{FinSeq{0, 3}});
    ASSERT_TRUE(p.has_explicit_period());
    EXPECT_EQ(p.period(), (std::vector<SeqEntry>{0, 3}));
    // Entries repeat with that period from the preperiod on.
    for (std::size_t i = p.preperiod(); i < p.preperiod() + 20; ++i) {
        EXPECT_EQ(p.at(i + p.period().size()), p.at(i));
    }

    Branch e(FinSeq{}, TailEncoded{Rat(1, 3)});
    EXPECT_FALSE(e.has_explicit_period());
    EXPECT_THROW(e.preperiod(), std::logic_error);
    EXPECT_THROW(e.period(), std::logic_error);
}

TEST(BranchCompareTest, EqualityIsRepresentationIndependent) {
    EXPECT_TRUE(branch_equal(zeros(), Branch(FinSeq{0, 0, 0}, TailZero{})));
    EXPECT_TRUE(branch_equal(Branch(FinSeq{1}, TailConst{1}), Branch(FinSeq{}, TailConst{1})));
    EXPECT_TRUE(branch_equal(Branch(FinSeq{2, 5}, TailPeriodic{FinSeq{2, 5}}),
                             Branch(FinSeq{}, TailPeriodic{FinSeq{2, 5}})));
    EXPECT_FALSE(branch_equal(zeros(), Branch(FinSeq{}, TailConst{1})));
}

TEST(BranchCompareTest, OrdersDivergingBranchesWithPosition) {
    BranchCompare r =
        compare_branches(Branch(FinSeq{1, 5}, TailZero{}), Branch(FinSeq{1, 2}, TailZero{}), kBudget);
    EXPECT_EQ(r.order, BranchOrder::Greater);
    EXPECT_EQ(r.diverge_at, std::optional<std::size_t>(1));

    r = compare_branches(Branch(FinSeq{}, TailPeriodic{FinSeq{1, 2}}),
                         Branch(FinSeq{}, TailConst{1}), kBudget);
    EXPECT_EQ(r.order, BranchOrder::Greater);
    EXPECT_EQ(r.diverge_at, std::optional<std::size_t>(1));

    r = compare_branches(zeros(), zeros(), kBudget);
    EXPECT_EQ(r.order, BranchOrder::Equal);
    EXPECT_FALSE(r.diverge_at.has_value());
}

TEST(BranchCompareTest, DecidesIdenticalTailsPastTheScanBudget) {
    // The two representations agree on every entry; a naive bounded scan
    // cannot conclude equality, the symbolic extension can.
    Branch a(FinSeq{0, 0, 0, 0, 0, 0, 0, 0, 0, 0}, TailConst{4});
    Branch b(FinSeq{0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 4, 4}, TailConst{4});
    EXPECT_EQ(compare_branches(a, b, 4).order, BranchOrder::Equal);

    // Divergence strictly past the head of both: still decided.
    Branch c(FinSeq{}, TailPeriodic{FinSeq{3, 3, 3, 3, 3, 3, 3, 1}});
    Branch d(FinSeq{}, TailConst{3});
    BranchCompare r = compare_branches(c, d, 4);
    EXPECT_EQ(r.order, BranchOrder::Less);
    EXPECT_EQ(r.diverge_at, std::optional<std::size_t>(7));
}

TEST(BranchCompareTest, EncodedBranchesCompareByValue) {
    EXPECT_EQ(compare_branches(encode_branch(Rat(1, 3)), encode_branch(Rat(1, 3)), kBudget).order,
              BranchOrder::Equal);
    // Within one integer cell the coding walk is value-monotone.
    EXPECT_EQ(compare_branches(encode_branch(Rat(1, 3)), encode_branch(Rat(2, 5)), kBudget).order,
              BranchOrder::Less);
    EXPECT_EQ(compare_branches(encode_branch(Rat(2, 5)), encode_branch(Rat(1, 3)), kBudget).order,
              BranchOrder::Greater);
}

TEST(LexBefore, FiniteSequencesNeedAWitnessPosition) {
    EXPECT_EQ(lex_before(FinSeq{1, 2}, FinSeq{1, 3, 5}, 8), Trivalent::True);
    EXPECT_EQ(lex_before(FinSeq{1, 3, 5}, FinSeq{1, 2}, 8), Trivalent::False);
    // A proper initial segment never precedes its extension.
    EXPECT_EQ(lex_before(FinSeq{1}, FinSeq{1, 2}, 8), Trivalent::False);
    EXPECT_EQ(lex_before(FinSeq{1, 2}, FinSeq{1, 2}, 8), Trivalent::False);
}

TEST(LexBefore, BranchesExpandTheirTails) {
    EXPECT_EQ(lex_before(zeros(), zeros(), 8), Trivalent::False);
    EXPECT_EQ(lex_before(Branch(FinSeq{0, 2}, TailZero{}), Branch(FinSeq{0}, TailConst{3}), 8),
              Trivalent::True);
    EXPECT_EQ(lex_before(Branch(FinSeq{0}, TailConst{3}), Branch(FinSeq{0, 2}, TailZero{}), 8),
              Trivalent::False);
    EXPECT_EQ(lex_before(FinSeq{0, 1}, Branch(FinSeq{}, TailConst{0}), 8), Trivalent::False);
    EXPECT_EQ(lex_before(Branch(FinSeq{}, TailConst{0}), FinSeq{0, 1}, 8), Trivalent::True);
}

TEST(AntichainTest, DetectsPrefixComparableRecords) {
    Antichain good({AntichainEntry{FinSeq{1}, 1}, AntichainEntry{FinSeq{1, 0}, 1}});
    EXPECT_TRUE(good.is_antichain());

    // The first family contains <1,0>, a prefix of the second family's <1,0,1>.
    Antichain bad({AntichainEntry{FinSeq{1}, 0}, AntichainEntry{FinSeq{1, 0}, 1}});
    EXPECT_FALSE(bad.is_antichain());

    EXPECT_TRUE(Antichain().is_antichain());
}

TEST(AntichainTest, DenotesExactlyTheStemExtensions) {
    Antichain a({AntichainEntry{FinSeq{1}, 2}});
    EXPECT_TRUE(a.denotes(FinSeq{1, 2}));
    EXPECT_TRUE(a.denotes(FinSeq{1, 7}));
    EXPECT_FALSE(a.denotes(FinSeq{1, 1}));
    EXPECT_FALSE(a.denotes(FinSeq{1}));
    EXPECT_FALSE(a.denotes(FinSeq{1, 2, 0}));
    EXPECT_FALSE(a.denotes(FinSeq{2, 2}));
}

TEST(WedgeAntichain, MatchesTheHandEnumeratedFamilies) {
    // Base branch <1,0,0,...>, agreement level 1, stems up to length 2:
    // minimal wedge nodes are <1>^k for k >= 1 and <1,0>^k for k >= 1.
    Antichain a = wedge_antichain(Branch(FinSeq{1, 0}, TailZero{}), 1, 2);
    ASSERT_EQ(a.records().size(), 2u);
    EXPECT_EQ(a.records()[0].stem, FinSeq{1});
    EXPECT_EQ(a.records()[0].from, 1u);
    EXPECT_EQ(a.records()[1].stem, (FinSeq{1, 0}));
    EXPECT_EQ(a.records()[1].from, 1u);
    EXPECT_TRUE(a.is_antichain());

    Antichain b = wedge_antichain(zeros(), 0, 1);
    ASSERT_EQ(b.records().size(), 2u);
    EXPECT_EQ(b.records()[0].stem, FinSeq{});
    EXPECT_EQ(b.records()[0].from, 1u);
    EXPECT_EQ(b.records()[1].stem, FinSeq{0});
    EXPECT_EQ(b.records()[1].from, 1u);

    // A single contributing level: stems q|2 only, entries past q(2).
    Branch q(FinSeq{4, 1, 3}, TailZero{});
    Antichain c = wedge_antichain(q, 2, 2);
    ASSERT_EQ(c.records().size(), 1u);
    EXPECT_EQ(c.records()[0].stem, (FinSeq{4, 1}));
    EXPECT_EQ(c.records()[0].from, 4u);
}

// Direct re-computation of wedge membership from its definition: s properly
// extends q's level-n segment and the first disagreement with q favors s.
bool wedge_oracle(const FinSeq& s, const Branch& q, std::size_t n) {
    if (s.size() <= n) return false;
    for (std::size_t i = 0; i < n; ++i) {
        if (s.at(i) != q.at(i)) return false;
    }
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (q.at(i) < s.at(i)) return true;
        if (q.at(i) > s.at(i)) return false;
    }
    return false;
}

std::vector<FinSeq> all_sequences(SeqEntry entry_bound, std::size_t max_len) {
    std::vector<FinSeq> out{FinSeq{}};
    std::size_t level_start = 0;
    for (std::size_t len = 1; len <= max_len; ++len) {
        std::size_t level_end = out.size();
        for (std::size_t i = level_start; i < level_end; ++i) {
            for (SeqEntry e = 0; e < entry_bound; ++e) out.push_back(out[i].extended(e));
        }
        level_start = level_end;
    }
    return out;
}

TEST(WedgeMembership, AgreesWithTheDefinitionOnASmallUniverse) {
    std::vector<Branch> bases = {zeros(), Branch(FinSeq{1, 0}, TailZero{}),
                                 Branch(FinSeq{0, 2}, TailPeriodic{FinSeq{1}})};
    std::vector<FinSeq> universe = all_sequences(3, 4);
    for (const Branch& q : bases) {
        for (std::size_t n = 0; n <= 2; ++n) {
            for (const FinSeq& s : universe) {
                EXPECT_EQ(in_wedge_nodes(s, q, n, kBudget), wedge_oracle(s, q, n))
                    << "s=" << s.str() << " q=" << q.str() << " n=" << n;
            }
        }
    }
}

TEST(WedgeMembership, EveryWedgeNodeExtendsExactlyOneMinimalNode) {
    std::vector<Branch> bases = {zeros(), Branch(FinSeq{1, 0}, TailZero{})};
    std::vector<FinSeq> universe = all_sequences(3, 4);
    for (const Branch& q : bases) {
        for (std::size_t n = 0; n <= 2; ++n) {
            Antichain a = wedge_antichain(q, n, 3);
            ASSERT_TRUE(a.is_antichain());
            for (const FinSeq& s : universe) {
                std::size_t denoted_prefixes = 0;
                for (std::size_t len = 0; len <= s.size(); ++len) {
                    if (a.denotes(s.take(len))) ++denoted_prefixes;
                }
                EXPECT_EQ(in_wedge_nodes(s, q, n, kBudget), denoted_prefixes == 1)
                    << "s=" << s.str() << " q=" << q.str() << " n=" << n;
                EXPECT_LE(denoted_prefixes, 1u);
            }
        }
    }
}

TEST(WedgeBranches, PinsTheMembershipTable) {
    Branch q(FinSeq{1, 2}, TailZero{});
    EXPECT_EQ(in_wedge(Branch(FinSeq{1, 5}, TailZero{}), q, 1, 8), Trivalent::True);
    EXPECT_EQ(in_wedge(q, q, 1, 8), Trivalent::False);
    EXPECT_EQ(in_wedge(Branch(FinSeq{0, 5}, TailZero{}), q, 1, 8), Trivalent::False);
    // Lex-after but escaping the level-2 node: not in the level-2 wedge.
    EXPECT_EQ(in_wedge(Branch(FinSeq{1, 5}, TailZero{}), q, 2, 8), Trivalent::False);
    EXPECT_EQ(in_wedge(Branch(FinSeq{1, 2, 0, 3}, TailZero{}), q, 2, 8), Trivalent::True);
}

TEST(WedgeBranches, MembershipIsAntitoneInTheAgreementLevel) {
    Branch q = encode_branch(Rat(1, 3));
    Branch p(q.take(5).take(4).extended(q.at(4) + 2), TailZero{});
    for (std::size_t n = 0; n + 1 <= 5; ++n) {
        if (in_wedge(p, q, n + 1, kBudget) == Trivalent::True) {
            EXPECT_EQ(in_wedge(p, q, n, kBudget), Trivalent::True);
        }
    }
}

}  // namespace
}  // namespace souslin
