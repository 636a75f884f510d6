#include "souslin/doublearrow.hpp"

#include <gtest/gtest.h>

#include <cstddef>
#include <vector>

namespace souslin {
namespace {

DoubleArrowPoint pt(const Rat& x, int side) { return DoubleArrowPoint(x, side); }

TEST(DoubleArrowPointTest, ValidatesTheSideDomains) {
    EXPECT_NO_THROW(pt(Rat(0), 1));
    EXPECT_NO_THROW(pt(Rat(1), 0));
    EXPECT_NO_THROW(pt(Rat(1, 2), 0));
    EXPECT_THROW(pt(Rat(0), 0), invalid_input);
    EXPECT_THROW(pt(Rat(1), 1), invalid_input);
    EXPECT_THROW(pt(Rat(-1, 2), 1), invalid_input);
    EXPECT_THROW(pt(Rat(3, 2), 0), invalid_input);
    EXPECT_THROW(pt(Rat(1, 2), 2), invalid_input);
}

TEST(LexOrder, PinnedComparisons) {
    EXPECT_TRUE(lex_lt(pt(Rat(1, 2), 0), pt(Rat(1, 2), 1)));
    EXPECT_TRUE(lex_lt(pt(Rat(1, 4), 1), pt(Rat(1, 2), 0)));
    EXPECT_FALSE(lex_lt(pt(Rat(1, 2), 1), pt(Rat(1, 2), 1)));
    EXPECT_FALSE(lex_lt(pt(Rat(1, 2), 1), pt(Rat(1, 2), 0)));
}

TEST(LexOrder, StrictTotalOrderOnASample) {
    std::vector<DoubleArrowPoint> zs;
    for (int i = 1; i <= 9; ++i) {
        zs.push_back(pt(Rat(i, 10), 0));
        zs.push_back(pt(Rat(i, 10), 1));
    }
    for (const auto& a : zs) {
        for (const auto& b : zs) {
            // Trichotomy.
            int count = (lex_lt(a, b) ? 1 : 0) + (lex_lt(b, a) ? 1 : 0) + (a == b ? 1 : 0);
            EXPECT_EQ(count, 1);
            for (const auto& c : zs) {
                if (lex_lt(a, b) && lex_lt(b, c)) EXPECT_TRUE(lex_lt(a, c));
            }
        }
    }
}

TEST(ReducedSpace, ExcludesOnlyTheMaximum) {
    EXPECT_FALSE(in_reduced_space(pt(Rat(1), 0)));
    EXPECT_TRUE(in_reduced_space(pt(Rat(0), 1)));
    EXPECT_TRUE(in_reduced_space(pt(Rat(1, 2), 0)));
    EXPECT_TRUE(in_reduced_space(pt(Rat(255, 256), 1)));
}

TEST(OrderIntervalTest, ContainmentRespectsBoundOpenness) {
    OrderInterval s = OrderInterval::bounded({LexPair{Rat(1, 4), 1}, true},
                                             {LexPair{Rat(3, 4), 1}, false});
    EXPECT_TRUE(s.contains(pt(Rat(1, 4), 1)));
    EXPECT_FALSE(s.contains(pt(Rat(1, 4), 0)));
    EXPECT_TRUE(s.contains(pt(Rat(1, 2), 0)));
    EXPECT_TRUE(s.contains(pt(Rat(3, 4), 0)));
    EXPECT_FALSE(s.contains(pt(Rat(3, 4), 1)));
    EXPECT_FALSE(s.contains(pt(Rat(7, 8), 1)));
}

TEST(OrderIntervalTest, ReducedWholeIsEverythingBelowTheMaximum) {
    OrderInterval x = OrderInterval::reduced_whole();
    EXPECT_TRUE(x.contains(pt(Rat(0), 1)));
    EXPECT_TRUE(x.contains(pt(Rat(1), 0)) == false);
    EXPECT_TRUE(OrderInterval::whole().contains(pt(Rat(1), 0)));
    EXPECT_TRUE(x.subset_of(OrderInterval::whole()));
    EXPECT_FALSE(OrderInterval::whole().subset_of(x));
}

TEST(OrderIntervalTest, AdjacentBoundFormsDenoteTheSameSet) {
    // Nothing sits strictly between (x,0) and (x,1), so a closed bound at
    // (x,1) and an open bound at (x,0) cut the same lower edge.
    OrderInterval closed_form = OrderInterval::bounded({LexPair{Rat(1, 3), 1}, true},
                                                       {LexPair{Rat(2, 3), 1}, false});
    OrderInterval open_form = OrderInterval::bounded({LexPair{Rat(1, 3), 0}, false},
                                                     {LexPair{Rat(2, 3), 1}, false});
    EXPECT_TRUE(closed_form.subset_of(open_form));
    EXPECT_TRUE(open_form.subset_of(closed_form));
}

TEST(SideTraces, ProjectOrderIntervalsToRationalIntervals) {
    OrderInterval s = OrderInterval::bounded({LexPair{Rat(1, 4), 1}, true},
                                             {LexPair{Rat(3, 4), 1}, false});
    RatInterval one = side1_trace(s);
    EXPECT_TRUE(one.contains(Rat(1, 4)));
    EXPECT_TRUE(one.contains(Rat(1, 2)));
    EXPECT_FALSE(one.contains(Rat(3, 4)));

    RatInterval zero = side0_trace(s);
    EXPECT_FALSE(zero.contains(Rat(1, 4)));
    EXPECT_TRUE(zero.contains(Rat(1, 2)));
    EXPECT_TRUE(zero.contains(Rat(3, 4)));
    EXPECT_FALSE(zero.contains(Rat(7, 8)));
}

TEST(CanonicalNbhd, PinnedFormulas) {
    OrderInterval a = nbhd_basic(pt(Rat(1, 2), 1), 1);
    EXPECT_EQ(a, OrderInterval::bounded({LexPair{Rat(1, 2), 1}, true},
                                        {LexPair{Rat(3, 4), 1}, false}));

    OrderInterval b = nbhd_basic(pt(Rat(1, 2), 0), 2);
    EXPECT_EQ(b, OrderInterval::bounded({LexPair{Rat(3, 8), 0}, false},
                                        {LexPair{Rat(1, 2), 1}, false}));

    OrderInterval c = nbhd_basic(pt(Rat(0), 1), 0);
    EXPECT_EQ(c, OrderInterval::bounded({LexPair{Rat(0), 1}, true}, {LexPair{Rat(1), 1}, false}));

    OrderInterval d = nbhd_basic(pt(Rat(1, 3), 1), 2);
    EXPECT_EQ(d, OrderInterval::bounded({LexPair{Rat(1, 3), 1}, true},
                                        {LexPair{Rat(1, 2), 1}, false}));
}

TEST(CanonicalNbhd, NestedAndContainTheirCenter) {
    std::vector<DoubleArrowPoint> zs = {pt(Rat(1, 3), 1), pt(Rat(1, 3), 0), pt(Rat(0), 1),
                                        pt(Rat(1), 0), pt(Rat(7, 8), 1)};
    for (const auto& z : zs) {
        for (std::size_t k = 0; k <= 6; ++k) {
            OrderInterval cur = nbhd_basic(z, k);
            EXPECT_TRUE(cur.contains(z)) << z.str() << " k=" << k;
            EXPECT_TRUE(nbhd_basic(z, k + 1).subset_of(cur)) << z.str() << " k=" << k;
        }
    }
}

TEST(LimitProfileTest, SingletonAtTheApproachValue) {
    LimitProfile p = limit_profile(pt(Rat(1, 2), 0));
    ASSERT_EQ(p.values.size(), 1u);
    EXPECT_EQ(p.values[0], Rat(1, 2));
    EXPECT_EQ(p.min, Rat(1, 2));
    EXPECT_EQ(p.sup, Rat(1, 2));

    LimitProfile top = limit_profile(pt(Rat(1), 0));
    EXPECT_EQ(top.min, Rat(1));
    EXPECT_EQ(top.sup, Rat(1));

    EXPECT_THROW(limit_profile(pt(Rat(1, 3), 1)), wrong_side);
}

TEST(ConstructedRelation, PinnedClauseTable) {
    EXPECT_TRUE(r_constructed(pt(Rat(1, 4), 1), pt(Rat(1, 2), 0)));
    EXPECT_TRUE(r_constructed(pt(Rat(1, 2), 0), pt(Rat(1, 2), 1)));
    EXPECT_FALSE(r_constructed(pt(Rat(1, 2), 0), pt(Rat(1, 4), 1)));
    EXPECT_TRUE(r_constructed(pt(Rat(1, 4), 1), pt(Rat(1, 2), 1)));
    EXPECT_FALSE(r_constructed(pt(Rat(1, 2), 1), pt(Rat(1, 2), 1)));
    EXPECT_FALSE(r_constructed(pt(Rat(1, 2), 1), pt(Rat(1, 2), 0)));
    EXPECT_FALSE(r_constructed(pt(Rat(1, 4), 0), pt(Rat(1, 2), 0)));
    EXPECT_FALSE(r_constructed(pt(Rat(1, 2), 0), pt(Rat(1, 2), 0)));
    // Side-0 to side-1 at equal values: related weakly.
    EXPECT_TRUE(r_constructed(pt(Rat(1, 4), 0), pt(Rat(1, 4), 1)));
}

TEST(ConstructedRelation, AsymmetricAndIrreflexiveOnAGrid) {
    std::vector<DoubleArrowPoint> zs;
    for (int i = 1; i <= 12; ++i) {
        zs.push_back(pt(Rat(i, 13), 0));
        zs.push_back(pt(Rat(i, 13), 1));
    }
    for (const auto& a : zs) {
        EXPECT_FALSE(r_constructed(a, a));
        for (const auto& b : zs) {
            EXPECT_FALSE(r_constructed(a, b) && r_constructed(b, a))
                << a.str() << " " << b.str();
        }
    }
}

TEST(RelationSelector, LexUsesTheWholeSpaceAsQ) {
    EXPECT_TRUE(related(RelationKind::Lex, pt(Rat(1, 4), 1), pt(Rat(1, 2), 0)));
    EXPECT_FALSE(related(RelationKind::Lex, pt(Rat(1, 2), 0), pt(Rat(1, 4), 1)));
    EXPECT_TRUE(in_q(RelationKind::Lex, pt(Rat(1, 2), 0)));
    EXPECT_TRUE(in_q(RelationKind::Lex, pt(Rat(1, 2), 1)));
    EXPECT_FALSE(in_q(RelationKind::Constructed, pt(Rat(1, 2), 0)));
    EXPECT_TRUE(in_q(RelationKind::Constructed, pt(Rat(1, 2), 1)));
}

void expect_witnesses_reverify(const BidirCheckReport& rep, RelationKind rel) {
    ASSERT_TRUE(rep.one_sided_index.has_value());
    ASSERT_FALSE(rep.witnesses.empty());
    for (const LookWitness& w : rep.witnesses) {
        OrderInterval u = nbhd_basic(rep.point, w.k);
        EXPECT_TRUE(u.contains(w.y)) << "witness outside its neighborhood";
        EXPECT_TRUE(in_q(rel, w.y));
        EXPECT_FALSE(w.y == rep.point);
        // The witness's relation cone absorbs the recorded canonical
        // neighborhood of the center: spot-check on the center itself and the
        // neighborhood's side-1 edge value.
        if (rep.direction == LookDirection::Right) {
            EXPECT_TRUE(related(rel, rep.point, w.y) || rep.point == w.y);
        } else {
            EXPECT_TRUE(related(rel, w.y, rep.point) || rep.point == w.y);
        }
    }
}

TEST(LooksCheck, RightAlongLexAtASideOnePoint) {
    BidirCheckReport rep = looks_check(pt(Rat(1, 2), 1), LookDirection::Right, 6,
                                       RelationKind::Lex);
    EXPECT_TRUE(rep.verdict.holds());
    expect_witnesses_reverify(rep, RelationKind::Lex);
}

TEST(LooksCheck, LeftAlongConstructedAtASideZeroPoint) {
    BidirCheckReport rep = looks_check(pt(Rat(1, 2), 0), LookDirection::Left, 6,
                                       RelationKind::Constructed);
    EXPECT_TRUE(rep.verdict.holds());
    expect_witnesses_reverify(rep, RelationKind::Constructed);
}

TEST(LooksCheck, SideZeroPointsDoNotLookRightUnderConstructed) {
    BidirCheckReport rep = looks_check(pt(Rat(1, 2), 0), LookDirection::Right, 2,
                                       RelationKind::Constructed);
    EXPECT_TRUE(rep.verdict.failed());
}

std::vector<DoubleArrowPoint> dyadic_grid() {
    std::vector<DoubleArrowPoint> grid;
    for (int i = 1; i <= 20; ++i) grid.push_back(pt(Rat(i, 32), i % 2));
    return grid;
}

TEST(BidirectedCheck, HoldsForBothRelationsOnTheGrid) {
    std::vector<DoubleArrowPoint> grid = dyadic_grid();
    grid.push_back(pt(Rat(1, 3), 0));
    grid.push_back(pt(Rat(1, 3), 1));
    EXPECT_TRUE(bidirected_check(RelationKind::Lex, grid, 5).holds());
    EXPECT_TRUE(bidirected_check(RelationKind::Constructed, grid, 5).holds());
}

TEST(BidirectedCheck, FlippedSideAssignmentFailsImmediately) {
    CheckResult r = bidirected_check(RelationKind::Lex, dyadic_grid(), 3, 0);
    ASSERT_TRUE(r.failed());
    EXPECT_EQ(r.witness().value("stage", ""), "looks");
}

TEST(LimitProfileLaws, HoldAtSideZeroSamplesIncludingTheMaximum) {
    std::vector<DoubleArrowPoint> samples;
    for (int i = 2; i <= 21; ++i) samples.push_back(pt(Rat(i, 21), 0));
    EXPECT_TRUE(limit_profile_laws_check(samples, 5).holds());
}

TEST(LimitProfileLaws, RejectSideOneSamples) {
    CheckResult r = limit_profile_laws_check({pt(Rat(1, 2), 1)}, 3);
    ASSERT_TRUE(r.failed());
}

}  // namespace
}  // namespace souslin
