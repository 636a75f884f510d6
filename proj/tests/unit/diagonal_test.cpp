#include "souslin/diagonal.hpp"

#include "souslin/scheme.hpp"
#include "souslin/serialize.hpp"

#include <gtest/gtest.h>

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace souslin {
namespace {

SpacePoint rp(const Rat& x) { return SpacePoint(x); }
SpacePoint dp(const Rat& x, int side) { return SpacePoint(DoubleArrowPoint(x, side)); }

OrderInterval hull(const Rat& lo, const Rat& hi) {
    return OrderInterval::bounded({LexPair{lo, 1}, true}, {LexPair{hi, 1}, false});
}

TEST(WNodeTest, PinnedHulls) {
    EXPECT_EQ(std::get<OrderInterval>(w_node(FinSeq{})), OrderInterval::reduced_whole());
    EXPECT_EQ(std::get<OrderInterval>(w_node(FinSeq{2})), hull(Rat(3, 4), Rat(7, 8)));
    EXPECT_EQ(std::get<OrderInterval>(w_node(FinSeq{2, 0})), hull(Rat(3, 4), Rat(13, 16)));
    EXPECT_EQ(std::get<OrderInterval>(w_node(FinSeq{0})), hull(Rat(0), Rat(1, 2)));
}

TEST(WOracleTest, BaseBranchesExistOnlyForSideOnePoints) {
    WOracle w;
    EXPECT_EQ(w.name(), "double-arrow-w");
    const Branch root(FinSeq{}, TailZero{});

    std::optional<Branch> t = w.s1_witness(dp(Rat(1, 3), 1), root, 0);
    ASSERT_TRUE(t.has_value());
    EXPECT_TRUE(branch_equal(*t, unit_encode_branch(Rat(1, 3)), 64));

    EXPECT_FALSE(w.s1_witness(dp(Rat(1, 3), 0), root, 0).has_value());
    EXPECT_FALSE(w.s1_witness(dp(Rat(1, 2), 0), root, 0).has_value());

    // 1/3 encodes through <0,...>; no agreement with a branch starting <1>.
    EXPECT_FALSE(w.s1_witness(dp(Rat(1, 3), 1), Branch(FinSeq{1}, TailZero{}), 1).has_value());
}

TEST(WOracleTest, FruitHasTheSideZeroTwinOnlyOffTheDyadics) {
    WOracle w;
    std::vector<SpacePoint> f = w.fruit_members(unit_encode_branch(Rat(1, 3)), 32);
    ASSERT_EQ(f.size(), 2u);
    EXPECT_TRUE(same_point(f[0], dp(Rat(1, 3), 1)));
    EXPECT_TRUE(same_point(f[1], dp(Rat(1, 3), 0)));

    std::vector<SpacePoint> g = w.fruit_members(unit_encode_branch(Rat(3, 4)), 32);
    ASSERT_EQ(g.size(), 1u);
    EXPECT_TRUE(same_point(g[0], dp(Rat(3, 4), 1)));
}

TEST(WOracleTest, CutsAnchorAtThePointsOwnSide) {
    WOracle w;
    const Branch q = unit_encode_branch(Rat(1, 3));
    // take(1) = <0> carries [0,1/2).
    SpaceSet c1 = w.cut_with_point(q, 1, dp(Rat(1, 3), 1));
    EXPECT_EQ(std::get<OrderInterval>(c1), hull(Rat(1, 3), Rat(1, 2)));

    SpaceSet c0 = w.cut_with_point(q, 1, dp(Rat(1, 3), 0));
    EXPECT_EQ(std::get<OrderInterval>(c0),
              OrderInterval::bounded({LexPair{Rat(1, 3), 0}, true}, {LexPair{Rat(1, 2), 1}, false}));
    // The side-0 anchored cut keeps the side-1 twin.
    EXPECT_TRUE(member(dp(Rat(1, 3), 1), c0));

    EXPECT_THROW(w.cut_with_point(q, 2, dp(Rat(2, 5), 1)), precondition_failed);
    EXPECT_THROW(w.cut_with_point(Branch(FinSeq{1}, TailZero{}), 0, dp(Rat(1, 2), 1)),
                 precondition_failed);
    EXPECT_EQ(std::get<OrderInterval>(
                  w.cut_with_point(unit_encode_branch(Rat(0)), 0, dp(Rat(0), 1))),
              OrderInterval::reduced_whole());
}

TEST(WOracleTest, ShrinkIndexFindsTheLeastFittingCut) {
    WOracle w;
    const Branch q = unit_encode_branch(Rat(0));
    // Cuts along the zero branch are [(0,1),(2^-m,1)); the target below is
    // first reached at m = 2.
    std::optional<std::size_t> m =
        w.shrink_index(q, dp(Rat(0), 1), SpaceSet(hull(Rat(0), Rat(1, 3))));
    ASSERT_TRUE(m.has_value());
    EXPECT_EQ(*m, 2u);
}

TEST(WCertificates, NonDyadicSideZeroPointsGetEscapingWitnesses) {
    WOracle w;
    const SpacePoint z = dp(Rat(1, 3), 0);
    nlohmann::json cert = w.s1_failure_certificate(z, Branch(FinSeq{}, TailZero{}), 0, 6);
    EXPECT_EQ(cert.value("kind", ""), "no-left-neighborhood");
    EXPECT_EQ(cert.value("oracle", ""), "double-arrow-w");

    const OrderInterval blocked = order_interval_from_json(cert.at("blocked_neighborhood"));
    const SpacePoint universal = space_point_from_json(cert.at("universal_escaping_point"));
    EXPECT_TRUE(same_point(universal, dp(Rat(1, 3), 1)));

    ASSERT_FALSE(cert.at("witnesses").empty());
    for (const auto& item : cert.at("witnesses")) {
        const OrderInterval cut = order_interval_from_json(item.at("cut_set"));
        const SpacePoint esc = space_point_from_json(item.at("escaping_point"));
        // Each cut keeps a point no left-anchored neighborhood can hold.
        EXPECT_TRUE(member(esc, SpaceSet(cut)));
        EXPECT_FALSE(member(esc, SpaceSet(blocked)));
        EXPECT_TRUE(member(universal, SpaceSet(cut)));
    }
}

TEST(WCertificates, DyadicSideZeroPointsFallOutOfTheScheme) {
    WOracle w;
    const SpacePoint z = dp(Rat(1, 2), 0);
    nlohmann::json cert = w.s1_failure_certificate(z, Branch(FinSeq{}, TailZero{}), 0, 6);
    EXPECT_EQ(cert.value("kind", ""), "no-branch");

    EXPECT_EQ(finseq_from_json(cert.at("terminal_node")), FinSeq{0});
    EXPECT_TRUE(cert.value("in_terminal_set", false));
    const OrderInterval terminal = order_interval_from_json(cert.at("terminal_set"));
    EXPECT_TRUE(member(z, SpaceSet(terminal)));
    ASSERT_EQ(cert.at("child_sets").size(), cert.value("children_checked", 0));
    for (const auto& cs : cert.at("child_sets")) {
        EXPECT_FALSE(member(z, SpaceSet(order_interval_from_json(cs))));
    }
}

TEST(WCertificates, SideOnePointsGetNoCertificate) {
    WOracle w;
    nlohmann::json cert =
        w.s1_failure_certificate(dp(Rat(1, 3), 1), Branch(FinSeq{1}, TailZero{}), 1, 4);
    EXPECT_EQ(cert.value("kind", ""), "none");
}

TEST(WPartitionCheck, ChildrenPartitionEachParent) {
    EXPECT_TRUE(w_partition_check(4, 6).holds());
    EXPECT_TRUE(w_partition_check(1, 2).holds());
    EXPECT_THROW(w_partition_check(0, 4), invalid_input);
    EXPECT_THROW(w_partition_check(3, 0), invalid_input);
}

TEST(DoubleArrowSpaceTest, NamesAndMembership) {
    DoubleArrowSpace lex(RelationKind::Lex);
    DoubleArrowSpace con(RelationKind::Constructed);
    EXPECT_EQ(lex.name(), "double-arrow-lex");
    EXPECT_EQ(con.name(), "double-arrow-constructed");

    EXPECT_TRUE(con.contains(dp(Rat(1, 2), 0)));
    EXPECT_FALSE(con.contains(dp(Rat(1), 0)));  // the removed maximum
    EXPECT_FALSE(con.contains(rp(Rat(1, 2))));
    EXPECT_TRUE(lex.in_q(dp(Rat(1, 2), 0)));
    EXPECT_FALSE(con.in_q(dp(Rat(1, 2), 0)));
    EXPECT_TRUE(con.in_right_part(dp(Rat(1, 2), 1)));
    EXPECT_FALSE(con.in_right_part(dp(Rat(1, 2), 0)));
}

TEST(DoubleArrowSpaceTest, PickInChoosesSimplestValues) {
    DoubleArrowSpace con(RelationKind::Constructed);
    SpaceSet root = w_node(FinSeq{});
    EXPECT_TRUE(same_point(*con.pick_in(root, true), dp(Rat(0), 1)));
    // The distinguished side-0 value 1/3 is available at the root.
    EXPECT_TRUE(same_point(*con.pick_in(root, false), dp(Rat(1, 3), 0)));

    SpaceSet cell = w_node(FinSeq{2});  // values [3/4, 7/8)
    EXPECT_TRUE(same_point(*con.pick_in(cell, true), dp(Rat(3, 4), 1)));
    // 1/3 is out of range; the first non-dyadic value in (3/4, 7/8] is 4/5.
    EXPECT_TRUE(same_point(*con.pick_in(cell, false), dp(Rat(4, 5), 0)));
}

TEST(DoubleArrowSpaceTest, PickQRelatedPrefersSideOneSimplest) {
    DoubleArrowSpace con(RelationKind::Constructed);
    // The first cut along the zero branch, minus its anchor, above the anchor.
    SpaceSet cut = SpaceSet(hull(Rat(0), Rat(1, 2)));
    std::optional<SpacePoint> y = con.pick_q_related(cut, dp(Rat(0), 1), dp(Rat(0), 1), false);
    ASSERT_TRUE(y.has_value());
    EXPECT_TRUE(same_point(*y, dp(Rat(1, 3), 1)));

    // Below an anchor inside the set: the simplest side-1 value of
    // [1/4,1/3) minus the excluded endpoint is 2/7.
    SpaceSet s = SpaceSet(hull(Rat(1, 4), Rat(1, 2)));
    DoubleArrowSpace lex(RelationKind::Lex);
    std::optional<SpacePoint> b =
        lex.pick_q_related(s, dp(Rat(1, 4), 1), dp(Rat(1, 3), 1), true);
    ASSERT_TRUE(b.has_value());
    EXPECT_TRUE(same_point(*b, dp(Rat(2, 7), 1)));

    // Under the constructed relation nothing in a value-right cut lies
    // strictly R-below its side-1 anchor.
    SpaceSet anchored = SpaceSet(hull(Rat(1, 3), Rat(1, 2)));
    EXPECT_FALSE(
        con.pick_q_related(anchored, dp(Rat(1, 3), 1), dp(Rat(1, 3), 1), true).has_value());
}

TEST(DoubleArrowSpaceTest, ConeSetsAndAbsorptionIndices) {
    DoubleArrowSpace con(RelationKind::Constructed);
    DoubleArrowSpace lex(RelationKind::Lex);

    EXPECT_EQ(std::get<OrderInterval>(con.cone_set(dp(Rat(1, 3), 1), true)),
              OrderInterval::below({LexPair{Rat(1, 3), 1}, false}));
    EXPECT_EQ(std::get<OrderInterval>(lex.cone_set(dp(Rat(1, 2), 0), false)),
              OrderInterval::above({LexPair{Rat(1, 2), 0}, false}));
    // The constructed up-cone of a side-0 point is not an order interval.
    EXPECT_THROW(con.cone_set(dp(Rat(1, 2), 0), false), precondition_failed);

    std::optional<std::size_t> k = con.cone_nbhd_index(dp(Rat(1, 3), 1), dp(Rat(0), 1), true, 32);
    ASSERT_TRUE(k.has_value());
    EXPECT_EQ(*k, 2u);
    EXPECT_FALSE(con.cone_nbhd_index(dp(Rat(0), 1), dp(Rat(1, 3), 1), true, 8).has_value());
}

TEST(DoubleArrowSpaceTest, SetLevelRelationChecksAreExact) {
    DoubleArrowSpace con(RelationKind::Constructed);
    // A hull with side-0 members is never wholly related to a side-0 point...
    EXPECT_FALSE(con.all_related_to(SpaceSet(hull(Rat(1, 4), Rat(1, 2))), dp(Rat(1, 2), 0)));
    // ...but a pure side-1 singleton below the value is.
    SpaceSet singleton = SpaceSet(OrderInterval::bounded({LexPair{Rat(1, 4), 1}, true},
                                                         {LexPair{Rat(1, 4), 1}, true}));
    EXPECT_TRUE(con.all_related_to(singleton, dp(Rat(1, 2), 0)));

    EXPECT_TRUE(con.all_related_to(SpaceSet(hull(Rat(0), Rat(1, 4))), dp(Rat(1, 4), 1)));
    EXPECT_FALSE(con.all_related_to(SpaceSet(hull(Rat(0), Rat(1, 2))), dp(Rat(1, 4), 1)));
    // A hull's side-0 members are never related from a side-0 point...
    EXPECT_FALSE(con.all_related_from(dp(Rat(1, 4), 0), SpaceSet(hull(Rat(1, 4), Rat(1, 2)))));
    // ...but a pure side-1 singleton at or above the value is.
    SpaceSet above = SpaceSet(OrderInterval::bounded({LexPair{Rat(3, 8), 1}, true},
                                                     {LexPair{Rat(3, 8), 1}, true}));
    EXPECT_TRUE(con.all_related_from(dp(Rat(1, 4), 0), above));
    EXPECT_FALSE(con.all_related_from(dp(Rat(1, 2), 1), SpaceSet(hull(Rat(1, 4), Rat(1, 2)))));
}

TEST(SorgenfreySpaceTest, OneDirectionalPolicies) {
    SorgenfreyOrderSpace line;
    EXPECT_TRUE(line.contains(rp(Rat(5, 7))));
    EXPECT_FALSE(line.contains(dp(Rat(1, 2), 1)));
    EXPECT_TRUE(line.in_right_part(rp(Rat(1, 2))));
    EXPECT_TRUE(line.related(rp(Rat(1, 3)), rp(Rat(1, 2))));
    EXPECT_FALSE(line.related(rp(Rat(1, 2)), rp(Rat(1, 2))));

    EXPECT_EQ(std::get<IntervalDesc>(line.canonical_nbhd(rp(Rat(1, 2)), 2)),
              IntervalDesc::half_open(Rat(1, 2), Rat(3, 4)));

    EXPECT_TRUE(same_point(*line.pick_in(SpaceSet(IntervalDesc::whole_line()), true), rp(Rat(0))));
    EXPECT_TRUE(same_point(*line.pick_in(SpaceSet(IntervalDesc::half_open(Rat(2, 3), Rat(1))), true),
                           rp(Rat(2, 3))));
    EXPECT_FALSE(line.pick_in(SpaceSet(IntervalDesc::whole_line()), false).has_value());

    EXPECT_THROW(line.cone_set(rp(Rat(0)), true), precondition_failed);

    std::optional<std::size_t> k = line.cone_nbhd_index(rp(Rat(1, 2)), rp(Rat(1, 4)), true, 5);
    ASSERT_TRUE(k.has_value());
    EXPECT_EQ(*k, 2u);
    EXPECT_FALSE(line.cone_nbhd_index(rp(Rat(1, 4)), rp(Rat(1, 2)), true, 5).has_value());
    EXPECT_EQ(*line.cone_nbhd_index(rp(Rat(1, 4)), rp(Rat(1, 2)), false, 5), 0u);

    EXPECT_TRUE(line.all_related_to(SpaceSet(IntervalDesc::half_open(Rat(0), Rat(1, 2))),
                                    rp(Rat(1, 2))));
    EXPECT_FALSE(line.all_related_to(SpaceSet(IntervalDesc::whole_line()), rp(Rat(1, 2))));
    EXPECT_TRUE(line.all_related_from(rp(Rat(-1)),
                                      SpaceSet(IntervalDesc::half_open(Rat(0), Rat(1)))));
}

TEST(Registries, ResolveBuiltInNames) {
    EXPECT_EQ(make_oracle("vs")->name(), "vs");
    EXPECT_EQ(make_oracle("double-arrow-w")->name(), "double-arrow-w");
    EXPECT_THROW(make_oracle("nope"), invalid_input);
    EXPECT_EQ(make_space("sorgenfrey")->name(), "sorgenfrey");
    EXPECT_EQ(make_space("double-arrow-lex")->name(), "double-arrow-lex");
    EXPECT_EQ(make_space("double-arrow-constructed")->name(), "double-arrow-constructed");
    EXPECT_THROW(make_space("nope"), invalid_input);
}

TEST(DiagonalizeTest, SplitIntervalRunStopsAtTheFirstLeftRound) {
    WOracle w;
    DoubleArrowSpace space(RelationKind::Constructed);
    DiagTrace t = diagonalize(w, space, 4, 64);

    EXPECT_EQ(t.status, DiagStatus::S1Failure);
    EXPECT_EQ(t.stop_reason, "no base branch through the current node for the picked point");
    ASSERT_EQ(t.steps.size(), 1u);
    ASSERT_EQ(t.nodes.size(), 2u);
    EXPECT_EQ(t.nodes[1], (FinSeq{0, 0, 0, 1}));
    ASSERT_EQ(t.certificates.size(), 1u);

    const DiagStep& s0 = t.steps[0];
    EXPECT_EQ(s0.n, 0u);
    EXPECT_TRUE(s0.even);
    EXPECT_TRUE(same_point(s0.x, dp(Rat(0), 1)));
    EXPECT_TRUE(branch_equal(s0.q, unit_encode_branch(Rat(0)), 64));
    EXPECT_EQ(s0.m, 1u);
    EXPECT_TRUE(same_point(s0.xn, dp(Rat(1, 3), 1)));
    EXPECT_EQ(s0.cone_index, 2u);
    EXPECT_TRUE(branch_equal(s0.tn, unit_encode_branch(Rat(1, 3)), 64));
    EXPECT_EQ(s0.k, 2u);
    EXPECT_EQ(s0.a, 3u);
    EXPECT_EQ(s0.p_next, (FinSeq{0, 0, 0, 1}));
    EXPECT_EQ(std::get<OrderInterval>(s0.p_next_set),
              std::get<OrderInterval>(w_node(FinSeq{0, 0, 0, 1})));

    // The refused pick is the first non-dyadic value in the node's side-0
    // trace; its certificate names it.
    const nlohmann::json& cert = t.certificates[0];
    EXPECT_EQ(cert.value("kind", ""), "no-left-neighborhood");
    EXPECT_TRUE(same_point(space_point_from_json(cert.at("point")), dp(Rat(1, 11), 0)));
    EXPECT_EQ(cert.value("level", 0u), 4u);

    EXPECT_TRUE(verify_trace(t, space).holds());
    EXPECT_TRUE(verify_trace(t).holds());

    WOracle w2;
    CheckResult straddle = verify_straddle(t, w2, space, 1);
    EXPECT_EQ(straddle.verdict(), CheckResult::Verdict::Unknown);
    EXPECT_EQ(straddle.depth(), 1u);
    EXPECT_TRUE(verify_straddle(t, w2, space, 0).holds());
}

TEST(DiagonalizeTest, SorgenfreyFailsThePreconditionUpFront) {
    VsOracle vs;
    SorgenfreyOrderSpace line;
    DiagTrace t = diagonalize(vs, line, 2, 64);
    EXPECT_EQ(t.status, DiagStatus::PreconditionFailed);
    EXPECT_EQ(t.stop_reason, "the space offers no left-looking point: not bidirected");
    EXPECT_TRUE(t.steps.empty());
    ASSERT_EQ(t.nodes.size(), 1u);
    EXPECT_TRUE(t.nodes[0].empty());
}

TEST(DiagonalizeTest, ZeroStepsIsJustRunning) {
    WOracle w;
    DoubleArrowSpace space(RelationKind::Constructed);
    DiagTrace t = diagonalize(w, space, 0, 64);
    EXPECT_EQ(t.status, DiagStatus::Running);
    EXPECT_TRUE(t.steps.empty());
}

// A test-harness space over the rationals whose relation is maximally loose:
// every pair of distinct points is related both ways. Its cones are therefore
// the whole line minus a point, which the interval language over-approximates
// as the whole line, while the set-level relation checks stay exact. Dyadic
// points form the right part, so both parities always find picks, and the
// recursion runs to completion against the real-line scheme.
class ChaoticRationalSpace final : public BidirSpace {
  public:
    std::string name() const override { return "mock-chaotic"; }
    bool contains(const SpacePoint& z) const override {
        return std::holds_alternative<Rat>(z);
    }
    bool in_q(const SpacePoint& z) const override { return contains(z); }
    bool in_right_part(const SpacePoint& z) const override {
        return std::get<Rat>(z).is_dyadic();
    }
    bool related(const SpacePoint& a, const SpacePoint& b) const override {
        return !same_point(a, b);
    }
    SpaceSet canonical_nbhd(const SpacePoint& z, std::size_t k) const override {
        const Rat& v = std::get<Rat>(z);
        return IntervalDesc::half_open(v, v + pow2_neg(static_cast<unsigned long>(k)));
    }
    SpaceSet cone_set(const SpacePoint&, bool) const override {
        return IntervalDesc::whole_line();
    }
    std::optional<SpacePoint> pick_in(const SpaceSet& s, bool right_part) const override {
        const IntervalDesc& iv = std::get<IntervalDesc>(s);
        if (iv.kind() == IntervalDesc::Kind::Empty) return std::nullopt;
        if (iv.kind() == IntervalDesc::Kind::WholeLine) {
            return SpacePoint(right_part ? Rat(0) : Rat(1, 3));
        }
        // Node intervals have dyadic endpoints, so the low end is a right-part
        // point and the one-third point is a left-part point.
        if (right_part) return SpacePoint(iv.lo());
        return SpacePoint(iv.lo() + (iv.hi() - iv.lo()) / Rat(3));
    }
    std::optional<SpacePoint> pick_q_related(const SpaceSet& s, const SpacePoint& exclude,
                                             const SpacePoint&, bool) const override {
        const IntervalDesc& iv = std::get<IntervalDesc>(s);
        if (iv.kind() == IntervalDesc::Kind::Empty) return std::nullopt;
        if (iv.kind() == IntervalDesc::Kind::WholeLine) {
            Rat c(0);
            if (same_point(exclude, SpacePoint(c))) c = Rat(1);
            return SpacePoint(c);
        }
        Rat c = iv.lo();
        if (same_point(exclude, SpacePoint(c))) c = (iv.lo() + iv.hi()).scaled_down(1);
        return SpacePoint(c);
    }
    std::optional<std::size_t> cone_nbhd_index(const SpacePoint& y, const SpacePoint& x, bool down,
                                               std::size_t k_max) const override {
        for (std::size_t k = 0; k <= k_max; ++k) {
            if (set_subset_of(canonical_nbhd(x, k), cone_set(y, down))) return k;
        }
        return std::nullopt;
    }
    bool all_related_to(const SpaceSet& s, const SpacePoint& y) const override {
        return !member(y, s);
    }
    bool all_related_from(const SpacePoint& y, const SpaceSet& s) const override {
        return !member(y, s);
    }
};

TEST(DiagonalizeTest, ChaoticSpaceRunsToCompletionAndStraddles) {
    VsOracle vs;
    ChaoticRationalSpace space;
    DiagTrace t = diagonalize(vs, space, 4, 64);

    EXPECT_EQ(t.status, DiagStatus::S2RefutationReady);
    EXPECT_EQ(t.stop_reason, "all requested rounds completed");
    ASSERT_EQ(t.steps.size(), 4u);
    ASSERT_EQ(t.nodes.size(), 5u);

    const DiagStep& s0 = t.steps[0];
    EXPECT_TRUE(same_point(s0.x, rp(Rat(0))));
    EXPECT_EQ(s0.m, 1u);
    EXPECT_TRUE(same_point(s0.xn, rp(Rat(1, 2))));
    EXPECT_EQ(s0.k, 2u);
    EXPECT_EQ(s0.a, 3u);
    EXPECT_EQ(s0.p_next, (FinSeq{0, 0, 0, 1}));

    // Odd round: the node carries [1/8, 3/16); the left pick is its one-third
    // point and the test point is the midpoint of the punctured cut.
    const DiagStep& s1 = t.steps[1];
    EXPECT_FALSE(s1.even);
    EXPECT_TRUE(same_point(s1.x, rp(Rat(7, 48))));
    EXPECT_EQ(s1.m, 5u);
    EXPECT_TRUE(same_point(s1.xn, rp(Rat(29, 192))));
    EXPECT_EQ(s1.k, 6u);
    EXPECT_EQ(s1.a, 7u);
    EXPECT_EQ(s1.p_next.size(), 8u);

    EXPECT_TRUE(verify_trace(t, space).holds());
    // The recorded space name is not a built-in, so name resolution fails.
    EXPECT_THROW(verify_trace(t), invalid_input);

    CheckResult straddle = verify_straddle(t, vs, space, 1);
    EXPECT_TRUE(straddle.holds());
    EXPECT_EQ(straddle.depth(), 1u);
    // Level 2 would need an even round with index above 2; the trace has none.
    EXPECT_EQ(verify_straddle(t, vs, space, 2).verdict(), CheckResult::Verdict::Unknown);
}

TEST(RefuteBaseBranch, SideOneCandidateSurvivesOnTheSplitInterval) {
    WOracle w;
    DoubleArrowSpace space(RelationKind::Constructed);
    CheckResult r = refute_base_branch(w, space, unit_encode_branch(Rat(1, 3)), 8);
    ASSERT_TRUE(r.failed());
    EXPECT_TRUE(same_point(space_point_from_json(r.witness().at("surviving_candidate")),
                           dp(Rat(1, 3), 1)));

    ASSERT_EQ(r.witness().at("reports").size(), 2u);
    bool saw_refuted_side0 = false;
    for (const auto& report : r.witness().at("reports")) {
        SpacePoint cand = space_point_from_json(report.at("candidate"));
        if (same_point(cand, dp(Rat(1, 3), 0))) {
            saw_refuted_side0 = true;
            EXPECT_TRUE(report.value("refuted", false));
            ASSERT_EQ(report.at("witnesses").size(), 8u);
            for (const auto& item : report.at("witnesses")) {
                SpacePoint y = space_point_from_json(item.at("witness"));
                OrderInterval cut = order_interval_from_json(item.at("cut_set"));
                EXPECT_TRUE(member(y, SpaceSet(cut)));
                // A left-looking candidate is refuted by a Q-point it relates
                // forward to; here that point is always the side-1 twin.
                EXPECT_TRUE(same_point(y, dp(Rat(1, 3), 1)));
                EXPECT_TRUE(space.related(cand, y));
            }
        } else {
            EXPECT_FALSE(report.value("refuted", true));
        }
    }
    EXPECT_TRUE(saw_refuted_side0);
}

TEST(RefuteBaseBranch, DyadicBranchesAndZeroBudgetEdges) {
    WOracle w;
    DoubleArrowSpace space(RelationKind::Constructed);
    // A dyadic value has no side-0 twin; its lone side-1 candidate survives.
    CheckResult r = refute_base_branch(w, space, unit_encode_branch(Rat(3, 4)), 6);
    ASSERT_TRUE(r.failed());
    EXPECT_TRUE(same_point(space_point_from_json(r.witness().at("surviving_candidate")),
                           dp(Rat(3, 4), 1)));

    // With no levels to test, every candidate is vacuously refuted.
    EXPECT_TRUE(refute_base_branch(w, space, unit_encode_branch(Rat(1, 3)), 0).holds());
}

}  // namespace
}  // namespace souslin
