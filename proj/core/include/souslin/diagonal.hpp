#pragma once

#include "souslin/check.hpp"
#include "souslin/doublearrow.hpp"
#include "souslin/openmap.hpp"
#include "souslin/seqtree.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace souslin {

// Node set of the split-interval demonstration scheme: the whole reduced space
// at the root; otherwise the order interval [(lo,1),(hi,1)) over the node's
// unit-scheme value interval [lo,hi). These hulls are order-open and partition
// each parent exactly within the reduced space.
SpaceSet w_node(const FinSeq& a);

// The demonstration scheme as an oracle over the split interval. Base-branch
// witnesses exist exactly for side-1 points; side-0 queries fail and produce a
// re-checkable emptiness certificate.
class WOracle final : public SchemeOracle {
  public:
    std::string name() const override { return "double-arrow-w"; }
    SpaceSet node_set(const FinSeq& a) const override;
    std::optional<Branch> s1_witness(const SpacePoint& x, const Branch& q,
                                     std::size_t n) const override;
    std::optional<std::size_t> shrink_index(const Branch& q, const SpacePoint& x,
                                            const SpaceSet& target) const override;
    std::vector<SpacePoint> fruit_members(const Branch& q, std::size_t depth) const override;
    SpaceSet cut_with_point(const Branch& q, std::size_t m, const SpacePoint& z) const override;
    nlohmann::json s1_failure_certificate(const SpacePoint& x, const Branch& q, std::size_t n,
                                          std::size_t depth) const override;
};

// Exhaustive bounded check that the demonstration scheme's children partition
// each parent exactly in the reduced space: pairwise disjoint, left edge and
// inner edges matched, the residual past the finite children accounted
// symbolically together with the parent's absorbed top point.
CheckResult w_partition_check(std::size_t depth, SeqEntry children_per_node);

// A space on which the diagonalization runs: carrier, dense test set Q, the
// two-sided looking assignment, the relation R, canonical neighborhoods, and
// the deterministic choice policies. Implementations must be pure; set-level
// queries must be exact for the sets the procedures produce.
class BidirSpace {
  public:
    virtual ~BidirSpace() = default;

    virtual std::string name() const = 0;
    virtual bool contains(const SpacePoint& z) const = 0;
    virtual bool in_q(const SpacePoint& z) const = 0;
    // True when z belongs to the part asserted to look R-right.
    virtual bool in_right_part(const SpacePoint& z) const = 0;
    virtual bool related(const SpacePoint& a, const SpacePoint& b) const = 0;
    virtual SpaceSet canonical_nbhd(const SpacePoint& z, std::size_t k) const = 0;

    // The relation cone below y (down: all z with z R y) or above y (all z
    // with y R z) as a set descriptor.
    virtual SpaceSet cone_set(const SpacePoint& y, bool down) const = 0;

    // Policy pick of a space point in s from the requested part; absent means
    // the part has no point there (exact for the supported set shapes).
    virtual std::optional<SpacePoint> pick_in(const SpaceSet& s, bool right_part) const = 0;

    // Policy pick of a Q-point in s, different from exclude, standing in the
    // requested relation to anchor (below: pick R anchor; above: anchor R
    // pick). Absent means no such point exists.
    virtual std::optional<SpacePoint> pick_q_related(const SpaceSet& s, const SpacePoint& exclude,
                                                     const SpacePoint& anchor,
                                                     bool below) const = 0;

    // Least k <= k_max with canonical_nbhd(x, k) inside the cone of y.
    virtual std::optional<std::size_t> cone_nbhd_index(const SpacePoint& y, const SpacePoint& x,
                                                       bool down, std::size_t k_max) const = 0;

    // Exact set-level relation checks: every member of s is related to y
    // (below) / y is related to every member of s (above).
    virtual bool all_related_to(const SpaceSet& s, const SpacePoint& y) const = 0;
    virtual bool all_related_from(const SpacePoint& y, const SpaceSet& s) const = 0;
};

// The split interval (minus its maximum) under a selectable relation; Q and
// the look assignment follow the relation: Lex uses the whole space as Q,
// Constructed uses the side-1 copy. Side 1 looks right, side 0 looks left.
class DoubleArrowSpace final : public BidirSpace {
  public:
    explicit DoubleArrowSpace(RelationKind rel) : rel_(rel) {}

    std::string name() const override;
    bool contains(const SpacePoint& z) const override;
    bool in_q(const SpacePoint& z) const override;
    bool in_right_part(const SpacePoint& z) const override;
    bool related(const SpacePoint& a, const SpacePoint& b) const override;
    SpaceSet canonical_nbhd(const SpacePoint& z, std::size_t k) const override;
    SpaceSet cone_set(const SpacePoint& y, bool down) const override;
    std::optional<SpacePoint> pick_in(const SpaceSet& s, bool right_part) const override;
    std::optional<SpacePoint> pick_q_related(const SpaceSet& s, const SpacePoint& exclude,
                                             const SpacePoint& anchor, bool below) const override;
    std::optional<std::size_t> cone_nbhd_index(const SpacePoint& y, const SpacePoint& x, bool down,
                                               std::size_t k_max) const override;
    bool all_related_to(const SpaceSet& s, const SpacePoint& y) const override;
    bool all_related_from(const SpacePoint& y, const SpaceSet& s) const override;

    RelationKind relation_kind() const { return rel_; }

  private:
    RelationKind rel_;
};

// The rational Sorgenfrey line under its natural order: every point looks
// right, none looks left. Diagonalization on it fails its precondition as soon
// as a left-looking point is required — the line is not bidirected.
class SorgenfreyOrderSpace final : public BidirSpace {
  public:
    std::string name() const override { return "sorgenfrey"; }
    bool contains(const SpacePoint& z) const override;
    bool in_q(const SpacePoint& z) const override;
    bool in_right_part(const SpacePoint& z) const override;
    bool related(const SpacePoint& a, const SpacePoint& b) const override;
    SpaceSet canonical_nbhd(const SpacePoint& z, std::size_t k) const override;
    SpaceSet cone_set(const SpacePoint& y, bool down) const override;
    std::optional<SpacePoint> pick_in(const SpaceSet& s, bool right_part) const override;
    std::optional<SpacePoint> pick_q_related(const SpaceSet& s, const SpacePoint& exclude,
                                             const SpacePoint& anchor, bool below) const override;
    std::optional<std::size_t> cone_nbhd_index(const SpacePoint& y, const SpacePoint& x, bool down,
                                               std::size_t k_max) const override;
    bool all_related_to(const SpaceSet& s, const SpacePoint& y) const override;
    bool all_related_from(const SpacePoint& y, const SpaceSet& s) const override;
};

// Registry of the built-in oracles and spaces, for resolving the names
// embedded in serialized traces.
std::unique_ptr<SchemeOracle> make_oracle(const std::string& name);
std::unique_ptr<BidirSpace> make_space(const std::string& name);

// One completed round of the diagonal recursion, with every intermediate
// object the verification procedures need recorded in place.
struct DiagStep {
    std::size_t n = 0;
    bool even = true;
    SpacePoint x;          // the policy pick in the current node, side per parity
    Branch q;              // base-branch witness through the current node
    std::size_t m = 0;     // shrink level: cut(q, m) + {x} inside the node
    SpacePoint xn;         // Q-point in the cut whose cone absorbs a neighborhood of x
    std::size_t cone_index = 0;  // that neighborhood's canonical index
    Branch tn;             // branch of xn through (q, m)
    std::size_t k = 0;     // level past the q/tn divergence
    std::size_t a = 0;     // second shrink level: cut(q, a) + {x} inside the cone
    FinSeq p_next;         // chosen extension, one level past a
    SpaceSet p_next_set;   // node set of p_next, recorded for offline checks

    DiagStep() : x(Rat(0)), xn(Rat(0)), p_next_set(IntervalDesc::empty()) {}
};

enum class DiagStatus {
    Running,             // no failure; fewer steps than needed to conclude anything
    S2RefutationReady,   // all requested steps completed; straddle evidence available
    S1Failure,           // a base-branch query came back empty (with certificate)
    PreconditionFailed,  // the space failed a bidirectedness check the run needed
    BudgetExhausted,     // a comparison or search ran out of budget
};

std::string diag_status_name(DiagStatus s);

// Full record of a diagonalization run: the increasing node sequence, the
// per-step data, and how the run ended. Serializes to JSON and re-verifies
// offline (without the oracle) via the recorded node sets.
struct DiagTrace {
    std::string oracle_name;
    std::string space_name;
    std::vector<FinSeq> nodes;  // p_0 = <> first; one extra entry per completed step
    std::vector<DiagStep> steps;
    DiagStatus status = DiagStatus::Running;
    std::string stop_reason;
    nlohmann::json certificates = nlohmann::json::array();
};

// Runs the diagonal recursion against the oracle on the space for up to
// max_steps rounds under the deterministic policies: even rounds pick a
// right-looking point and push the tail of the construction strictly R-below
// it; odd rounds mirror. Stops early with S1Failure (plus the oracle's
// certificate), PreconditionFailed, or BudgetExhausted; a full run is
// S2RefutationReady and max_steps = 0 returns Running.
DiagTrace diagonalize(const SchemeOracle& oracle, const BidirSpace& space, std::size_t max_steps,
                      std::size_t depth_budget);

// Re-checks every recorded step invariant of a finished trace offline: the
// nodes strictly extend, each recorded branch threads its step's data (prefix
// and lex constraints), the cone neighborhoods verify, and the recorded node
// sets sit on the required side of each x_n. Needs only the space (for the
// relation and neighborhoods), not the oracle.
CheckResult verify_trace(const DiagTrace& trace, const BidirSpace& space);
// Same, resolving the space from the name recorded in the trace.
CheckResult verify_trace(const DiagTrace& trace);

// Verifies the straddle property of a completed trace: for each level
// k <= k_max there are a later even step and a later odd step whose Q-points
// lie in the cut past the assembled branch at level k, with every fruit
// candidate R-between them. Unknown (with the shortfall) when the trace lacks
// the required completed steps.
CheckResult verify_straddle(const DiagTrace& trace, const SchemeOracle& oracle,
                            const BidirSpace& space, std::size_t k_max,
                            std::size_t depth_budget = 64);
CheckResult verify_straddle(const DiagTrace& trace, std::size_t k_max,
                            std::size_t depth_budget = 64);

// Attempts to certify that p is a base branch of no point: for every fruit
// candidate z, and every k <= k_max, exhibits a Q-point of cut(p, k) on the
// wrong R-side of z for z's looking direction. HoldsToDepth(k_max) when every
// candidate is refuted; FailsWithWitness naming the surviving candidate (the
// point p genuinely serves, with the per-candidate reports attached) otherwise.
CheckResult refute_base_branch(const SchemeOracle& oracle, const BidirSpace& space,
                               const Branch& p, std::size_t k_max,
                               std::size_t depth_budget = 64);

}  // namespace souslin
