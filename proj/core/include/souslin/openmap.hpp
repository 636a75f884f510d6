#pragma once

#include "souslin/check.hpp"
#include "souslin/doublearrow.hpp"
#include "souslin/scheme.hpp"
#include "souslin/seqtree.hpp"
#include "souslin/topology.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace souslin {

// Point and finitely-describable subset of a supported target space: the
// rational Sorgenfrey line, or the split interval with order intervals.
using SpacePoint = std::variant<Rat, DoubleArrowPoint>;
using SpaceSet = std::variant<IntervalDesc, OrderInterval>;

bool same_point(const SpacePoint& a, const SpacePoint& b);
// Exact membership; false when the point and set belong to different spaces.
bool member(const SpacePoint& z, const SpaceSet& s);
bool set_subset_of(const SpaceSet& a, const SpaceSet& b);
std::string point_str(const SpacePoint& z);
std::string set_str(const SpaceSet& s);

// A candidate scheme on a target space, queried abstractly so the same
// procedures can run against the real-line scheme, the split-interval scheme,
// or deliberately broken variants. Implementations must be pure.
class SchemeOracle {
  public:
    virtual ~SchemeOracle() = default;

    virtual std::string name() const = 0;

    // The set attached to node a; node_set(<>) is the whole space.
    virtual SpaceSet node_set(const FinSeq& a) const = 0;

    // A base branch of x agreeing with q on the first n entries, if one exists.
    virtual std::optional<Branch> s1_witness(const SpacePoint& x, const Branch& q,
                                             std::size_t n) const = 0;

    // The least m with cut(q, m) + {x} contained in target, if one exists
    // within the oracle's search horizon.
    virtual std::optional<std::size_t> shrink_index(const Branch& q, const SpacePoint& x,
                                                    const SpaceSet& target) const = 0;

    // Candidate members of the intersection of the node sets along q, found at
    // the given depth. May over-approximate; callers re-verify.
    virtual std::vector<SpacePoint> fruit_members(const Branch& q, std::size_t depth) const = 0;

    // The set cut(q, m) + {z}: the union of node sets lexicographically past q
    // at agreement level m, with z added, as one exact set descriptor.
    virtual SpaceSet cut_with_point(const Branch& q, std::size_t m, const SpacePoint& z) const = 0;

    // Machine-checkable certificate accompanying an s1_witness failure; the
    // default reports only that no certificate is produced.
    virtual nlohmann::json s1_failure_certificate(const SpacePoint& x, const Branch& q,
                                                  std::size_t n, std::size_t depth) const;
};

// The real-line scheme as an oracle over the rational Sorgenfrey line.
class VsOracle final : public SchemeOracle {
  public:
    std::string name() const override { return "vs"; }
    SpaceSet node_set(const FinSeq& a) const override;
    std::optional<Branch> s1_witness(const SpacePoint& x, const Branch& q,
                                     std::size_t n) const override;
    std::optional<std::size_t> shrink_index(const Branch& q, const SpacePoint& x,
                                            const SpaceSet& target) const override;
    std::vector<SpacePoint> fruit_members(const Branch& q, std::size_t depth) const override;
    SpaceSet cut_with_point(const Branch& q, std::size_t m, const SpacePoint& z) const override;
};

struct unsupported_map : invalid_input {
    using invalid_input::invalid_input;
};

// Built-in open-map descriptors for the pushforward construction.
enum class MapDescriptor {
    // Sequence space onto the Sorgenfrey line via the coding walk.
    DecodeToSorgenfrey,
    // Unit-interval scheme into the split interval through the side-1 copy,
    // completed to the open order-interval hull.
    SideOneEmbeddingHull,
};

MapDescriptor map_descriptor_from_name(const std::string& name);
std::string map_descriptor_name(MapDescriptor f);

// Exact image descriptor of the cylinder of a under the given map.
SpaceSet pushforward_node(MapDescriptor f, const FinSeq& a);

// Outcome for one fruit candidate of the induced-point search: which parts of
// the base-branch evidence held, with the violating detail when one failed.
struct PointCandidateReport {
    SpacePoint candidate;
    bool in_every_cut = false;
    bool cuts_nested = false;
    // Least k whose canonical neighborhood contains some cut (absent = fail).
    std::optional<std::size_t> neighborhood_index;
    // True when every canonical neighborhood up to the budget absorbs some cut.
    bool base_evidence = false;
    nlohmann::json detail;
};

// Result of resolving the point a branch converges to: the surviving candidate
// (absent = NoBasePoint, an ordinary reportable outcome, not an error), the
// aggregate evidence, and the per-candidate audit trail.
struct InducedPointResult {
    std::optional<SpacePoint> point;
    CheckResult evidence;
    std::vector<PointCandidateReport> candidates;

    bool no_base_point() const { return !point.has_value(); }
};

// Finds the point whose bounded base-branch evidence succeeds along p: every
// fruit candidate is screened against the cut-with-point family (membership,
// nesting, canonical-neighborhood absorption both ways). At most one candidate
// can survive on the supported spaces.
InducedPointResult induced_point(const SchemeOracle& oracle, const Branch& p,
                                 std::size_t depth_budget);

// Checks the image identity "the induced map sends the sequence-space basic
// neighborhood (p, n) onto the target basic neighborhood (induced point, n)":
// forward by mapping enumerated members of the source cut through the oracle,
// backward by lifting enumerated target members to source branches. Reports
// HoldsToDepth(n) or the first failing member.
CheckResult image_identity_check(const SchemeOracle& oracle, const Branch& p, std::size_t n,
                                 std::size_t samples, std::size_t depth_budget = 64);

}  // namespace souslin
