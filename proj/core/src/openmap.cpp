#include "souslin/openmap.hpp"

#include "souslin/diagonal.hpp"
#include "souslin/serialize.hpp"

#include <algorithm>

namespace souslin {

bool same_point(const SpacePoint& a, const SpacePoint& b) {
    if (a.index() != b.index()) return false;
    if (std::holds_alternative<Rat>(a)) return std::get<Rat>(a) == std::get<Rat>(b);
    return std::get<DoubleArrowPoint>(a) == std::get<DoubleArrowPoint>(b);
}

bool member(const SpacePoint& z, const SpaceSet& s) {
    if (std::holds_alternative<Rat>(z) && std::holds_alternative<IntervalDesc>(s)) {
        return std::get<IntervalDesc>(s).contains(std::get<Rat>(z));
    }
    if (std::holds_alternative<DoubleArrowPoint>(z) && std::holds_alternative<OrderInterval>(s)) {
        return std::get<OrderInterval>(s).contains(std::get<DoubleArrowPoint>(z));
    }
    return false;
}

bool set_subset_of(const SpaceSet& a, const SpaceSet& b) {
    if (std::holds_alternative<IntervalDesc>(a) && std::holds_alternative<IntervalDesc>(b)) {
        return std::get<IntervalDesc>(a).subset_of(std::get<IntervalDesc>(b));
    }
    if (std::holds_alternative<OrderInterval>(a) && std::holds_alternative<OrderInterval>(b)) {
        return std::get<OrderInterval>(a).subset_of(std::get<OrderInterval>(b));
    }
    return false;
}

std::string point_str(const SpacePoint& z) {
    if (std::holds_alternative<Rat>(z)) return std::get<Rat>(z).str();
    return std::get<DoubleArrowPoint>(z).str();
}

std::string set_str(const SpaceSet& s) {
    if (std::holds_alternative<IntervalDesc>(s)) return std::get<IntervalDesc>(s).str();
    return std::get<OrderInterval>(s).str();
}

nlohmann::json SchemeOracle::s1_failure_certificate(const SpacePoint& x, const Branch& q,
                                                    std::size_t n, std::size_t depth) const {
    (void)q;
    (void)depth;
    return nlohmann::json{{"kind", "none"},
                          {"point", to_json(x)},
                          {"level", n},
                          {"note", "this oracle produces no failure certificate"}};
}

// ---------------------------------------------------------------------------
// The real-line scheme as an oracle

namespace {

constexpr std::size_t kOracleBudget = 64;
constexpr std::size_t kShrinkHorizon = 128;

Rat require_rat(const SpacePoint& z, const char* who) {
    if (!std::holds_alternative<Rat>(z)) {
        throw invalid_input(std::string(who) + ": expected a rational Sorgenfrey point");
    }
    return std::get<Rat>(z);
}

bool is_leftmost(const Branch& q) {
    return branch_equal(q, Branch(FinSeq(), TailZero{}), kOracleBudget);
}

}  // namespace

SpaceSet VsOracle::node_set(const FinSeq& a) const { return node_interval(a); }

std::optional<Branch> VsOracle::s1_witness(const SpacePoint& x, const Branch& q,
                                           std::size_t n) const {
    const Rat v = require_rat(x, "VsOracle::s1_witness");
    Branch t = encode_branch(v);
    if (t.take(n) != q.take(n)) return std::nullopt;
    return t;
}

std::optional<std::size_t> VsOracle::shrink_index(const Branch& q, const SpacePoint& x,
                                                  const SpaceSet& target) const {
    const Rat v = require_rat(x, "VsOracle::shrink_index");
    const DecodeResult d = decode(q, kOracleBudget);
    if (!d.exact || d.value != v) {
        throw precondition_failed("VsOracle::shrink_index: point is not the branch's value");
    }
    for (std::size_t m = 0; m <= kShrinkHorizon; ++m) {
        try {
            if (set_subset_of(cut_with_point(q, m, x), target)) return m;
        } catch (const precondition_failed&) {
            // level-0 cuts of non-leftmost branches have no descriptor; skip
        }
    }
    return std::nullopt;
}

std::vector<SpacePoint> VsOracle::fruit_members(const Branch& q, std::size_t depth) const {
    return {SpacePoint(decode(q, std::max<std::size_t>(depth, 1)).value)};
}

SpaceSet VsOracle::cut_with_point(const Branch& q, std::size_t m, const SpacePoint& z) const {
    const Rat v = require_rat(z, "VsOracle::cut_with_point");
    if (m == 0) {
        if (is_leftmost(q)) return IntervalDesc::whole_line();
        throw precondition_failed(
            "VsOracle::cut_with_point: the level-0 cut of a non-leftmost branch is not an "
            "interval");
    }
    const DecodeResult d = decode(q, kOracleBudget);
    if (!d.exact || d.value != v) {
        throw precondition_failed("VsOracle::cut_with_point: point is not the branch's value");
    }
    return IntervalDesc::half_open(v, node_interval(q.take(m)).hi());
}

// ---------------------------------------------------------------------------
// Pushforward descriptors

MapDescriptor map_descriptor_from_name(const std::string& name) {
    if (name == "decode-map") return MapDescriptor::DecodeToSorgenfrey;
    if (name == "double-arrow-w-map") return MapDescriptor::SideOneEmbeddingHull;
    throw unsupported_map("unknown map descriptor: " + name);
}

std::string map_descriptor_name(MapDescriptor f) {
    return f == MapDescriptor::DecodeToSorgenfrey ? "decode-map" : "double-arrow-w-map";
}

SpaceSet pushforward_node(MapDescriptor f, const FinSeq& a) {
    switch (f) {
        case MapDescriptor::DecodeToSorgenfrey: return node_interval(a);
        case MapDescriptor::SideOneEmbeddingHull: return w_node(a);
    }
    throw unsupported_map("unhandled map descriptor");
}

// ---------------------------------------------------------------------------
// Induced point

namespace {

// Canonical shrinking neighborhoods of a target point, used to audit that the
// cut family is a neighborhood base there.
SpaceSet canonical_nbhd_of(const SpacePoint& z, std::size_t k) {
    if (std::holds_alternative<Rat>(z)) {
        const Rat& v = std::get<Rat>(z);
        return IntervalDesc::half_open(v, v + pow2_neg(static_cast<unsigned long>(k)));
    }
    return nbhd_basic(std::get<DoubleArrowPoint>(z), k);
}

}  // namespace

InducedPointResult induced_point(const SchemeOracle& oracle, const Branch& p,
                                 std::size_t depth_budget) {
    const std::size_t m_max = std::min<std::size_t>(std::max<std::size_t>(depth_budget, 2), 10);
    const std::size_t k_max = 8;

    InducedPointResult out{std::nullopt, CheckResult::holds_to_depth(m_max), {}};
    std::vector<SpacePoint> survivors;

    for (const SpacePoint& z : oracle.fruit_members(p, depth_budget)) {
        PointCandidateReport rep;
        rep.candidate = z;
        rep.detail = nlohmann::json::object();

        std::vector<SpaceSet> cuts;
        for (std::size_t m = 1; m <= m_max; ++m) cuts.push_back(oracle.cut_with_point(p, m, z));

        rep.in_every_cut = true;
        for (std::size_t i = 0; i < cuts.size(); ++i) {
            if (!member(z, cuts[i])) {
                rep.in_every_cut = false;
                rep.detail["not_in_cut_level"] = i + 1;
                break;
            }
        }
        rep.cuts_nested = true;
        for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
            if (!set_subset_of(cuts[i + 1], cuts[i])) {
                rep.cuts_nested = false;
                rep.detail["nesting_broken_at"] = i + 1;
                break;
            }
        }

        // Base property: every canonical neighborhood absorbs some cut.
        rep.base_evidence = true;
        for (std::size_t k = 0; k <= k_max; ++k) {
            bool absorbed = false;
            for (const SpaceSet& c : cuts) {
                if (set_subset_of(c, canonical_nbhd_of(z, k))) {
                    absorbed = true;
                    break;
                }
            }
            if (absorbed && !rep.neighborhood_index) rep.neighborhood_index = k;
            if (!absorbed) {
                rep.base_evidence = false;
                rep.detail["unabsorbed_neighborhood"] = k;
                break;
            }
        }
        // Neighborhood property: every cut is itself a neighborhood of z. Cut
        // widths shrink geometrically with a level-dependent factor, so the
        // canonical index needed grows with the entry sum; scan adaptively
        // with a generous guard instead of a fixed horizon.
        bool cuts_are_neighborhoods = true;
        for (std::size_t i = 0; i < cuts.size() && cuts_are_neighborhoods; ++i) {
            bool holds_nbhd = false;
            if (member(z, cuts[i])) {
                for (std::size_t k = 0; k <= 4096; ++k) {
                    if (set_subset_of(canonical_nbhd_of(z, k), cuts[i])) {
                        holds_nbhd = true;
                        break;
                    }
                }
            }
            if (!holds_nbhd) {
                cuts_are_neighborhoods = false;
                rep.detail["cut_not_a_neighborhood"] = i + 1;
            }
        }
        rep.detail["cuts_are_neighborhoods"] = cuts_are_neighborhoods;

        const bool passes = rep.in_every_cut && rep.cuts_nested && rep.base_evidence &&
                            rep.neighborhood_index.has_value() && cuts_are_neighborhoods;
        if (passes) survivors.push_back(z);
        out.candidates.push_back(std::move(rep));
    }

    if (survivors.size() == 1) {
        out.point = survivors.front();
        out.evidence = CheckResult::holds_to_depth(m_max);
        return out;
    }
    nlohmann::json reports = nlohmann::json::array();
    for (const auto& r : out.candidates) reports.push_back(to_json(r));
    if (survivors.empty()) {
        out.evidence = CheckResult::fails_with_witness(
            {{"reason", "no fruit candidate passes the base-branch evidence"},
             {"candidates", reports}});
    } else {
        out.evidence = CheckResult::fails_with_witness(
            {{"reason", "multiple candidates passed; the oracle separates points incorrectly"},
             {"candidates", reports}});
    }
    return out;
}

// ---------------------------------------------------------------------------
// Image identity

namespace {

// Deterministic members of cut(S, p, n) + {p} in the sequence space: p itself,
// then branches peeling off lexicographically above p at levels >= n.
std::vector<Branch> enumerate_source_members(const Branch& p, std::size_t n,
                                             std::size_t samples) {
    std::vector<Branch> out{p};
    std::size_t level = n;
    SeqEntry bump = 1;
    while (out.size() < samples) {
        out.emplace_back(p.take(level).extended(p.at(level) + bump), TailZero{});
        if (out.size() < samples) {
            out.emplace_back(p.take(level).extended(p.at(level) + bump), TailConst{1});
        }
        if (bump == 1) {
            bump = 2;
        } else {
            bump = 1;
            ++level;
        }
    }
    return out;
}

// Deterministic members of a target-space set, geometrically accumulating
// toward its left edge.
std::vector<SpacePoint> enumerate_target_members(const SpaceSet& s, std::size_t count) {
    std::vector<SpacePoint> out;
    if (std::holds_alternative<IntervalDesc>(s)) {
        const IntervalDesc& d = std::get<IntervalDesc>(s);
        if (d.kind() == IntervalDesc::Kind::WholeLine) {
            const Rat base[] = {Rat(0), Rat(1, 2), Rat(-3, 2), Rat(7, 4), Rat(-13, 3)};
            for (std::size_t i = 0; i < count; ++i) {
                out.emplace_back(base[i % 5] + Rat(static_cast<long>(i / 5)));
            }
            return out;
        }
        if (d.kind() == IntervalDesc::Kind::Empty) return out;
        out.emplace_back(d.lo());
        for (std::size_t i = 1; i < count; ++i) {
            out.emplace_back(d.lo() + d.length().scaled_down(static_cast<unsigned long>(i)));
        }
        return out;
    }
    const OrderInterval& oi = std::get<OrderInterval>(s);
    RatInterval t = side1_trace(oi);
    // Clip to the side-1 coordinate range.
    if (!t.lo || *t.lo < Rat(0)) t.lo = Rat(0), t.lo_strict = false;
    if (!t.hi || *t.hi > Rat(1)) t.hi = Rat(1), t.hi_strict = true;
    if (t.empty_over_rationals()) return out;
    const Rat lo = t.lo_strict ? *t.lo + (*t.hi - *t.lo).scaled_down(8) : *t.lo;
    const Rat len = *t.hi - lo;
    for (std::size_t i = 0; i < count; ++i) {
        const Rat v = lo + len.scaled_down(static_cast<unsigned long>(i + 1));
        if (t.contains(v) && v >= Rat(0) && v < Rat(1)) out.emplace_back(DoubleArrowPoint(v, 1));
    }
    if (t.contains(lo) && !t.lo_strict) out.emplace_back(DoubleArrowPoint(lo, 1));
    return out;
}

}  // namespace

CheckResult image_identity_check(const SchemeOracle& oracle, const Branch& p, std::size_t n,
                                 std::size_t samples, std::size_t depth_budget) {
    const InducedPointResult fp = induced_point(oracle, p, depth_budget);
    if (fp.no_base_point()) return fp.evidence;
    const SpacePoint& fpx = *fp.point;
    const SpaceSet target = oracle.cut_with_point(p, n, fpx);

    // Forward: members of the source basic neighborhood map into the target one.
    for (const Branch& z : enumerate_source_members(p, n, samples)) {
        if (basic_nbhd_member(z, p, n, depth_budget) != Trivalent::True) {
            return CheckResult::fails_with_witness(
                {{"direction", "forward"},
                 {"reason", "enumerated source member fails membership"},
                 {"member", to_json(z)}});
        }
        const InducedPointResult fz = induced_point(oracle, z, depth_budget);
        if (fz.no_base_point()) {
            return CheckResult::fails_with_witness(
                {{"direction", "forward"},
                 {"reason", "source member has no induced point"},
                 {"member", to_json(z)}});
        }
        if (!member(*fz.point, target) && !same_point(*fz.point, fpx)) {
            return CheckResult::fails_with_witness({{"direction", "forward"},
                                                    {"member", to_json(z)},
                                                    {"image", to_json(*fz.point)},
                                                    {"target", to_json(target)}});
        }
    }

    // Backward: members of the target neighborhood lift to source members.
    for (const SpacePoint& y : enumerate_target_members(target, samples)) {
        const auto t = oracle.s1_witness(y, p, n);
        if (!t) {
            return CheckResult::fails_with_witness({{"direction", "backward"},
                                                    {"reason", "target member has no lift"},
                                                    {"target_member", to_json(y)}});
        }
        const bool in_source = branch_equal(*t, p, depth_budget) ||
                               in_wedge(*t, p, n, depth_budget) == Trivalent::True;
        if (!in_source) {
            return CheckResult::fails_with_witness(
                {{"direction", "backward"},
                 {"reason", "lift escapes the source neighborhood"},
                 {"target_member", to_json(y)},
                 {"lift", to_json(*t)}});
        }
    }
    return CheckResult::holds_to_depth(n);
}

}  // namespace souslin
