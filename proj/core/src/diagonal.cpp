#include "souslin/diagonal.hpp"

#include "souslin/scheme.hpp"
#include "souslin/serialize.hpp"

#include <algorithm>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace souslin {

namespace {

using nlohmann::json;

constexpr std::size_t kShrinkHorizon = 128;
constexpr std::size_t kValueBudget = 96;

// ----- rational-interval utilities (value traces of order intervals) -----

RatInterval rat_intersect(const RatInterval& a, const RatInterval& b) {
    RatInterval out;
    if (a.lo && b.lo) {
        if (*a.lo > *b.lo) {
            out.lo = a.lo;
            out.lo_strict = a.lo_strict;
        } else if (*b.lo > *a.lo) {
            out.lo = b.lo;
            out.lo_strict = b.lo_strict;
        } else {
            out.lo = a.lo;
            out.lo_strict = a.lo_strict || b.lo_strict;
        }
    } else if (a.lo) {
        out.lo = a.lo;
        out.lo_strict = a.lo_strict;
    } else if (b.lo) {
        out.lo = b.lo;
        out.lo_strict = b.lo_strict;
    }
    if (a.hi && b.hi) {
        if (*a.hi < *b.hi) {
            out.hi = a.hi;
            out.hi_strict = a.hi_strict;
        } else if (*b.hi < *a.hi) {
            out.hi = b.hi;
            out.hi_strict = b.hi_strict;
        } else {
            out.hi = a.hi;
            out.hi_strict = a.hi_strict || b.hi_strict;
        }
    } else if (a.hi) {
        out.hi = a.hi;
        out.hi_strict = a.hi_strict;
    } else if (b.hi) {
        out.hi = b.hi;
        out.hi_strict = b.hi_strict;
    }
    return out;
}

// Removes one value, strictifying a matching weak endpoint or splitting the
// interval in two around an interior point.
std::vector<RatInterval> rat_puncture(const RatInterval& t, const Rat& v) {
    if (!t.contains(v)) return {t};
    if (t.lo && *t.lo == v) {
        RatInterval u = t;
        u.lo_strict = true;
        return {u};
    }
    if (t.hi && *t.hi == v) {
        RatInterval u = t;
        u.hi_strict = true;
        return {u};
    }
    RatInterval left = t;
    left.hi = v;
    left.hi_strict = true;
    RatInterval right = t;
    right.lo = v;
    right.lo_strict = true;
    return {left, right};
}

// Side-1 values actually present in the reduced split interval: [0, 1).
RatInterval side1_space_trace(const OrderInterval& s) {
    RatInterval unit{Rat(0), false, Rat(1), true};
    return rat_intersect(side1_trace(s), unit);
}

// Side-0 values present once the maximum (1,0) is removed: (0, 1).
RatInterval side0_space_trace(const OrderInterval& s) {
    RatInterval unit{Rat(0), true, Rat(1), true};
    return rat_intersect(side0_trace(s), unit);
}

// ----- deterministic rational choice policies -----

// Minimal-denominator, then minimal-numerator, rational strictly between lo
// and hi (the Stern-Brocot representative of the open interval).
Rat simplest_in_open(const Rat& lo, const Rat& hi) {
    mpz_class f = lo.floor();
    Rat fr(f);
    Rat next_int(mpz_class(f + 1));
    if (next_int < hi) return next_int;
    Rat a = lo - fr;  // in [0, 1)
    Rat b = hi - fr;  // in (0, 1]
    if (a == Rat(0)) {
        mpz_class n = (Rat(1) / b).floor() + 1;
        return fr + Rat(mpz_class(1), n);
    }
    return fr + Rat(1) / simplest_in_open(Rat(1) / b, Rat(1) / a);
}

// Minimal-denominator (then numerator) rational in the interval, honoring
// bound strictness; absent when no rational fits.
std::optional<Rat> simplest_in(const RatInterval& t) {
    if (t.empty_over_rationals()) return std::nullopt;
    if (!t.lo || !t.hi) {
        // Half-bounded sets get an integer near the finite end (or zero).
        mpz_class n = 0;
        if (t.lo) {
            n = t.lo->floor();
            while (!t.contains(Rat(n))) ++n;
        } else if (t.hi) {
            n = t.hi->floor();
            while (!t.contains(Rat(n))) --n;
        }
        return Rat(n);
    }
    // Smallest integer in the interval, if any.
    mpz_class first = t.lo->floor();
    for (int i = 0; i < 3; ++i) {
        Rat c(mpz_class(first + i));
        if (t.contains(c)) return c;
        if (c >= *t.hi) break;
    }
    std::optional<Rat> best;
    auto consider = [&](const Rat& c) {
        if (!t.contains(c)) return;
        if (!best || c.den() < best->den() ||
            (c.den() == best->den() && c.num() < best->num())) {
            best = c;
        }
    };
    if (!t.lo_strict) consider(*t.lo);
    if (!t.hi_strict) consider(*t.hi);
    if (*t.lo < *t.hi) consider(simplest_in_open(*t.lo, *t.hi));
    return best;
}

// First non-dyadic rational in the interval under the denominator-then-
// numerator scan order.
std::optional<Rat> first_non_dyadic_in(const RatInterval& t) {
    if (t.empty_over_rationals()) return std::nullopt;
    if (!t.lo || !t.hi) {
        Rat base = t.lo ? Rat(mpz_class(t.lo->floor() + 1)) : Rat(mpz_class(t.hi->floor() - 1));
        Rat c = base + Rat(1, 3);
        while (!t.contains(c)) c = c + (t.lo ? Rat(1) : Rat(-1));
        return c;
    }
    if (*t.lo == *t.hi) {
        if (t.contains(*t.lo) && !t.lo->is_dyadic()) return *t.lo;
        return std::nullopt;
    }
    Rat len = *t.hi - *t.lo;
    mpz_class dmax = (Rat(16) / len).floor() + 16;
    for (mpz_class d = 2; d <= dmax; ++d) {
        mpz_class odd = d;
        while (odd % 2 == 0) odd /= 2;
        if (odd == 1) continue;  // power-of-two denominators only yield dyadics
        mpz_class p = (*t.lo * Rat(d)).floor();
        while (true) {
            Rat c(p, d);
            if (c > *t.hi) break;
            if (t.contains(c)) {
                mpz_class g;
                mpz_gcd(g.get_mpz_t(), p.get_mpz_t(), d.get_mpz_t());
                if (g == 1) return c;  // reduced with an odd prime factor
            }
            p += 1;
        }
    }
    return std::nullopt;
}

// Policy pick of a side-0 value: the distinguished value 1/3 when available,
// otherwise the first non-dyadic value (dyadic side-0 points fall out of the
// demonstration scheme, so the pick avoids them).
std::optional<Rat> pick_side0_value(const RatInterval& t) {
    Rat third(1, 3);
    if (t.contains(third)) return third;
    return first_non_dyadic_in(t);
}

// ----- coercion helpers -----

const DoubleArrowPoint& require_da(const SpacePoint& z, const char* what) {
    const auto* p = std::get_if<DoubleArrowPoint>(&z);
    if (!p) throw precondition_failed(std::string(what) + ": point is not a split-interval point");
    return *p;
}

const OrderInterval& require_order(const SpaceSet& s, const char* what) {
    const auto* i = std::get_if<OrderInterval>(&s);
    if (!i) throw precondition_failed(std::string(what) + ": set is not an order interval");
    return *i;
}

const Rat& require_rat(const SpacePoint& z, const char* what) {
    const auto* r = std::get_if<Rat>(&z);
    if (!r) throw precondition_failed(std::string(what) + ": point is not a real value");
    return *r;
}

const IntervalDesc& require_interval(const SpaceSet& s, const char* what) {
    const auto* i = std::get_if<IntervalDesc>(&s);
    if (!i) throw precondition_failed(std::string(what) + ": set is not a value interval");
    return *i;
}

bool is_leftmost_branch(const Branch& q) {
    return branch_equal(q, Branch(q.take(0), TailZero{}), kValueBudget);
}

// Exact value denoted by a unit-scheme branch; throws when the tail cannot be
// resolved to a point within the budget.
Rat w_branch_value(const Branch& q) {
    Rat v = unit_decode(q, kValueBudget);
    if (!branch_equal(q, unit_encode_branch(v), kValueBudget))
        throw precondition_failed("split-interval scheme: branch does not resolve to a point");
    return v;
}

}  // namespace

// ----- the demonstration scheme over the split interval -----

SpaceSet w_node(const FinSeq& a) {
    if (a.empty()) return OrderInterval::reduced_whole();
    IntervalDesc v = unit_node_interval(a);
    return OrderInterval::bounded({LexPair{v.lo(), 1}, true}, {LexPair{v.hi(), 1}, false});
}

SpaceSet WOracle::node_set(const FinSeq& a) const { return w_node(a); }

std::optional<Branch> WOracle::s1_witness(const SpacePoint& x, const Branch& q,
                                          std::size_t n) const {
    const DoubleArrowPoint& z = require_da(x, "s1_witness");
    if (z.side() != 1) return std::nullopt;  // side-0 points have no base branch
    Branch t = unit_encode_branch(z.x());
    if (t.take(n) != q.take(n)) return std::nullopt;
    return t;
}

std::optional<std::size_t> WOracle::shrink_index(const Branch& q, const SpacePoint& x,
                                                 const SpaceSet& target) const {
    const DoubleArrowPoint& z = require_da(x, "shrink_index");
    if (!is_leftmost_branch(q) && w_branch_value(q) != z.x())
        throw precondition_failed("shrink_index: the point's value must equal the branch's value");
    for (std::size_t m = 0; m <= kShrinkHorizon; ++m) {
        try {
            if (set_subset_of(cut_with_point(q, m, x), target)) return m;
        } catch (const precondition_failed&) {
            // no level-0 descriptor for non-leftmost branches; keep scanning
        }
    }
    return std::nullopt;
}

std::vector<SpacePoint> WOracle::fruit_members(const Branch& q, std::size_t depth) const {
    Rat v = unit_decode(q, std::max<std::size_t>(depth, 1));
    std::vector<SpacePoint> out;
    out.push_back(DoubleArrowPoint(v, 1));
    if (!v.is_dyadic()) out.push_back(DoubleArrowPoint(v, 0));
    return out;
}

SpaceSet WOracle::cut_with_point(const Branch& q, std::size_t m, const SpacePoint& zz) const {
    const DoubleArrowPoint& z = require_da(zz, "cut_with_point");
    if (m == 0) {
        if (is_leftmost_branch(q)) return OrderInterval::reduced_whole();
        throw precondition_failed("level-0 cut descriptor exists only for the leftmost branch");
    }
    Rat v = w_branch_value(q);
    if (z.x() != v)
        throw precondition_failed("cut_with_point: the point's value must equal the branch's value");
    Rat j = unit_node_interval(q.take(m)).hi();
    return OrderInterval::bounded({LexPair{v, z.side()}, true}, {LexPair{j, 1}, false});
}

json WOracle::s1_failure_certificate(const SpacePoint& x, const Branch& q, std::size_t n,
                                     std::size_t depth) const {
    const auto* zp = std::get_if<DoubleArrowPoint>(&x);
    if (!zp || zp->side() != 0) return SchemeOracle::s1_failure_certificate(x, q, n, depth);
    const DoubleArrowPoint& z = *zp;
    const Rat& v = z.x();
    json cert;
    cert["oracle"] = name();
    cert["point"] = to_json(x);
    cert["level"] = n;
    if (!v.is_dyadic()) {
        // The value's branch exists, but every cut along it keeps the side-1
        // point (v,1), which no left-anchored neighborhood of (v,0) contains;
        // the per-level escaping points show the cuts never fit either.
        Branch t = unit_encode_branch(v);
        cert["kind"] = "no-left-neighborhood";
        cert["branch"] = to_json(t);
        cert["blocked_neighborhood"] = to_json(nbhd_basic(z, 1));
        cert["universal_escaping_point"] = to_json(SpacePoint(DoubleArrowPoint(v, 1)));
        json items = json::array();
        std::size_t lo_m = std::max<std::size_t>(n, 1);
        std::size_t count = std::max<std::size_t>(depth, 1);
        for (std::size_t m = lo_m; m < lo_m + count; ++m) {
            Rat j = unit_node_interval(t.take(m)).hi();
            json item;
            item["m"] = m;
            item["cut_set"] = to_json(require_order(cut_with_point(t, m, x), "certificate"));
            item["escaping_point"] =
                to_json(SpacePoint(DoubleArrowPoint(simplest_in_open(v, j), 1)));
            items.push_back(item);
        }
        cert["witnesses"] = items;
    } else {
        // Dyadic side-0 points drop out of the scheme entirely: following the
        // hulls containing the point reaches a node whose value interval tops
        // out at the point's value, and no child hull reaches that far.
        cert["kind"] = "no-branch";
        FinSeq a = q.take(0);
        IntervalDesc node = unit_node_interval(a);
        std::size_t guard = 0;
        while (node.hi() != v) {
            Rat u = (node.hi() - v) / node.length();
            SeqEntry e = 0;
            while (u < Rat(1, 2)) {
                u = u * Rat(2);
                ++e;
            }
            a = a.extended(e);
            node = unit_node_interval(a);
            if (++guard > 512)
                throw precondition_failed("s1_failure_certificate: descent did not terminate");
        }
        cert["terminal_node"] = to_json(a);
        cert["terminal_set"] = to_json(require_order(w_node(a), "certificate"));
        cert["in_terminal_set"] = member(x, w_node(a));
        constexpr SeqEntry kids = 8;
        cert["children_checked"] = kids;
        json child_sets = json::array();
        for (SeqEntry e = 0; e < kids; ++e)
            child_sets.push_back(to_json(require_order(w_node(a.extended(e)), "certificate")));
        cert["child_sets"] = child_sets;
    }
    return cert;
}

CheckResult w_partition_check(std::size_t depth, SeqEntry children_per_node) {
    if (depth < 1 || children_per_node < 1)
        throw invalid_input("w_partition_check: depth and children_per_node must be positive");
    auto fail = [](const char* clause, const FinSeq& parent, json detail) {
        json w;
        w["clause"] = clause;
        w["parent"] = to_json(parent);
        w["detail"] = std::move(detail);
        return CheckResult::fails_with_witness(std::move(w));
    };
    auto hull_of = [](const FinSeq& a) { return require_order(w_node(a), "w_partition_check"); };
    auto disjoint_hulls = [](const OrderInterval& s1, const OrderInterval& s2) {
        return rat_intersect(side1_space_trace(s1), side1_space_trace(s2))
                   .empty_over_rationals() &&
               rat_intersect(side0_space_trace(s1), side0_space_trace(s2)).empty_over_rationals();
    };

    std::vector<FinSeq> level{FinSeq()};
    for (std::size_t d = 0; d <= depth; ++d) {
        std::vector<FinSeq> next;
        for (const FinSeq& parent : level) {
            IntervalDesc pv = unit_node_interval(parent);
            OrderInterval ph = hull_of(parent);
            std::vector<IntervalDesc> child_vals;
            std::vector<OrderInterval> child_hulls;
            for (SeqEntry e = 0; e < children_per_node; ++e) {
                FinSeq c = parent.extended(e);
                child_vals.push_back(unit_node_interval(c));
                child_hulls.push_back(hull_of(c));
                next.push_back(c);
            }
            // Left edge anchored, inner edges matched, hulls inside the parent.
            if (child_vals[0].lo() != pv.lo()) {
                json detail;
                detail["child"] = to_json(parent.extended(0));
                detail["child_set"] = to_json(child_vals[0]);
                detail["parent_set"] = to_json(pv);
                return fail("child-not-anchored", parent, std::move(detail));
            }
            for (SeqEntry e = 0; e + 1 < children_per_node; ++e) {
                if (child_vals[e + 1].lo() != child_vals[e].hi()) {
                    json detail;
                    detail["first"] = to_json(parent.extended(e));
                    detail["first_set"] = to_json(child_vals[e]);
                    detail["second_set"] = to_json(child_vals[e + 1]);
                    return fail("children-gap", parent, std::move(detail));
                }
            }
            for (SeqEntry e = 0; e < children_per_node; ++e) {
                if (!child_hulls[e].subset_of(ph)) {
                    json detail;
                    detail["child"] = to_json(parent.extended(e));
                    detail["child_set"] = to_json(child_hulls[e]);
                    detail["parent_hull"] = to_json(ph);
                    return fail("child-outside-parent", parent, std::move(detail));
                }
            }
            for (SeqEntry i = 0; i < children_per_node; ++i) {
                for (SeqEntry j2 = i + 1; j2 < children_per_node; ++j2) {
                    if (!disjoint_hulls(child_hulls[i], child_hulls[j2])) {
                        json detail;
                        detail["first"] = to_json(parent.extended(i));
                        detail["first_set"] = to_json(child_hulls[i]);
                        detail["second_set"] = to_json(child_hulls[j2]);
                        return fail("children-overlap", parent, std::move(detail));
                    }
                }
            }
            // The residual band past the last listed child is exactly what the
            // remaining children tile: its width must be the parent length
            // scaled by 2^-children_per_node.
            Rat plen = pv.length();
            Rat phi = pv.hi();
            Rat residual = phi - child_vals[children_per_node - 1].hi();
            if (residual != plen.scaled_down(static_cast<unsigned long>(children_per_node))) {
                json detail;
                detail["residual"] = residual.str();
                detail["expected"] =
                    plen.scaled_down(static_cast<unsigned long>(children_per_node)).str();
                return fail("residual-mismatch", parent, std::move(detail));
            }
            // The parent's top point sits in the parent hull but in no child
            // hull: it is absorbed only in the limit of all children. At the
            // root the top point is the removed maximum, outside the space.
            DoubleArrowPoint top(phi, 0);
            bool top_in_parent = member(SpacePoint(top), SpaceSet(ph));
            if (parent.empty() ? top_in_parent : !top_in_parent) {
                json detail;
                detail["top_point"] = to_json(SpacePoint(top));
                detail["parent_hull"] = to_json(ph);
                return fail("top-point-misplaced", parent, std::move(detail));
            }
            for (SeqEntry e = 0; e < children_per_node; ++e) {
                if (member(SpacePoint(top), SpaceSet(child_hulls[e]))) {
                    json detail;
                    detail["top_point"] = to_json(SpacePoint(top));
                    detail["child"] = to_json(parent.extended(e));
                    return fail("top-point-in-child", parent, std::move(detail));
                }
            }
        }
        if (d == depth) break;
        level = std::move(next);
    }
    return CheckResult::holds_to_depth(depth);
}

// ----- the split interval as a bidirected space -----

std::string DoubleArrowSpace::name() const {
    return rel_ == RelationKind::Lex ? "double-arrow-lex" : "double-arrow-constructed";
}

bool DoubleArrowSpace::contains(const SpacePoint& z) const {
    const auto* p = std::get_if<DoubleArrowPoint>(&z);
    return p && in_reduced_space(*p);
}

bool DoubleArrowSpace::in_q(const SpacePoint& z) const {
    const auto* p = std::get_if<DoubleArrowPoint>(&z);
    return p && in_reduced_space(*p) && souslin::in_q(rel_, *p);
}

bool DoubleArrowSpace::in_right_part(const SpacePoint& z) const {
    return require_da(z, "in_right_part").side() == 1;
}

bool DoubleArrowSpace::related(const SpacePoint& a, const SpacePoint& b) const {
    return souslin::related(rel_, require_da(a, "related"), require_da(b, "related"));
}

SpaceSet DoubleArrowSpace::canonical_nbhd(const SpacePoint& z, std::size_t k) const {
    return nbhd_basic(require_da(z, "canonical_nbhd"), k);
}

SpaceSet DoubleArrowSpace::cone_set(const SpacePoint& yy, bool down) const {
    const DoubleArrowPoint& y = require_da(yy, "cone_set");
    if (down) {
        // z R y: below y in the lex order for both relations.
        return OrderInterval::below({y.pair(), false});
    }
    if (rel_ == RelationKind::Lex || y.side() == 1) {
        return OrderInterval::above({y.pair(), false});
    }
    // The constructed relation's up-cone of a side-0 point includes the twin
    // side-1 point at the same value and is not an order interval minus a
    // point; no exact descriptor exists in this set language.
    throw precondition_failed(
        "cone_set: up-cone of a side-0 point under the constructed relation is not an order "
        "interval");
}

std::optional<SpacePoint> DoubleArrowSpace::pick_in(const SpaceSet& s, bool right_part) const {
    const OrderInterval& iv = require_order(s, "pick_in");
    if (right_part) {
        auto v = simplest_in(side1_space_trace(iv));
        if (!v) return std::nullopt;
        return SpacePoint(DoubleArrowPoint(*v, 1));
    }
    auto v = pick_side0_value(side0_space_trace(iv));
    if (!v) return std::nullopt;
    return SpacePoint(DoubleArrowPoint(*v, 0));
}

std::optional<SpacePoint> DoubleArrowSpace::pick_q_related(const SpaceSet& s,
                                                           const SpacePoint& exclude,
                                                           const SpacePoint& anchor,
                                                           bool below) const {
    const OrderInterval& iv = require_order(s, "pick_q_related");
    const DoubleArrowPoint& anc = require_da(anchor, "pick_q_related");
    const auto* exc = std::get_if<DoubleArrowPoint>(&exclude);
    OrderInterval cone = [&] {
        if (below) return OrderInterval::below({anc.pair(), false});
        if (rel_ == RelationKind::Lex || anc.side() == 1)
            return OrderInterval::above({anc.pair(), false});
        // Constructed up-cone of (x,0): everything at or lex-above (x,1).
        return OrderInterval::above({LexPair{anc.x(), 1}, true});
    }();
    auto pick_side = [&](int side) -> std::optional<SpacePoint> {
        if (rel_ == RelationKind::Constructed && side == 0) return std::nullopt;
        RatInterval trace = side == 1
                                ? rat_intersect(side1_space_trace(iv), side1_trace(cone))
                                : rat_intersect(side0_space_trace(iv), side0_trace(cone));
        std::vector<RatInterval> parts{trace};
        if (exc && exc->side() == side) parts = rat_puncture(trace, exc->x());
        std::optional<Rat> best;
        for (const RatInterval& part : parts) {
            auto v = simplest_in(part);
            if (!v) continue;
            if (!best || v->den() < best->den() ||
                (v->den() == best->den() && v->num() < best->num())) {
                best = *v;
            }
        }
        if (!best) return std::nullopt;
        return SpacePoint(DoubleArrowPoint(*best, side));
    };
    if (auto p = pick_side(1)) return p;
    return pick_side(0);
}

std::optional<std::size_t> DoubleArrowSpace::cone_nbhd_index(const SpacePoint& y,
                                                             const SpacePoint& x, bool down,
                                                             std::size_t k_max) const {
    for (std::size_t k = 0; k <= k_max; ++k) {
        if (set_subset_of(canonical_nbhd(x, k), cone_set(y, down))) return k;
    }
    return std::nullopt;
}

bool DoubleArrowSpace::all_related_to(const SpaceSet& s, const SpacePoint& yy) const {
    const OrderInterval& iv = require_order(s, "all_related_to");
    const DoubleArrowPoint& y = require_da(yy, "all_related_to");
    if (rel_ == RelationKind::Lex || y.side() == 1) {
        return set_subset_of(s, OrderInterval::below({y.pair(), false}));
    }
    // Constructed: nothing relates to a side-0 point from side 0, and a side-1
    // value relates exactly when strictly below the point's value.
    RatInterval side1 = side1_space_trace(iv);
    bool side1_ok = side1.empty_over_rationals() ||
                    (side1.hi && (*side1.hi < y.x() || (*side1.hi == y.x() && side1.hi_strict)));
    return side0_space_trace(iv).empty_over_rationals() && side1_ok;
}

bool DoubleArrowSpace::all_related_from(const SpacePoint& yy, const SpaceSet& s) const {
    const OrderInterval& iv = require_order(s, "all_related_from");
    const DoubleArrowPoint& y = require_da(yy, "all_related_from");
    if (rel_ == RelationKind::Lex || y.side() == 1) {
        return set_subset_of(s, OrderInterval::above({y.pair(), false}));
    }
    // Constructed side-0 source: related to side-1 values at or above its own
    // value, and never to side-0 points.
    RatInterval side1 = side1_space_trace(iv);
    bool side1_ok = side1.empty_over_rationals() || (side1.lo && *side1.lo >= y.x());
    return side0_space_trace(iv).empty_over_rationals() && side1_ok;
}

// ----- the rational Sorgenfrey order line -----

bool SorgenfreyOrderSpace::contains(const SpacePoint& z) const {
    return std::holds_alternative<Rat>(z);
}

bool SorgenfreyOrderSpace::in_q(const SpacePoint& z) const { return contains(z); }

bool SorgenfreyOrderSpace::in_right_part(const SpacePoint& z) const {
    require_rat(z, "in_right_part");
    return true;  // every point of the line looks right under its order
}

bool SorgenfreyOrderSpace::related(const SpacePoint& a, const SpacePoint& b) const {
    return require_rat(a, "related") < require_rat(b, "related");
}

SpaceSet SorgenfreyOrderSpace::canonical_nbhd(const SpacePoint& z, std::size_t k) const {
    const Rat& v = require_rat(z, "canonical_nbhd");
    return IntervalDesc::half_open(v, v + pow2_neg(static_cast<unsigned long>(k)));
}

SpaceSet SorgenfreyOrderSpace::cone_set(const SpacePoint& y, bool down) const {
    require_rat(y, "cone_set");
    (void)down;
    // The order cones are half-infinite rays, which the value-interval set
    // language cannot express exactly.
    throw precondition_failed("cone_set: half-infinite order cones are not representable");
}

std::optional<SpacePoint> SorgenfreyOrderSpace::pick_in(const SpaceSet& s, bool right_part) const {
    const IntervalDesc& iv = require_interval(s, "pick_in");
    if (!right_part) return std::nullopt;  // no point of the line looks left
    if (iv.kind() == IntervalDesc::Kind::Empty) return std::nullopt;
    if (iv.kind() == IntervalDesc::Kind::WholeLine) return SpacePoint(Rat(0));
    auto v = simplest_in(RatInterval{iv.lo(), false, iv.hi(), true});
    if (!v) return std::nullopt;
    return SpacePoint(*v);
}

std::optional<SpacePoint> SorgenfreyOrderSpace::pick_q_related(const SpaceSet& s,
                                                               const SpacePoint& exclude,
                                                               const SpacePoint& anchor,
                                                               bool below) const {
    const IntervalDesc& iv = require_interval(s, "pick_q_related");
    const Rat& anc = require_rat(anchor, "pick_q_related");
    const auto* exc = std::get_if<Rat>(&exclude);
    if (iv.kind() == IntervalDesc::Kind::Empty) return std::nullopt;
    RatInterval trace;
    if (iv.kind() == IntervalDesc::Kind::HalfOpen) {
        trace = RatInterval{iv.lo(), false, iv.hi(), true};
    }
    if (below) {
        RatInterval cap{std::nullopt, false, anc, true};
        trace = rat_intersect(trace, cap);
    } else {
        RatInterval cap{anc, true, std::nullopt, false};
        trace = rat_intersect(trace, cap);
    }
    std::vector<RatInterval> parts{trace};
    if (exc) parts = rat_puncture(trace, *exc);
    std::optional<Rat> best;
    for (const RatInterval& part : parts) {
        auto v = simplest_in(part);
        if (!v) continue;
        if (!best || v->den() < best->den() ||
            (v->den() == best->den() && v->num() < best->num())) {
            best = *v;
        }
    }
    if (!best) return std::nullopt;
    return SpacePoint(*best);
}

std::optional<std::size_t> SorgenfreyOrderSpace::cone_nbhd_index(const SpacePoint& yy,
                                                                 const SpacePoint& xx, bool down,
                                                                 std::size_t k_max) const {
    const Rat& y = require_rat(yy, "cone_nbhd_index");
    const Rat& x = require_rat(xx, "cone_nbhd_index");
    if (down) {
        // Need [x, x + 2^-k) entirely below y.
        if (!(x < y)) return std::nullopt;
        for (std::size_t k = 0; k <= k_max; ++k) {
            if (x + pow2_neg(static_cast<unsigned long>(k)) <= y) return k;
        }
        return std::nullopt;
    }
    // Need the neighborhood entirely above y: immediate, since it starts at x.
    if (x > y) return 0;
    return std::nullopt;
}

bool SorgenfreyOrderSpace::all_related_to(const SpaceSet& s, const SpacePoint& yy) const {
    const IntervalDesc& iv = require_interval(s, "all_related_to");
    const Rat& y = require_rat(yy, "all_related_to");
    switch (iv.kind()) {
        case IntervalDesc::Kind::Empty:
            return true;
        case IntervalDesc::Kind::WholeLine:
            return false;
        case IntervalDesc::Kind::HalfOpen:
            return iv.hi() <= y;
    }
    return false;
}

bool SorgenfreyOrderSpace::all_related_from(const SpacePoint& yy, const SpaceSet& s) const {
    const IntervalDesc& iv = require_interval(s, "all_related_from");
    const Rat& y = require_rat(yy, "all_related_from");
    switch (iv.kind()) {
        case IntervalDesc::Kind::Empty:
            return true;
        case IntervalDesc::Kind::WholeLine:
            return false;
        case IntervalDesc::Kind::HalfOpen:
            return y < iv.lo();
    }
    return false;
}

// ----- registries -----

std::unique_ptr<SchemeOracle> make_oracle(const std::string& name) {
    if (name == "vs") return std::make_unique<VsOracle>();
    if (name == "double-arrow-w") return std::make_unique<WOracle>();
    throw invalid_input("make_oracle: unknown oracle '" + name + "'");
}

std::unique_ptr<BidirSpace> make_space(const std::string& name) {
    if (name == "sorgenfrey") return std::make_unique<SorgenfreyOrderSpace>();
    if (name == "double-arrow-lex") return std::make_unique<DoubleArrowSpace>(RelationKind::Lex);
    if (name == "double-arrow-constructed")
        return std::make_unique<DoubleArrowSpace>(RelationKind::Constructed);
    throw invalid_input("make_space: unknown space '" + name + "'");
}

std::string diag_status_name(DiagStatus s) {
    switch (s) {
        case DiagStatus::Running:
            return "running";
        case DiagStatus::S2RefutationReady:
            return "s2_refutation_ready";
        case DiagStatus::S1Failure:
            return "s1_failure";
        case DiagStatus::PreconditionFailed:
            return "precondition_failed";
        case DiagStatus::BudgetExhausted:
            return "budget_exhausted";
    }
    return "unknown";
}

// ----- the diagonal recursion -----

DiagTrace diagonalize(const SchemeOracle& oracle, const BidirSpace& space, std::size_t max_steps,
                      std::size_t depth_budget) {
    DiagTrace trace;
    trace.oracle_name = oracle.name();
    trace.space_name = space.name();
    trace.nodes.push_back(FinSeq());
    std::size_t budget = std::max<std::size_t>(depth_budget, 8);

    // The recursion alternates between right- and left-looking picks, so the
    // space must offer both from the start; probe before doing any work.
    if (max_steps > 0) {
        try {
            SpaceSet root = oracle.node_set(trace.nodes.front());
            if (!space.pick_in(root, true)) {
                trace.status = DiagStatus::PreconditionFailed;
                trace.stop_reason = "the space offers no right-looking point: not bidirected";
                return trace;
            }
            if (!space.pick_in(root, false)) {
                trace.status = DiagStatus::PreconditionFailed;
                trace.stop_reason = "the space offers no left-looking point: not bidirected";
                return trace;
            }
        } catch (const precondition_failed& e) {
            trace.status = DiagStatus::PreconditionFailed;
            trace.stop_reason = e.what();
            return trace;
        }
    }

    for (std::size_t n = 0; n < max_steps; ++n) {
        const FinSeq& p = trace.nodes.back();
        bool even = (n % 2 == 0);
        try {
            SpaceSet node = oracle.node_set(p);
            auto x_opt = space.pick_in(node, even);
            if (!x_opt) {
                trace.status = DiagStatus::PreconditionFailed;
                trace.stop_reason = even ? "no right-looking point available in the current node"
                                         : "no left-looking point available in the current node";
                return trace;
            }
            SpacePoint x = *x_opt;

            Branch p_branch(p, TailZero{});
            auto q_opt = oracle.s1_witness(x, p_branch, p.size());
            if (!q_opt) {
                trace.status = DiagStatus::S1Failure;
                trace.stop_reason = "no base branch through the current node for the picked point";
                trace.certificates.push_back(
                    oracle.s1_failure_certificate(x, p_branch, p.size(), 8));
                return trace;
            }
            Branch q = *q_opt;

            auto shrink = oracle.shrink_index(q, x, node);
            if (!shrink) {
                trace.status = DiagStatus::BudgetExhausted;
                trace.stop_reason = "no shrink level fits the cut inside the current node";
                return trace;
            }
            std::size_t m = std::max(*shrink, p.size() + 1);

            SpaceSet cut_m = oracle.cut_with_point(q, m, x);
            auto xn_opt = space.pick_q_related(cut_m, x, x, !even);
            if (!xn_opt) {
                trace.status = DiagStatus::PreconditionFailed;
                trace.stop_reason = even ? "the cut holds no test point strictly above the pick"
                                         : "the cut holds no test point strictly below the pick";
                return trace;
            }
            SpacePoint xn = *xn_opt;

            auto cone_idx = space.cone_nbhd_index(xn, x, even, 32);
            if (!cone_idx) {
                trace.status = DiagStatus::PreconditionFailed;
                trace.stop_reason = "no canonical neighborhood of the pick fits the test cone";
                return trace;
            }

            auto tn_opt = oracle.s1_witness(xn, q, m);
            if (!tn_opt) {
                trace.status = DiagStatus::S1Failure;
                trace.stop_reason = "no base branch through the shrink level for the test point";
                trace.certificates.push_back(oracle.s1_failure_certificate(xn, q, m, 8));
                return trace;
            }
            Branch tn = *tn_opt;

            if (in_wedge(tn, q, m, budget) != Trivalent::True) {
                trace.status = DiagStatus::PreconditionFailed;
                trace.stop_reason = "the test branch does not sit lex-after the base branch";
                return trace;
            }
            BranchCompare cmp = compare_branches(q, tn, budget);
            if (cmp.order != BranchOrder::Less || !cmp.diverge_at) {
                trace.status = DiagStatus::BudgetExhausted;
                trace.stop_reason = "the base/test divergence level did not resolve in budget";
                return trace;
            }
            std::size_t k = std::max(m + 1, *cmp.diverge_at + 1);

            SpaceSet cone = space.cone_set(xn, even);
            auto shrink2 = oracle.shrink_index(q, x, cone);
            if (!shrink2) {
                trace.status = DiagStatus::BudgetExhausted;
                trace.stop_reason = "no shrink level fits the cut inside the test cone";
                return trace;
            }
            std::size_t a = std::max(k + 1, *shrink2);

            FinSeq p_next = q.take(a).extended(q.at(a) + 1);

            DiagStep step;
            step.n = n;
            step.even = even;
            step.x = x;
            step.q = q;
            step.m = m;
            step.xn = xn;
            step.cone_index = *cone_idx;
            step.tn = tn;
            step.k = k;
            step.a = a;
            step.p_next = p_next;
            step.p_next_set = oracle.node_set(p_next);
            trace.steps.push_back(std::move(step));
            trace.nodes.push_back(p_next);
        } catch (const precondition_failed& e) {
            trace.status = DiagStatus::PreconditionFailed;
            trace.stop_reason = e.what();
            return trace;
        }
    }
    trace.status = max_steps == 0 ? DiagStatus::Running : DiagStatus::S2RefutationReady;
    if (trace.status == DiagStatus::S2RefutationReady)
        trace.stop_reason = "all requested rounds completed";
    return trace;
}

// ----- offline trace verification -----

namespace {

CheckResult step_failure(std::size_t index, const char* check, json detail) {
    json w;
    w["step"] = index;
    w["check"] = check;
    w["detail"] = std::move(detail);
    return CheckResult::fails_with_witness(std::move(w));
}

}  // namespace

CheckResult verify_trace(const DiagTrace& trace, const BidirSpace& space) {
    constexpr std::size_t budget = 96;
    if (trace.nodes.empty() || !trace.nodes.front().empty())
        return CheckResult::fails_with_witness(
            json{{"check", "nodes-start"},
                 {"detail", "the node chain must start at the empty sequence"}});
    if (trace.nodes.size() != trace.steps.size() + 1)
        return CheckResult::fails_with_witness(
            json{{"check", "nodes-count"},
                 {"detail", "one node per completed step plus the root is required"}});
    if (trace.status == DiagStatus::S1Failure && trace.certificates.empty())
        return CheckResult::fails_with_witness(
            json{{"check", "certificate-missing"},
                 {"detail", "a base-branch failure must carry a certificate"}});

    for (std::size_t i = 0; i < trace.steps.size(); ++i) {
        const DiagStep& st = trace.steps[i];
        const FinSeq& p = trace.nodes[i];
        json ctx;
        ctx["node"] = to_json(p);

        if (st.n != i) return step_failure(i, "step-index", ctx);
        if (st.even != (i % 2 == 0)) return step_failure(i, "step-parity", ctx);
        if (trace.nodes[i + 1] != st.p_next) return step_failure(i, "node-chain", ctx);

        // The pick is a point of the space, on the side the parity demands,
        // and inside the previous step's recorded node set.
        if (!space.contains(st.x)) return step_failure(i, "pick-in-space", ctx);
        if (space.in_right_part(st.x) != st.even) return step_failure(i, "pick-side", ctx);
        if (i > 0 && !member(st.x, trace.steps[i - 1].p_next_set))
            return step_failure(i, "pick-in-node", ctx);

        // The base branch threads the node; the levels are properly ordered.
        if (st.q.take(p.size()) != p) return step_failure(i, "branch-through-node", ctx);
        if (st.m <= p.size()) return step_failure(i, "shrink-level-order", ctx);
        if (st.k <= st.m) return step_failure(i, "divergence-level-order", ctx);
        if (st.a < st.k + 1) return step_failure(i, "extension-level-order", ctx);
        if (st.p_next.size() != st.a + 1) return step_failure(i, "extension-length", ctx);

        // The chosen extension leaves the base branch one level past a, to the
        // lex-right, i.e. it lies in the wedge past (q, a).
        if (!in_wedge_nodes(st.p_next, st.q, st.a, budget))
            return step_failure(i, "extension-in-wedge", ctx);

        // The test branch agrees with the base branch to the shrink level and
        // sits lex-after it, diverging strictly below k.
        if (st.tn.take(st.m) != st.q.take(st.m)) return step_failure(i, "test-branch-agreement", ctx);
        if (in_wedge(st.tn, st.q, st.m, budget) != Trivalent::True)
            return step_failure(i, "test-branch-in-wedge", ctx);
        BranchCompare cmp = compare_branches(st.q, st.tn, budget);
        if (cmp.order != BranchOrder::Less || !cmp.diverge_at || *cmp.diverge_at >= st.k)
            return step_failure(i, "test-branch-divergence", ctx);

        // The chosen extension stays lex-before the test branch, so the test
        // point remains on the forward side of everything built later.
        if (lex_before(st.p_next, st.tn.take(st.p_next.size()), budget) != Trivalent::True)
            return step_failure(i, "extension-before-test-branch", ctx);

        // The test point is a distinct Q-point whose cone absorbs the recorded
        // canonical neighborhood of the pick.
        if (!space.in_q(st.xn)) return step_failure(i, "test-point-in-q", ctx);
        if (same_point(st.xn, st.x)) return step_failure(i, "test-point-distinct", ctx);
        try {
            if (!set_subset_of(space.canonical_nbhd(st.x, st.cone_index),
                               space.cone_set(st.xn, st.even)))
                return step_failure(i, "cone-absorbs-neighborhood", ctx);
        } catch (const precondition_failed& e) {
            json detail = ctx;
            detail["reason"] = e.what();
            return step_failure(i, "cone-absorbs-neighborhood", detail);
        }

        // The recorded next node set sits entirely on the required relation
        // side of the test point: below it on even steps, above on odd.
        bool side_ok = st.even ? space.all_related_to(st.p_next_set, st.xn)
                               : space.all_related_from(st.xn, st.p_next_set);
        if (!side_ok) return step_failure(i, "node-set-on-relation-side", ctx);
    }
    return CheckResult::holds_to_depth(trace.steps.size());
}

CheckResult verify_trace(const DiagTrace& trace) {
    auto space = make_space(trace.space_name);
    return verify_trace(trace, *space);
}

CheckResult verify_straddle(const DiagTrace& trace, const SchemeOracle& oracle,
                            const BidirSpace& space, std::size_t k_max,
                            std::size_t depth_budget) {
    if (trace.nodes.empty())
        return CheckResult::fails_with_witness(json{{"check", "nodes-empty"}});
    Branch assembled(trace.nodes.back(), TailZero{});
    std::vector<SpacePoint> fruit = oracle.fruit_members(assembled, depth_budget);
    if (fruit.empty())
        return CheckResult::fails_with_witness(
            json{{"check", "no-fruit-candidates"},
                 {"detail", "the assembled branch has no candidate members to test"}});

    for (std::size_t k = 1; k <= k_max; ++k) {
        // For each parity find a completed step past round k: its test branch
        // then enters the wedge past the assembled branch at level k, putting
        // its test point into that cut. Unknown(k) names the level at which
        // the trace ran out of completed rounds of some parity.
        std::optional<std::size_t> even_step;
        std::optional<std::size_t> odd_step;
        for (std::size_t i = 0; i < trace.steps.size(); ++i) {
            if (trace.steps[i].n <= k || trace.steps[i].m < k) continue;
            if (trace.steps[i].even && !even_step) even_step = i;
            if (!trace.steps[i].even && !odd_step) odd_step = i;
        }
        if (!even_step || !odd_step) return CheckResult::unknown(k);

        for (std::size_t i : {*even_step, *odd_step}) {
            const DiagStep& st = trace.steps[i];
            json ctx;
            ctx["k"] = k;
            ctx["step"] = st.n;
            if (st.tn.take(k) != assembled.take(k))
                return CheckResult::fails_with_witness(
                    json{{"check", "test-branch-agreement"}, {"detail", ctx}});
            if (in_wedge(st.tn, assembled, k, depth_budget) != Trivalent::True)
                return CheckResult::fails_with_witness(
                    json{{"check", "test-branch-in-wedge"}, {"detail", ctx}});
            std::vector<SpacePoint> members = oracle.fruit_members(st.tn, depth_budget);
            bool found = false;
            for (const SpacePoint& cand : members)
                if (same_point(cand, st.xn)) found = true;
            if (!found)
                return CheckResult::fails_with_witness(
                    json{{"check", "test-point-in-fruit"}, {"detail", ctx}});
        }

        // Every candidate member of the assembled branch must be straddled:
        // strictly related from the even step's point and to the odd step's.
        for (const SpacePoint& z : fruit) {
            json ctx;
            ctx["k"] = k;
            ctx["candidate"] = to_json(z);
            if (!space.related(z, trace.steps[*even_step].xn))
                return CheckResult::fails_with_witness(
                    json{{"check", "candidate-not-below-even-point"}, {"detail", ctx}});
            if (!space.related(trace.steps[*odd_step].xn, z))
                return CheckResult::fails_with_witness(
                    json{{"check", "candidate-not-above-odd-point"}, {"detail", ctx}});
        }
    }
    return CheckResult::holds_to_depth(k_max);
}

CheckResult verify_straddle(const DiagTrace& trace, std::size_t k_max, std::size_t depth_budget) {
    auto oracle = make_oracle(trace.oracle_name);
    auto space = make_space(trace.space_name);
    return verify_straddle(trace, *oracle, *space, k_max, depth_budget);
}

CheckResult refute_base_branch(const SchemeOracle& oracle, const BidirSpace& space,
                               const Branch& p, std::size_t k_max, std::size_t depth_budget) {
    std::vector<SpacePoint> fruit = oracle.fruit_members(p, depth_budget);
    if (fruit.empty())
        return CheckResult::fails_with_witness(
            json{{"check", "no-fruit-candidates"},
                 {"detail", "a branch with no candidate members cannot be refuted this way"}});

    json reports = json::array();
    std::optional<SpacePoint> survivor;
    for (const SpacePoint& z : fruit) {
        bool right = space.in_right_part(z);
        json report;
        report["candidate"] = to_json(z);
        report["direction"] = right ? "right" : "left";
        json witnesses = json::array();
        bool refuted = true;
        for (std::size_t k = 1; k <= k_max; ++k) {
            SpaceSet cut_k = oracle.cut_with_point(p, k, z);
            // A right-looking candidate needs every neighborhood... refuted by
            // a Q-point of the cut strictly R-before it; a left-looking one by
            // a Q-point strictly R-after it.
            auto y = space.pick_q_related(cut_k, z, z, right);
            if (!y) {
                refuted = false;
                report["failed_at_k"] = k;
                break;
            }
            json w;
            w["k"] = k;
            w["witness"] = to_json(*y);
            w["cut_set"] = to_json(cut_k);
            w["relation"] = right ? "witness-R-candidate" : "candidate-R-witness";
            witnesses.push_back(std::move(w));
        }
        report["witnesses"] = std::move(witnesses);
        report["refuted"] = refuted;
        if (!refuted && !survivor) survivor = z;
        reports.push_back(std::move(report));
    }
    if (survivor) {
        json w;
        w["surviving_candidate"] = to_json(*survivor);
        w["reports"] = std::move(reports);
        return CheckResult::fails_with_witness(std::move(w));
    }
    return CheckResult::holds_to_depth(k_max);
}

}  // namespace souslin
