#include "souslin/doublearrow.hpp"

#include "souslin/serialize.hpp"

#include <algorithm>

namespace souslin {

std::string LexPair::str() const {
    return "(" + x.str() + ", " + std::to_string(side) + ")";
}

bool lex_lt(const LexPair& a, const LexPair& b) {
    if (a.x != b.x) return a.x < b.x;
    return a.side < b.side;
}

bool lex_le(const LexPair& a, const LexPair& b) { return !lex_lt(b, a); }

DoubleArrowPoint::DoubleArrowPoint(Rat x, int side) : x_(std::move(x)), side_(side) {
    if (side != 0 && side != 1) throw invalid_input("DoubleArrowPoint: side must be 0 or 1");
    if (side == 0 && !(Rat(0) < x_ && x_ <= Rat(1))) {
        throw invalid_input("DoubleArrowPoint: side 0 requires 0 < x <= 1, got " + x_.str());
    }
    if (side == 1 && !(Rat(0) <= x_ && x_ < Rat(1))) {
        throw invalid_input("DoubleArrowPoint: side 1 requires 0 <= x < 1, got " + x_.str());
    }
}

std::string DoubleArrowPoint::str() const { return pair().str(); }

bool lex_lt(const DoubleArrowPoint& a, const DoubleArrowPoint& b) {
    return lex_lt(a.pair(), b.pair());
}

bool in_reduced_space(const DoubleArrowPoint& z) {
    return !(z.side() == 0 && z.x() == Rat(1));
}

// ---------------------------------------------------------------------------
// Order intervals

OrderInterval OrderInterval::whole() { return OrderInterval(); }

OrderInterval OrderInterval::reduced_whole() {
    return below(Bound{LexPair{Rat(1), 0}, false});
}

OrderInterval OrderInterval::bounded(Bound lower, Bound upper) {
    OrderInterval s;
    s.lower_ = std::move(lower);
    s.upper_ = std::move(upper);
    return s;
}

OrderInterval OrderInterval::below(Bound upper) {
    OrderInterval s;
    s.upper_ = std::move(upper);
    return s;
}

OrderInterval OrderInterval::above(Bound lower) {
    OrderInterval s;
    s.lower_ = std::move(lower);
    return s;
}

bool OrderInterval::contains(const LexPair& p) const {
    if (lower_) {
        if (lower_->closed ? !lex_le(lower_->at, p) : !lex_lt(lower_->at, p)) return false;
    }
    if (upper_) {
        if (upper_->closed ? !lex_le(p, upper_->at) : !lex_lt(p, upper_->at)) return false;
    }
    return true;
}

namespace {

bool pair_in_space(const LexPair& p) {
    if (p.side == 0) return Rat(0) < p.x && p.x <= Rat(1);
    if (p.side == 1) return Rat(0) <= p.x && p.x < Rat(1);
    return false;
}

// Canonical form of a lower bound over the space: an open bound at (x,0) keeps
// out exactly the same points as a closed bound at (x,1), because nothing sits
// strictly between the two copies of x.
OrderInterval::Bound normal_lower(OrderInterval::Bound b) {
    if (!b.closed && b.at.side == 0) return {LexPair{b.at.x, 1}, true};
    return b;
}

// Mirror image: an open upper bound at (x,1) equals a closed one at (x,0).
OrderInterval::Bound normal_upper(OrderInterval::Bound b) {
    if (!b.closed && b.at.side == 1) return {LexPair{b.at.x, 0}, true};
    return b;
}

// Does the (normalized) lower bound exclude no point of the space?
bool lower_vacuous(const OrderInterval::Bound& b) {
    const LexPair space_min{Rat(0), 1};
    return b.closed ? lex_le(b.at, space_min) : lex_lt(b.at, space_min);
}

bool upper_vacuous(const OrderInterval::Bound& b) {
    const LexPair space_max{Rat(1), 0};
    return b.closed ? lex_le(space_max, b.at) : lex_lt(space_max, b.at);
}

// Inner lower-bound constraint implies outer one, over the space.
bool lower_implies(const std::optional<OrderInterval::Bound>& inner,
                   const std::optional<OrderInterval::Bound>& outer) {
    if (!outer) return true;
    const auto ob = normal_lower(*outer);
    if (lower_vacuous(ob)) return true;
    if (!inner) return false;
    const auto ib = normal_lower(*inner);
    if (lex_lt(ob.at, ib.at)) return true;
    if (ob.at == ib.at) {
        if (ob.closed || !ib.closed) return true;
        return !pair_in_space(ib.at);  // the only disputed point is not in the space
    }
    return false;
}

bool upper_implies(const std::optional<OrderInterval::Bound>& inner,
                   const std::optional<OrderInterval::Bound>& outer) {
    if (!outer) return true;
    const auto ob = normal_upper(*outer);
    if (upper_vacuous(ob)) return true;
    if (!inner) return false;
    const auto ib = normal_upper(*inner);
    if (lex_lt(ib.at, ob.at)) return true;
    if (ob.at == ib.at) {
        if (ob.closed || !ib.closed) return true;
        return !pair_in_space(ib.at);
    }
    return false;
}

RatInterval clip(RatInterval t, const Rat& lo, bool lo_strict, const Rat& hi, bool hi_strict) {
    if (!t.lo || lo > *t.lo || (lo == *t.lo && lo_strict && !t.lo_strict)) {
        t.lo = lo;
        t.lo_strict = lo_strict;
    }
    if (!t.hi || hi < *t.hi || (hi == *t.hi && hi_strict && !t.hi_strict)) {
        t.hi = hi;
        t.hi_strict = hi_strict;
    }
    return t;
}

// Trace clipped to the coordinates actually realized on that side.
RatInterval side1_space_trace(const OrderInterval& s) {
    return clip(side1_trace(s), Rat(0), false, Rat(1), true);
}

RatInterval side0_space_trace(const OrderInterval& s) {
    return clip(side0_trace(s), Rat(0), true, Rat(1), false);
}

}  // namespace

bool OrderInterval::subset_of(const OrderInterval& other) const {
    if (side1_space_trace(*this).empty_over_rationals() &&
        side0_space_trace(*this).empty_over_rationals()) {
        return true;  // nothing of the space inside
    }
    return lower_implies(lower_, other.lower_) && upper_implies(upper_, other.upper_);
}

std::string OrderInterval::str() const {
    std::string out;
    out += lower_ ? (lower_->closed ? "[" : "(") + lower_->at.str() : std::string("(-inf");
    out += ", ";
    out += upper_ ? upper_->at.str() + (upper_->closed ? "]" : ")") : std::string("+inf)");
    return out;
}

bool operator==(const OrderInterval& a, const OrderInterval& b) {
    const auto bound_eq = [](const std::optional<OrderInterval::Bound>& p,
                             const std::optional<OrderInterval::Bound>& q) {
        if (p.has_value() != q.has_value()) return false;
        if (!p) return true;
        return p->at == q->at && p->closed == q->closed;
    };
    return bound_eq(a.lower_, b.lower_) && bound_eq(a.upper_, b.upper_);
}

// ---------------------------------------------------------------------------
// Rational traces

bool RatInterval::contains(const Rat& v) const {
    if (lo && (lo_strict ? !(*lo < v) : !(*lo <= v))) return false;
    if (hi && (hi_strict ? !(v < *hi) : !(v <= *hi))) return false;
    return true;
}

bool RatInterval::empty_over_rationals() const {
    if (!lo || !hi) return false;
    if (*lo < *hi) return false;
    if (*lo > *hi) return true;
    return lo_strict || hi_strict;
}

std::string RatInterval::str() const {
    std::string out;
    out += lo ? (lo_strict ? "(" : "[") + lo->str() : std::string("(-inf");
    out += ", ";
    out += hi ? hi->str() + (hi_strict ? ")" : "]") : std::string("+inf)");
    return out;
}

RatInterval side1_trace(const OrderInterval& s) {
    RatInterval t;
    if (s.lower()) {
        t.lo = s.lower()->at.x;
        // (v,1) clears a side-0 bound for every v >= x, open or closed.
        t.lo_strict = s.lower()->at.side == 1 && !s.lower()->closed;
    }
    if (s.upper()) {
        t.hi = s.upper()->at.x;
        // (v,1) stays under a side-0 bound only for v < x.
        t.hi_strict = s.upper()->at.side == 0 || !s.upper()->closed;
    }
    return t;
}

RatInterval side0_trace(const OrderInterval& s) {
    RatInterval t;
    if (s.lower()) {
        t.lo = s.lower()->at.x;
        // (v,0) clears a side-1 bound only for v > x.
        t.lo_strict = s.lower()->at.side == 1 || !s.lower()->closed;
    }
    if (s.upper()) {
        t.hi = s.upper()->at.x;
        // (v,0) stays under a side-1 bound for every v <= x.
        t.hi_strict = s.upper()->at.side == 0 && !s.upper()->closed;
    }
    return t;
}

OrderInterval nbhd_basic(const DoubleArrowPoint& z, std::size_t k) {
    const auto kk = static_cast<unsigned long>(k);
    if (z.side() == 1) {
        const Rat hi = z.x() + (Rat(1) - z.x()).scaled_down(kk);
        return OrderInterval::bounded({LexPair{z.x(), 1}, true}, {LexPair{hi, 1}, false});
    }
    const Rat lo = z.x() * (Rat(1) - pow2_neg(kk));
    return OrderInterval::bounded({LexPair{lo, 0}, false}, {LexPair{z.x(), 1}, false});
}

LimitProfile limit_profile(const DoubleArrowPoint& z) {
    if (z.side() != 0) {
        throw wrong_side("limit_profile: defined for side-0 points, got " + z.str());
    }
    return LimitProfile{{z.x()}, z.x(), z.x()};
}

bool r_constructed(const DoubleArrowPoint& p, const DoubleArrowPoint& q) {
    if (p.side() == 1 && q.side() == 1) return p.x() < q.x();
    if (p.side() == 1 && q.side() == 0) return p.x() < q.x();
    if (p.side() == 0 && q.side() == 1) return p.x() <= q.x();
    return false;
}

bool related(RelationKind rel, const DoubleArrowPoint& a, const DoubleArrowPoint& b) {
    return rel == RelationKind::Lex ? lex_lt(a, b) : r_constructed(a, b);
}

bool in_q(RelationKind rel, const DoubleArrowPoint& z) {
    return rel == RelationKind::Lex || z.side() == 1;
}

// ---------------------------------------------------------------------------
// looks-right / looks-left

namespace {

// {y : z R y}, exact on Q for the given relation (and on the whole space for
// Lex and for side-1 centers under Constructed).
OrderInterval up_cone_on_q(RelationKind rel, const DoubleArrowPoint& z) {
    if (rel == RelationKind::Lex || z.side() == 1) {
        return OrderInterval::above({z.pair(), false});
    }
    // (a,0) R (b,1) iff a <= b; only side-1 points are ever above it.
    return OrderInterval::above({LexPair{z.x(), 1}, true});
}

// {y : y R z}, with the same exactness.
OrderInterval down_cone_on_q(RelationKind rel, const DoubleArrowPoint& z) {
    return OrderInterval::below({z.pair(), false});
}

RatInterval rat_intersect(RatInterval a, const RatInterval& b) {
    if (b.lo) {
        if (!a.lo || *b.lo > *a.lo) {
            a.lo = *b.lo;
            a.lo_strict = b.lo_strict;
        } else if (*b.lo == *a.lo) {
            a.lo_strict = a.lo_strict || b.lo_strict;
        }
    }
    if (b.hi) {
        if (!a.hi || *b.hi < *a.hi) {
            a.hi = *b.hi;
            a.hi_strict = b.hi_strict;
        } else if (*b.hi == *a.hi) {
            a.hi_strict = a.hi_strict || b.hi_strict;
        }
    }
    return a;
}

bool rat_subset(const RatInterval& a, const RatInterval& b) {
    if (a.empty_over_rationals()) return true;
    if (b.lo) {
        if (!a.lo) return false;
        if (*a.lo < *b.lo) return false;
        if (*a.lo == *b.lo && b.lo_strict && !a.lo_strict) return false;
    }
    if (b.hi) {
        if (!a.hi) return false;
        if (*a.hi > *b.hi) return false;
        if (*a.hi == *b.hi && b.hi_strict && !a.hi_strict) return false;
    }
    return true;
}

// a minus one optional puncture value is inside b.
bool rat_subset_minus(const RatInterval& a, const std::optional<Rat>& puncture,
                      const RatInterval& b) {
    if (!puncture || !a.contains(*puncture)) return rat_subset(a, b);
    if (a.lo && *a.lo == *puncture) {
        RatInterval trimmed = a;
        trimmed.lo_strict = true;
        return rat_subset(trimmed, b);
    }
    if (a.hi && *a.hi == *puncture) {
        RatInterval trimmed = a;
        trimmed.hi_strict = true;
        return rat_subset(trimmed, b);
    }
    RatInterval left = a;
    left.hi = *puncture;
    left.hi_strict = true;
    RatInterval right = a;
    right.lo = *puncture;
    right.lo_strict = true;
    return rat_subset(left, b) && rat_subset(right, b);
}

// (inner minus {z}) intersected with Q is inside outer.
bool q_part_subset(RelationKind rel, const OrderInterval& inner, const DoubleArrowPoint& z,
                   const OrderInterval& outer) {
    const std::optional<Rat> punct1 =
        z.side() == 1 ? std::optional<Rat>(z.x()) : std::nullopt;
    if (!rat_subset_minus(side1_space_trace(inner), punct1, side1_trace(outer))) return false;
    if (rel == RelationKind::Lex) {
        const std::optional<Rat> punct0 =
            z.side() == 0 ? std::optional<Rat>(z.x()) : std::nullopt;
        if (!rat_subset_minus(side0_space_trace(inner), punct0, side0_trace(outer))) return false;
    }
    return true;
}

// Policy witness for the cone bullet: a Q-point of (N_k minus z) on the side of
// z that the direction needs (right: R-above z so z sits in its down-cone).
std::optional<DoubleArrowPoint> cone_witness_pick(RelationKind rel, const DoubleArrowPoint& z,
                                                  std::size_t k, LookDirection dir) {
    const auto kk = static_cast<unsigned long>(k);
    if (dir == LookDirection::Right) {
        if (z.side() != 1) return std::nullopt;  // nothing of N_k is above a side-0 center
        const Rat w = z.x() + (Rat(1) - z.x()).scaled_down(kk + 1);
        return DoubleArrowPoint(w, 1);
    }
    if (z.side() != 0) return std::nullopt;  // nothing of N_k is below a side-1 center
    const Rat w = z.x() * (Rat(1) - pow2_neg(kk + 1));
    return DoubleArrowPoint(w, 1);
}

// Full-space cone of a side-1 Q-point, used as a neighborhood of the center.
OrderInterval full_cone(RelationKind rel, const DoubleArrowPoint& y, bool down) {
    (void)rel;  // both relations give the open lex ray at a side-1 point
    return down ? OrderInterval::below({y.pair(), false})
                : OrderInterval::above({y.pair(), false});
}

}  // namespace

BidirCheckReport looks_check(const DoubleArrowPoint& z, LookDirection direction,
                             std::size_t k_max, RelationKind rel) {
    BidirCheckReport rep(z, direction, rel);

    // Bullet one: some canonical neighborhood is one-sided at z.
    const OrderInterval cone = direction == LookDirection::Right ? up_cone_on_q(rel, z)
                                                                 : down_cone_on_q(rel, z);
    for (std::size_t k = 0; k <= k_max; ++k) {
        if (q_part_subset(rel, nbhd_basic(z, k), z, cone)) {
            rep.one_sided_index = k;
            break;
        }
    }
    if (!rep.one_sided_index) {
        rep.verdict = CheckResult::fails_with_witness(
            {{"point", to_json(z)},
             {"bullet", "one-sided"},
             {"reason", "no canonical neighborhood is one-sided"},
             {"k_max", k_max}});
        return rep;
    }

    // Bullet two: every canonical neighborhood holds a Q-point whose cone is a
    // neighborhood of z.
    for (std::size_t k = 0; k <= k_max; ++k) {
        const OrderInterval nk = nbhd_basic(z, k);
        const auto y = cone_witness_pick(rel, z, k, direction);
        if (!y || !in_q(rel, *y) || !nk.contains(*y) || *y == z) {
            rep.verdict = CheckResult::fails_with_witness(
                {{"point", to_json(z)},
                 {"bullet", "cone"},
                 {"k", k},
                 {"reason", "no Q-point on the required side inside the neighborhood"}});
            return rep;
        }
        const OrderInterval ycone = full_cone(rel, *y, direction == LookDirection::Right);
        std::optional<std::size_t> j;
        for (std::size_t cand = 0; cand <= k_max + 2; ++cand) {
            if (nbhd_basic(z, cand).subset_of(ycone)) {
                j = cand;
                break;
            }
        }
        if (!j) {
            rep.verdict = CheckResult::fails_with_witness(
                {{"point", to_json(z)},
                 {"bullet", "cone"},
                 {"k", k},
                 {"witness", to_json(*y)},
                 {"reason", "witness cone absorbs no canonical neighborhood"}});
            return rep;
        }
        rep.witnesses.push_back(LookWitness{k, *y, *j});
    }
    rep.verdict = CheckResult::holds_to_depth(k_max);
    return rep;
}

CheckResult bidirected_check(RelationKind rel, const std::vector<DoubleArrowPoint>& samples,
                             std::size_t k_max, int right_side) {
    for (const DoubleArrowPoint& z : samples) {
        if (!in_reduced_space(z)) {
            return CheckResult::fails_with_witness(
                {{"point", to_json(z)}, {"stage", "carrier"}, {"reason", "outside the space"}});
        }
        for (std::size_t k = 0; k <= k_max; ++k) {
            const OrderInterval nk = nbhd_basic(z, k);
            if (side1_space_trace(nk).empty_over_rationals() ||
                side0_space_trace(nk).empty_over_rationals()) {
                return CheckResult::fails_with_witness({{"point", to_json(z)},
                                                        {"stage", "density"},
                                                        {"k", k},
                                                        {"reason",
                                                         "a canonical neighborhood misses a side"}});
            }
        }
        const bool right = z.side() == right_side;
        const BidirCheckReport rep =
            looks_check(z, right ? LookDirection::Right : LookDirection::Left, k_max, rel);
        if (!rep.verdict.holds()) {
            return CheckResult::fails_with_witness(
                {{"point", to_json(z)}, {"stage", "looks"}, {"report", to_json(rep)}});
        }
    }
    return CheckResult::holds_to_depth(k_max);
}

CheckResult limit_profile_laws_check(const std::vector<DoubleArrowPoint>& samples,
                                     std::size_t k_max) {
    const auto witness = [](const DoubleArrowPoint& z, int item, std::size_t k,
                            const std::string& reason) {
        return CheckResult::fails_with_witness(
            {{"point", to_json(z)}, {"item", item}, {"k", k}, {"reason", reason}});
    };

    for (const DoubleArrowPoint& z : samples) {
        if (z.side() != 0) {
            return CheckResult::fails_with_witness(
                {{"point", to_json(z)}, {"reason", "profile laws concern side-0 points"}});
        }
        const LimitProfile prof = limit_profile(z);
        const Rat& m = prof.min;
        const Rat& big_m = prof.sup;

        for (std::size_t k = 1; k <= k_max; ++k) {
            const RatInterval q_trace = side1_space_trace(nbhd_basic(z, k));

            // Item 1: all Q-values of the neighborhood sit below the sup.
            const RatInterval at_or_above =
                rat_intersect(q_trace, RatInterval{big_m, false, std::nullopt, false});
            if (!at_or_above.empty_over_rationals()) {
                return witness(z, 1, k, "a Q-value reaches the profile sup");
            }

            // Item 2: a half-open Q-trace [a, b) forces sup <= b.
            if (!(big_m <= *q_trace.hi)) {
                return witness(z, 2, k, "profile sup above the trace's right end");
            }

            // Item 5: the neighborhood still holds a Q-value under the min.
            const RatInterval under_min =
                rat_intersect(q_trace, RatInterval{std::nullopt, false, m, true});
            if (under_min.empty_over_rationals()) {
                return witness(z, 5, k, "no Q-value below the profile min");
            }
        }

        // Item 3: every value under the min is eventually below the whole
        // Q-trace; sampled deterministically from below.
        std::vector<Rat> low_values{Rat(0), z.x().scaled_down(1)};
        for (std::size_t j = 1; j <= k_max; ++j) {
            low_values.push_back(z.x() * (Rat(1) - pow2_neg(static_cast<unsigned long>(j))));
        }
        for (const Rat& y : low_values) {
            if (!(y < m)) continue;
            bool eventually_below = false;
            for (std::size_t k = 1; k <= k_max + 66 && !eventually_below; ++k) {
                const RatInterval t = side1_space_trace(nbhd_basic(z, k));
                eventually_below = t.lo && y < *t.lo;
            }
            if (!eventually_below) {
                return witness(z, 3, 0, "value below the min never clears the Q-trace");
            }
        }

        // Item 4: a value below some whole Q-trace is below the min; tested on
        // values at and above the min, which must never clear a trace.
        const std::vector<Rat> high_values{m, m + (Rat(1) - m).scaled_down(2), Rat(1)};
        for (const Rat& y : high_values) {
            if (y < m) continue;
            for (std::size_t k = 1; k <= k_max; ++k) {
                const RatInterval t = side1_space_trace(nbhd_basic(z, k));
                if (t.lo && y < *t.lo) {
                    return witness(z, 4, k, "value at or above the min cleared a Q-trace");
                }
            }
        }
    }
    return CheckResult::holds_to_depth(k_max);
}

}  // namespace souslin
