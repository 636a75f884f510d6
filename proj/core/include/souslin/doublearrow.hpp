#pragma once

#include "souslin/check.hpp"
#include "souslin/rat.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace souslin {

// Thrown when an operation defined on one side of the double-arrow space is
// queried with a point from the other side.
struct wrong_side : invalid_input {
    using invalid_input::invalid_input;
};

// Unvalidated lexicographic pair, used for interval bounds. A bound may denote
// a formal supremum outside the space, e.g. (1,1) above every side-1 point.
struct LexPair {
    Rat x;
    int side;

    std::string str() const;

    friend bool operator==(const LexPair& a, const LexPair& b) {
        return a.side == b.side && a.x == b.x;
    }
    friend bool operator!=(const LexPair& a, const LexPair& b) { return !(a == b); }
};

bool lex_lt(const LexPair& a, const LexPair& b);
bool lex_le(const LexPair& a, const LexPair& b);

// Point of the two-sided split interval: side 0 requires 0 < x <= 1 (a point
// approached from the left), side 1 requires 0 <= x < 1 (approached from the
// right). Construction validates the bounds.
class DoubleArrowPoint {
  public:
    DoubleArrowPoint(Rat x, int side);

    const Rat& x() const { return x_; }
    int side() const { return side_; }
    LexPair pair() const { return LexPair{x_, side_}; }

    std::string str() const;

    friend bool operator==(const DoubleArrowPoint& a, const DoubleArrowPoint& b) {
        return a.side_ == b.side_ && a.x_ == b.x_;
    }
    friend bool operator!=(const DoubleArrowPoint& a, const DoubleArrowPoint& b) {
        return !(a == b);
    }

  private:
    Rat x_;
    int side_;
};

bool lex_lt(const DoubleArrowPoint& a, const DoubleArrowPoint& b);

// Membership in the reduced space: the split interval minus its maximum (1,0),
// the carrier for the diagonalization instance.
bool in_reduced_space(const DoubleArrowPoint& z);

// Interval in the lexicographic order, with optional lower/upper bounds that
// are each open or closed. An absent bound leaves that end unconstrained.
class OrderInterval {
  public:
    struct Bound {
        LexPair at;
        bool closed;
    };

    static OrderInterval whole();
    // The reduced space as an interval: everything lex-below (1,0).
    static OrderInterval reduced_whole();
    static OrderInterval bounded(Bound lower, Bound upper);
    static OrderInterval below(Bound upper);
    static OrderInterval above(Bound lower);

    const std::optional<Bound>& lower() const { return lower_; }
    const std::optional<Bound>& upper() const { return upper_; }

    bool contains(const LexPair& p) const;
    bool contains(const DoubleArrowPoint& z) const { return contains(z.pair()); }
    bool subset_of(const OrderInterval& other) const;

    std::string str() const;

    friend bool operator==(const OrderInterval& a, const OrderInterval& b);
    friend bool operator!=(const OrderInterval& a, const OrderInterval& b) { return !(a == b); }

  private:
    OrderInterval() = default;
    std::optional<Bound> lower_;
    std::optional<Bound> upper_;
};

// Rational value interval with individually strict/weak bounds; the trace of an
// order interval on one side of the space.
struct RatInterval {
    std::optional<Rat> lo;
    bool lo_strict = false;
    std::optional<Rat> hi;
    bool hi_strict = false;

    bool contains(const Rat& v) const;
    bool empty_over_rationals() const;
    std::string str() const;
};

// Values v with (v,1) in the interval (ignoring the space's bound validation).
RatInterval side1_trace(const OrderInterval& s);
// Values v with (v,0) in the interval.
RatInterval side0_trace(const OrderInterval& s);

// Canonical shrinking neighborhood base, geometric factor 2^-k:
//   side 1: [(x,1), (x + (1-x)2^-k, 1))
//   side 0: ((x(1 - 2^-k), 0), (x,1))
// Both are order-open, contain z, and are nested decreasing in k; the extreme
// points get the same formulas with formal bounds.
OrderInterval nbhd_basic(const DoubleArrowPoint& z, std::size_t k);

// Left-limit profile of a side-0 point along the side-1 copy of [0,1): the set
// of reals attainable as limits of side-1 values converging to z, with its
// minimum and supremum. Closed form: the singleton {x(z)}.
struct LimitProfile {
    std::vector<Rat> values;  // the attainable limit set (always a singleton here)
    Rat min;
    Rat sup;
};

// Throws wrong_side for side-1 points.
LimitProfile limit_profile(const DoubleArrowPoint& z);

// The asymmetric relation of the dense/co-dense construction, in closed form
// over the split interval with the side-1 copy identified with [0,1):
//   (a,1) R (b,1)  iff  a < b
//   (a,1) R (b,0)  iff  a < b     (b = the left-limit value of (b,0))
//   (a,0) R (b,1)  iff  a <= b
//   (a,0) R (b,0)  never          (no clause applies; left unrelated)
bool r_constructed(const DoubleArrowPoint& p, const DoubleArrowPoint& q);

enum class RelationKind { Lex, Constructed };

bool related(RelationKind rel, const DoubleArrowPoint& a, const DoubleArrowPoint& b);

// The dense test set Q paired with each relation: the whole space for Lex, the
// side-1 copy for Constructed.
bool in_q(RelationKind rel, const DoubleArrowPoint& z);

enum class LookDirection { Right, Left };

// Per-neighborhood witness for the second bullet of looks-right/left: a point
// y of Q inside the k-th canonical neighborhood (minus the center) whose
// relation cone covers the cone_index-th canonical neighborhood of the center.
struct LookWitness {
    std::size_t k;
    DoubleArrowPoint y;
    std::size_t cone_index;
};

// Full report of a looks-to-the-right (or left) check at one point: which
// canonical neighborhood realizes the one-sidedness bullet, and one cone
// witness per canonical neighborhood up to k_max. Every recorded fact
// re-verifies by rational inequalities alone.
struct BidirCheckReport {
    DoubleArrowPoint point;
    LookDirection direction;
    RelationKind relation;
    std::optional<std::size_t> one_sided_index;
    std::vector<LookWitness> witnesses;
    CheckResult verdict;

    BidirCheckReport(DoubleArrowPoint p, LookDirection d, RelationKind r)
        : point(std::move(p)), direction(d), relation(r), verdict(CheckResult::holds_to_depth(0)) {}
};

// Decides both bullets of "z looks to the R-right (resp. R-left) along Q" for
// canonical neighborhoods up to k_max, by exact interval algebra: the Q-trace
// of every canonical neighborhood is a rational interval, so the quantified
// conditions reduce to finitely many inequalities.
BidirCheckReport looks_check(const DoubleArrowPoint& z, LookDirection direction,
                             std::size_t k_max, RelationKind rel);

// Verifies the bidirected-space conditions on the sampled points: the two
// sides partition the space, every canonical neighborhood of every sample
// meets both sides (density), and each sample looks in its side's direction.
// right_side selects which side is asserted to look right (1 is the correct
// assignment; 0 is the deliberate flip used by mutation tests).
CheckResult bidirected_check(RelationKind rel, const std::vector<DoubleArrowPoint>& samples,
                             std::size_t k_max, int right_side = 1);

// Exact per-point checks of the limit-profile laws used by the dense/co-dense
// argument, for side-0 samples z with m = min and M = sup of the profile:
//   (1) every canonical neighborhood with k >= 1 has all Q-values below M,
//       witnessing that a neighborhood with its Q-part below M exists;
//   (2) if a canonical neighborhood's Q-trace is [a,b), then M <= b;
//   (3) every value y < m is eventually below the whole Q-trace;
//   (4) a value below the whole Q-trace of a canonical neighborhood is < m;
//   (5) every canonical neighborhood contains a Q-value < m.
CheckResult limit_profile_laws_check(const std::vector<DoubleArrowPoint>& samples,
                                     std::size_t k_max);

}  // namespace souslin
