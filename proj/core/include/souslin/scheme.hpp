#pragma once

#include "souslin/check.hpp"
#include "souslin/rat.hpp"
#include "souslin/seqtree.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>

namespace souslin {

// Thrown by child lookups when the queried point lies outside the parent set.
struct out_of_interval : invalid_input {
    using invalid_input::invalid_input;
};

// Half-open rational interval [lo, hi), the whole line, or the empty set.
class IntervalDesc {
  public:
    enum class Kind { WholeLine, HalfOpen, Empty };

    static IntervalDesc whole_line() { return IntervalDesc(Kind::WholeLine, Rat(), Rat()); }
    static IntervalDesc empty() { return IntervalDesc(Kind::Empty, Rat(), Rat()); }
    // Requires lo < hi.
    static IntervalDesc half_open(Rat lo, Rat hi);

    Kind kind() const { return kind_; }
    bool is_half_open() const { return kind_ == Kind::HalfOpen; }

    // Endpoints; only meaningful for HalfOpen (throws otherwise).
    const Rat& lo() const;
    const Rat& hi() const;
    Rat length() const;

    bool contains(const Rat& x) const;
    bool subset_of(const IntervalDesc& other) const;
    bool disjoint_from(const IntervalDesc& other) const;

    std::string str() const;

    friend bool operator==(const IntervalDesc& a, const IntervalDesc& b);
    friend bool operator!=(const IntervalDesc& a, const IntervalDesc& b) { return !(a == b); }

  private:
    IntervalDesc(Kind k, Rat lo, Rat hi) : kind_(k), lo_(std::move(lo)), hi_(std::move(hi)) {}
    Kind kind_;
    Rat lo_, hi_;
};

// Zig-zag enumeration of the integers: 0, -1, 1, -2, 2, ...
// Used to index the level-1 cells [i, i+1) of the real line by naturals.
std::int64_t zig(SeqEntry n);
SeqEntry level1_index(std::int64_t i);

// Child n of a half-open parent [i,j): [j - (j-i)·2^-n, j - (j-i)·2^-(n+1)).
// Children accumulate toward the right endpoint, halving in length.
// Child n of the whole line is the integer cell [zig(n), zig(n)+1).
IntervalDesc child_interval(const IntervalDesc& parent, SeqEntry n);

// The half-open interval attached to a node of the real-line scheme:
// root = whole line, level 1 = integer cells via zig, geometric splitting below.
IntervalDesc node_interval(const FinSeq& a);

// Index of the unique child of `parent` containing x; exact integer arithmetic
// (repeated doubling of j-x against j-i). Throws out_of_interval if x is not in
// the parent. A WholeLine parent resolves to the integer cell index.
SeqEntry child_index(const IntervalDesc& parent, const Rat& x);

// The length-`depth` node whose interval contains x at every level.
FinSeq encode(const Rat& x, std::size_t depth);

// The full branch through x, with the lazily-extended coding tail.
Branch encode_branch(const Rat& x);

struct DecodeResult {
    Rat value;
    bool exact;
};

// Supremum of the left endpoints along the branch. Exact for every shipped tail
// rule: stabilizing walks stop, constant/periodic tails admit a closed-form
// geometric limit, coded tails return the coded point.
DecodeResult decode(const Branch& b, std::size_t depth_budget);

// Injectable node-set rule, for checking tampered variants of the scheme.
using NodeIntervalFn = std::function<IntervalDesc(const FinSeq&)>;

// Exhaustive child-interval law sweep over all nodes with lh <= depth and
// entries < children_per_node: disjoint adjacent children with the residual
// tail accounted symbolically, left-anchored covering, and the per-level
// length/step bounds. A null node_fn means the real scheme.
CheckResult scheme_axiom_check(std::size_t depth, SeqEntry children_per_node,
                               const NodeIntervalFn& node_fn = nullptr);

// Re-runs the violated clause recorded in a scheme_axiom_check witness against
// the same node function; true iff the witness still demonstrates a violation.
bool reverify_scheme_witness(const nlohmann::json& witness,
                             const NodeIntervalFn& node_fn = nullptr);

// Cylinder membership for the sequence-space scheme: p passes through node a.
inline bool cylinder_member(const FinSeq& a, const Branch& p) { return is_prefix(a, p); }

// Variant rooted at [0,1) with geometric splitting at every level (no integer
// cells); this is the value scheme behind the double-arrow instance.
IntervalDesc unit_node_interval(const FinSeq& a);
FinSeq unit_encode(const Rat& x, std::size_t depth);  // requires 0 <= x < 1

// Closed explicit form of the unit-scheme branch through x: the walk's entry
// sequence is eventually periodic for every rational, so the result uses only
// head + zero/constant/periodic tails and needs no lazy coding rule.
Branch unit_encode_branch(const Rat& x);

// Exact value of a unit-scheme branch (supremum of left endpoints from [0,1)).
Rat unit_decode(const Branch& b, std::size_t depth_budget = 64);

// True iff the walk's left endpoint eventually equals x, i.e. the branch of x
// ends in all zeros. Over the unit scheme this happens exactly for dyadic x.
bool unit_walk_stabilizes(const Rat& x);

}  // namespace souslin
