#pragma once

#include "souslin/check.hpp"
#include "souslin/scheme.hpp"
#include "souslin/seqtree.hpp"

#include <cstdint>
#include <functional>
#include <string>

namespace souslin {

// Open rational interval (lo, hi): the exact value set swept out by the cut of
// the real-line scheme past a branch.
struct CutDesc {
    Rat lo;
    Rat hi;

    bool contains(const Rat& y) const { return lo < y && y < hi; }
    std::string str() const;

    friend bool operator==(const CutDesc& a, const CutDesc& b) {
        return a.lo == b.lo && a.hi == b.hi;
    }
    friend bool operator!=(const CutDesc& a, const CutDesc& b) { return !(a == b); }
};

// Value set of the cut past q at level n over the real-line scheme: the open
// interval (decode(q), hi(node_interval(q|n))). Requires n >= 1: the level-0
// cut is a zig-permuted union of integer cells, not an interval.
CutDesc cut_interval(const Branch& q, std::size_t n, std::size_t depth_budget = 64);

// Canonical half-open neighborhood of x induced by the scheme: [x, j_m) where
// j_m is the right endpoint of the level-m node containing x; the whole line
// for m = 0. These are the Sorgenfrey basic sets realized by cuts.
IntervalDesc cut_base_element(const Rat& x, std::size_t m);

// Membership of z in the basic neighborhood cut(p, n) with p itself added, over
// the sequence-space scheme (cylinders): z = p, or z extends p's level-n node
// and lies lexicographically after p.
Trivalent basic_nbhd_member(const Branch& z, const Branch& p, std::size_t n,
                            std::size_t depth_budget = 64);

// Given x inside both basic neighborhoods (p, n) and (q, m), returns the level
// r = max(n, m) such that the basic neighborhood (x, r) refines both; the
// containment is spot-checked on deterministically enumerated members. Throws
// precondition_failed when x is not in both inputs.
std::size_t base_refinement(const Branch& p, std::size_t n, const Branch& q, std::size_t m,
                            const Branch& x, std::size_t depth_budget = 64);

// Injectable producer of the symbolic antichain of minimal wedge nodes, so the
// cut-law sweep can be pointed at deliberately broken variants.
using WedgeAntichainFn =
    std::function<Antichain(const Branch& q, std::size_t n, std::size_t level_max)>;

// Exhaustive check of the four cut laws over the sequence-space scheme, on the
// universe of branches with all-zero tails, head length < depth_bound, entries
// < entry_bound, and all levels n <= m <= depth_bound:
//   (1) wedge membership is antitone in the agreement level;
//   (2) lowering the base branch (lex-before, same level-n node) enlarges the wedge;
//   (3) wedge membership is equivalent to passing through a minimal wedge node;
//   (4) the three descriptions of the cut (member scan, node-antichain union,
//       predicate form) agree extensionally.
// Requires entry_bound >= 2 and depth_bound >= 2. A null antichain_fn means the
// real minimal-node construction.
CheckResult cut_laws_check(SeqEntry entry_bound, std::size_t depth_bound,
                           const WedgeAntichainFn& antichain_fn = nullptr);

// Bounded evidence that q is a base branch of x = decode(q) in the real-line
// scheme: for m <= m_max the canonical neighborhoods [x, j_m) are nested, have
// widths <= 2^(1-m), and their right endpoints strictly decrease toward x.
CheckResult cut_base_nbhd_check(const Branch& q, std::size_t m_max,
                                std::size_t depth_budget = 64);

}  // namespace souslin
