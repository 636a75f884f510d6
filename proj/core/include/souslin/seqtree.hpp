#pragma once

#include "souslin/check.hpp"
#include "souslin/rat.hpp"

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace souslin {

using SeqEntry = std::uint64_t;

// Finite sequence of naturals; immutable value type.
class FinSeq {
  public:
    FinSeq() = default;
    explicit FinSeq(std::vector<SeqEntry> entries) : entries_(std::move(entries)) {}
    FinSeq(std::initializer_list<SeqEntry> entries) : entries_(entries) {}

    std::size_t size() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }
    SeqEntry at(std::size_t i) const;

    // First n entries; n must not exceed the length.
    FinSeq take(std::size_t n) const;
    // Copy with one entry appended.
    FinSeq extended(SeqEntry k) const;

    const std::vector<SeqEntry>& entries() const { return entries_; }

    // Human-readable form: <1,0,2>, <> for the empty sequence.
    std::string str() const;

    friend bool operator==(const FinSeq& a, const FinSeq& b) { return a.entries_ == b.entries_; }
    friend bool operator!=(const FinSeq& a, const FinSeq& b) { return a.entries_ != b.entries_; }

  private:
    std::vector<SeqEntry> entries_;
};

// s is an initial segment of t (equality allowed).
bool is_prefix(const FinSeq& s, const FinSeq& t);

// Tail rules make an infinite sequence a finite, decidable object.
struct TailZero {};                       // ...0,0,0
struct TailConst { SeqEntry value; };     // ...k,k,k
struct TailPeriodic { FinSeq period; };   // period repeated forever (nonempty)
struct TailEncoded { Rat x; };            // continues along the real-line coding walk of x
using TailRule = std::variant<TailZero, TailConst, TailPeriodic, TailEncoded>;

// Infinite sequence given by an explicit head plus a tail rule. Entry lookup is
// total and deterministic; comparisons against other branches are decidable for
// every shipped tail rule.
class Branch {
  public:
    Branch() : head_(), tail_(TailZero{}) {}
    Branch(FinSeq head, TailRule tail);

    const FinSeq& head() const { return head_; }
    const TailRule& tail() const { return tail_; }

    // Entry at position i (0-based), total.
    SeqEntry at(std::size_t i) const;
    // First n entries, total.
    FinSeq take(std::size_t n) const;

    // Positions >= preperiod() repeat period() forever. Available for the three
    // explicitly periodic tail rules; for TailEncoded use the coding machinery.
    bool has_explicit_period() const;
    std::size_t preperiod() const;
    std::vector<SeqEntry> period() const;

    std::string str() const;

  private:
    FinSeq head_;
    TailRule tail_;
};

bool is_prefix(const FinSeq& s, const Branch& t);

// Structural result of a full symbolic comparison of two branches.
enum class BranchOrder { Less, Equal, Greater, Unknown };

struct BranchCompare {
    BranchOrder order;
    // First position where the two sequences differ (absent when equal/unknown).
    std::optional<std::size_t> diverge_at;
};

// Decides the relative lexicographic position of two branches. The budget caps
// entry-by-entry scanning; for the shipped (decidable) tail rules the scan bound
// is extended symbolically so the answer is never Unknown.
BranchCompare compare_branches(const Branch& a, const Branch& b, std::size_t depth_budget);

// Exact equality of the denoted infinite sequences (independent of representation).
bool branch_equal(const Branch& a, const Branch& b, std::size_t depth_budget = 64);

// Strict lexicographic precedence: a common initial segment followed by a
// strictly smaller entry on the left. Requires the witness position to exist on
// both sides, so a proper initial segment never precedes its extension.
Trivalent lex_before(const FinSeq& a, const FinSeq& b, std::size_t depth_budget);
Trivalent lex_before(const FinSeq& a, const Branch& b, std::size_t depth_budget);
Trivalent lex_before(const Branch& a, const FinSeq& b, std::size_t depth_budget);
Trivalent lex_before(const Branch& a, const Branch& b, std::size_t depth_budget);

// One symbolic antichain record: the infinite family { stem⌢k : k >= from }.
struct AntichainEntry {
    FinSeq stem;
    SeqEntry from;
};

// A family of finite sequences, pairwise incomparable under the prefix order,
// stored as finitely many symbolic records.
class Antichain {
  public:
    Antichain() = default;
    explicit Antichain(std::vector<AntichainEntry> entries) : entries_(std::move(entries)) {}

    const std::vector<AntichainEntry>& records() const { return entries_; }
    bool empty() const { return entries_.empty(); }

    // Exact pairwise prefix-incomparability of all denoted sequences, decided
    // symbolically over the entry ranges.
    bool is_antichain() const;

    // Membership of a concrete finite sequence in the denoted family.
    bool denotes(const FinSeq& s) const;

  private:
    std::vector<AntichainEntry> entries_;
};

// Membership in the node wedge past q at agreement level n: finite sequences
// properly extending q's level-n segment that lie lexicographically after q.
bool in_wedge_nodes(const FinSeq& s, const Branch& q, std::size_t n,
                    std::size_t depth_budget = 64);

// The minimal elements of that wedge with stems of length <= level_max,
// returned symbolically: one record (q's level-m segment, q(m)+1) per level
// m in [n, level_max].
Antichain wedge_antichain(const Branch& q, std::size_t n, std::size_t level_max);

// Membership in the branch wedge past q at agreement level n: branches that
// agree with q up to n and lie lexicographically after it.
Trivalent in_wedge(const Branch& p, const Branch& q, std::size_t n, std::size_t depth_budget);

}  // namespace souslin
