#include "souslin/seqtree.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace souslin {

SeqEntry FinSeq::at(std::size_t i) const {
    if (i >= entries_.size()) {
        throw std::out_of_range("FinSeq::at: index " + std::to_string(i) + " out of range");
    }
    return entries_[i];
}

FinSeq FinSeq::take(std::size_t n) const {
    if (n > entries_.size()) {
        throw std::out_of_range("FinSeq::take: prefix length exceeds sequence length");
    }
    return FinSeq(std::vector<SeqEntry>(entries_.begin(), entries_.begin() + n));
}

FinSeq FinSeq::extended(SeqEntry k) const {
    std::vector<SeqEntry> out = entries_;
    out.push_back(k);
    return FinSeq(std::move(out));
}

std::string FinSeq::str() const {
    std::ostringstream os;
    os << '<';
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        if (i) os << ',';
        os << entries_[i];
    }
    os << '>';
    return os.str();
}

bool is_prefix(const FinSeq& s, const FinSeq& t) {
    if (s.size() > t.size()) return false;
    return std::equal(s.entries().begin(), s.entries().end(), t.entries().begin());
}

namespace detail {
// Defined with the coding-walk machinery: entry i of the real-line walk of x.
SeqEntry coded_entry(const Rat& x, std::size_t i);
}  // namespace detail

Branch::Branch(FinSeq head, TailRule tail) : head_(std::move(head)), tail_(std::move(tail)) {
    if (const auto* p = std::get_if<TailPeriodic>(&tail_)) {
        if (p->period.empty()) {
            throw invalid_input("Branch: periodic tail rule requires a nonempty period");
        }
    }
}

SeqEntry Branch::at(std::size_t i) const {
    if (i < head_.size()) return head_.at(i);
    return std::visit(
        [&](const auto& t) -> SeqEntry {
            using T = std::decay_t<decltype(t)>;
            if constexpr (std::is_same_v<T, TailZero>) {
                return 0;
            } else if constexpr (std::is_same_v<T, TailConst>) {
                return t.value;
            } else if constexpr (std::is_same_v<T, TailPeriodic>) {
                return t.period.at((i - head_.size()) % t.period.size());
            } else {
                return detail::coded_entry(t.x, i);
            }
        },
        tail_);
}

FinSeq Branch::take(std::size_t n) const {
    std::vector<SeqEntry> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.push_back(at(i));
    return FinSeq(std::move(out));
}

bool Branch::has_explicit_period() const { return !std::holds_alternative<TailEncoded>(tail_); }

std::size_t Branch::preperiod() const {
    if (!has_explicit_period()) {
        throw std::logic_error("Branch::preperiod: tail has no explicit period");
    }
    return head_.size();
}

std::vector<SeqEntry> Branch::period() const {
    if (const auto* p = std::get_if<TailPeriodic>(&tail_)) return p->period.entries();
    if (const auto* c = std::get_if<TailConst>(&tail_)) return {c->value};
    if (std::holds_alternative<TailZero>(tail_)) return {0};
    throw std::logic_error("Branch::period: tail has no explicit period");
}

std::string Branch::str() const {
    std::ostringstream os;
    os << head_.str() << '+';
    std::visit(
        [&](const auto& t) {
            using T = std::decay_t<decltype(t)>;
            if constexpr (std::is_same_v<T, TailZero>) {
                os << "zero";
            } else if constexpr (std::is_same_v<T, TailConst>) {
                os << "const(" << t.value << ')';
            } else if constexpr (std::is_same_v<T, TailPeriodic>) {
                os << "period" << t.period.str();
            } else {
                os << "code(" << t.x.str() << ')';
            }
        },
        tail_);
    return os.str();
}

bool is_prefix(const FinSeq& s, const Branch& t) {
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s.at(i) != t.at(i)) return false;
    }
    return true;
}

bool branch_equal(const Branch& a, const Branch& b, std::size_t depth_budget) {
    return compare_branches(a, b, depth_budget).order == BranchOrder::Equal;
}

Trivalent lex_before(const FinSeq& a, const FinSeq& b, std::size_t /*depth_budget*/) {
    const std::size_t n = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i) {
        if (a.at(i) < b.at(i)) return Trivalent::True;
        if (a.at(i) > b.at(i)) return Trivalent::False;
    }
    // No divergence inside the common range: the witness position must exist on
    // both sides, so prefixes (and equals) do not precede.
    return Trivalent::False;
}

Trivalent lex_before(const FinSeq& a, const Branch& b, std::size_t /*depth_budget*/) {
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a.at(i) < b.at(i)) return Trivalent::True;
        if (a.at(i) > b.at(i)) return Trivalent::False;
    }
    return Trivalent::False;
}

Trivalent lex_before(const Branch& a, const FinSeq& b, std::size_t /*depth_budget*/) {
    for (std::size_t i = 0; i < b.size(); ++i) {
        if (a.at(i) < b.at(i)) return Trivalent::True;
        if (a.at(i) > b.at(i)) return Trivalent::False;
    }
    return Trivalent::False;
}

Trivalent lex_before(const Branch& a, const Branch& b, std::size_t depth_budget) {
    switch (compare_branches(a, b, depth_budget).order) {
        case BranchOrder::Less: return Trivalent::True;
        case BranchOrder::Equal:
        case BranchOrder::Greater: return Trivalent::False;
        default: return Trivalent::Unknown;
    }
}

bool Antichain::is_antichain() const {
    // Record r1 reaches into record r2 when some denoted member of r1 is a
    // prefix of a denoted member of r2.
    auto clash = [](const AntichainEntry& r1, const AntichainEntry& r2) {
        if (r1.stem == r2.stem) return true;  // shared members
        if (r1.stem.size() < r2.stem.size() && is_prefix(r1.stem, r2.stem)) {
            return r2.stem.at(r1.stem.size()) >= r1.from;
        }
        return false;
    };
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        for (std::size_t j = 0; j < entries_.size(); ++j) {
            if (i == j) continue;
            if (clash(entries_[i], entries_[j])) return false;
        }
    }
    return true;
}

bool Antichain::denotes(const FinSeq& s) const {
    for (const auto& r : entries_) {
        if (s.size() == r.stem.size() + 1 && is_prefix(r.stem, s) &&
            s.at(r.stem.size()) >= r.from) {
            return true;
        }
    }
    return false;
}

bool in_wedge_nodes(const FinSeq& s, const Branch& q, std::size_t n, std::size_t depth_budget) {
    (void)depth_budget;  // the scan is bounded by the finite sequence itself
    if (s.size() <= n) return false;
    for (std::size_t i = 0; i < n; ++i) {
        if (s.at(i) != q.at(i)) return false;
    }
    for (std::size_t i = n; i < s.size(); ++i) {
        if (q.at(i) < s.at(i)) return true;
        if (q.at(i) > s.at(i)) return false;
    }
    return false;  // s is a prefix of q: not strictly past it
}

Antichain wedge_antichain(const Branch& q, std::size_t n, std::size_t level_max) {
    std::vector<AntichainEntry> records;
    for (std::size_t m = n; m <= level_max; ++m) {
        records.push_back(AntichainEntry{q.take(m), q.at(m) + 1});
    }
    return Antichain(std::move(records));
}

Trivalent in_wedge(const Branch& p, const Branch& q, std::size_t n, std::size_t depth_budget) {
    for (std::size_t i = 0; i < n; ++i) {
        if (p.at(i) != q.at(i)) return Trivalent::False;
    }
    return lex_before(q, p, depth_budget);
}

}  // namespace souslin
