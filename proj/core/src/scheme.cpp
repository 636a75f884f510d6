#include "souslin/scheme.hpp"

#include "souslin/serialize.hpp"

#include <limits>
#include <map>
#include <numeric>
#include <sstream>
#include <vector>

namespace souslin {

// ---------------------------------------------------------------------------
// Intervals

IntervalDesc IntervalDesc::half_open(Rat lo, Rat hi) {
    if (!(lo < hi)) {
        throw invalid_input("IntervalDesc::half_open: requires lo < hi, got [" + lo.str() + ", " +
                            hi.str() + ")");
    }
    return IntervalDesc(Kind::HalfOpen, std::move(lo), std::move(hi));
}

const Rat& IntervalDesc::lo() const {
    if (kind_ != Kind::HalfOpen) throw std::logic_error("IntervalDesc::lo: not a bounded interval");
    return lo_;
}

const Rat& IntervalDesc::hi() const {
    if (kind_ != Kind::HalfOpen) throw std::logic_error("IntervalDesc::hi: not a bounded interval");
    return hi_;
}

Rat IntervalDesc::length() const {
    if (kind_ != Kind::HalfOpen) {
        throw std::logic_error("IntervalDesc::length: not a bounded interval");
    }
    return hi_ - lo_;
}

bool IntervalDesc::contains(const Rat& x) const {
    switch (kind_) {
        case Kind::WholeLine: return true;
        case Kind::Empty: return false;
        case Kind::HalfOpen: return lo_ <= x && x < hi_;
    }
    return false;
}

bool IntervalDesc::subset_of(const IntervalDesc& other) const {
    if (kind_ == Kind::Empty) return true;
    if (other.kind_ == Kind::WholeLine) return true;
    if (other.kind_ == Kind::Empty) return false;
    if (kind_ == Kind::WholeLine) return false;
    return other.lo_ <= lo_ && hi_ <= other.hi_;
}

bool IntervalDesc::disjoint_from(const IntervalDesc& other) const {
    if (kind_ == Kind::Empty || other.kind_ == Kind::Empty) return true;
    if (kind_ == Kind::WholeLine || other.kind_ == Kind::WholeLine) return false;
    return hi_ <= other.lo_ || other.hi_ <= lo_;
}

std::string IntervalDesc::str() const {
    switch (kind_) {
        case Kind::WholeLine: return "whole-line";
        case Kind::Empty: return "empty";
        case Kind::HalfOpen: return "[" + lo_.str() + ", " + hi_.str() + ")";
    }
    return "?";
}

bool operator==(const IntervalDesc& a, const IntervalDesc& b) {
    if (a.kind_ != b.kind_) return false;
    if (a.kind_ != IntervalDesc::Kind::HalfOpen) return true;
    return a.lo_ == b.lo_ && a.hi_ == b.hi_;
}

// ---------------------------------------------------------------------------
// Level-1 enumeration and the child rule

std::int64_t zig(SeqEntry n) {
    if (n > static_cast<SeqEntry>(std::numeric_limits<std::int64_t>::max())) {
        throw invalid_input("zig: index too large");
    }
    const auto sn = static_cast<std::int64_t>(n);
    return n % 2 == 0 ? sn / 2 : -(sn + 1) / 2;
}

SeqEntry level1_index(std::int64_t i) {
    if (i >= 0) {
        if (i > std::numeric_limits<std::int64_t>::max() / 2) {
            throw invalid_input("level1_index: coordinate too large");
        }
        return static_cast<SeqEntry>(2 * i);
    }
    if (i < -(std::numeric_limits<std::int64_t>::max() / 2)) {
        throw invalid_input("level1_index: coordinate too large");
    }
    return static_cast<SeqEntry>(-2 * i - 1);
}

IntervalDesc child_interval(const IntervalDesc& parent, SeqEntry n) {
    switch (parent.kind()) {
        case IntervalDesc::Kind::Empty:
            throw invalid_input("child_interval: the empty set has no children");
        case IntervalDesc::Kind::WholeLine: {
            const std::int64_t cell = zig(n);
            return IntervalDesc::half_open(Rat(cell), Rat(cell) + Rat(1));
        }
        case IntervalDesc::Kind::HalfOpen: {
            const Rat len = parent.length();
            const Rat j = parent.hi();
            return IntervalDesc::half_open(j - len.scaled_down(n), j - len.scaled_down(n + 1));
        }
    }
    throw std::logic_error("child_interval: unreachable");
}

IntervalDesc node_interval(const FinSeq& a) {
    IntervalDesc out = IntervalDesc::whole_line();
    for (SeqEntry e : a.entries()) out = child_interval(out, e);
    return out;
}

SeqEntry child_index(const IntervalDesc& parent, const Rat& x) {
    switch (parent.kind()) {
        case IntervalDesc::Kind::Empty:
            throw out_of_interval("child_index: the empty set contains no point");
        case IntervalDesc::Kind::WholeLine: {
            const mpz_class f = x.floor();
            if (!f.fits_slong_p()) throw invalid_input("child_index: coordinate too large");
            return level1_index(f.get_si());
        }
        case IntervalDesc::Kind::HalfOpen: {
            if (!parent.contains(x)) {
                throw out_of_interval("child_index: " + x.str() + " outside " + parent.str());
            }
            // u in (2^-(n+1), 2^-n] picks child n; found by exact doubling.
            Rat u = (parent.hi() - x) / parent.length();
            SeqEntry n = 0;
            const Rat half(1, 2);
            while (u <= half) {
                u = u + u;
                ++n;
            }
            return n;
        }
    }
    throw std::logic_error("child_index: unreachable");
}

FinSeq encode(const Rat& x, std::size_t depth) {
    std::vector<SeqEntry> out;
    out.reserve(depth);
    IntervalDesc node = IntervalDesc::whole_line();
    for (std::size_t i = 0; i < depth; ++i) {
        const SeqEntry n = child_index(node, x);
        out.push_back(n);
        node = child_interval(node, n);
    }
    return FinSeq(std::move(out));
}

Branch encode_branch(const Rat& x) { return Branch(FinSeq(), TailEncoded{x}); }

// ---------------------------------------------------------------------------
// The coding walk

namespace {

// Incremental generator of the real-line coding-walk entries of x, carrying
// the normalized position u = (hi - x) / length of x inside the current node.
class CodingWalk {
  public:
    explicit CodingWalk(Rat x) : x_(std::move(x)) {}

    bool at_root() const { return at_root_; }
    // Valid after the first step: the normalized state inside the level >= 1
    // node, before producing the next entry.
    const Rat& state() const { return u_; }

    SeqEntry next() {
        if (at_root_) {
            const mpz_class f = x_.floor();
            if (!f.fits_slong_p()) throw invalid_input("coding walk: coordinate too large");
            u_ = Rat(mpz_class(f + 1)) - x_;
            at_root_ = false;
            return level1_index(f.get_si());
        }
        Rat v = u_;
        SeqEntry n = 0;
        const Rat half(1, 2);
        while (v <= half) {
            v = v + v;
            ++n;
        }
        u_ = v + v - Rat(1);
        return n;
    }

  private:
    Rat x_;
    Rat u_ = Rat(1);
    bool at_root_ = true;
};

// Sequential entry reader over a branch; walker-backed for coded tails so a
// scan of n entries costs O(n) rather than O(n^2).
class EntryStream {
  public:
    explicit EntryStream(const Branch& b) : b_(&b) {
        if (const auto* enc = std::get_if<TailEncoded>(&b.tail())) walk_.emplace(enc->x);
    }

    SeqEntry next() {
        SeqEntry out;
        if (walk_) {
            const SeqEntry walked = walk_->next();
            out = pos_ < b_->head().size() ? b_->head().at(pos_) : walked;
        } else {
            out = b_->at(pos_);
        }
        ++pos_;
        return out;
    }

  private:
    const Branch* b_;
    std::size_t pos_ = 0;
    std::optional<CodingWalk> walk_;
};

Branch normalized_periodic(FinSeq head, std::vector<SeqEntry> period) {
    bool all_same = true;
    for (SeqEntry e : period) {
        if (e != period.front()) {
            all_same = false;
            break;
        }
    }
    if (all_same && period.front() == 0) return Branch(std::move(head), TailZero{});
    if (all_same) return Branch(std::move(head), TailConst{period.front()});
    return Branch(std::move(head), TailPeriodic{FinSeq(std::move(period))});
}

// Limit of the left endpoints when the entries below [lo, lo+len) repeat the
// given block forever: one block application is affine, lo' = lo + len*A,
// len' = len*B with B < 1, so the limit is lo + len * A / (1 - B).
Rat periodic_limit(const Rat& lo, const Rat& len, const std::vector<SeqEntry>& block) {
    Rat a(0), b(1);
    for (SeqEntry k : block) {
        a = a + b * (Rat(1) - pow2_neg(k));
        b = b * pow2_neg(k + 1);
    }
    return lo + len * a / (Rat(1) - b);
}

IntervalDesc root_interval(bool unit_root) {
    return unit_root ? IntervalDesc::half_open(Rat(0), Rat(1)) : IntervalDesc::whole_line();
}

IntervalDesc node_under_root(const FinSeq& a, bool unit_root) {
    IntervalDesc out = root_interval(unit_root);
    for (SeqEntry e : a.entries()) out = child_interval(out, e);
    return out;
}

// Rewrites a coded-tail branch as an explicitly periodic one by following the
// walk's normalized states until one repeats. Returns absent when no repeat
// shows up within the budget (possible only when the budget undercuts the
// state count, which is bounded by the coordinate's denominator).
std::optional<Branch> explicit_form_of_coded(const Branch& b, const Rat& x, std::size_t budget) {
    const std::size_t scan_start = std::max<std::size_t>(b.head().size(), 1);
    CodingWalk walk(x);
    std::vector<SeqEntry> prefix;
    for (std::size_t i = 0; i < scan_start; ++i) {
        const SeqEntry walked = walk.next();
        prefix.push_back(i < b.head().size() ? b.head().at(i) : walked);
    }
    std::map<Rat, std::size_t> seen;
    std::vector<SeqEntry> scanned;
    for (std::size_t step = 0; step <= budget; ++step) {
        const Rat state = walk.state();
        auto [it, inserted] = seen.emplace(state, scanned.size());
        if (!inserted) {
            const std::size_t cycle_from = it->second;
            std::vector<SeqEntry> head_entries = prefix;
            head_entries.insert(head_entries.end(), scanned.begin(),
                                scanned.begin() + static_cast<std::ptrdiff_t>(cycle_from));
            std::vector<SeqEntry> period(scanned.begin() + static_cast<std::ptrdiff_t>(cycle_from),
                                         scanned.end());
            return normalized_periodic(FinSeq(std::move(head_entries)), std::move(period));
        }
        scanned.push_back(walk.next());
    }
    return std::nullopt;
}

DecodeResult decode_over(const Branch& b, std::size_t depth_budget, bool unit_root) {
    const std::size_t head_len = b.head().size();

    if (const auto* enc = std::get_if<TailEncoded>(&b.tail())) {
        if (!unit_root) {
            // Canonical shortcut: when the head is the walk's own prefix the
            // branch is the code of x and its value is x itself.
            CodingWalk walk(enc->x);
            bool matches = true;
            for (std::size_t i = 0; i < head_len; ++i) {
                if (walk.next() != b.head().at(i)) {
                    matches = false;
                    break;
                }
            }
            if (matches) return DecodeResult{enc->x, true};
        }
        if (auto explicit_b = explicit_form_of_coded(b, enc->x, depth_budget)) {
            return decode_over(*explicit_b, depth_budget, unit_root);
        }
        // Budget ran out before the walk state repeated: report the deepest
        // left endpoint reached; the error is below that node's length.
        const std::size_t depth = std::max<std::size_t>(depth_budget, 1);
        IntervalDesc node = root_interval(unit_root);
        EntryStream entries(b);
        for (std::size_t i = 0; i < depth; ++i) node = child_interval(node, entries.next());
        return DecodeResult{node.lo(), false};
    }

    // Explicit tails: descend to a node below which the tail is a pure block,
    // then close the geometric recursion in one step.
    std::size_t descend = head_len;
    if (!unit_root && descend == 0) {
        descend = std::holds_alternative<TailPeriodic>(b.tail())
                      ? std::get<TailPeriodic>(b.tail()).period.size()
                      : 1;
    }
    const IntervalDesc node = node_under_root(b.take(descend), unit_root);

    if (std::holds_alternative<TailZero>(b.tail())) {
        return DecodeResult{node.lo(), true};
    }
    const std::vector<SeqEntry> block = b.period();
    return DecodeResult{periodic_limit(node.lo(), node.length(), block), true};
}

}  // namespace

namespace detail {

SeqEntry coded_entry(const Rat& x, std::size_t i) {
    CodingWalk walk(x);
    for (std::size_t t = 0; t < i; ++t) walk.next();
    return walk.next();
}

}  // namespace detail

DecodeResult decode(const Branch& b, std::size_t depth_budget) {
    return decode_over(b, depth_budget, false);
}

// ---------------------------------------------------------------------------
// Branch comparison

BranchCompare compare_branches(const Branch& a, const Branch& b, std::size_t depth_budget) {
    const bool explicit_pair = a.has_explicit_period() && b.has_explicit_period();

    std::size_t horizon = 0;
    bool horizon_sound = false;  // true when no divergence inside it proves equality
    if (explicit_pair) {
        const std::size_t ra = a.period().size();
        const std::size_t rb = b.period().size();
        const std::size_t joint = std::lcm(ra, rb);
        if (joint <= 1u << 20) {
            horizon = std::max(a.preperiod(), b.preperiod()) + joint;
            horizon_sound = true;
        } else {
            horizon = depth_budget;
        }
    } else {
        const DecodeResult da = decode(a, depth_budget);
        const DecodeResult db = decode(b, depth_budget);
        if (da.exact && db.exact) {
            if (da.value == db.value) {
                // Distinct branches code distinct reals, so equal values force
                // equal entry sequences.
                return BranchCompare{BranchOrder::Equal, std::nullopt};
            }
            // Nodes at depth d have length <= 2^(1-d); once that drops below
            // the value gap the branches must have parted.
            Rat gap = da.value - db.value;
            if (gap < Rat(0)) gap = -gap;
            std::size_t d = 1;
            Rat bound(1);  // 2^(1-d) at d = 1
            while (bound > gap) {
                bound = bound.scaled_down(1);
                ++d;
            }
            horizon = d + 2;
            horizon_sound = false;  // divergence is guaranteed inside, not equality
        } else {
            horizon = depth_budget;
        }
    }

    EntryStream sa(a);
    EntryStream sb(b);
    for (std::size_t i = 0; i < horizon; ++i) {
        const SeqEntry ea = sa.next();
        const SeqEntry eb = sb.next();
        if (ea < eb) return BranchCompare{BranchOrder::Less, i};
        if (ea > eb) return BranchCompare{BranchOrder::Greater, i};
    }
    if (explicit_pair && horizon_sound) return BranchCompare{BranchOrder::Equal, std::nullopt};
    return BranchCompare{BranchOrder::Unknown, std::nullopt};
}

// ---------------------------------------------------------------------------
// Axiom sweep

namespace {

nlohmann::json interval_json(const IntervalDesc& d) { return to_json(d); }

nlohmann::json sweep_witness(const std::string& clause, const FinSeq& parent, const FinSeq& node,
                             nlohmann::json detail) {
    return nlohmann::json{{"clause", clause},
                          {"parent", to_json(parent)},
                          {"node", to_json(node)},
                          {"detail", std::move(detail)}};
}

IntervalDesc eval_node(const NodeIntervalFn& fn, const FinSeq& a) {
    return fn ? fn(a) : node_interval(a);
}

// Checks one parent's children block; returns a witness or null.
nlohmann::json check_parent(const NodeIntervalFn& fn, const FinSeq& a, SeqEntry children) {
    const IntervalDesc parent = eval_node(fn, a);
    if (parent.kind() == IntervalDesc::Kind::Empty) {
        return sweep_witness("empty-node", a, a, {{"set", interval_json(parent)}});
    }
    std::vector<IntervalDesc> kids;
    std::vector<FinSeq> kid_paths;
    for (SeqEntry n = 0; n < children; ++n) {
        kid_paths.push_back(a.extended(n));
        kids.push_back(eval_node(fn, kid_paths.back()));
        if (kids.back().kind() != IntervalDesc::Kind::HalfOpen) {
            return sweep_witness("child-not-bounded", a, kid_paths.back(),
                                 {{"set", interval_json(kids.back())}});
        }
    }

    // Pairwise disjointness first: an overlap names the later (tampered) node.
    for (std::size_t i = 0; i < kids.size(); ++i) {
        for (std::size_t j = i + 1; j < kids.size(); ++j) {
            if (!kids[i].disjoint_from(kids[j])) {
                return sweep_witness("children-overlap", a, kid_paths[j],
                                     {{"first", to_json(kid_paths[i])},
                                      {"first_set", interval_json(kids[i])},
                                      {"second_set", interval_json(kids[j])}});
            }
        }
    }

    if (parent.kind() == IntervalDesc::Kind::WholeLine) {
        // The level-1 cells: unit length, tiling a contiguous block when
        // reordered by position; what remains is two symbolic rays.
        std::vector<std::size_t> order(kids.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::sort(order.begin(), order.end(),
                  [&](std::size_t p, std::size_t q) { return kids[p].lo() < kids[q].lo(); });
        for (std::size_t t = 0; t + 1 < order.size(); ++t) {
            if (kids[order[t]].hi() != kids[order[t + 1]].lo()) {
                return sweep_witness("root-cells-not-tiling", a, kid_paths[order[t + 1]],
                                     {{"first", to_json(kid_paths[order[t]])},
                                      {"first_set", interval_json(kids[order[t]])},
                                      {"second_set", interval_json(kids[order[t + 1]])}});
            }
        }
        for (std::size_t n = 0; n < kids.size(); ++n) {
            if (kids[n].length() > Rat(1)) {
                return sweep_witness("step-bound", a, kid_paths[n],
                                     {{"length", kids[n].length().str()}, {"bound", "1/1"}});
            }
        }
        return nullptr;
    }

    const Rat i = parent.lo();
    const Rat j = parent.hi();
    const Rat len = parent.length();
    const std::size_t lh = a.size();

    if (kids.front().lo() != i) {
        return sweep_witness("child-not-anchored", a, kid_paths.front(),
                             {{"child_lo", kids.front().lo().str()}, {"parent_lo", i.str()}});
    }
    for (std::size_t n = 0; n + 1 < kids.size(); ++n) {
        if (kids[n + 1].lo() != kids[n].hi()) {
            return sweep_witness("children-gap", a, kid_paths[n + 1],
                                 {{"first", to_json(kid_paths[n])},
                                  {"first_set", interval_json(kids[n])},
                                  {"second_set", interval_json(kids[n + 1])}});
        }
    }
    for (std::size_t n = 0; n < kids.size(); ++n) {
        const Rat expected_hi = j - len.scaled_down(static_cast<unsigned long>(n) + 1);
        if (kids[n].hi() != expected_hi) {
            return sweep_witness("child-endpoint-formula", a, kid_paths[n],
                                 {{"child_hi", kids[n].hi().str()},
                                  {"expected_hi", expected_hi.str()},
                                  {"residual_after_children",
                                   "[" + kids.back().hi().str() + ", " + j.str() + ")"}});
        }
        if (!kids[n].subset_of(parent)) {
            return sweep_witness("child-outside-parent", a, kid_paths[n],
                                 {{"child_set", interval_json(kids[n])},
                                  {"parent_set", interval_json(parent)}});
        }
    }
    if (lh >= 1) {
        const Rat length_bound = pow2_neg(static_cast<unsigned long>(lh - 1));  // 2^(1-lh)
        if (len > length_bound) {
            return sweep_witness("length-bound", a, a,
                                 {{"length", len.str()}, {"bound", length_bound.str()}});
        }
    }
    const Rat step_bound(1, static_cast<unsigned long>(lh) + 1);
    for (std::size_t n = 0; n < kids.size(); ++n) {
        if (kids[n].length() > step_bound) {
            return sweep_witness("step-bound", a, kid_paths[n],
                                 {{"length", kids[n].length().str()},
                                  {"bound", step_bound.str()}});
        }
    }
    return nullptr;
}

}  // namespace

CheckResult scheme_axiom_check(std::size_t depth, SeqEntry children_per_node,
                               const NodeIntervalFn& node_fn) {
    if (depth < 1) throw invalid_input("scheme_axiom_check: depth must be at least 1");
    if (children_per_node < 1) {
        throw invalid_input("scheme_axiom_check: children_per_node must be at least 1");
    }

    std::vector<FinSeq> level{FinSeq()};
    for (std::size_t lh = 0; lh <= depth; ++lh) {
        std::vector<FinSeq> next;
        for (const FinSeq& a : level) {
            nlohmann::json w = check_parent(node_fn, a, children_per_node);
            if (!w.is_null()) return CheckResult::fails_with_witness(std::move(w));
            if (lh < depth) {
                for (SeqEntry n = 0; n < children_per_node; ++n) next.push_back(a.extended(n));
            }
        }
        level = std::move(next);
    }
    return CheckResult::holds_to_depth(depth);
}

bool reverify_scheme_witness(const nlohmann::json& witness, const NodeIntervalFn& node_fn) {
    try {
        const std::string clause = witness.at("clause").get<std::string>();
        const FinSeq parent = finseq_from_json(witness.at("parent"));
        const FinSeq node = finseq_from_json(witness.at("node"));
        const auto detail = witness.value("detail", nlohmann::json::object());

        if (clause == "empty-node") {
            return eval_node(node_fn, node).kind() == IntervalDesc::Kind::Empty;
        }
        if (clause == "child-not-bounded") {
            return eval_node(node_fn, node).kind() != IntervalDesc::Kind::HalfOpen;
        }
        if (clause == "children-overlap" || clause == "root-cells-not-tiling" ||
            clause == "children-gap") {
            const FinSeq first = finseq_from_json(detail.at("first"));
            const IntervalDesc s1 = eval_node(node_fn, first);
            const IntervalDesc s2 = eval_node(node_fn, node);
            if (clause == "children-overlap") return !s1.disjoint_from(s2);
            return s1.hi() != s2.lo();
        }
        if (clause == "child-not-anchored") {
            return eval_node(node_fn, node).lo() != eval_node(node_fn, parent).lo();
        }
        if (clause == "child-endpoint-formula") {
            const Rat expected = Rat::parse(detail.at("expected_hi").get<std::string>());
            return eval_node(node_fn, node).hi() != expected;
        }
        if (clause == "child-outside-parent") {
            return !eval_node(node_fn, node).subset_of(eval_node(node_fn, parent));
        }
        if (clause == "length-bound" || clause == "step-bound") {
            const Rat bound = Rat::parse(detail.at("bound").get<std::string>());
            return eval_node(node_fn, node).length() > bound;
        }
        return false;
    } catch (const std::exception&) {
        return false;
    }
}

// ---------------------------------------------------------------------------
// Unit-interval variant

IntervalDesc unit_node_interval(const FinSeq& a) { return node_under_root(a, true); }

FinSeq unit_encode(const Rat& x, std::size_t depth) {
    if (x < Rat(0) || x >= Rat(1)) {
        throw invalid_input("unit_encode: " + x.str() + " outside [0, 1)");
    }
    std::vector<SeqEntry> out;
    out.reserve(depth);
    IntervalDesc node = root_interval(true);
    for (std::size_t i = 0; i < depth; ++i) {
        const SeqEntry n = child_index(node, x);
        out.push_back(n);
        node = child_interval(node, n);
    }
    return FinSeq(std::move(out));
}

Branch unit_encode_branch(const Rat& x) {
    if (x < Rat(0) || x >= Rat(1)) {
        throw invalid_input("unit_encode_branch: " + x.str() + " outside [0, 1)");
    }
    // The walk's normalized state determines everything after it, and its
    // denominator divides den(x): a repeat arrives within den(x) + 1 steps.
    std::map<Rat, std::size_t> seen;
    std::vector<SeqEntry> entries;
    IntervalDesc node = root_interval(true);
    Rat u = Rat(1) - x;  // (hi - x) / length over [0, 1)
    for (;;) {
        auto [it, inserted] = seen.emplace(u, entries.size());
        if (!inserted) {
            const std::size_t cycle_from = it->second;
            std::vector<SeqEntry> head(entries.begin(),
                                       entries.begin() + static_cast<std::ptrdiff_t>(cycle_from));
            std::vector<SeqEntry> period(entries.begin() + static_cast<std::ptrdiff_t>(cycle_from),
                                         entries.end());
            return normalized_periodic(FinSeq(std::move(head)), std::move(period));
        }
        Rat v = u;
        SeqEntry n = 0;
        const Rat half(1, 2);
        while (v <= half) {
            v = v + v;
            ++n;
        }
        u = v + v - Rat(1);
        entries.push_back(n);
    }
}

Rat unit_decode(const Branch& b, std::size_t depth_budget) {
    return decode_over(b, depth_budget, true).value;
}

bool unit_walk_stabilizes(const Rat& x) {
    return std::holds_alternative<TailZero>(unit_encode_branch(x).tail());
}

}  // namespace souslin
