#include "souslin/topology.hpp"

#include "souslin/serialize.hpp"

#include <vector>

namespace souslin {

std::string CutDesc::str() const { return "(" + lo.str() + ", " + hi.str() + ")"; }

CutDesc cut_interval(const Branch& q, std::size_t n, std::size_t depth_budget) {
    if (n < 1) {
        throw precondition_failed(
            "cut_interval: level 0 sweeps a permuted union of integer cells, not an interval; "
            "need n >= 1");
    }
    const DecodeResult d = decode(q, depth_budget);
    if (!d.exact) {
        throw precondition_failed("cut_interval: branch value not resolvable within budget");
    }
    const IntervalDesc node = node_interval(q.take(n));
    return CutDesc{d.value, node.hi()};
}

IntervalDesc cut_base_element(const Rat& x, std::size_t m) {
    if (m == 0) return IntervalDesc::whole_line();
    const IntervalDesc node = node_interval(encode(x, m));
    return IntervalDesc::half_open(x, node.hi());
}

Trivalent basic_nbhd_member(const Branch& z, const Branch& p, std::size_t n,
                            std::size_t depth_budget) {
    const BranchCompare cmp = compare_branches(z, p, depth_budget);
    if (cmp.order == BranchOrder::Equal) return Trivalent::True;
    if (z.take(n) != p.take(n)) return Trivalent::False;
    switch (cmp.order) {
        case BranchOrder::Greater: return Trivalent::True;
        case BranchOrder::Less: return Trivalent::False;
        default: return Trivalent::Unknown;
    }
}

std::size_t base_refinement(const Branch& p, std::size_t n, const Branch& q, std::size_t m,
                            const Branch& x, std::size_t depth_budget) {
    if (basic_nbhd_member(x, p, n, depth_budget) != Trivalent::True ||
        basic_nbhd_member(x, q, m, depth_budget) != Trivalent::True) {
        throw precondition_failed("base_refinement: center not inside both neighborhoods");
    }
    const std::size_t r = std::max(n, m);

    // Sample members of the refined neighborhood: the center itself, plus
    // branches peeling off just above x at levels r, r+1, ... — these exhaust
    // the shapes a member can take near the center.
    std::vector<Branch> probes{x};
    for (std::size_t level = r; level < r + 4; ++level) {
        for (SeqEntry bump = 1; bump <= 2; ++bump) {
            probes.emplace_back(x.take(level).extended(x.at(level) + bump), TailZero{});
        }
    }
    for (const Branch& z : probes) {
        if (basic_nbhd_member(z, x, r, depth_budget) != Trivalent::True) {
            throw std::logic_error("base_refinement: probe fell outside its own neighborhood");
        }
        if (basic_nbhd_member(z, p, n, depth_budget) == Trivalent::False ||
            basic_nbhd_member(z, q, m, depth_budget) == Trivalent::False) {
            throw std::logic_error("base_refinement: refinement law violated at a probe");
        }
    }
    return r;
}

namespace {

// Does the branch pass through the symbolic node family of the antichain?
bool branch_passes(const Antichain& a, const Branch& p) {
    for (const AntichainEntry& rec : a.records()) {
        if (is_prefix(rec.stem, p) && p.at(rec.stem.size()) >= rec.from) return true;
    }
    return false;
}

nlohmann::json law_witness(int law, const Branch& q, std::size_t n, std::size_t m,
                           const Branch* p, const Branch* z, const std::string& detail) {
    nlohmann::json w{{"law", law}, {"q", to_json(q)}, {"n", n}, {"m", m}, {"detail", detail}};
    if (p) w["p"] = to_json(*p);
    if (z) w["z"] = to_json(*z);
    return w;
}

}  // namespace

CheckResult cut_laws_check(SeqEntry entry_bound, std::size_t depth_bound,
                           const WedgeAntichainFn& antichain_fn) {
    if (entry_bound < 2) throw invalid_input("cut_laws_check: entry_bound must be >= 2");
    if (depth_bound < 2) throw invalid_input("cut_laws_check: depth_bound must be >= 2");

    const std::size_t budget = 64;

    // Universe: all-zero-tail branches with head length < depth_bound and
    // entries < entry_bound, enumerated by length then lexicographically.
    std::vector<Branch> universe;
    std::vector<FinSeq> level{FinSeq()};
    for (std::size_t len = 0; len < depth_bound; ++len) {
        std::vector<FinSeq> next;
        for (const FinSeq& h : level) {
            universe.emplace_back(h, TailZero{});
            if (len + 1 < depth_bound) {
                for (SeqEntry e = 0; e < entry_bound; ++e) next.push_back(h.extended(e));
            }
        }
        level = std::move(next);
    }

    const auto wedge = [&](const Branch& pp, const Branch& qq, std::size_t nn) {
        return in_wedge(pp, qq, nn, budget) == Trivalent::True;
    };

    for (const Branch& q : universe) {
        for (std::size_t m = 0; m <= depth_bound; ++m) {
            // Law 1: raising the agreement level shrinks the wedge.
            for (std::size_t n = 0; n <= m; ++n) {
                for (const Branch& p : universe) {
                    if (wedge(p, q, m) && !wedge(p, q, n)) {
                        return CheckResult::fails_with_witness(law_witness(
                            1, q, n, m, &p, nullptr, "wedge member at level m lost at level n"));
                    }
                }
            }

            const std::size_t n = m;  // laws 2-4 run at a single level

            // Law 2: lowering the base branch (same level-n node) enlarges the wedge.
            for (const Branch& p : universe) {
                const BranchCompare pq = compare_branches(p, q, budget);
                const bool p_at_most_q =
                    pq.order == BranchOrder::Less || pq.order == BranchOrder::Equal;
                if (!p_at_most_q || p.take(n) != q.take(n)) continue;
                for (const Branch& z : universe) {
                    if (wedge(z, q, n) && !wedge(z, p, n)) {
                        return CheckResult::fails_with_witness(law_witness(
                            2, q, n, m, &p, &z, "wedge of q not inside wedge of lower base p"));
                    }
                }
            }

            // Law 3: branch wedge membership = passing a finite wedge node,
            // and the minimal nodes form an antichain covering exactly that.
            const Antichain minimal = antichain_fn ? antichain_fn(q, n, depth_bound + 1)
                                                   : wedge_antichain(q, n, depth_bound + 1);
            if (!minimal.is_antichain()) {
                return CheckResult::fails_with_witness(
                    law_witness(3, q, n, m, nullptr, nullptr,
                                "minimal wedge nodes are not an antichain"));
            }
            for (const Branch& p : universe) {
                const bool direct = wedge(p, q, n);
                bool via_prefix = false;
                for (std::size_t k = n + 1; k <= depth_bound + 2 && !via_prefix; ++k) {
                    via_prefix = in_wedge_nodes(p.take(k), q, n, budget);
                }
                if (direct != via_prefix) {
                    return CheckResult::fails_with_witness(law_witness(
                        3, q, n, m, &p, nullptr,
                        direct ? "wedge member with no finite wedge prefix"
                               : "finite wedge prefix without wedge membership"));
                }
                const bool via_antichain = branch_passes(minimal, p);
                if (direct != via_antichain) {
                    return CheckResult::fails_with_witness(law_witness(
                        3, q, n, m, &p, nullptr,
                        direct ? "wedge member missed by the minimal-node family"
                               : "minimal-node family overshoots the wedge"));
                }
            }

            // Law 4: the three descriptions of the cut agree extensionally.
            for (const Branch& p : universe) {
                const bool by_wedge = wedge(p, q, n);
                const bool by_nodes = branch_passes(minimal, p);
                const bool by_predicate = is_prefix(q.take(n), p) &&
                                          lex_before(q, p, budget) == Trivalent::True;
                if (by_wedge != by_nodes || by_wedge != by_predicate) {
                    return CheckResult::fails_with_witness(law_witness(
                        4, q, n, m, &p, nullptr, "cut descriptions disagree"));
                }
            }
        }
    }
    return CheckResult::holds_to_depth(depth_bound);
}

CheckResult cut_base_nbhd_check(const Branch& q, std::size_t m_max, std::size_t depth_budget) {
    const DecodeResult d = decode(q, depth_budget);
    if (!d.exact) return CheckResult::unknown(depth_budget);
    const Rat& x = d.value;

    if (cut_base_element(x, 0).kind() != IntervalDesc::Kind::WholeLine) {
        return CheckResult::fails_with_witness(
            {{"m", 0}, {"reason", "level-0 element is not the whole line"}});
    }

    std::optional<Rat> prev_hi;
    for (std::size_t m = 1; m <= m_max; ++m) {
        const IntervalDesc node = node_interval(q.take(m));
        if (!node.contains(x)) {
            return CheckResult::fails_with_witness(
                {{"m", m}, {"reason", "value escaped its own node"}, {"node", to_json(node)}});
        }
        const Rat j = node.hi();
        if (cut_base_element(x, m) != IntervalDesc::half_open(x, j)) {
            return CheckResult::fails_with_witness(
                {{"m", m},
                 {"reason", "canonical neighborhood disagrees with the branch's node"},
                 {"expected", to_json(IntervalDesc::half_open(x, j))},
                 {"got", to_json(cut_base_element(x, m))}});
        }
        const CutDesc cut = cut_interval(q, m, depth_budget);
        if (cut.lo != x || cut.hi != j) {
            return CheckResult::fails_with_witness(
                {{"m", m}, {"reason", "cut sweep does not match the neighborhood"}});
        }
        if (prev_hi && !(j < *prev_hi)) {
            return CheckResult::fails_with_witness(
                {{"m", m}, {"reason", "right endpoints failed to strictly decrease"}});
        }
        if (j - x > pow2_neg(static_cast<unsigned long>(m - 1))) {
            return CheckResult::fails_with_witness(
                {{"m", m}, {"reason", "neighborhood width above 2^(1-m)"}});
        }
        prev_hi = j;
    }
    return CheckResult::holds_to_depth(m_max);
}

}  // namespace souslin
