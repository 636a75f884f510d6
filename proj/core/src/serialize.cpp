#include "souslin/serialize.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace souslin {

namespace {

using nlohmann::json;

[[noreturn]] void fail_at(const std::string& path, const std::string& msg) {
    throw invalid_input(path + ": " + msg);
}

const json& get_field(const json& j, const std::string& path, const char* key) {
    if (!j.is_object()) fail_at(path, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) fail_at(path + "." + key, "missing field");
    return *it;
}

std::uint64_t get_uint(const json& j, const std::string& path) {
    if (!j.is_number_integer() || (j.is_number_integer() && j.get<long long>() < 0))
        fail_at(path, "expected a non-negative integer");
    return j.get<std::uint64_t>();
}

bool get_bool(const json& j, const std::string& path) {
    if (!j.is_boolean()) fail_at(path, "expected a boolean");
    return j.get<bool>();
}

std::string get_string(const json& j, const std::string& path) {
    if (!j.is_string()) fail_at(path, "expected a string");
    return j.get<std::string>();
}

Rat rat_at(const json& j, const std::string& path) {
    if (!j.is_string()) fail_at(path, "expected a rational as \"p/q\"");
    try {
        return Rat::parse(j.get<std::string>());
    } catch (const invalid_input& e) {
        fail_at(path, e.what());
    }
}

FinSeq finseq_at(const json& j, const std::string& path) {
    if (!j.is_array()) fail_at(path, "expected an array of entries");
    std::vector<SeqEntry> entries;
    entries.reserve(j.size());
    for (std::size_t i = 0; i < j.size(); ++i)
        entries.push_back(get_uint(j[i], path + "[" + std::to_string(i) + "]"));
    return FinSeq(std::move(entries));
}

Branch branch_at(const json& j, const std::string& path) {
    FinSeq prefix = finseq_at(get_field(j, path, "prefix"), path + ".prefix");
    const json& tj = get_field(j, path, "tail");
    std::string kind = get_string(get_field(tj, path + ".tail", "kind"), path + ".tail.kind");
    if (kind == "zero") return Branch(std::move(prefix), TailZero{});
    if (kind == "const") {
        SeqEntry v = get_uint(get_field(tj, path + ".tail", "value"), path + ".tail.value");
        return Branch(std::move(prefix), TailConst{v});
    }
    if (kind == "periodic") {
        FinSeq period = finseq_at(get_field(tj, path + ".tail", "period"), path + ".tail.period");
        if (period.empty()) fail_at(path + ".tail.period", "period must be nonempty");
        return Branch(std::move(prefix), TailPeriodic{std::move(period)});
    }
    if (kind == "encoded") {
        Rat x = rat_at(get_field(tj, path + ".tail", "x"), path + ".tail.x");
        return Branch(std::move(prefix), TailEncoded{std::move(x)});
    }
    fail_at(path + ".tail.kind", "unknown tail kind '" + kind + "'");
}

IntervalDesc interval_at(const json& j, const std::string& path) {
    if (!j.is_object()) fail_at(path, "expected an interval object");
    if (j.contains("kind")) {
        std::string kind = get_string(j["kind"], path + ".kind");
        if (kind == "whole_line") return IntervalDesc::whole_line();
        if (kind == "empty") return IntervalDesc::empty();
        fail_at(path + ".kind", "unknown interval kind '" + kind + "'");
    }
    Rat lo = rat_at(get_field(j, path, "lo"), path + ".lo");
    Rat hi = rat_at(get_field(j, path, "hi"), path + ".hi");
    try {
        return IntervalDesc::half_open(std::move(lo), std::move(hi));
    } catch (const invalid_input& e) {
        fail_at(path, e.what());
    }
}

LexPair lex_pair_at(const json& j, const std::string& path) {
    Rat x = rat_at(get_field(j, path, "x"), path + ".x");
    const json& s = get_field(j, path, "side");
    if (!s.is_number_integer()) fail_at(path + ".side", "expected an integer side");
    return LexPair{std::move(x), s.get<int>()};
}

DoubleArrowPoint da_point_at(const json& j, const std::string& path) {
    LexPair p = lex_pair_at(j, path);
    try {
        return DoubleArrowPoint(std::move(p.x), p.side);
    } catch (const invalid_input& e) {
        fail_at(path, e.what());
    }
}

OrderInterval order_interval_at(const json& j, const std::string& path) {
    if (!j.is_object()) fail_at(path, "expected an order-interval object");
    auto bound_at = [&](const char* key) -> std::optional<OrderInterval::Bound> {
        if (!j.contains(key) || j[key].is_null()) return std::nullopt;
        std::string bpath = path + "." + key;
        const json& bj = j[key];
        LexPair at = lex_pair_at(get_field(bj, bpath, "at"), bpath + ".at");
        bool closed = get_bool(get_field(bj, bpath, "closed"), bpath + ".closed");
        return OrderInterval::Bound{std::move(at), closed};
    };
    auto lower = bound_at("lower");
    auto upper = bound_at("upper");
    if (lower && upper) return OrderInterval::bounded(*lower, *upper);
    if (lower) return OrderInterval::above(*lower);
    if (upper) return OrderInterval::below(*upper);
    return OrderInterval::whole();
}

SpacePoint space_point_at(const json& j, const std::string& path) {
    if (j.is_string()) return SpacePoint(rat_at(j, path));
    if (j.is_object()) return SpacePoint(da_point_at(j, path));
    fail_at(path, "expected a rational string or a split-interval point object");
}

SpaceSet space_set_at(const json& j, const std::string& path) {
    if (!j.is_object()) fail_at(path, "expected a set object");
    if (j.contains("lower") || j.contains("upper")) return SpaceSet(order_interval_at(j, path));
    return SpaceSet(interval_at(j, path));
}

std::optional<DiagStatus> status_from_name(const std::string& name) {
    if (name == "running") return DiagStatus::Running;
    if (name == "s2_refutation_ready") return DiagStatus::S2RefutationReady;
    if (name == "s1_failure") return DiagStatus::S1Failure;
    if (name == "precondition_failed") return DiagStatus::PreconditionFailed;
    if (name == "budget_exhausted") return DiagStatus::BudgetExhausted;
    return std::nullopt;
}

DiagStep diag_step_at(const json& j, const std::string& path) {
    DiagStep s;
    s.n = get_uint(get_field(j, path, "n"), path + ".n");
    s.even = get_bool(get_field(j, path, "even"), path + ".even");
    s.x = space_point_at(get_field(j, path, "x"), path + ".x");
    s.q = branch_at(get_field(j, path, "q"), path + ".q");
    s.m = get_uint(get_field(j, path, "m"), path + ".m");
    s.xn = space_point_at(get_field(j, path, "xn"), path + ".xn");
    s.cone_index = get_uint(get_field(j, path, "cone_index"), path + ".cone_index");
    s.tn = branch_at(get_field(j, path, "tn"), path + ".tn");
    s.k = get_uint(get_field(j, path, "k"), path + ".k");
    s.a = get_uint(get_field(j, path, "a"), path + ".a");
    s.p_next = finseq_at(get_field(j, path, "p_next"), path + ".p_next");
    s.p_next_set = space_set_at(get_field(j, path, "p_next_set"), path + ".p_next_set");
    return s;
}

}  // namespace

std::string trivalent_name(Trivalent t) {
    switch (t) {
        case Trivalent::False:
            return "false";
        case Trivalent::True:
            return "true";
        case Trivalent::Unknown:
            return "unknown";
    }
    return "unknown";
}

json to_json(const Rat& r) { return json(r.str()); }

json to_json(const FinSeq& s) {
    json out = json::array();
    for (SeqEntry e : s.entries()) out.push_back(e);
    return out;
}

json to_json(const Branch& b) {
    json tail;
    if (std::holds_alternative<TailZero>(b.tail())) {
        tail["kind"] = "zero";
    } else if (const auto* c = std::get_if<TailConst>(&b.tail())) {
        tail["kind"] = "const";
        tail["value"] = c->value;
    } else if (const auto* p = std::get_if<TailPeriodic>(&b.tail())) {
        tail["kind"] = "periodic";
        tail["period"] = to_json(p->period);
    } else if (const auto* e = std::get_if<TailEncoded>(&b.tail())) {
        tail["kind"] = "encoded";
        tail["x"] = to_json(e->x);
    }
    json out;
    out["prefix"] = to_json(b.head());
    out["tail"] = std::move(tail);
    return out;
}

json to_json(const Antichain& a) {
    json out = json::array();
    for (const AntichainEntry& e : a.records()) {
        json rec;
        rec["stem"] = to_json(e.stem);
        rec["from"] = e.from;
        out.push_back(std::move(rec));
    }
    return out;
}

json to_json(Trivalent t) { return json(trivalent_name(t)); }

json to_json(const CheckResult& r) {
    json out;
    switch (r.verdict()) {
        case CheckResult::Verdict::HoldsToDepth:
            out["verdict"] = "holds_to_depth";
            out["depth"] = r.depth();
            break;
        case CheckResult::Verdict::FailsWithWitness:
            out["verdict"] = "fails_with_witness";
            out["witness"] = r.witness();
            break;
        case CheckResult::Verdict::Unknown:
            out["verdict"] = "unknown";
            out["budget"] = r.depth();
            break;
    }
    return out;
}

json to_json(const IntervalDesc& i) {
    json out;
    switch (i.kind()) {
        case IntervalDesc::Kind::WholeLine:
            out["kind"] = "whole_line";
            break;
        case IntervalDesc::Kind::Empty:
            out["kind"] = "empty";
            break;
        case IntervalDesc::Kind::HalfOpen:
            out["lo"] = to_json(i.lo());
            out["hi"] = to_json(i.hi());
            break;
    }
    return out;
}

json to_json(const CutDesc& c) {
    json out;
    out["kind"] = "open_interval";
    out["lo"] = to_json(c.lo);
    out["hi"] = to_json(c.hi);
    return out;
}

json to_json(const LexPair& p) {
    json out;
    out["x"] = to_json(p.x);
    out["side"] = p.side;
    return out;
}

json to_json(const DoubleArrowPoint& z) { return to_json(z.pair()); }

json to_json(const OrderInterval& s) {
    auto bound = [](const std::optional<OrderInterval::Bound>& b) -> json {
        if (!b) return nullptr;
        json out;
        out["at"] = to_json(b->at);
        out["closed"] = b->closed;
        return out;
    };
    json out;
    out["lower"] = bound(s.lower());
    out["upper"] = bound(s.upper());
    return out;
}

json to_json(const SpacePoint& z) {
    if (const auto* r = std::get_if<Rat>(&z)) return to_json(*r);
    return to_json(std::get<DoubleArrowPoint>(z));
}

json to_json(const SpaceSet& s) {
    if (const auto* i = std::get_if<IntervalDesc>(&s)) return to_json(*i);
    return to_json(std::get<OrderInterval>(s));
}

json to_json(const LookWitness& w) {
    json out;
    out["k"] = w.k;
    out["y"] = to_json(w.y);
    out["cone_index"] = w.cone_index;
    return out;
}

json to_json(const BidirCheckReport& r) {
    json out;
    out["point"] = to_json(r.point);
    out["direction"] = r.direction == LookDirection::Right ? "right" : "left";
    out["relation"] = r.relation == RelationKind::Lex ? "lex" : "constructed";
    out["one_sided_index"] = r.one_sided_index ? json(*r.one_sided_index) : json(nullptr);
    json ws = json::array();
    for (const LookWitness& w : r.witnesses) ws.push_back(to_json(w));
    out["witnesses"] = std::move(ws);
    out["verdict"] = to_json(r.verdict);
    return out;
}

json to_json(const LimitProfile& p) {
    json vals = json::array();
    for (const Rat& v : p.values) vals.push_back(to_json(v));
    json out;
    out["values"] = std::move(vals);
    out["min"] = to_json(p.min);
    out["sup"] = to_json(p.sup);
    return out;
}

json to_json(const PointCandidateReport& r) {
    json out;
    out["candidate"] = to_json(r.candidate);
    out["in_every_cut"] = r.in_every_cut;
    out["cuts_nested"] = r.cuts_nested;
    out["neighborhood_index"] = r.neighborhood_index ? json(*r.neighborhood_index) : json(nullptr);
    out["base_evidence"] = r.base_evidence;
    out["detail"] = r.detail;
    return out;
}

json to_json(const InducedPointResult& r) {
    json out;
    out["point"] = r.point ? to_json(*r.point) : json(nullptr);
    out["no_base_point"] = r.no_base_point();
    out["evidence"] = to_json(r.evidence);
    json cands = json::array();
    for (const PointCandidateReport& c : r.candidates) cands.push_back(to_json(c));
    out["candidates"] = std::move(cands);
    return out;
}

json to_json(const DiagStep& s) {
    json out;
    out["n"] = s.n;
    out["even"] = s.even;
    out["x"] = to_json(s.x);
    out["q"] = to_json(s.q);
    out["m"] = s.m;
    out["xn"] = to_json(s.xn);
    out["cone_index"] = s.cone_index;
    out["tn"] = to_json(s.tn);
    out["k"] = s.k;
    out["a"] = s.a;
    out["p_next"] = to_json(s.p_next);
    out["p_next_set"] = to_json(s.p_next_set);
    return out;
}

json to_json(const DiagTrace& t) {
    json nodes = json::array();
    for (const FinSeq& n : t.nodes) nodes.push_back(to_json(n));
    json steps = json::array();
    for (const DiagStep& s : t.steps) steps.push_back(to_json(s));
    json out;
    out["oracle"] = t.oracle_name;
    out["space"] = t.space_name;
    out["nodes"] = std::move(nodes);
    out["steps"] = std::move(steps);
    out["status"] = diag_status_name(t.status);
    out["stop_reason"] = t.stop_reason;
    out["certificates"] = t.certificates;
    return out;
}

Rat rat_from_json(const json& j) { return rat_at(j, "$"); }

FinSeq finseq_from_json(const json& j) { return finseq_at(j, "$"); }

Branch branch_from_json(const json& j) { return branch_at(j, "$"); }

Antichain antichain_from_json(const json& j) {
    if (!j.is_array()) fail_at("$", "expected an array of antichain records");
    std::vector<AntichainEntry> entries;
    entries.reserve(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) {
        std::string path = "$[" + std::to_string(i) + "]";
        const json& rec = j[i];
        FinSeq stem = finseq_at(get_field(rec, path, "stem"), path + ".stem");
        SeqEntry from = get_uint(get_field(rec, path, "from"), path + ".from");
        entries.push_back(AntichainEntry{std::move(stem), from});
    }
    return Antichain(std::move(entries));
}

CheckResult check_result_from_json(const json& j) {
    std::string verdict = get_string(get_field(j, "$", "verdict"), "$.verdict");
    if (verdict == "holds_to_depth")
        return CheckResult::holds_to_depth(get_uint(get_field(j, "$", "depth"), "$.depth"));
    if (verdict == "fails_with_witness")
        return CheckResult::fails_with_witness(get_field(j, "$", "witness"));
    if (verdict == "unknown")
        return CheckResult::unknown(get_uint(get_field(j, "$", "budget"), "$.budget"));
    fail_at("$.verdict", "unknown verdict '" + verdict + "'");
}

IntervalDesc interval_from_json(const json& j) { return interval_at(j, "$"); }

LexPair lex_pair_from_json(const json& j) { return lex_pair_at(j, "$"); }

DoubleArrowPoint da_point_from_json(const json& j) { return da_point_at(j, "$"); }

OrderInterval order_interval_from_json(const json& j) { return order_interval_at(j, "$"); }

SpacePoint space_point_from_json(const json& j) { return space_point_at(j, "$"); }

SpaceSet space_set_from_json(const json& j) { return space_set_at(j, "$"); }

DiagStep diag_step_from_json(const json& j) { return diag_step_at(j, "$"); }

DiagTrace diag_trace_from_json(const json& j) {
    DiagTrace t;
    t.oracle_name = get_string(get_field(j, "$", "oracle"), "$.oracle");
    t.space_name = get_string(get_field(j, "$", "space"), "$.space");
    const json& nodes = get_field(j, "$", "nodes");
    if (!nodes.is_array()) fail_at("$.nodes", "expected an array");
    for (std::size_t i = 0; i < nodes.size(); ++i)
        t.nodes.push_back(finseq_at(nodes[i], "$.nodes[" + std::to_string(i) + "]"));
    const json& steps = get_field(j, "$", "steps");
    if (!steps.is_array()) fail_at("$.steps", "expected an array");
    for (std::size_t i = 0; i < steps.size(); ++i)
        t.steps.push_back(diag_step_at(steps[i], "$.steps[" + std::to_string(i) + "]"));
    std::string status = get_string(get_field(j, "$", "status"), "$.status");
    auto st = status_from_name(status);
    if (!st) fail_at("$.status", "unknown status '" + status + "'");
    t.status = *st;
    t.stop_reason = get_string(get_field(j, "$", "stop_reason"), "$.stop_reason");
    const json& certs = get_field(j, "$", "certificates");
    if (!certs.is_array()) fail_at("$.certificates", "expected an array");
    t.certificates = certs;
    return t;
}

}  // namespace souslin
