#pragma once

#include "souslin/check.hpp"
#include "souslin/diagonal.hpp"
#include "souslin/doublearrow.hpp"
#include "souslin/openmap.hpp"
#include "souslin/scheme.hpp"
#include "souslin/seqtree.hpp"
#include "souslin/topology.hpp"

#include <string>

namespace souslin {

// JSON forms, stable across releases; every emitter round-trips through the
// matching parser bit-exactly.
//
//   Rat            "p/q" (denominator always present)
//   FinSeq         [0, 2, 1]
//   Branch         {"prefix": [...], "tail": {"kind": "zero" | "const" |
//                   "periodic" | "encoded", ...}}
//   Antichain      [{"stem": [...], "from": k}, ...]
//   CheckResult    {"verdict": "holds_to_depth", "depth": d}
//                  | {"verdict": "fails_with_witness", "witness": {...}}
//                  | {"verdict": "unknown", "budget": b}
//   IntervalDesc   {"kind": "whole_line"} | {"kind": "empty"}
//                  | {"lo": "p/q", "hi": "p/q"}
//   Point          {"x": "p/q", "side": 0 | 1}
//   DiagTrace      {"oracle": ..., "space": ..., "nodes": [...],
//                   "steps": [...], "status": ..., "stop_reason": ...,
//                   "certificates": [...]}

nlohmann::json to_json(const Rat& r);
nlohmann::json to_json(const FinSeq& s);
nlohmann::json to_json(const Branch& b);
nlohmann::json to_json(const Antichain& a);
nlohmann::json to_json(Trivalent t);
nlohmann::json to_json(const CheckResult& r);
nlohmann::json to_json(const IntervalDesc& i);
nlohmann::json to_json(const CutDesc& c);
nlohmann::json to_json(const LexPair& p);
nlohmann::json to_json(const DoubleArrowPoint& z);
nlohmann::json to_json(const OrderInterval& s);
nlohmann::json to_json(const SpacePoint& z);
nlohmann::json to_json(const SpaceSet& s);
nlohmann::json to_json(const LookWitness& w);
nlohmann::json to_json(const BidirCheckReport& r);
nlohmann::json to_json(const LimitProfile& p);
nlohmann::json to_json(const PointCandidateReport& r);
nlohmann::json to_json(const InducedPointResult& r);
nlohmann::json to_json(const DiagStep& s);
nlohmann::json to_json(const DiagTrace& t);

// Parsers throw invalid_input with a path-qualified message on malformed data.
Rat rat_from_json(const nlohmann::json& j);
FinSeq finseq_from_json(const nlohmann::json& j);
Branch branch_from_json(const nlohmann::json& j);
Antichain antichain_from_json(const nlohmann::json& j);
CheckResult check_result_from_json(const nlohmann::json& j);
IntervalDesc interval_from_json(const nlohmann::json& j);
LexPair lex_pair_from_json(const nlohmann::json& j);
DoubleArrowPoint da_point_from_json(const nlohmann::json& j);
OrderInterval order_interval_from_json(const nlohmann::json& j);
SpacePoint space_point_from_json(const nlohmann::json& j);
SpaceSet space_set_from_json(const nlohmann::json& j);
DiagStep diag_step_from_json(const nlohmann::json& j);
DiagTrace diag_trace_from_json(const nlohmann::json& j);

std::string trivalent_name(Trivalent t);

}  // namespace souslin
