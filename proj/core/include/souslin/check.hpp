#pragma once

#include <json.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

namespace souslin {

// Three-valued answer for membership/order queries that may be undecidable
// within a budget. With the four shipped tail rules every query is in fact
// decided, but the third value stays part of the contract.
enum class Trivalent { False, True, Unknown };

inline Trivalent to_trivalent(bool b) { return b ? Trivalent::True : Trivalent::False; }

// Outcome of a bounded verification sweep.
//
//   holds_to_depth(d)     every instance up to depth/bound d checked out
//   fails_with_witness(w) a concrete violation, with a machine-readable payload
//                         that re-verifies offline
//   unknown(b)            budget b was exhausted before a verdict
class CheckResult {
  public:
    enum class Verdict { HoldsToDepth, FailsWithWitness, Unknown };

    static CheckResult holds_to_depth(std::uint64_t depth) {
        return CheckResult(Verdict::HoldsToDepth, depth, nlohmann::json());
    }
    static CheckResult fails_with_witness(nlohmann::json witness) {
        return CheckResult(Verdict::FailsWithWitness, 0, std::move(witness));
    }
    static CheckResult unknown(std::uint64_t budget) {
        return CheckResult(Verdict::Unknown, budget, nlohmann::json());
    }

    Verdict verdict() const { return verdict_; }
    bool holds() const { return verdict_ == Verdict::HoldsToDepth; }
    bool failed() const { return verdict_ == Verdict::FailsWithWitness; }

    // Depth for HoldsToDepth, exhausted budget for Unknown.
    std::uint64_t depth() const { return depth_; }
    const nlohmann::json& witness() const { return witness_; }

  private:
    CheckResult(Verdict v, std::uint64_t d, nlohmann::json w)
        : verdict_(v), depth_(d), witness_(std::move(w)) {}

    Verdict verdict_;
    std::uint64_t depth_;
    nlohmann::json witness_;
};

// Thrown when a checked operation's stated precondition does not hold.
struct precondition_failed : std::logic_error {
    using std::logic_error::logic_error;
};

}  // namespace souslin
