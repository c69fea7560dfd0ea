#pragma once

#include "skeptic/ulam_harris.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace skeptic {

// Verification flag as judged by the Internal Skeptic. Epoche means the
// judgment is suspended until a sufficient condition is clarified.
enum class RawFlag : int { Invalid = -1, Epoche = 0, Valid = 1 };

int flag_to_int(RawFlag f);
RawFlag flag_from_int(int v);

enum class Decision { Real, AiGenerated };
std::string to_string(Decision d);

// One indivisible skeptical logic statement and everything attached to it.
struct LogicNode {
    UlamHarrisCode code;
    std::string statement;
    std::optional<RawFlag> raw_flag;       // as assigned by the Internal Skeptic
    std::optional<RawFlag> resolved_flag;  // Valid or Invalid, never Epoche
    std::string internal_reasoning;
    std::optional<std::string> condition;  // present iff raw_flag == Epoche
    std::optional<std::string> reflective_trigger;
    bool expanded = false;
    int child_count = 0;

    // Fingerprints of the backend calls behind this node; filled by the engine.
    std::optional<std::string> statement_call;
    std::optional<std::string> flag_call;
    std::optional<std::string> reflective_call;
};

struct Verdict {
    int valid_count = 0;
    int threshold = 1;
    Decision decision = Decision::Real;
    // The set Y of valid initial (depth-1) logics, sorted by code.
    std::vector<UlamHarrisCode> valid_initial;
    // Per member of Y: the ancestral path from its deepest valid descendant
    // up to and including the root.
    std::map<UlamHarrisCode, std::vector<UlamHarrisCode>> chains;
};

// The rooted skeptical reasoning tree. Only epochē nodes (and the root) can
// be expanded; depth is bounded by depth_bound, children per expansion by
// branch_cap, and total statement nodes by node_budget. Single writer; reads
// of a finished tree are safe to share.
class ReasoningTree {
public:
    ReasoningTree(int depth_bound, int branch_cap, int node_budget);

    // Creates children parent.1 ... parent.k in statement order, truncating
    // at branch_cap and at the remaining node budget, and marks the parent
    // expanded (also on an empty list). Returns the created codes.
    std::vector<UlamHarrisCode> add_children(const UlamHarrisCode& parent,
                                             const std::vector<std::string>& statements);

    // Stores the Internal Skeptic's judgment. Non-epochē flags resolve the
    // node immediately. A condition is required for Epoche and rejected
    // otherwise.
    void assign_raw_flag(const UlamHarrisCode& code, RawFlag flag,
                         std::string internal_reasoning,
                         std::optional<std::string> condition);

    // Epochē nodes below the depth bound that were not expanded yet, in
    // ascending code order.
    std::vector<UlamHarrisCode> expandable_frontier() const;

    // Bottom-up resolution: epochē leaves become Invalid, an epochē node with
    // some Valid child becomes Valid, otherwise Invalid. Requires every node
    // flagged and an empty frontier.
    void resolve();

    // Depth-1 codes whose resolved flag is Valid (the set Y).
    std::vector<UlamHarrisCode> valid_initial_logics() const;

    // Thresholds |Y| into a decision and back-traces one valid chain per
    // member of Y (deepest valid descendant, ties to the smallest code).
    Verdict decide(int threshold) const;

    bool contains(const UlamHarrisCode& code) const;
    const LogicNode& node(const UlamHarrisCode& code) const;
    LogicNode& node_mut(const UlamHarrisCode& code);
    const std::map<UlamHarrisCode, LogicNode>& nodes() const { return nodes_; }

    int depth_bound() const { return depth_bound_; }
    int branch_cap() const { return branch_cap_; }
    int node_budget() const { return node_budget_; }
    bool resolved() const { return resolved_; }
    // Statement nodes only; the root sentinel does not count.
    int statement_count() const { return static_cast<int>(nodes_.size()) - 1; }

    // Rebuilds a tree from serialized state, revalidating the structural
    // invariants. Used by trace deserialization.
    static ReasoningTree restore(int depth_bound, int branch_cap, int node_budget,
                                 std::vector<LogicNode> nodes, bool resolved);

private:
    int depth_bound_;
    int branch_cap_;
    int node_budget_;
    bool resolved_ = false;
    std::map<UlamHarrisCode, LogicNode> nodes_;
};

}  // namespace skeptic
