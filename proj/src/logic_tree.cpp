#include "skeptic/logic_tree.hpp"

#include "skeptic/errors.hpp"

#include <algorithm>

namespace skeptic {

int flag_to_int(RawFlag f) { return static_cast<int>(f); }

RawFlag flag_from_int(int v) {
    if (v < -1 || v > 1) throw TreeError("verification flag must be -1, 0 or 1");
    return static_cast<RawFlag>(v);
}

std::string to_string(Decision d) {
    return d == Decision::AiGenerated ? "AI_GENERATED" : "REAL";
}

ReasoningTree::ReasoningTree(int depth_bound, int branch_cap, int node_budget)
    : depth_bound_(depth_bound), branch_cap_(branch_cap), node_budget_(node_budget) {
    if (depth_bound < 1 || branch_cap < 1 || node_budget < 1)
        throw TreeError("depth bound, branch cap and node budget must all be >= 1");
    LogicNode root;
    root.code = UlamHarrisCode::root();
    nodes_.emplace(root.code, std::move(root));
}

std::vector<UlamHarrisCode> ReasoningTree::add_children(
    const UlamHarrisCode& parent, const std::vector<std::string>& statements) {
    auto it = nodes_.find(parent);
    if (it == nodes_.end()) throw TreeError("unknown parent node " + parent.str());
    LogicNode& p = it->second;
    if (!parent.is_root() && p.raw_flag != RawFlag::Epoche)
        throw TreeError("node " + parent.str() + " is not an epoche node; it cannot be expanded");
    if (p.expanded) throw TreeError("node " + parent.str() + " was already expanded");
    if (parent.depth() + 1 > depth_bound_)
        throw TreeError("expanding " + parent.str() + " would exceed the depth bound");

    const int budget_left = node_budget_ - statement_count();
    const int take = std::min({static_cast<int>(statements.size()), branch_cap_,
                               std::max(budget_left, 0)});
    std::vector<UlamHarrisCode> created;
    created.reserve(take);
    for (int j = 1; j <= take; ++j) {
        LogicNode child;
        child.code = parent.child(j);
        child.statement = statements[j - 1];
        created.push_back(child.code);
        nodes_.emplace(child.code, std::move(child));
    }
    p.expanded = true;
    p.child_count = take;
    return created;
}

void ReasoningTree::assign_raw_flag(const UlamHarrisCode& code, RawFlag flag,
                                    std::string internal_reasoning,
                                    std::optional<std::string> condition) {
    if (code.is_root()) throw TreeError("the root sentinel carries no flag");
    auto it = nodes_.find(code);
    if (it == nodes_.end()) throw TreeError("unknown node " + code.str());
    LogicNode& n = it->second;
    if (n.raw_flag) throw TreeError("node " + code.str() + " already has a flag");
    if (flag == RawFlag::Epoche && (!condition || condition->empty()))
        throw TreeError("an epoche flag requires a sufficient condition");
    if (flag != RawFlag::Epoche && condition)
        throw TreeError("a condition is only allowed with an epoche flag");
    n.raw_flag = flag;
    n.internal_reasoning = std::move(internal_reasoning);
    n.condition = std::move(condition);
    if (flag != RawFlag::Epoche) n.resolved_flag = flag;
}

std::vector<UlamHarrisCode> ReasoningTree::expandable_frontier() const {
    std::vector<UlamHarrisCode> out;
    for (const auto& [code, n] : nodes_) {
        if (n.raw_flag == RawFlag::Epoche && !n.expanded && code.depth() < depth_bound_)
            out.push_back(code);
    }
    return out;  // map order is already ascending code order
}

void ReasoningTree::resolve() {
    for (const auto& [code, n] : nodes_) {
        if (!code.is_root() && !n.raw_flag)
            throw TreeError("node " + code.str() + " has no raw flag; reasoning is unfinished");
    }
    if (!expandable_frontier().empty())
        throw TreeError("the expandable frontier is not empty; reasoning is unfinished");

    // Reverse code order visits every child before its parent.
    for (auto it = nodes_.rbegin(); it != nodes_.rend(); ++it) {
        LogicNode& n = it->second;
        if (n.code.is_root()) continue;
        if (n.raw_flag != RawFlag::Epoche) {
            n.resolved_flag = n.raw_flag;
            continue;
        }
        bool any_valid_child = false;
        for (int j = 1; j <= n.child_count; ++j) {
            if (nodes_.at(n.code.child(j)).resolved_flag == RawFlag::Valid) {
                any_valid_child = true;
                break;
            }
        }
        n.resolved_flag = any_valid_child ? RawFlag::Valid : RawFlag::Invalid;
    }
    resolved_ = true;
}

std::vector<UlamHarrisCode> ReasoningTree::valid_initial_logics() const {
    if (!resolved_) throw TreeError("the tree is not resolved");
    std::vector<UlamHarrisCode> out;
    for (const auto& [code, n] : nodes_) {
        if (code.depth() == 1 && n.resolved_flag == RawFlag::Valid) out.push_back(code);
    }
    return out;
}

Verdict ReasoningTree::decide(int threshold) const {
    if (!resolved_) throw TreeError("the tree is not resolved");
    if (threshold < 1) throw TreeError("the decision threshold must be >= 1");
    Verdict v;
    v.threshold = threshold;
    v.valid_initial = valid_initial_logics();
    v.valid_count = static_cast<int>(v.valid_initial.size());
    v.decision = v.valid_count >= threshold ? Decision::AiGenerated : Decision::Real;
    for (const UlamHarrisCode& initial : v.valid_initial) {
        // Deepest valid descendant; ascending scan makes the first hit at the
        // maximum depth the smallest code.
        UlamHarrisCode best = initial;
        int best_depth = initial.depth();
        for (auto it = nodes_.lower_bound(initial);
             it != nodes_.end() && initial.is_prefix_of(it->first); ++it) {
            if (it->second.resolved_flag == RawFlag::Valid && it->first.depth() > best_depth) {
                best = it->first;
                best_depth = it->first.depth();
            }
        }
        std::vector<UlamHarrisCode> chain;
        for (UlamHarrisCode c = best;; c = c.parent()) {
            chain.push_back(c);
            if (c.is_root()) break;
        }
        v.chains.emplace(initial, std::move(chain));
    }
    return v;
}

bool ReasoningTree::contains(const UlamHarrisCode& code) const {
    return nodes_.count(code) > 0;
}

const LogicNode& ReasoningTree::node(const UlamHarrisCode& code) const {
    auto it = nodes_.find(code);
    if (it == nodes_.end()) throw TreeError("unknown node " + code.str());
    return it->second;
}

LogicNode& ReasoningTree::node_mut(const UlamHarrisCode& code) {
    auto it = nodes_.find(code);
    if (it == nodes_.end()) throw TreeError("unknown node " + code.str());
    return it->second;
}

ReasoningTree ReasoningTree::restore(int depth_bound, int branch_cap, int node_budget,
                                     std::vector<LogicNode> nodes, bool resolved) {
    ReasoningTree tree(depth_bound, branch_cap, node_budget);
    tree.nodes_.clear();
    for (LogicNode& n : nodes) {
        UlamHarrisCode code = n.code;
        if (!tree.nodes_.emplace(code, std::move(n)).second)
            throw TreeError("duplicate node " + code.str());
    }
    if (!tree.nodes_.count(UlamHarrisCode::root())) throw TreeError("missing root node");
    if (tree.statement_count() > node_budget) throw TreeError("node budget exceeded");
    for (const auto& [code, n] : tree.nodes_) {
        if (code.depth() > depth_bound) throw TreeError("node " + code.str() + " exceeds the depth bound");
        if (!code.is_root() && !tree.nodes_.count(code.parent()))
            throw TreeError("node " + code.str() + " has no stored parent");
        if (n.child_count > branch_cap) throw TreeError("node " + code.str() + " exceeds the branch cap");
        for (int j = 1; j <= n.child_count; ++j) {
            if (!tree.nodes_.count(code.child(j)))
                throw TreeError("node " + code.str() + " is missing child " + std::to_string(j));
        }
        if (!code.is_root()) {
            const LogicNode& parent = tree.nodes_.at(code.parent());
            if (code.path().back() > parent.child_count)
                throw TreeError("node " + code.str() + " is outside its parent's child count");
            bool has_condition = n.condition && !n.condition->empty();
            if ((n.raw_flag == RawFlag::Epoche) != has_condition)
                throw TreeError("node " + code.str() + ": a condition must accompany exactly the epoche flag");
            if (n.resolved_flag == RawFlag::Epoche)
                throw TreeError("node " + code.str() + ": resolved flag may not be epoche");
            if (n.expanded && n.raw_flag != RawFlag::Epoche)
                throw TreeError("node " + code.str() + ": only epoche nodes can be expanded");
            if (resolved && !n.resolved_flag)
                throw TreeError("node " + code.str() + ": resolved tree with unresolved node");
        }
    }
    tree.resolved_ = resolved;
    return tree;
}

}  // namespace skeptic
