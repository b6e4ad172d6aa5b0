#pragma once

#include <compare>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace pcg {

/// A named variable with its dense position in the owning graph.
struct VariableId {
    std::size_t index = 0;
    std::string name;

    friend bool operator==(const VariableId&, const VariableId&) = default;
    friend auto operator<=>(const VariableId& a, const VariableId& b) {
        if (auto c = a.index <=> b.index; c != 0) return c;
        return a.name <=> b.name;
    }
};

using VariableSet = std::vector<VariableId>;

/// Immutable directed acyclic graph over named variables.
///
/// Acyclicity, name uniqueness and edge uniqueness are checked once in
/// build_dag(); every other operation relies on them.
class Dag {
public:
    Dag() = default;

    std::size_t size() const noexcept { return names_.size(); }
    const std::vector<std::string>& names() const noexcept { return names_; }

    VariableId variable(std::size_t index) const;
    /// Throws UnknownVariable.
    VariableId variable(const std::string& name) const;
    bool contains(const std::string& name) const;
    /// Throws UnknownVariable unless `v` names a node of this graph at its index.
    void require(const VariableId& v) const;

    /// Parents and children in edge insertion order.
    const std::vector<std::size_t>& parents(std::size_t index) const { return parents_.at(index); }
    const std::vector<std::size_t>& children(std::size_t index) const { return children_.at(index); }
    bool has_edge(std::size_t parent, std::size_t child) const;
    const std::vector<std::pair<std::size_t, std::size_t>>& edges() const noexcept { return edges_; }

private:
    friend Dag build_dag(const std::vector<std::string>&,
                         const std::vector<std::pair<std::string, std::string>>&);

    std::vector<std::string> names_;
    std::vector<std::pair<std::size_t, std::size_t>> edges_;
    std::vector<std::vector<std::size_t>> parents_;
    std::vector<std::vector<std::size_t>> children_;
};

/// Errors: InvalidName, DuplicateName, UnknownEndpoint, DuplicateEdge,
/// CycleDetected (the message lists the cycle).
Dag build_dag(const std::vector<std::string>& variable_names,
              const std::vector<std::pair<std::string, std::string>>& edges);

/// Kahn's algorithm; among ready nodes the lowest index goes first.
std::vector<VariableId> topological_order(const Dag& dag);

/// Nodes reachable from `x` by a directed path, `x` excluded, ascending index.
VariableSet descendants(const Dag& dag, const VariableId& x);

/// Reachability formulation of d-separation (active trails through chains,
/// forks and colliders). Errors: UnknownVariable, OverlappingSets.
bool d_separated(const Dag& dag, const VariableId& x, const VariableId& y,
                 std::span<const VariableId> given);

/// True iff the undirected skeleton has no cycle.
bool is_polytree(const Dag& dag);

} // namespace pcg
