#include "pcg/graph.hpp"

#include "pcg/error.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <queue>
#include <unordered_map>

namespace pcg {

VariableId Dag::variable(std::size_t index) const {
    if (index >= names_.size())
        throw Error(ErrorKind::UnknownVariable, "index " + std::to_string(index));
    return {index, names_[index]};
}

VariableId Dag::variable(const std::string& name) const {
    auto it = std::find(names_.begin(), names_.end(), name);
    if (it == names_.end())
        throw Error(ErrorKind::UnknownVariable, "'" + name + "'");
    return {static_cast<std::size_t>(it - names_.begin()), name};
}

bool Dag::contains(const std::string& name) const {
    return std::find(names_.begin(), names_.end(), name) != names_.end();
}

void Dag::require(const VariableId& v) const {
    if (v.index >= names_.size() || names_[v.index] != v.name)
        throw Error(ErrorKind::UnknownVariable, "'" + v.name + "'");
}

bool Dag::has_edge(std::size_t parent, std::size_t child) const {
    const auto& ch = children_.at(parent);
    return std::find(ch.begin(), ch.end(), child) != ch.end();
}

namespace {

// Returns one directed cycle as a node sequence (first == last), or empty.
std::vector<std::size_t> find_cycle(const std::vector<std::vector<std::size_t>>& children) {
    const std::size_t n = children.size();
    enum : char { white, grey, black };
    std::vector<char> colour(n, white);
    std::vector<std::size_t> stack;
    std::vector<std::size_t> cycle;

    std::function<bool(std::size_t)> visit = [&](std::size_t u) {
        colour[u] = grey;
        stack.push_back(u);
        for (std::size_t v : children[u]) {
            if (colour[v] == grey) {
                auto it = std::find(stack.begin(), stack.end(), v);
                cycle.assign(it, stack.end());
                cycle.push_back(v);
                return true;
            }
            if (colour[v] == white && visit(v)) return true;
        }
        stack.pop_back();
        colour[u] = black;
        return false;
    };

    for (std::size_t u = 0; u < n; ++u)
        if (colour[u] == white && visit(u)) break;
    return cycle;
}

} // namespace

Dag build_dag(const std::vector<std::string>& variable_names,
              const std::vector<std::pair<std::string, std::string>>& edges) {
    Dag dag;
    std::unordered_map<std::string, std::size_t> index;
    for (const auto& name : variable_names) {
        if (name.empty()) throw Error(ErrorKind::InvalidName, "variable names must be non-empty");
        if (!index.emplace(name, dag.names_.size()).second)
            throw Error(ErrorKind::DuplicateName, "'" + name + "'");
        dag.names_.push_back(name);
    }
    dag.parents_.resize(dag.names_.size());
    dag.children_.resize(dag.names_.size());

    auto lookup = [&](const std::string& name) {
        auto it = index.find(name);
        if (it == index.end())
            throw Error(ErrorKind::UnknownEndpoint, "edge endpoint '" + name + "' is not a declared variable");
        return it->second;
    };

    for (const auto& [from, to] : edges) {
        const std::size_t p = lookup(from);
        const std::size_t c = lookup(to);
        if (p == c) throw Error(ErrorKind::CycleDetected, from + " -> " + to);
        if (dag.has_edge(p, c)) throw Error(ErrorKind::DuplicateEdge, from + " -> " + to);
        dag.edges_.emplace_back(p, c);
        dag.parents_[c].push_back(p);
        dag.children_[p].push_back(c);
    }

    if (auto cycle = find_cycle(dag.children_); !cycle.empty()) {
        std::string text;
        for (std::size_t i = 0; i < cycle.size(); ++i) {
            if (i) text += " -> ";
            text += dag.names_[cycle[i]];
        }
        throw Error(ErrorKind::CycleDetected, text);
    }
    return dag;
}

std::vector<VariableId> topological_order(const Dag& dag) {
    const std::size_t n = dag.size();
    std::vector<std::size_t> indegree(n);
    for (std::size_t v = 0; v < n; ++v) indegree[v] = dag.parents(v).size();

    std::priority_queue<std::size_t, std::vector<std::size_t>, std::greater<>> ready;
    for (std::size_t v = 0; v < n; ++v)
        if (indegree[v] == 0) ready.push(v);

    std::vector<VariableId> order;
    order.reserve(n);
    while (!ready.empty()) {
        const std::size_t u = ready.top();
        ready.pop();
        order.push_back(dag.variable(u));
        for (std::size_t c : dag.children(u))
            if (--indegree[c] == 0) ready.push(c);
    }
    return order;
}

VariableSet descendants(const Dag& dag, const VariableId& x) {
    dag.require(x);
    std::vector<char> seen(dag.size(), 0);
    std::vector<std::size_t> frontier{x.index};
    while (!frontier.empty()) {
        const std::size_t u = frontier.back();
        frontier.pop_back();
        for (std::size_t c : dag.children(u)) {
            if (!seen[c]) {
                seen[c] = 1;
                frontier.push_back(c);
            }
        }
    }
    VariableSet out;
    for (std::size_t v = 0; v < dag.size(); ++v)
        if (seen[v]) out.push_back(dag.variable(v));
    return out;
}

bool d_separated(const Dag& dag, const VariableId& x, const VariableId& y,
                 std::span<const VariableId> given) {
    dag.require(x);
    dag.require(y);
    const std::size_t n = dag.size();
    std::vector<char> observed(n, 0);
    for (const auto& s : given) {
        dag.require(s);
        observed[s.index] = 1;
    }
    if (x.index == y.index)
        throw Error(ErrorKind::OverlappingSets, "x and y are both '" + x.name + "'");
    if (observed[x.index] || observed[y.index])
        throw Error(ErrorKind::OverlappingSets, "query endpoint appears in the conditioning set");

    // Observed nodes and their ancestors: a collider passes the trail iff it
    // is in this set.
    std::vector<char> opens_collider(n, 0);
    std::vector<std::size_t> frontier;
    for (std::size_t v = 0; v < n; ++v)
        if (observed[v]) frontier.push_back(v);
    while (!frontier.empty()) {
        const std::size_t u = frontier.back();
        frontier.pop_back();
        if (opens_collider[u]) continue;
        opens_collider[u] = 1;
        for (std::size_t p : dag.parents(u)) frontier.push_back(p);
    }

    // Trail search over (node, direction) where `up` means the trail arrived
    // from a child and `down` means it arrived from a parent.
    enum Dir : std::size_t { up = 0, down = 1 };
    std::vector<char> visited(2 * n, 0);
    std::vector<std::pair<std::size_t, Dir>> stack{{x.index, up}};
    while (!stack.empty()) {
        auto [v, dir] = stack.back();
        stack.pop_back();
        if (visited[2 * v + dir]) continue;
        visited[2 * v + dir] = 1;
        if (v == y.index) return false;

        if (dir == up && !observed[v]) {
            for (std::size_t p : dag.parents(v)) stack.emplace_back(p, up);
            for (std::size_t c : dag.children(v)) stack.emplace_back(c, down);
        } else if (dir == down) {
            if (!observed[v])
                for (std::size_t c : dag.children(v)) stack.emplace_back(c, down);
            if (opens_collider[v])
                for (std::size_t p : dag.parents(v)) stack.emplace_back(p, up);
        }
    }
    return true;
}

bool is_polytree(const Dag& dag) {
    std::vector<std::size_t> root(dag.size());
    std::iota(root.begin(), root.end(), std::size_t{0});
    std::function<std::size_t(std::size_t)> find = [&](std::size_t v) {
        return root[v] == v ? v : root[v] = find(root[v]);
    };
    for (const auto& [p, c] : dag.edges()) {
        const std::size_t a = find(p);
        const std::size_t b = find(c);
        if (a == b) return false;
        root[a] = b;
    }
    return true;
}

} // namespace pcg
