#pragma once

#include "pcg/graph.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace pcg {

/// Row-sum tolerance for CPT rows and joint tables.
inline constexpr double kNormalizationTolerance = 1e-9;
/// Default cell cap for enumerate_joint.
inline constexpr std::size_t kDefaultMaxJointCells = std::size_t{1} << 20;

/// State index per variable, in network variable order.
using Assignment = std::vector<std::size_t>;

struct Variable {
    VariableId id;
    std::vector<std::string> states;

    std::size_t arity() const noexcept { return states.size(); }
    /// Throws UnknownState.
    std::size_t state_index(const std::string& state) const;
};

/// Conditional probability table. Rows are stored flat, one row per parent
/// configuration, row-major over parent state indices with the first parent
/// slowest.
struct Cpt {
    std::size_t child = 0;
    std::vector<std::size_t> parents;
    std::size_t arity = 0;
    std::vector<double> table;

    std::size_t row_count() const noexcept { return arity == 0 ? 0 : table.size() / arity; }
    std::span<const double> row(std::size_t r) const {
        return std::span<const double>(table).subspan(r * arity, arity);
    }
};

enum class IssueKind {
    MissingCpt,
    DuplicateCpt,
    VariableMismatch,
    Arity,
    DuplicateState,
    ParentMismatch,
    RowCount,
    EntryRange,
    RowSum,
};

struct ValidationIssue {
    IssueKind kind;
    std::string variable;
    std::size_t row = 0;
    double sum = 0.0;
    std::string message;
};

using ValidationReport = std::vector<ValidationIssue>;

/// Checks every CPT against the graph: one table per node, parents equal to
/// the graph parents, row count equal to the product of parent arities,
/// entries in [0, 1] and row sums within `kNormalizationTolerance` of 1.
ValidationReport validate_network(const Dag& dag, std::span<const Variable> variables,
                                  std::span<const Cpt> cpts);

/// A Bayesian network. Construction validates and renormalizes rows that sum
/// to 1 within tolerance; anything else throws InvalidNetwork.
class Network {
public:
    Network(Dag dag, std::vector<Variable> variables, std::vector<Cpt> cpts);

    const Dag& dag() const noexcept { return dag_; }
    const std::vector<Variable>& variables() const noexcept { return variables_; }
    const std::vector<Cpt>& cpts() const noexcept { return cpts_; }
    std::size_t size() const noexcept { return variables_.size(); }

    const Variable& variable(std::size_t index) const { return variables_.at(index); }
    /// Throws UnknownVariable.
    const Variable& variable(const std::string& name) const;
    /// CPT of variable `index`.
    const Cpt& cpt(std::size_t index) const { return cpts_.at(index); }
    /// P(child = state | parent configuration taken from `assignment`).
    double conditional(std::size_t child, std::span<const std::size_t> assignment) const;

private:
    Dag dag_;
    std::vector<Variable> variables_;
    std::vector<Cpt> cpts_;
};

/// Always empty for a constructed Network; provided for symmetry.
ValidationReport validate_network(const Network& network);

/// Explicit distribution over a list of variables, row-major with the first
/// variable slowest.
class JointTable {
public:
    JointTable(std::vector<Variable> variables, std::vector<double> probs);

    const std::vector<Variable>& variables() const noexcept { return variables_; }
    const std::vector<double>& probs() const noexcept { return probs_; }
    std::size_t size() const noexcept { return probs_.size(); }

    std::size_t cell_index(std::span<const std::size_t> states) const;
    double at(std::span<const std::size_t> states) const { return probs_[cell_index(states)]; }
    /// Position of `v` within variables(). Throws UnknownVariable.
    std::size_t position(const VariableId& v) const;

private:
    std::vector<Variable> variables_;
    std::vector<double> probs_;
};

/// Complete observations, stored flat (row-major, one column per variable).
class Dataset {
public:
    Dataset(std::vector<Variable> variables, std::vector<std::size_t> cells);

    const std::vector<Variable>& variables() const noexcept { return variables_; }
    std::size_t rows() const noexcept { return variables_.empty() ? 0 : cells_.size() / variables_.size(); }
    std::size_t columns() const noexcept { return variables_.size(); }
    std::span<const std::size_t> row(std::size_t r) const {
        return std::span<const std::size_t>(cells_).subspan(r * columns(), columns());
    }
    std::size_t at(std::size_t r, std::size_t column) const { return cells_[r * columns() + column]; }
    /// Column of `v`, matched by name. Throws UnknownVariable.
    std::size_t column(const VariableId& v) const;

private:
    std::vector<Variable> variables_;
    std::vector<std::size_t> cells_;
};

/// Product of the CPT entries selected by a complete assignment.
/// Errors: IncompleteAssignment (wrong length or state out of range).
double joint_probability(const Network& network, std::span<const std::size_t> assignment);

/// Errors: TooLarge when the product of arities exceeds `max_cells`.
JointTable enumerate_joint(const Network& network, std::size_t max_cells = kDefaultMaxJointCells);

/// Ancestral sampling in topological order from a std::mt19937_64 seeded with
/// `seed`. Each draw takes one 64-bit output `w`, forms u = (w >> 11) * 2^-53,
/// and picks the first state whose cumulative row probability exceeds u.
/// Errors: InvalidArgument when n == 0.
Dataset forward_sample(const Network& network, std::uint64_t seed, std::size_t n);

/// Sums out every variable not in `keep`. The result keeps the joint's
/// variable order. Errors: UnknownVariable.
JointTable marginalize(const JointTable& joint, std::span<const VariableId> keep);

} // namespace pcg
