#include "pcg/network.hpp"

#include "pcg/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

namespace pcg {

std::size_t Variable::state_index(const std::string& state) const {
    auto it = std::find(states.begin(), states.end(), state);
    if (it == states.end())
        throw Error(ErrorKind::UnknownState, "'" + state + "' is not a state of " + id.name);
    return static_cast<std::size_t>(it - states.begin());
}

namespace {

std::string describe_row_sum(const std::string& child, std::size_t row, double sum) {
    std::ostringstream os;
    os.precision(17);
    os << "CPT of " << child << " row " << row << " sums to " << sum;
    return os.str();
}

} // namespace

ValidationReport validate_network(const Dag& dag, std::span<const Variable> variables,
                                  std::span<const Cpt> cpts) {
    ValidationReport report;
    auto add = [&](IssueKind kind, const std::string& var, std::string msg, std::size_t row = 0,
                   double sum = 0.0) {
        report.push_back({kind, var, row, sum, std::move(msg)});
    };

    if (variables.size() != dag.size()) {
        add(IssueKind::VariableMismatch, "",
            "network has " + std::to_string(variables.size()) + " variables but the graph has " +
                std::to_string(dag.size()));
        return report;
    }
    for (std::size_t i = 0; i < variables.size(); ++i) {
        const auto& v = variables[i];
        if (v.id.index != i || v.id.name != dag.names()[i])
            add(IssueKind::VariableMismatch, v.id.name,
                "variable " + std::to_string(i) + " is '" + v.id.name + "', graph node is '" +
                    dag.names()[i] + "'");
        if (v.arity() < 2)
            add(IssueKind::Arity, v.id.name, v.id.name + " has fewer than two states");
        std::set<std::string> seen(v.states.begin(), v.states.end());
        if (seen.size() != v.states.size())
            add(IssueKind::DuplicateState, v.id.name, v.id.name + " repeats a state name");
    }

    std::vector<int> owners(dag.size(), 0);
    for (const auto& cpt : cpts) {
        if (cpt.child >= dag.size()) {
            add(IssueKind::VariableMismatch, "", "CPT for unknown node index " + std::to_string(cpt.child));
            continue;
        }
        ++owners[cpt.child];
    }
    for (std::size_t i = 0; i < dag.size(); ++i) {
        if (owners[i] == 0) add(IssueKind::MissingCpt, dag.names()[i], dag.names()[i] + " has no CPT");
        if (owners[i] > 1) add(IssueKind::DuplicateCpt, dag.names()[i], dag.names()[i] + " has several CPTs");
    }

    for (const auto& cpt : cpts) {
        if (cpt.child >= dag.size()) continue;
        const std::string& child = dag.names()[cpt.child];

        std::vector<std::size_t> declared = cpt.parents;
        std::vector<std::size_t> actual = dag.parents(cpt.child);
        std::sort(declared.begin(), declared.end());
        std::sort(actual.begin(), actual.end());
        if (declared != actual || std::adjacent_find(declared.begin(), declared.end()) != declared.end()) {
            add(IssueKind::ParentMismatch, child, "CPT parents of " + child + " differ from its graph parents");
            continue;
        }
        if (cpt.arity != variables[cpt.child].arity()) {
            add(IssueKind::RowCount, child, "CPT of " + child + " has the wrong row width");
            continue;
        }
        std::size_t expected_rows = 1;
        for (std::size_t p : cpt.parents) expected_rows *= variables[p].arity();
        if (cpt.arity == 0 || cpt.table.size() != expected_rows * cpt.arity) {
            add(IssueKind::RowCount, child,
                "CPT of " + child + " needs " + std::to_string(expected_rows) + " rows of " +
                    std::to_string(cpt.arity));
            continue;
        }
        for (std::size_t r = 0; r < expected_rows; ++r) {
            double sum = 0.0;
            bool in_range = true;
            for (double p : cpt.row(r)) {
                if (!(p >= 0.0 && p <= 1.0)) in_range = false;
                sum += p;
            }
            if (!in_range)
                add(IssueKind::EntryRange, child,
                    "CPT of " + child + " row " + std::to_string(r) + " has an entry outside [0, 1]", r, sum);
            if (!(std::abs(sum - 1.0) <= kNormalizationTolerance))
                add(IssueKind::RowSum, child, describe_row_sum(child, r, sum), r, sum);
        }
    }
    return report;
}

Network::Network(Dag dag, std::vector<Variable> variables, std::vector<Cpt> cpts)
    : dag_(std::move(dag)), variables_(std::move(variables)) {
    if (auto report = validate_network(dag_, variables_, cpts); !report.empty()) {
        std::string text = report.front().message;
        if (report.size() > 1) text += " (+" + std::to_string(report.size() - 1) + " more)";
        throw Error(ErrorKind::InvalidNetwork, text);
    }
    cpts_.resize(variables_.size());
    for (auto& cpt : cpts) {
        for (std::size_t r = 0; r < cpt.row_count(); ++r) {
            auto first = cpt.table.begin() + static_cast<std::ptrdiff_t>(r * cpt.arity);
            auto last = first + static_cast<std::ptrdiff_t>(cpt.arity);
            const double sum = std::accumulate(first, last, 0.0);
            std::for_each(first, last, [sum](double& p) { p /= sum; });
        }
        const std::size_t child = cpt.child;
        cpts_[child] = std::move(cpt);
    }
}

const Variable& Network::variable(const std::string& name) const {
    return variables_[dag_.variable(name).index];
}

double Network::conditional(std::size_t child, std::span<const std::size_t> assignment) const {
    const Cpt& cpt = cpts_[child];
    std::size_t row = 0;
    for (std::size_t p : cpt.parents) row = row * variables_[p].arity() + assignment[p];
    return cpt.table[row * cpt.arity + assignment[child]];
}

ValidationReport validate_network(const Network& network) {
    return validate_network(network.dag(), network.variables(), network.cpts());
}

JointTable::JointTable(std::vector<Variable> variables, std::vector<double> probs)
    : variables_(std::move(variables)), probs_(std::move(probs)) {
    std::size_t cells = 1;
    for (const auto& v : variables_) cells *= v.arity();
    if (cells != probs_.size())
        throw Error(ErrorKind::InvalidArgument, "joint table has " + std::to_string(probs_.size()) +
                                                    " cells, variables need " + std::to_string(cells));
    double sum = 0.0;
    for (double p : probs_) {
        if (!(p >= 0.0)) throw Error(ErrorKind::InvalidArgument, "joint table has a negative entry");
        sum += p;
    }
    if (!(std::abs(sum - 1.0) <= kNormalizationTolerance))
        throw Error(ErrorKind::InvalidArgument, "joint table sums to " + std::to_string(sum));
}

std::size_t JointTable::cell_index(std::span<const std::size_t> states) const {
    if (states.size() != variables_.size())
        throw Error(ErrorKind::IncompleteAssignment, "assignment covers " + std::to_string(states.size()) +
                                                         " of " + std::to_string(variables_.size()) + " variables");
    std::size_t index = 0;
    for (std::size_t i = 0; i < states.size(); ++i) {
        if (states[i] >= variables_[i].arity())
            throw Error(ErrorKind::IncompleteAssignment, "state out of range for " + variables_[i].id.name);
        index = index * variables_[i].arity() + states[i];
    }
    return index;
}

std::size_t JointTable::position(const VariableId& v) const {
    for (std::size_t i = 0; i < variables_.size(); ++i)
        if (variables_[i].id.name == v.name) return i;
    throw Error(ErrorKind::UnknownVariable, "'" + v.name + "' is not in the joint table");
}

Dataset::Dataset(std::vector<Variable> variables, std::vector<std::size_t> cells)
    : variables_(std::move(variables)), cells_(std::move(cells)) {
    const std::size_t cols = variables_.size();
    if (cols == 0 ? !cells_.empty() : cells_.size() % cols != 0)
        throw Error(ErrorKind::InvalidArgument, "dataset cells do not form complete rows");
    for (std::size_t i = 0; i < cells_.size(); ++i)
        if (cells_[i] >= variables_[i % cols].arity())
            throw Error(ErrorKind::InvalidArgument, "state index out of range for " + variables_[i % cols].id.name);
}

std::size_t Dataset::column(const VariableId& v) const {
    for (std::size_t i = 0; i < variables_.size(); ++i)
        if (variables_[i].id.name == v.name) return i;
    throw Error(ErrorKind::UnknownVariable, "'" + v.name + "' is not a dataset column");
}

double joint_probability(const Network& network, std::span<const std::size_t> assignment) {
    if (assignment.size() != network.size())
        throw Error(ErrorKind::IncompleteAssignment, "assignment covers " + std::to_string(assignment.size()) +
                                                         " of " + std::to_string(network.size()) + " variables");
    for (std::size_t i = 0; i < assignment.size(); ++i)
        if (assignment[i] >= network.variable(i).arity())
            throw Error(ErrorKind::IncompleteAssignment, "state out of range for " + network.variable(i).id.name);
    double p = 1.0;
    for (std::size_t i = 0; i < network.size(); ++i) p *= network.conditional(i, assignment);
    return p;
}

JointTable enumerate_joint(const Network& network, std::size_t max_cells) {
    std::size_t cells = 1;
    for (const auto& v : network.variables()) {
        if (cells > max_cells / v.arity())
            throw Error(ErrorKind::TooLarge, "joint table exceeds " + std::to_string(max_cells) + " cells");
        cells *= v.arity();
    }

    std::vector<double> probs(cells);
    Assignment a(network.size(), 0);
    for (std::size_t cell = 0; cell < cells; ++cell) {
        double p = 1.0;
        for (std::size_t i = 0; i < network.size(); ++i) p *= network.conditional(i, a);
        probs[cell] = p;
        // odometer, last variable fastest
        for (std::size_t i = network.size(); i-- > 0;) {
            if (++a[i] < network.variable(i).arity()) break;
            a[i] = 0;
        }
    }
    return JointTable(network.variables(), std::move(probs));
}

Dataset forward_sample(const Network& network, std::uint64_t seed, std::size_t n) {
    if (n == 0) throw Error(ErrorKind::InvalidArgument, "sample size must be at least 1");
    const auto order = topological_order(network.dag());
    std::mt19937_64 engine(seed);
    const std::size_t cols = network.size();
    std::vector<std::size_t> cells(n * cols);

    for (std::size_t r = 0; r < n; ++r) {
        std::span<std::size_t> row(cells.data() + r * cols, cols);
        for (const auto& v : order) {
            const Cpt& cpt = network.cpt(v.index);
            std::size_t config = 0;
            for (std::size_t p : cpt.parents) config = config * network.variable(p).arity() + row[p];
            const auto probs = cpt.row(config);

            const double u = static_cast<double>(engine() >> 11) * 0x1.0p-53;
            double cumulative = 0.0;
            std::size_t pick = cpt.arity;
            std::size_t last_positive = 0;
            for (std::size_t k = 0; k < cpt.arity; ++k) {
                if (probs[k] > 0.0) last_positive = k;
                cumulative += probs[k];
                if (u < cumulative) {
                    pick = k;
                    break;
                }
            }
            // rounding can leave u above the final cumulative sum
            row[v.index] = pick < cpt.arity ? pick : last_positive;
        }
    }
    return Dataset(network.variables(), std::move(cells));
}

JointTable marginalize(const JointTable& joint, std::span<const VariableId> keep) {
    const auto& vars = joint.variables();
    std::vector<char> kept(vars.size(), 0);
    for (const auto& v : keep) kept[joint.position(v)] = 1;

    std::vector<Variable> out_vars;
    for (std::size_t i = 0; i < vars.size(); ++i)
        if (kept[i]) out_vars.push_back(vars[i]);

    // stride of each kept source variable inside the output table
    std::vector<std::size_t> out_stride(vars.size(), 0);
    std::size_t stride = 1;
    for (std::size_t i = vars.size(); i-- > 0;) {
        if (!kept[i]) continue;
        out_stride[i] = stride;
        stride *= vars[i].arity();
    }

    std::vector<double> probs(stride, 0.0);
    std::vector<std::size_t> a(vars.size(), 0);
    std::size_t target = 0;
    for (double p : joint.probs()) {
        probs[target] += p;
        for (std::size_t i = vars.size(); i-- > 0;) {
            if (++a[i] < vars[i].arity()) {
                target += out_stride[i];
                break;
            }
            target -= out_stride[i] * (vars[i].arity() - 1);
            a[i] = 0;
        }
    }
    return JointTable(std::move(out_vars), std::move(probs));
}

} // namespace pcg
