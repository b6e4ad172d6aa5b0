#pragma once

#include "pcg/graph.hpp"
#include "pcg/network.hpp"

#include <cstddef>
#include <string_view>
#include <vector>

namespace pcg {

inline constexpr double kDefaultExactTolerance = 1e-9;
inline constexpr double kDefaultAlpha = 0.01;
/// Cap on the number of (x, y, S) triples check_faithfulness may examine.
inline constexpr std::size_t kDefaultMaxFaithfulnessTriples = std::size_t{1} << 20;

/// The question "is x independent of y given s?".
struct CiQuery {
    VariableId x;
    VariableId y;
    VariableSet s;
};

enum class CiMethod { exact, g_test, d_separation };

std::string_view to_string(CiMethod method);

struct CiDecision {
    CiQuery query;
    bool independent = false;
    /// G for the G-test; the largest |P(x,y|s) - P(x|s)P(y|s)| for the exact
    /// test when dependent (0 when independent); 0 for d-separation.
    double statistic = 0.0;
    int dof = 0;
    double p_value = 1.0;
    CiMethod method = CiMethod::exact;
};

/// Throws OverlappingSets when x == y or either endpoint is in s.
void check_query(const CiQuery& q);

/// Answers independence queries. Implementations are deterministic and safe
/// to share between threads.
class CiOracle {
public:
    virtual ~CiOracle() = default;
    virtual CiDecision decide(const CiQuery& q) const = 0;
    /// Variables the oracle can be asked about.
    virtual std::vector<VariableId> variables() const = 0;
};

/// independent iff, for every configuration of s with P(s) > tol,
/// |P(x, y | s) - P(x | s) P(y | s)| <= tol for all states of x and y.
/// Errors: UnknownVariable, OverlappingSets, InvalidArgument (tol <= 0).
CiDecision exact_ci(const JointTable& joint, const CiQuery& q, double tol = kDefaultExactTolerance);

/// Stratified G-test. G = 2 sum O ln(O / E) over the (x, y) cells of each
/// nonempty s-stratum with E from the stratum margins; dof adds
/// (|x| - 1)(|y| - 1) per nonempty stratum; independent iff p > alpha.
/// Errors: EmptyDataset, DegenerateStrata, UnknownVariable, OverlappingSets,
/// InvalidArgument (alpha outside (0, 1)).
CiDecision g_test_ci(const Dataset& data, const CiQuery& q, double alpha = kDefaultAlpha);

class ExactOracle final : public CiOracle {
public:
    explicit ExactOracle(JointTable joint, double tol = kDefaultExactTolerance);
    CiDecision decide(const CiQuery& q) const override;
    std::vector<VariableId> variables() const override;
    const JointTable& joint() const noexcept { return joint_; }

private:
    JointTable joint_;
    double tol_;
};

class GTestOracle final : public CiOracle {
public:
    explicit GTestOracle(Dataset data, double alpha = kDefaultAlpha);
    CiDecision decide(const CiQuery& q) const override;
    std::vector<VariableId> variables() const override;

private:
    Dataset data_;
    double alpha_;
};

/// Reads independencies off the graph: independent iff d-separated.
class DSeparationOracle final : public CiOracle {
public:
    explicit DSeparationOracle(Dag dag);
    CiDecision decide(const CiQuery& q) const override;
    std::vector<VariableId> variables() const override;

private:
    Dag dag_;
};

/// For each variable X and each nondescendant W outside parents(X), checks
/// I(X, W | parents(X)) with exact_ci. Returns the failing decisions.
/// Errors: VariableMismatch when the joint is not over the network's variables.
std::vector<CiDecision> check_markov(const Network& network, const JointTable& joint,
                                     double tol = kDefaultExactTolerance);

/// Every (x, y, S) with x before y in variable order and S drawn from the
/// remaining variables where exact_ci finds independence that d-separation
/// does not entail. Errors: VariableMismatch, TooLarge.
std::vector<CiDecision> check_faithfulness(const Network& network, const JointTable& joint,
                                           double tol = kDefaultExactTolerance,
                                           std::size_t max_triples = kDefaultMaxFaithfulnessTriples);

} // namespace pcg
