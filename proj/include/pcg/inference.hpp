#pragma once

#include "pcg/graph.hpp"
#include "pcg/network.hpp"

#include <array>
#include <cstddef>
#include <vector>

namespace pcg {

/// Evidence whose probability falls below this is rejected as impossible.
inline constexpr double kImpossibleEvidenceThreshold = 1e-12;
/// State taken as "present" when a caller does not say otherwise.
inline constexpr std::size_t kDefaultPresentState = 1;

struct Finding {
    VariableId variable;
    std::size_t state = 0;
};

/// Observed states, at most one per variable.
class Evidence {
public:
    Evidence() = default;
    Evidence(std::initializer_list<Finding> findings);

    /// Throws InvalidEvidence if `v` already has a finding.
    Evidence& observe(const VariableId& v, std::size_t state);
    const std::vector<Finding>& findings() const noexcept { return findings_; }
    bool contains(const VariableId& v) const;
    bool empty() const noexcept { return findings_.empty(); }

private:
    std::vector<Finding> findings_;
};

struct Posterior {
    VariableId variable;
    std::vector<double> probs;
};

struct DiscountingReport {
    VariableId cause;
    VariableId alt_cause;
    VariableId effect;
    double p_prior = 0.0;
    double p_given_effect = 0.0;
    double p_given_effect_and_alt = 0.0;
};

/// Designated "present" state of each role in discounting_report.
struct PresentStates {
    std::size_t cause = kDefaultPresentState;
    std::size_t alt_cause = kDefaultPresentState;
    std::size_t effect = kDefaultPresentState;
};

/// P(effect | c1, c2) for the four cause combinations.
struct EffectTable {
    double both = 0.0;        ///< c1 present, c2 present
    double only_c1 = 0.0;     ///< c1 present, c2 absent
    double only_c2 = 0.0;     ///< c1 absent, c2 present
    double neither = 0.0;     ///< both absent
};

struct NormativeDiscounting {
    double p_c1_given_e = 0.0;
    double p_c1_given_e_c2 = 0.0;
};

/// Exact P(query | evidence) by sum-product variable elimination. Variables
/// are eliminated min-degree first, ties to the lower index.
/// Errors: UnknownVariable, InvalidEvidence (bad state or query observed),
/// ImpossibleEvidence.
Posterior eliminate(const Network& network, const VariableId& query, const Evidence& evidence = {});

/// Pearl's pi/lambda message passing with one inward and one outward sweep
/// per connected component. Returns one belief per variable in index order;
/// observed variables get their indicator.
/// Errors: NotAPolytree, InvalidEvidence, ImpossibleEvidence.
std::vector<Posterior> propagate_polytree(const Network& network, const Evidence& evidence = {});

/// Prior, after the effect, and after effect and alternative cause, for the
/// cause's present state. Errors: InvalidArgument (roles not distinct) and
/// anything eliminate raises.
DiscountingReport discounting_report(const Network& network, const VariableId& cause,
                                     const VariableId& alt_cause, const VariableId& effect,
                                     const PresentStates& present = {});

/// Bayes' rule over the two-cause collider with marginally independent
/// causes. Errors: InvalidArgument (inputs outside [0, 1]),
/// ZeroEvidenceProbability.
NormativeDiscounting normative_discounting(double p_c1, double p_c2, const EffectTable& effect);

} // namespace pcg
