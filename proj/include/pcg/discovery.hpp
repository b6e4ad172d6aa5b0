#pragma once

#include "pcg/graph.hpp"
#include "pcg/independence.hpp"

#include <cstddef>
#include <vector>

namespace pcg {

inline constexpr std::size_t kDefaultMaxCondSize = 2;

/// Variables ordered by time, earliest first.
using TimeOrder = std::vector<VariableId>;

/// X -> Y: X has a causal influence on Y, i.e. there is a directed path from
/// X to Y in the generating graph (not necessarily an edge). The witness
/// (Z, S) precedes X and satisfies not I(Z, Y | S) and I(Z, Y | S + {X}).
struct CausalLink {
    VariableId from;
    VariableId to;
    VariableId witness_z;
    VariableSet witness_s;
};

struct DiscoveryResult {
    std::vector<CausalLink> links;
    std::size_t queries_issued = 0;
    /// Largest context size the search actually tried.
    std::size_t max_cond_size_used = 0;
};

/// Learns causal-influence links from a time order and an independence
/// oracle. For each pair X before Y, tries Z in time order and, for each Z,
/// contexts S drawn from the other predecessors of X by increasing size and
/// then lexicographically by variable index; the first (Z, S) that passes is
/// recorded and the pair's search stops.
/// Errors: InvalidOrder (order is not a permutation of the oracle's
/// variables) and anything the oracle raises.
DiscoveryResult algorithm_i(const CiOracle& oracle, const TimeOrder& order,
                            std::size_t max_cond_size = kDefaultMaxCondSize);

/// Links with no directed path from `from` to `to` in `truth`. Names are
/// matched, not indices. Errors: UnknownVariable.
std::vector<CausalLink> soundness_check(const DiscoveryResult& result, const Dag& truth);

} // namespace pcg
