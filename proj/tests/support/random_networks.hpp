#pragma once

#include "pcg/network.hpp"

#include <random>

namespace pcg::test {

/// Binary CPTs with P(state 1 | row) drawn uniformly from [lo, hi].
Network with_random_cpts(const Dag& dag, std::mt19937_64& rng, double lo = 0.05, double hi = 0.95);

/// Random DAG over V0..V{n-1}: a random causal order, each forward pair joined
/// with probability `edge_probability`. Variable index order is independent of
/// the causal order.
Dag random_dag(std::mt19937_64& rng, std::size_t n, double edge_probability);

/// Random polytree: a random spanning tree with random edge orientations.
Dag random_polytree(std::mt19937_64& rng, std::size_t n);

/// Topological order by causal position that differs from topological_order's
/// index tie-break whenever possible (ties go to the highest index).
std::vector<VariableId> reverse_tiebreak_topological_order(const Dag& dag);

} // namespace pcg::test
