#pragma once

#include "pcg/inference.hpp"

#include <string>
#include <vector>

namespace pcg::detail {

/// Observed state per variable, std::string::npos when unobserved.
/// Errors: UnknownVariable, InvalidEvidence.
std::vector<std::size_t> observed_states(const Network& network, const Evidence& evidence);

} // namespace pcg::detail
