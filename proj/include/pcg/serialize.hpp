#pragma once

#include "pcg/discovery.hpp"
#include "pcg/independence.hpp"
#include "pcg/inference.hpp"
#include "pcg/network.hpp"

#include <json.hpp>

#include <span>

namespace pcg {

// JSON views of results. Keys are emitted in sorted order, so parsing and
// re-dumping any of these documents reproduces the same bytes.

nlohmann::json to_json(const CiDecision& decision);
nlohmann::json to_json(std::span<const CiDecision> report);
nlohmann::json to_json(const Posterior& posterior, const Network& network, const Evidence& evidence = {});
nlohmann::json to_json(const DiscountingReport& report);
nlohmann::json to_json(const DiscoveryResult& result);
nlohmann::json to_json(const ValidationReport& report);

} // namespace pcg
