#pragma once

#include "pcg/network_io.hpp"

#include <string>

namespace pcg::test {

inline std::filesystem::path fixture_path(const std::string& file) {
    return std::filesystem::path(PCG_FIXTURE_DIR) / file;
}

inline Network load_fixture(const std::string& file) { return load_network(fixture_path(file)); }

inline Network chain_c1() { return load_fixture("c1.json"); }
inline Network sprinkler_f1() { return load_fixture("f1.json"); }
inline Network holmes_f2() { return load_fixture("f2.json"); }

inline VariableId id(const Network& net, const std::string& name) { return net.variable(name).id; }

} // namespace pcg::test
