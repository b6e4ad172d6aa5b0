#pragma once

#include "pcg/network.hpp"

#include <filesystem>
#include <optional>
#include <span>
#include <string>

namespace pcg {

/// Network JSON:
///   {"variables": [{"name": .., "states": [..]}, ..],
///    "edges": [["parent", "child"], ..],
///    "cpts": {"<child>": {"parents": [..], "rows": [[..], ..]}, ..}}
/// Rows are row-major over the listed parents, first parent slowest.
/// Loading runs full validation. Errors: ParseError, InvalidNetwork and the
/// build_dag errors.
Network network_from_json(const std::string& text);
std::string network_to_json(const Network& network);
Network load_network(const std::filesystem::path& path);
void save_network(const Network& network, const std::filesystem::path& path);

/// Dataset CSV: a header of variable names, then one row of state names per
/// observation. With a schema, columns are matched by name and unknown state
/// names are errors (UnknownState). Without one, each column's states are
/// taken in order of first appearance.
Dataset dataset_from_csv(const std::string& text,
                         std::optional<std::span<const Variable>> schema = std::nullopt);
std::string dataset_to_csv(const Dataset& data);
Dataset load_dataset(const std::filesystem::path& path,
                     std::optional<std::span<const Variable>> schema = std::nullopt);
void save_dataset(const Dataset& data, const std::filesystem::path& path);

/// Whole-file read. Errors: IoError.
std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

} // namespace pcg
