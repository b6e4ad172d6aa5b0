#include "pcg/network_io.hpp"

#include "pcg/error.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <sstream>
#include <unordered_map>

namespace pcg {

namespace {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

const json& member(const json& obj, const char* key, const std::string& where) {
    auto it = obj.find(key);
    if (it == obj.end()) throw Error(ErrorKind::ParseError, where + " is missing \"" + key + "\"");
    return *it;
}

std::string as_string(const json& j, const std::string& where) {
    if (!j.is_string()) throw Error(ErrorKind::ParseError, where + " must be a string");
    return j.get<std::string>();
}

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        fields.push_back(trim(std::string_view(line).substr(start, comma - start)));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return fields;
}

} // namespace

Network network_from_json(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(ErrorKind::ParseError, e.what());
    }
    if (!doc.is_object()) throw Error(ErrorKind::ParseError, "network document must be an object");

    const json& vars = member(doc, "variables", "network");
    if (!vars.is_array()) throw Error(ErrorKind::ParseError, "\"variables\" must be an array");
    std::vector<std::string> names;
    std::vector<std::vector<std::string>> states;
    for (const auto& v : vars) {
        if (!v.is_object()) throw Error(ErrorKind::ParseError, "variable entries must be objects");
        names.push_back(as_string(member(v, "name", "variable"), "variable name"));
        const json& st = member(v, "states", "variable " + names.back());
        if (!st.is_array()) throw Error(ErrorKind::ParseError, "states of " + names.back() + " must be an array");
        std::vector<std::string> list;
        for (const auto& s : st) list.push_back(as_string(s, "state of " + names.back()));
        states.push_back(std::move(list));
    }

    std::vector<std::pair<std::string, std::string>> edges;
    if (auto it = doc.find("edges"); it != doc.end()) {
        if (!it->is_array()) throw Error(ErrorKind::ParseError, "\"edges\" must be an array");
        for (const auto& e : *it) {
            if (!e.is_array() || e.size() != 2)
                throw Error(ErrorKind::ParseError, "each edge must be a [parent, child] pair");
            edges.emplace_back(as_string(e[0], "edge endpoint"), as_string(e[1], "edge endpoint"));
        }
    }

    Dag dag = build_dag(names, edges);
    std::vector<Variable> variables;
    for (std::size_t i = 0; i < names.size(); ++i) variables.push_back({dag.variable(i), states[i]});

    const json& cpt_doc = member(doc, "cpts", "network");
    if (!cpt_doc.is_object()) throw Error(ErrorKind::ParseError, "\"cpts\" must be an object");
    std::vector<Cpt> cpts;
    for (const auto& [child_name, body] : cpt_doc.items()) {
        if (!dag.contains(child_name))
            throw Error(ErrorKind::InvalidNetwork, "CPT for undeclared variable '" + child_name + "'");
        Cpt cpt;
        cpt.child = dag.variable(child_name).index;
        cpt.arity = variables[cpt.child].arity();
        const std::string where = "CPT of " + child_name;
        if (auto it = body.find("parents"); it != body.end()) {
            if (!it->is_array()) throw Error(ErrorKind::ParseError, where + ": parents must be an array");
            for (const auto& p : *it) {
                const std::string parent = as_string(p, where + " parent");
                if (!dag.contains(parent))
                    throw Error(ErrorKind::InvalidNetwork, where + " names unknown parent '" + parent + "'");
                cpt.parents.push_back(dag.variable(parent).index);
            }
        }
        const json& rows = member(body, "rows", where);
        if (!rows.is_array()) throw Error(ErrorKind::ParseError, where + ": rows must be an array");
        for (std::size_t r = 0; r < rows.size(); ++r) {
            const json& row = rows[r];
            if (!row.is_array() || row.size() != cpt.arity)
                throw Error(ErrorKind::InvalidNetwork, where + " row " + std::to_string(r) + " must have " +
                                                           std::to_string(cpt.arity) + " entries");
            for (const auto& p : row) {
                if (!p.is_number()) throw Error(ErrorKind::ParseError, where + ": entries must be numbers");
                cpt.table.push_back(p.get<double>());
            }
        }
        cpts.push_back(std::move(cpt));
    }
    return Network(std::move(dag), std::move(variables), std::move(cpts));
}

std::string network_to_json(const Network& network) {
    ordered_json doc;
    doc["variables"] = ordered_json::array();
    for (const auto& v : network.variables())
        doc["variables"].push_back({{"name", v.id.name}, {"states", v.states}});
    doc["edges"] = ordered_json::array();
    const auto& names = network.dag().names();
    for (const auto& [p, c] : network.dag().edges()) doc["edges"].push_back({names[p], names[c]});
    doc["cpts"] = ordered_json::object();
    for (const auto& cpt : network.cpts()) {
        ordered_json parents = ordered_json::array();
        for (std::size_t p : cpt.parents) parents.push_back(names[p]);
        ordered_json rows = ordered_json::array();
        for (std::size_t r = 0; r < cpt.row_count(); ++r) {
            const auto row = cpt.row(r);
            rows.push_back(std::vector<double>(row.begin(), row.end()));
        }
        doc["cpts"][names[cpt.child]] = {{"parents", parents}, {"rows", rows}};
    }
    return doc.dump(2) + "\n";
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::IoError, "cannot open " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorKind::IoError, "cannot write " + path.string());
    out << text;
    if (!out) throw Error(ErrorKind::IoError, "write failed for " + path.string());
}

Network load_network(const std::filesystem::path& path) {
    return network_from_json(read_text_file(path));
}

void save_network(const Network& network, const std::filesystem::path& path) {
    write_text_file(path, network_to_json(network));
}

Dataset dataset_from_csv(const std::string& text, std::optional<std::span<const Variable>> schema) {
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    std::vector<std::string> header;
    while (header.empty() && std::getline(in, line)) {
        ++line_no;
        if (!trim(line).empty()) header = split_fields(line);
    }
    if (header.empty()) throw Error(ErrorKind::ParseError, "dataset has no header row");

    std::vector<Variable> columns;
    for (std::size_t c = 0; c < header.size(); ++c) {
        const auto& name = header[c];
        if (name.empty()) throw Error(ErrorKind::ParseError, "empty column name in header");
        for (std::size_t k = 0; k < c; ++k)
            if (header[k] == name) throw Error(ErrorKind::ParseError, "column '" + name + "' appears twice");
        if (schema) {
            auto it = std::find_if(schema->begin(), schema->end(),
                                   [&](const Variable& v) { return v.id.name == name; });
            if (it == schema->end())
                throw Error(ErrorKind::UnknownVariable, "column '" + name + "' is not a known variable");
            columns.push_back(*it);
        } else {
            columns.push_back({VariableId{c, name}, {}});
        }
    }

    std::vector<std::size_t> cells;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        const auto fields = split_fields(line);
        if (fields.size() != columns.size())
            throw Error(ErrorKind::ParseError, "line " + std::to_string(line_no) + " has " +
                                                   std::to_string(fields.size()) + " fields, expected " +
                                                   std::to_string(columns.size()));
        for (std::size_t c = 0; c < fields.size(); ++c) {
            auto& states = columns[c].states;
            auto it = std::find(states.begin(), states.end(), fields[c]);
            if (it != states.end()) {
                cells.push_back(static_cast<std::size_t>(it - states.begin()));
            } else if (schema) {
                throw Error(ErrorKind::UnknownState, "line " + std::to_string(line_no) + ": '" + fields[c] +
                                                         "' is not a state of " + columns[c].id.name);
            } else {
                if (fields[c].empty())
                    throw Error(ErrorKind::ParseError, "line " + std::to_string(line_no) + " has an empty field");
                cells.push_back(states.size());
                states.push_back(fields[c]);
            }
        }
    }
    return Dataset(std::move(columns), std::move(cells));
}

std::string dataset_to_csv(const Dataset& data) {
    auto plain = [](const std::string& field) {
        if (field.find_first_of(",\r\n") != std::string::npos || trim(field) != field)
            throw Error(ErrorKind::InvalidArgument, "'" + field + "' cannot be written as a CSV field");
        return field;
    };
    std::string out;
    const auto& vars = data.variables();
    for (std::size_t c = 0; c < vars.size(); ++c) {
        if (c) out += ',';
        out += plain(vars[c].id.name);
        for (const auto& s : vars[c].states) plain(s);
    }
    out += '\n';
    for (std::size_t r = 0; r < data.rows(); ++r) {
        for (std::size_t c = 0; c < vars.size(); ++c) {
            if (c) out += ',';
            out += vars[c].states[data.at(r, c)];
        }
        out += '\n';
    }
    return out;
}

Dataset load_dataset(const std::filesystem::path& path, std::optional<std::span<const Variable>> schema) {
    return dataset_from_csv(read_text_file(path), schema);
}

void save_dataset(const Dataset& data, const std::filesystem::path& path) {
    write_text_file(path, dataset_to_csv(data));
}

} // namespace pcg
