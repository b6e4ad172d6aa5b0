// Regenerates the golden values for the fixture networks from the
// enumeration oracle (full joint table, direct summation), or checks a
// committed goldens file against freshly computed values.
//
//   pcg_goldens --fixtures DIR --write FILE
//   pcg_goldens --fixtures DIR --check FILE

#include "pcg/discovery.hpp"
#include "pcg/error.hpp"
#include "pcg/independence.hpp"
#include "pcg/inference.hpp"
#include "pcg/network_io.hpp"
#include "pcg/serialize.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <iostream>
#include <map>

namespace {

using nlohmann::json;
using pcg::JointTable;
using pcg::Network;

constexpr double kTolerance = 1e-9;

// P(target = state | given) by summing matching cells of the joint.
double conditional(const Network& net, const JointTable& joint, const std::string& target,
                   const std::string& state, const std::map<std::string, std::string>& given) {
    const std::size_t t = net.variable(target).id.index;
    const std::size_t ts = net.variable(target).state_index(state);
    std::vector<std::pair<std::size_t, std::size_t>> fixed;
    for (const auto& [name, s] : given) fixed.emplace_back(net.variable(name).id.index, net.variable(name).state_index(s));

    double num = 0.0, den = 0.0;
    std::vector<std::size_t> a(net.size(), 0);
    for (double p : joint.probs()) {
        bool match = true;
        for (const auto& [v, s] : fixed) match = match && a[v] == s;
        if (match) {
            den += p;
            if (a[t] == ts) num += p;
        }
        for (std::size_t i = net.size(); i-- > 0;) {
            if (++a[i] < net.variable(i).arity()) break;
            a[i] = 0;
        }
    }
    return num / den;
}

json discovery(const Network& net, const std::vector<std::string>& order, std::size_t max_cond) {
    pcg::TimeOrder time;
    for (const auto& name : order) time.push_back(net.variable(name).id);
    return pcg::to_json(pcg::algorithm_i(pcg::ExactOracle(pcg::enumerate_joint(net)), time, max_cond));
}

json compute(const std::filesystem::path& dir) {
    json g = json::object();

    const Network c1 = pcg::load_network(dir / "c1.json");
    const JointTable jc1 = pcg::enumerate_joint(c1);
    g["c1.joint"] = jc1.probs();
    g["c1.p_y_true_given_z_true"] = conditional(c1, jc1, "Y", "1", {{"Z", "1"}});
    g["c1.learn"] = discovery(c1, {"Z", "X", "Y"}, 1);

    const Network f1 = pcg::load_network(dir / "f1.json");
    const JointTable jf1 = pcg::enumerate_joint(f1);
    json order = json::array();
    for (const auto& v : pcg::topological_order(f1.dag())) order.push_back(v.name);
    g["f1.topological_order"] = order;
    json desc = json::array();
    for (const auto& v : pcg::descendants(f1.dag(), f1.variable("SEASON").id)) desc.push_back(v.name);
    g["f1.descendants_of_season"] = desc;
    g["f1.p_wet_true"] = conditional(f1, jf1, "WET", "true", {});
    g["f1.p_rain_true"] = conditional(f1, jf1, "RAIN", "true", {});
    g["f1.p_rain_true_given_sprinkler"] = conditional(f1, jf1, "RAIN", "true", {{"SPRINKLER", "true"}});
    g["f1.p_slippery_true_given_wet"] = conditional(f1, jf1, "SLIPPERY", "true", {{"WET", "true"}});
    g["f1.p_slippery_true_given_wet_sprinkler"] =
        conditional(f1, jf1, "SLIPPERY", "true", {{"WET", "true"}, {"SPRINKLER", "true"}});
    g["f1.discount_sprinkler_rain_wet"] = {
        {"p_prior", conditional(f1, jf1, "SPRINKLER", "true", {})},
        {"p_given_effect", conditional(f1, jf1, "SPRINKLER", "true", {{"WET", "true"}})},
        {"p_given_effect_and_alt", conditional(f1, jf1, "SPRINKLER", "true", {{"WET", "true"}, {"RAIN", "true"}})}};
    g["f1.learn"] = discovery(f1, {"SEASON", "SPRINKLER", "RAIN", "WET", "SLIPPERY"}, 2);

    const Network f2 = pcg::load_network(dir / "f2.json");
    const JointTable jf2 = pcg::enumerate_joint(f2);
    g["f2.p_burglar"] = conditional(f2, jf2, "BURGLAR", "true", {});
    g["f2.p_burglar_given_alarm"] = conditional(f2, jf2, "BURGLAR", "true", {{"ALARM", "true"}});
    g["f2.p_burglar_given_alarm_earthquake"] =
        conditional(f2, jf2, "BURGLAR", "true", {{"ALARM", "true"}, {"EARTHQUAKE", "true"}});
    g["f2.p_burglar_given_alarm_footprints"] =
        conditional(f2, jf2, "BURGLAR", "true", {{"ALARM", "true"}, {"FOOTPRINTS", "true"}});

    const auto normative = pcg::normative_discounting(0.5, 0.5, {0.9, 0.9, 0.9, 0.1});
    g["normative.example"] = {{"p_c1_given_e", normative.p_c1_given_e},
                              {"p_c1_given_e_c2", normative.p_c1_given_e_c2}};
    return g;
}

// Appends the keys whose values differ beyond kTolerance.
void compare(const json& want, const json& got, const std::string& path, std::vector<std::string>& drift) {
    if (want.is_number() && got.is_number()) {
        if (!(std::abs(want.get<double>() - got.get<double>()) <= kTolerance)) drift.push_back(path);
        return;
    }
    if (want.type() != got.type() || (want.is_primitive() && want != got)) {
        drift.push_back(path);
        return;
    }
    if (want.is_object()) {
        for (const auto& [k, v] : want.items())
            got.contains(k) ? compare(v, got.at(k), path + "." + k, drift) : drift.push_back(path + "." + k);
        for (const auto& [k, v] : got.items())
            if (!want.contains(k)) drift.push_back(path + "." + k);
    } else if (want.is_array()) {
        if (want.size() != got.size()) {
            drift.push_back(path);
            return;
        }
        for (std::size_t i = 0; i < want.size(); ++i) compare(want[i], got[i], path + "[" + std::to_string(i) + "]", drift);
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Regenerate or check fixture golden values"};
    std::string fixtures, write_path, check_path;
    app.add_option("--fixtures", fixtures, "Fixture directory")->required();
    auto* w = app.add_option("--write", write_path, "Write goldens here");
    auto* c = app.add_option("--check", check_path, "Compare against this goldens file");
    w->excludes(c);
    CLI11_PARSE(app, argc, argv);

    try {
        const json fresh = compute(fixtures);
        if (!write_path.empty()) {
            pcg::write_text_file(write_path, fresh.dump(2) + "\n");
            std::cout << "wrote " << write_path << '\n';
            return 0;
        }
        if (check_path.empty()) {
            std::cout << fresh.dump(2) << '\n';
            return 0;
        }
        const json committed = json::parse(pcg::read_text_file(check_path));
        std::vector<std::string> drift;
        compare(committed, fresh, "$", drift);
        for (const auto& key : drift) std::cerr << "drift: " << key << '\n';
        std::cout << (drift.empty() ? "goldens match\n" : "goldens drifted\n");
        return drift.empty() ? 0 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
