#include "pcg/cli.hpp"

#include "pcg/discovery.hpp"
#include "pcg/error.hpp"
#include "pcg/independence.hpp"
#include "pcg/inference.hpp"
#include "pcg/network_io.hpp"
#include "pcg/serialize.hpp"

#include <CLI11.hpp>

#include <iomanip>
#include <ostream>
#include <vector>

namespace pcg::cli {

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    std::string net;
    std::string data;
    std::string joint_from_net;
    std::string target;
    std::vector<std::string> evidence;
    std::string engine = "ve";
    bool json = false;
    std::uint64_t seed = 0;
    std::size_t n = 0;
    std::string out_path;
    std::string x, y;
    std::vector<std::string> given;
    double alpha = kDefaultAlpha;
    std::vector<std::string> order;
    std::size_t max_cond = kDefaultMaxCondSize;
    bool markov = false;
    bool faithfulness = false;
    std::string cause, alt, effect;
};

std::string set_text(std::span<const VariableId> vars) {
    std::string out;
    for (std::size_t i = 0; i < vars.size(); ++i) {
        if (i) out += ", ";
        out += vars[i].name;
    }
    return out;
}

std::string format_prob(double p) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(12) << p;
    return os.str();
}

void print_json(std::ostream& out, const nlohmann::json& doc) { out << doc.dump(2) << '\n'; }

Evidence parse_evidence(const Network& net, const std::vector<std::string>& items) {
    Evidence evidence;
    for (const auto& item : items) {
        const auto eq = item.find('=');
        if (eq == std::string::npos || eq == 0 || eq + 1 == item.size())
            throw UsageError("evidence must look like VARIABLE=state, got '" + item + "'");
        const Variable& var = net.variable(item.substr(0, eq));
        evidence.observe(var.id, var.state_index(item.substr(eq + 1)));
    }
    return evidence;
}

VariableSet resolve_all(const Dag& dag, const std::vector<std::string>& names) {
    VariableSet out;
    for (const auto& name : names) out.push_back(dag.variable(name));
    std::sort(out.begin(), out.end());
    return out;
}

VariableId dataset_variable(const Dataset& data, const std::string& name) {
    return data.variables()[data.column(VariableId{0, name})].id;
}

void print_decision(std::ostream& out, const CiDecision& d) {
    out << "I(" << d.query.x.name << ", " << d.query.y.name << " | {" << set_text(d.query.s)
        << "}): " << (d.independent ? "independent" : "dependent") << '\n'
        << "  method     " << to_string(d.method) << '\n'
        << "  statistic  " << d.statistic << '\n'
        << "  dof        " << d.dof << '\n'
        << "  p_value    " << d.p_value << '\n';
}

int cmd_query(const Options& o, std::ostream& out) {
    const Network net = load_network(o.net);
    const VariableId target = net.variable(o.target).id;
    const Evidence evidence = parse_evidence(net, o.evidence);

    Posterior posterior;
    if (o.engine == "polytree") {
        if (evidence.contains(target))
            throw Error(ErrorKind::InvalidEvidence, "query variable " + target.name + " is also observed");
        posterior = propagate_polytree(net, evidence).at(target.index);
    } else {
        posterior = eliminate(net, target, evidence);
    }

    if (o.json) {
        print_json(out, to_json(posterior, net, evidence));
        return kExitOk;
    }
    out << "P(" << target.name;
    if (!evidence.empty()) {
        out << " | ";
        for (std::size_t i = 0; i < evidence.findings().size(); ++i) {
            const auto& f = evidence.findings()[i];
            if (i) out << ", ";
            out << f.variable.name << '=' << net.variable(f.variable.index).states[f.state];
        }
    }
    out << ")  [engine " << o.engine << "]\n";
    const auto& states = net.variable(target.index).states;
    std::size_t width = 5;
    for (const auto& s : states) width = std::max(width, s.size());
    out << "  " << std::left << std::setw(static_cast<int>(width)) << "state" << "  probability\n";
    for (std::size_t k = 0; k < states.size(); ++k)
        out << "  " << std::setw(static_cast<int>(width)) << states[k] << "  " << format_prob(posterior.probs[k])
            << '\n';
    return kExitOk;
}

int cmd_sample(const Options& o, std::ostream& out) {
    const Network net = load_network(o.net);
    const Dataset data = forward_sample(net, o.seed, o.n);
    save_dataset(data, o.out_path);
    out << "wrote " << data.rows() << " rows to " << o.out_path << '\n';
    return kExitOk;
}

int cmd_dsep(const Options& o, std::ostream& out) {
    const Network net = load_network(o.net);
    const Dag& dag = net.dag();
    out << (d_separated(dag, dag.variable(o.x), dag.variable(o.y), resolve_all(dag, o.given)) ? "true" : "false")
        << '\n';
    return kExitOk;
}

int cmd_ci(const Options& o, std::ostream& out) {
    CiDecision decision;
    if (!o.joint_from_net.empty()) {
        const Network net = load_network(o.joint_from_net);
        const Dag& dag = net.dag();
        decision = exact_ci(enumerate_joint(net), CiQuery{dag.variable(o.x), dag.variable(o.y), resolve_all(dag, o.given)});
    } else {
        const Dataset data = load_dataset(o.data);
        VariableSet s;
        for (const auto& name : o.given) s.push_back(dataset_variable(data, name));
        std::sort(s.begin(), s.end());
        decision = g_test_ci(data, CiQuery{dataset_variable(data, o.x), dataset_variable(data, o.y), s}, o.alpha);
    }
    if (o.json)
        print_json(out, to_json(decision));
    else
        print_decision(out, decision);
    return kExitOk;
}

int cmd_learn(const Options& o, std::ostream& out) {
    std::unique_ptr<CiOracle> oracle;
    if (!o.net.empty())
        oracle = std::make_unique<ExactOracle>(enumerate_joint(load_network(o.net)));
    else
        oracle = std::make_unique<GTestOracle>(load_dataset(o.data), o.alpha);

    TimeOrder order;
    for (const auto& name : o.order) order.push_back(VariableId{0, name});
    const DiscoveryResult result = algorithm_i(*oracle, order, o.max_cond);

    if (o.json) {
        print_json(out, to_json(result));
        return kExitOk;
    }
    out << "causal influences (directed paths, not necessarily edges): " << result.links.size() << '\n';
    for (const auto& l : result.links)
        out << "  influence " << l.from.name << " -> " << l.to.name << "  witness Z=" << l.witness_z.name << " S={"
            << set_text(l.witness_s) << "}\n";
    out << "queries issued: " << result.queries_issued << '\n'
        << "largest context tried: " << result.max_cond_size_used << '\n';
    return kExitOk;
}

int cmd_check(const Options& o, std::ostream& out) {
    const Network net = load_network(o.net);
    const JointTable joint = enumerate_joint(net);
    const auto report = o.markov ? check_markov(net, joint) : check_faithfulness(net, joint);
    const char* what = o.markov ? "markov condition" : "faithfulness condition";

    if (o.json) {
        print_json(out, to_json(std::span<const CiDecision>(report)));
    } else if (report.empty()) {
        out << what << ": no violations\n";
    } else {
        out << what << ": " << report.size() << " violation(s)\n";
        for (const auto& d : report)
            out << "  I(" << d.query.x.name << ", " << d.query.y.name << " | {" << set_text(d.query.s) << "}) "
                << (o.markov ? "fails" : "holds but is not entailed by the graph") << '\n';
    }
    return report.empty() ? kExitOk : kExitDomainError;
}

int cmd_discount(const Options& o, std::ostream& out) {
    const Network net = load_network(o.net);
    const auto report =
        discounting_report(net, net.variable(o.cause).id, net.variable(o.alt).id, net.variable(o.effect).id);
    if (o.json) {
        print_json(out, to_json(report));
        return kExitOk;
    }
    const std::string c = report.cause.name;
    const std::string labels[] = {"P(" + c + ")", "P(" + c + " | " + report.effect.name + ")",
                                  "P(" + c + " | " + report.effect.name + ", " + report.alt_cause.name + ")"};
    const double values[] = {report.p_prior, report.p_given_effect, report.p_given_effect_and_alt};
    const int width = static_cast<int>(labels[2].size());
    out << "discounting of " << c << " by " << report.alt_cause.name << " through " << report.effect.name << '\n';
    for (int k = 0; k < 3; ++k) out << "  " << std::left << std::setw(width) << labels[k] << "  " << format_prob(values[k]) << '\n';
    return kExitOk;
}

} // namespace

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Discrete Bayesian-network and causal-influence toolkit", "pcg"};
    app.require_subcommand(1, 1);
    Options o;

    auto* query = app.add_subcommand("query", "Posterior of one variable given evidence");
    query->add_option("--net", o.net, "Network JSON file")->required();
    query->add_option("--target", o.target, "Query variable")->required();
    query->add_option("--evidence", o.evidence, "Findings as VARIABLE=state");
    query->add_option("--engine", o.engine, "ve or polytree")->check(CLI::IsMember({"ve", "polytree"}));
    query->add_flag("--json", o.json, "Emit JSON");

    auto* sample = app.add_subcommand("sample", "Forward-sample a dataset");
    sample->add_option("--net", o.net, "Network JSON file")->required();
    sample->add_option("--seed", o.seed, "RNG seed")->required();
    sample->add_option("--n", o.n, "Number of rows")->required();
    sample->add_option("--out", o.out_path, "Output CSV")->required();

    auto* dsep = app.add_subcommand("dsep", "d-separation test on the network graph");
    dsep->add_option("--net", o.net, "Network JSON file")->required();
    dsep->add_option("--x", o.x)->required();
    dsep->add_option("--y", o.y)->required();
    dsep->add_option("--given", o.given, "Conditioning variables");

    auto* ci = app.add_subcommand("ci", "Conditional independence decision");
    auto* ci_joint = ci->add_option("--joint-from-net", o.joint_from_net, "Exact test on the network's joint");
    auto* ci_data = ci->add_option("--data", o.data, "G-test on a dataset CSV");
    ci_joint->excludes(ci_data);
    ci->add_option("--x", o.x)->required();
    ci->add_option("--y", o.y)->required();
    ci->add_option("--given", o.given, "Conditioning variables");
    ci->add_option("--alpha", o.alpha, "G-test significance level");
    ci->add_flag("--json", o.json, "Emit JSON");

    auto* learn = app.add_subcommand("learn", "Learn causal influences from a time order");
    auto* learn_net = learn->add_option("--net", o.net, "Exact oracle on the network's joint");
    auto* learn_data = learn->add_option("--data", o.data, "G-test oracle on a dataset CSV");
    learn_net->excludes(learn_data);
    learn->add_option("--order", o.order, "Variables by time, comma separated")->required()->delimiter(',');
    learn->add_option("--max-cond", o.max_cond, "Largest context size");
    learn->add_option("--alpha", o.alpha, "G-test significance level");
    learn->add_flag("--json", o.json, "Emit JSON");

    auto* check = app.add_subcommand("check", "Markov or faithfulness check of a network");
    check->add_option("--net", o.net, "Network JSON file")->required();
    auto* markov = check->add_flag("--markov", o.markov);
    auto* faithful = check->add_flag("--faithfulness", o.faithfulness);
    markov->excludes(faithful);
    check->add_flag("--json", o.json, "Emit JSON");

    auto* discount = app.add_subcommand("discount", "Discounting report for two causes of an effect");
    discount->add_option("--net", o.net, "Network JSON file")->required();
    discount->add_option("--cause", o.cause)->required();
    discount->add_option("--alt", o.alt)->required();
    discount->add_option("--effect", o.effect)->required();
    discount->add_flag("--json", o.json, "Emit JSON");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
        if (ci->parsed() && o.joint_from_net.empty() && o.data.empty())
            throw UsageError("ci needs --joint-from-net or --data");
        if (learn->parsed() && o.net.empty() && o.data.empty())
            throw UsageError("learn needs --net or --data");
        if (check->parsed() && !o.markov && !o.faithfulness)
            throw UsageError("check needs --markov or --faithfulness");
        if (!(o.alpha > 0.0 && o.alpha < 1.0)) throw UsageError("--alpha must lie in (0, 1)");
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return kExitUsage;
    }

    try {
        if (query->parsed()) return cmd_query(o, out);
        if (sample->parsed()) return cmd_sample(o, out);
        if (dsep->parsed()) return cmd_dsep(o, out);
        if (ci->parsed()) return cmd_ci(o, out);
        if (learn->parsed()) return cmd_learn(o, out);
        if (check->parsed()) return cmd_check(o, out);
        if (discount->parsed()) return cmd_discount(o, out);
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitDomainError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitDomainError;
    }
    return kExitUsage;
}

} // namespace pcg::cli
