#include "pcg/serialize.hpp"

namespace pcg {

using nlohmann::json;

namespace {

json names(std::span<const VariableId> vars) {
    json out = json::array();
    for (const auto& v : vars) out.push_back(v.name);
    return out;
}

std::string_view issue_name(IssueKind kind) {
    switch (kind) {
    case IssueKind::MissingCpt: return "MissingCpt";
    case IssueKind::DuplicateCpt: return "DuplicateCpt";
    case IssueKind::VariableMismatch: return "VariableMismatch";
    case IssueKind::Arity: return "Arity";
    case IssueKind::DuplicateState: return "DuplicateState";
    case IssueKind::ParentMismatch: return "ParentMismatch";
    case IssueKind::RowCount: return "RowCount";
    case IssueKind::EntryRange: return "EntryRange";
    case IssueKind::RowSum: return "RowSum";
    }
    return "Unknown";
}

} // namespace

json to_json(const CiDecision& d) {
    return {{"x", d.query.x.name},
            {"y", d.query.y.name},
            {"s", names(d.query.s)},
            {"independent", d.independent},
            {"statistic", d.statistic},
            {"dof", d.dof},
            {"p_value", d.p_value},
            {"method", std::string(to_string(d.method))}};
}

json to_json(std::span<const CiDecision> report) {
    json out = json::array();
    for (const auto& d : report) out.push_back(to_json(d));
    return out;
}

json to_json(const Posterior& posterior, const Network& network, const Evidence& evidence) {
    const Variable& var = network.variable(posterior.variable.index);
    json given = json::object();
    for (const auto& f : evidence.findings())
        given[f.variable.name] = network.variable(f.variable.index).states.at(f.state);
    return {{"variable", posterior.variable.name},
            {"states", var.states},
            {"probs", posterior.probs},
            {"evidence", given}};
}

json to_json(const DiscountingReport& r) {
    return {{"cause", r.cause.name},
            {"alt_cause", r.alt_cause.name},
            {"effect", r.effect.name},
            {"p_prior", r.p_prior},
            {"p_given_effect", r.p_given_effect},
            {"p_given_effect_and_alt", r.p_given_effect_and_alt}};
}

json to_json(const DiscoveryResult& result) {
    json links = json::array();
    for (const auto& l : result.links)
        links.push_back({{"from", l.from.name},
                         {"to", l.to.name},
                         {"witness_z", l.witness_z.name},
                         {"witness_s", names(l.witness_s)}});
    return {{"links", links},
            {"queries_issued", result.queries_issued},
            {"max_cond_size_used", result.max_cond_size_used}};
}

json to_json(const ValidationReport& report) {
    json out = json::array();
    for (const auto& issue : report)
        out.push_back({{"kind", std::string(issue_name(issue.kind))},
                       {"variable", issue.variable},
                       {"row", issue.row},
                       {"sum", issue.sum},
                       {"message", issue.message}});
    return out;
}

} // namespace pcg
