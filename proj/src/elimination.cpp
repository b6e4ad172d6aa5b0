#include "pcg/inference.hpp"

#include "inference_detail.hpp"
#include "pcg/error.hpp"

#include <algorithm>
#include <iterator>
#include <limits>
#include <numeric>

namespace pcg {

Evidence::Evidence(std::initializer_list<Finding> findings) {
    for (const auto& f : findings) observe(f.variable, f.state);
}

Evidence& Evidence::observe(const VariableId& v, std::size_t state) {
    if (contains(v)) throw Error(ErrorKind::InvalidEvidence, v.name + " is observed twice");
    findings_.push_back({v, state});
    return *this;
}

bool Evidence::contains(const VariableId& v) const {
    return std::any_of(findings_.begin(), findings_.end(),
                       [&](const Finding& f) { return f.variable.name == v.name; });
}

namespace detail {

std::vector<std::size_t> observed_states(const Network& network, const Evidence& evidence) {
    std::vector<std::size_t> observed(network.size(), std::string::npos);
    for (const auto& f : evidence.findings()) {
        network.dag().require(f.variable);
        if (f.state >= network.variable(f.variable.index).arity())
            throw Error(ErrorKind::InvalidEvidence,
                        "state " + std::to_string(f.state) + " is out of range for " + f.variable.name);
        observed[f.variable.index] = f.state;
    }
    return observed;
}

} // namespace detail

namespace {

// Table over `vars` (ascending index), row-major with the first variable slowest.
struct Factor {
    std::vector<std::size_t> vars;
    std::vector<std::size_t> card;
    std::vector<double> values;

    std::vector<std::size_t> strides() const {
        std::vector<std::size_t> out(vars.size());
        std::size_t s = 1;
        for (std::size_t i = vars.size(); i-- > 0;) {
            out[i] = s;
            s *= card[i];
        }
        return out;
    }
};

std::size_t cells_of(const std::vector<std::size_t>& card) {
    return std::accumulate(card.begin(), card.end(), std::size_t{1}, std::multiplies<>());
}

// The CPT of `child` with observed variables fixed and removed from scope.
Factor reduced_cpt(const Network& network, std::size_t child, const std::vector<std::size_t>& observed) {
    const Cpt& cpt = network.cpt(child);
    std::vector<std::size_t> scope = cpt.parents;
    scope.push_back(child);
    std::sort(scope.begin(), scope.end());

    Factor f;
    for (std::size_t v : scope) {
        if (observed[v] != std::string::npos) continue;
        f.vars.push_back(v);
        f.card.push_back(network.variable(v).arity());
    }
    f.values.resize(cells_of(f.card));

    std::vector<std::size_t> assignment(network.size(), 0);
    for (std::size_t v : scope)
        if (observed[v] != std::string::npos) assignment[v] = observed[v];
    std::vector<std::size_t> local(f.vars.size(), 0);
    for (double& value : f.values) {
        for (std::size_t i = 0; i < f.vars.size(); ++i) assignment[f.vars[i]] = local[i];
        value = network.conditional(child, assignment);
        for (std::size_t i = f.vars.size(); i-- > 0;) {
            if (++local[i] < f.card[i]) break;
            local[i] = 0;
        }
    }
    return f;
}

Factor multiply(const Factor& a, const Factor& b) {
    Factor out;
    std::set_union(a.vars.begin(), a.vars.end(), b.vars.begin(), b.vars.end(), std::back_inserter(out.vars));
    for (std::size_t v : out.vars) {
        auto ia = std::find(a.vars.begin(), a.vars.end(), v);
        out.card.push_back(ia != a.vars.end() ? a.card[static_cast<std::size_t>(ia - a.vars.begin())]
                                              : b.card[static_cast<std::size_t>(
                                                    std::find(b.vars.begin(), b.vars.end(), v) - b.vars.begin())]);
    }
    out.values.resize(cells_of(out.card));

    // stride of each output variable inside a and b (0 when absent)
    auto strides_in = [&](const Factor& f) {
        const auto s = f.strides();
        std::vector<std::size_t> out_s(out.vars.size(), 0);
        for (std::size_t i = 0; i < out.vars.size(); ++i) {
            auto it = std::find(f.vars.begin(), f.vars.end(), out.vars[i]);
            if (it != f.vars.end()) out_s[i] = s[static_cast<std::size_t>(it - f.vars.begin())];
        }
        return out_s;
    };
    const auto sa = strides_in(a);
    const auto sb = strides_in(b);

    std::vector<std::size_t> local(out.vars.size(), 0);
    std::size_t ia = 0, ib = 0;
    for (double& value : out.values) {
        value = a.values[ia] * b.values[ib];
        for (std::size_t i = out.vars.size(); i-- > 0;) {
            if (++local[i] < out.card[i]) {
                ia += sa[i];
                ib += sb[i];
                break;
            }
            ia -= sa[i] * (out.card[i] - 1);
            ib -= sb[i] * (out.card[i] - 1);
            local[i] = 0;
        }
    }
    return out;
}

Factor sum_out(const Factor& f, std::size_t var) {
    const auto pos = static_cast<std::size_t>(std::find(f.vars.begin(), f.vars.end(), var) - f.vars.begin());
    Factor out;
    for (std::size_t i = 0; i < f.vars.size(); ++i) {
        if (i == pos) continue;
        out.vars.push_back(f.vars[i]);
        out.card.push_back(f.card[i]);
    }
    out.values.assign(cells_of(out.card), 0.0);

    const auto in_strides = f.strides();
    std::size_t inner = in_strides[pos];
    std::size_t outer_block = inner * f.card[pos];
    for (std::size_t k = 0; k < f.values.size(); ++k) {
        const std::size_t outer = k / outer_block;
        const std::size_t rem = k % inner;
        out.values[outer * inner + rem] += f.values[k];
    }
    return out;
}

// Next variable to eliminate: fewest neighbours in the interaction graph of
// the current factors, ties to the lowest index.
std::size_t pick_min_degree(const std::vector<Factor>& factors, const std::vector<std::size_t>& candidates,
                            std::size_t n) {
    std::size_t best = candidates.front();
    std::size_t best_degree = std::numeric_limits<std::size_t>::max();
    std::vector<char> neighbour(n);
    for (std::size_t v : candidates) {
        std::fill(neighbour.begin(), neighbour.end(), 0);
        for (const auto& f : factors) {
            if (!std::binary_search(f.vars.begin(), f.vars.end(), v)) continue;
            for (std::size_t u : f.vars) neighbour[u] = 1;
        }
        neighbour[v] = 0;
        const auto degree = static_cast<std::size_t>(std::count(neighbour.begin(), neighbour.end(), 1));
        if (degree < best_degree || (degree == best_degree && v < best)) {
            best = v;
            best_degree = degree;
        }
    }
    return best;
}

} // namespace

Posterior eliminate(const Network& network, const VariableId& query, const Evidence& evidence) {
    network.dag().require(query);
    const auto observed = detail::observed_states(network, evidence);
    if (observed[query.index] != std::string::npos)
        throw Error(ErrorKind::InvalidEvidence, "query variable " + query.name + " is also observed");

    std::vector<Factor> factors;
    for (std::size_t v = 0; v < network.size(); ++v) factors.push_back(reduced_cpt(network, v, observed));

    std::vector<std::size_t> pending;
    for (std::size_t v = 0; v < network.size(); ++v)
        if (v != query.index && observed[v] == std::string::npos) pending.push_back(v);

    while (!pending.empty()) {
        const std::size_t v = pick_min_degree(factors, pending, network.size());
        pending.erase(std::find(pending.begin(), pending.end(), v));

        std::vector<Factor> rest;
        Factor product{{}, {}, {1.0}};
        for (auto& f : factors) {
            if (std::binary_search(f.vars.begin(), f.vars.end(), v))
                product = multiply(product, f);
            else
                rest.push_back(std::move(f));
        }
        rest.push_back(sum_out(product, v));
        factors = std::move(rest);
    }

    Factor result{{}, {}, {1.0}};
    for (const auto& f : factors) result = multiply(result, f);

    const double z = std::accumulate(result.values.begin(), result.values.end(), 0.0);
    if (!(z >= kImpossibleEvidenceThreshold))
        throw Error(ErrorKind::ImpossibleEvidence, "evidence has probability " + std::to_string(z));
    for (double& p : result.values) p /= z;
    return {query, std::move(result.values)};
}

} // namespace pcg
