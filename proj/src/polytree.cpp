#include "inference_detail.hpp"
#include "pcg/error.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace pcg {

namespace {

// Pearl's pi/lambda scheme. For an edge u -> x, pi_[e] is the causal support
// pi_x(u) sent down from u and lambda_[e] the diagnostic support lambda_x(u)
// sent up from x; both range over the states of u. Messages stay
// unnormalized so each belief sums to the probability of its component's
// evidence.
class MessagePassing {
public:
    MessagePassing(const Network& network, const std::vector<std::size_t>& observed)
        : net_(network), dag_(network.dag()), observed_(observed) {
        const auto& edges = dag_.edges();
        for (std::size_t e = 0; e < edges.size(); ++e) {
            edge_[{edges[e].first, edges[e].second}] = e;
            const std::size_t ap = net_.variable(edges[e].first).arity();
            pi_.emplace_back(ap, 1.0);
            lambda_.emplace_back(ap, 1.0);
        }
    }

    void send(std::size_t from, std::size_t to) {
        if (dag_.has_edge(from, to))
            pi_[edge_.at({from, to})] = pi_message(from, to);
        else
            lambda_[edge_.at({to, from})] = lambda_message(from, to);
    }

    // Unnormalized pi(x) * lambda(x).
    std::vector<double> joint_belief(std::size_t x) const {
        auto b = pi(x);
        const auto l = lambda(x);
        for (std::size_t k = 0; k < b.size(); ++k) b[k] *= l[k];
        return b;
    }

private:
    double evidence_weight(std::size_t x, std::size_t state) const {
        return observed_[x] == std::string::npos || observed_[x] == state ? 1.0 : 0.0;
    }

    std::vector<double> lambda(std::size_t x, std::size_t skip_child = std::string::npos) const {
        const std::size_t ax = net_.variable(x).arity();
        std::vector<double> out(ax);
        for (std::size_t k = 0; k < ax; ++k) out[k] = evidence_weight(x, k);
        for (std::size_t c : dag_.children(x)) {
            if (c == skip_child) continue;
            const auto& msg = lambda_[edge_.at({x, c})];
            for (std::size_t k = 0; k < ax; ++k) out[k] *= msg[k];
        }
        return out;
    }

    // Visits every parent configuration of x's CPT with the decoded parent
    // states and the row index.
    template <class F>
    void for_each_row(std::size_t x, F&& f) const {
        const Cpt& cpt = net_.cpt(x);
        std::vector<std::size_t> states(cpt.parents.size(), 0);
        for (std::size_t r = 0; r < cpt.row_count(); ++r) {
            f(r, states);
            for (std::size_t i = states.size(); i-- > 0;) {
                if (++states[i] < net_.variable(cpt.parents[i]).arity()) break;
                states[i] = 0;
            }
        }
    }

    // Product of incoming pi messages for one parent configuration, leaving
    // out parent position `skip`.
    double parent_support(std::size_t x, const std::vector<std::size_t>& states, std::size_t skip) const {
        const Cpt& cpt = net_.cpt(x);
        double w = 1.0;
        for (std::size_t i = 0; i < cpt.parents.size(); ++i)
            if (i != skip) w *= pi_[edge_.at({cpt.parents[i], x})][states[i]];
        return w;
    }

    std::vector<double> pi(std::size_t x) const {
        const Cpt& cpt = net_.cpt(x);
        std::vector<double> out(cpt.arity, 0.0);
        for_each_row(x, [&](std::size_t r, const std::vector<std::size_t>& states) {
            const double w = parent_support(x, states, std::string::npos);
            const auto row = cpt.row(r);
            for (std::size_t k = 0; k < cpt.arity; ++k) out[k] += row[k] * w;
        });
        return out;
    }

    // pi_child(x) = pi(x) * lambda(x) without the child's own lambda message
    std::vector<double> pi_message(std::size_t x, std::size_t child) const {
        auto out = pi(x);
        const auto l = lambda(x, child);
        for (std::size_t k = 0; k < out.size(); ++k) out[k] *= l[k];
        return out;
    }

    // lambda_x(u) = sum_x lambda(x) sum_{other parents} P(x | u) prod pi_x(u_k)
    std::vector<double> lambda_message(std::size_t x, std::size_t parent) const {
        const Cpt& cpt = net_.cpt(x);
        const auto slot = static_cast<std::size_t>(
            std::find(cpt.parents.begin(), cpt.parents.end(), parent) - cpt.parents.begin());
        const auto l = lambda(x);
        std::vector<double> out(net_.variable(parent).arity(), 0.0);
        for_each_row(x, [&](std::size_t r, const std::vector<std::size_t>& states) {
            const double w = parent_support(x, states, slot);
            const auto row = cpt.row(r);
            double s = 0.0;
            for (std::size_t k = 0; k < cpt.arity; ++k) s += row[k] * l[k];
            out[states[slot]] += s * w;
        });
        return out;
    }

    const Network& net_;
    const Dag& dag_;
    const std::vector<std::size_t>& observed_;
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> edge_;
    std::vector<std::vector<double>> pi_;
    std::vector<std::vector<double>> lambda_;
};

} // namespace

std::vector<Posterior> propagate_polytree(const Network& network, const Evidence& evidence) {
    const Dag& dag = network.dag();
    if (!is_polytree(dag)) throw Error(ErrorKind::NotAPolytree, "the graph skeleton has an undirected cycle");
    const auto observed = detail::observed_states(network, evidence);

    MessagePassing messages(network, observed);
    const std::size_t n = dag.size();
    std::vector<char> seen(n, 0);
    std::vector<std::size_t> component_root(n);
    std::vector<std::size_t> roots;

    for (std::size_t root = 0; root < n; ++root) {
        if (seen[root]) continue;
        roots.push_back(root);
        // preorder over the undirected skeleton, recording each node's tree parent
        std::vector<std::size_t> preorder;
        std::vector<std::pair<std::size_t, std::size_t>> stack{{root, root}};
        std::vector<std::size_t> tree_parent(n, root);
        while (!stack.empty()) {
            auto [v, from] = stack.back();
            stack.pop_back();
            if (seen[v]) continue;
            seen[v] = 1;
            tree_parent[v] = from;
            component_root[v] = root;
            preorder.push_back(v);
            const auto& ch = dag.children(v);
            const auto& pa = dag.parents(v);
            for (auto it = ch.rbegin(); it != ch.rend(); ++it)
                if (!seen[*it]) stack.emplace_back(*it, v);
            for (auto it = pa.rbegin(); it != pa.rend(); ++it)
                if (!seen[*it]) stack.emplace_back(*it, v);
        }
        // inward: leaves towards the root
        for (auto it = preorder.rbegin(); it != preorder.rend(); ++it)
            if (*it != root) messages.send(*it, tree_parent[*it]);
        // outward: root towards the leaves
        for (std::size_t v : preorder)
            if (v != root) messages.send(tree_parent[v], v);
    }

    double evidence_probability = 1.0;
    for (std::size_t root : roots) {
        const auto b = messages.joint_belief(root);
        evidence_probability *= std::accumulate(b.begin(), b.end(), 0.0);
    }
    if (!(evidence_probability >= kImpossibleEvidenceThreshold))
        throw Error(ErrorKind::ImpossibleEvidence,
                    "evidence has probability " + std::to_string(evidence_probability));

    std::vector<Posterior> beliefs;
    beliefs.reserve(n);
    for (std::size_t v = 0; v < n; ++v) {
        auto b = messages.joint_belief(v);
        const double z = std::accumulate(b.begin(), b.end(), 0.0);
        for (double& p : b) p /= z;
        beliefs.push_back({dag.variable(v), std::move(b)});
    }
    return beliefs;
}

} // namespace pcg
