#include "pcg/independence.hpp"

#include "pcg/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_map>

#include "pcg/chi_square.hpp"

namespace pcg {

std::string_view to_string(CiMethod method) {
    switch (method) {
    case CiMethod::exact: return "exact";
    case CiMethod::g_test: return "g_test";
    case CiMethod::d_separation: return "d_separation";
    }
    return "unknown";
}

void check_query(const CiQuery& q) {
    if (q.x.name == q.y.name)
        throw Error(ErrorKind::OverlappingSets, "x and y are both '" + q.x.name + "'");
    for (const auto& s : q.s)
        if (s.name == q.x.name || s.name == q.y.name)
            throw Error(ErrorKind::OverlappingSets, "'" + s.name + "' is both an endpoint and conditioned on");
}

namespace {

// Conditional tables of (x, y) per configuration of s, in joint-probability
// units: cells[stratum * ax * ay + x * ay + y].
struct Strata {
    std::size_t ax = 0;
    std::size_t ay = 0;
    std::size_t count = 0;
    std::vector<double> cells;
};

Strata stratify(const JointTable& joint, const CiQuery& q) {
    std::vector<VariableId> keep{q.x, q.y};
    keep.insert(keep.end(), q.s.begin(), q.s.end());
    const JointTable m = marginalize(joint, keep);
    const auto& vars = m.variables();

    const std::size_t px = m.position(q.x);
    const std::size_t py = m.position(q.y);
    std::vector<std::size_t> ps;
    for (const auto& v : q.s) ps.push_back(m.position(v));

    Strata out;
    out.ax = vars[px].arity();
    out.ay = vars[py].arity();
    out.count = 1;
    for (std::size_t p : ps) out.count *= vars[p].arity();
    out.cells.assign(out.count * out.ax * out.ay, 0.0);

    std::vector<std::size_t> a(vars.size(), 0);
    for (double p : m.probs()) {
        std::size_t stratum = 0;
        for (std::size_t k : ps) stratum = stratum * vars[k].arity() + a[k];
        out.cells[(stratum * out.ax + a[px]) * out.ay + a[py]] += p;
        for (std::size_t i = vars.size(); i-- > 0;) {
            if (++a[i] < vars[i].arity()) break;
            a[i] = 0;
        }
    }
    return out;
}

} // namespace

CiDecision exact_ci(const JointTable& joint, const CiQuery& q, double tol) {
    if (!(tol > 0.0)) throw Error(ErrorKind::InvalidArgument, "tolerance must be positive");
    check_query(q);
    const Strata st = stratify(joint, q);

    double worst = 0.0;
    std::vector<double> px(st.ax), py(st.ay);
    for (std::size_t s = 0; s < st.count; ++s) {
        const double* cell = st.cells.data() + s * st.ax * st.ay;
        double ps = 0.0;
        std::fill(px.begin(), px.end(), 0.0);
        std::fill(py.begin(), py.end(), 0.0);
        for (std::size_t x = 0; x < st.ax; ++x)
            for (std::size_t y = 0; y < st.ay; ++y) {
                px[x] += cell[x * st.ay + y];
                py[y] += cell[x * st.ay + y];
                ps += cell[x * st.ay + y];
            }
        if (!(ps > tol)) continue;
        for (std::size_t x = 0; x < st.ax; ++x)
            for (std::size_t y = 0; y < st.ay; ++y) {
                const double dev = std::abs(cell[x * st.ay + y] / ps - (px[x] / ps) * (py[y] / ps));
                worst = std::max(worst, dev);
            }
    }

    CiDecision d;
    d.query = q;
    d.method = CiMethod::exact;
    d.independent = worst <= tol;
    d.statistic = d.independent ? 0.0 : worst;
    d.p_value = d.independent ? 1.0 : 0.0;
    return d;
}

CiDecision g_test_ci(const Dataset& data, const CiQuery& q, double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw Error(ErrorKind::InvalidArgument, "alpha must lie in (0, 1)");
    check_query(q);
    if (data.rows() == 0) throw Error(ErrorKind::EmptyDataset, "no observations");

    const std::size_t cx = data.column(q.x);
    const std::size_t cy = data.column(q.y);
    std::vector<std::size_t> cs;
    for (const auto& v : q.s) cs.push_back(data.column(v));
    const std::size_t ax = data.variables()[cx].arity();
    const std::size_t ay = data.variables()[cy].arity();

    std::unordered_map<std::size_t, std::vector<double>> strata;
    for (std::size_t r = 0; r < data.rows(); ++r) {
        std::size_t key = 0;
        for (std::size_t c : cs) {
            const std::size_t arity = data.variables()[c].arity();
            if (key > (std::numeric_limits<std::size_t>::max() - arity) / arity)
                throw Error(ErrorKind::TooLarge, "too many conditioning configurations");
            key = key * arity + data.at(r, c);
        }
        auto& counts = strata[key];
        if (counts.empty()) counts.assign(ax * ay, 0.0);
        counts[data.at(r, cx) * ay + data.at(r, cy)] += 1.0;
    }
    if (strata.empty()) throw Error(ErrorKind::DegenerateStrata, "every stratum is empty");

    // Sum strata in key order so G does not depend on hash iteration order.
    std::vector<std::size_t> keys;
    keys.reserve(strata.size());
    for (const auto& kv : strata) keys.push_back(kv.first);
    std::sort(keys.begin(), keys.end());

    double g = 0.0;
    int dof = 0;
    std::vector<double> rx(ax), ry(ay);
    for (std::size_t key : keys) {
        const auto& counts = strata.at(key);
        std::fill(rx.begin(), rx.end(), 0.0);
        std::fill(ry.begin(), ry.end(), 0.0);
        double n = 0.0;
        for (std::size_t x = 0; x < ax; ++x)
            for (std::size_t y = 0; y < ay; ++y) {
                rx[x] += counts[x * ay + y];
                ry[y] += counts[x * ay + y];
                n += counts[x * ay + y];
            }
        for (std::size_t x = 0; x < ax; ++x)
            for (std::size_t y = 0; y < ay; ++y) {
                const double o = counts[x * ay + y];
                if (o > 0.0) g += 2.0 * o * std::log(o * n / (rx[x] * ry[y]));
            }
        dof += static_cast<int>((ax - 1) * (ay - 1));
    }
    // rounding can leave a hair below zero when O == E everywhere
    g = std::max(g, 0.0);

    CiDecision d;
    d.query = q;
    d.method = CiMethod::g_test;
    d.statistic = g;
    d.dof = dof;
    d.p_value = stats::chi_square_upper_tail(g, dof);
    d.independent = d.p_value > alpha;
    return d;
}

ExactOracle::ExactOracle(JointTable joint, double tol) : joint_(std::move(joint)), tol_(tol) {}

CiDecision ExactOracle::decide(const CiQuery& q) const { return exact_ci(joint_, q, tol_); }

std::vector<VariableId> ExactOracle::variables() const {
    std::vector<VariableId> out;
    for (const auto& v : joint_.variables()) out.push_back(v.id);
    return out;
}

GTestOracle::GTestOracle(Dataset data, double alpha) : data_(std::move(data)), alpha_(alpha) {}

CiDecision GTestOracle::decide(const CiQuery& q) const { return g_test_ci(data_, q, alpha_); }

std::vector<VariableId> GTestOracle::variables() const {
    std::vector<VariableId> out;
    for (const auto& v : data_.variables()) out.push_back(v.id);
    return out;
}

DSeparationOracle::DSeparationOracle(Dag dag) : dag_(std::move(dag)) {}

CiDecision DSeparationOracle::decide(const CiQuery& q) const {
    check_query(q);
    VariableSet given;
    for (const auto& v : q.s) given.push_back(dag_.variable(v.name));
    CiDecision d;
    d.query = q;
    d.method = CiMethod::d_separation;
    d.independent = d_separated(dag_, dag_.variable(q.x.name), dag_.variable(q.y.name), given);
    d.p_value = d.independent ? 1.0 : 0.0;
    return d;
}

std::vector<VariableId> DSeparationOracle::variables() const {
    std::vector<VariableId> out;
    for (std::size_t i = 0; i < dag_.size(); ++i) out.push_back(dag_.variable(i));
    return out;
}

namespace {

void require_same_variables(const Network& network, const JointTable& joint) {
    const auto& jv = joint.variables();
    bool same = jv.size() == network.size();
    for (std::size_t i = 0; same && i < jv.size(); ++i)
        same = jv[i].id.name == network.variable(i).id.name && jv[i].arity() == network.variable(i).arity();
    if (!same) throw Error(ErrorKind::VariableMismatch, "joint table is not over the network's variables");
}

} // namespace

std::vector<CiDecision> check_markov(const Network& network, const JointTable& joint, double tol) {
    require_same_variables(network, joint);
    const Dag& dag = network.dag();
    std::vector<CiDecision> violations;
    for (std::size_t x = 0; x < dag.size(); ++x) {
        const VariableId xid = dag.variable(x);
        std::vector<char> excluded(dag.size(), 0);
        excluded[x] = 1;
        for (const auto& d : descendants(dag, xid)) excluded[d.index] = 1;
        VariableSet parents;
        for (std::size_t p : dag.parents(x)) {
            excluded[p] = 1;
            parents.push_back(dag.variable(p));
        }
        std::sort(parents.begin(), parents.end());
        for (std::size_t w = 0; w < dag.size(); ++w) {
            if (excluded[w]) continue;
            auto d = exact_ci(joint, CiQuery{xid, dag.variable(w), parents}, tol);
            if (!d.independent) violations.push_back(std::move(d));
        }
    }
    return violations;
}

std::vector<CiDecision> check_faithfulness(const Network& network, const JointTable& joint, double tol,
                                           std::size_t max_triples) {
    require_same_variables(network, joint);
    const Dag& dag = network.dag();
    const std::size_t n = dag.size();
    if (n >= 2) {
        const std::size_t others = n - 2;
        const std::size_t pairs = n * (n - 1) / 2;
        if (others >= 63 || pairs > (max_triples >> others))
            throw Error(ErrorKind::TooLarge, "faithfulness check would exceed " + std::to_string(max_triples) +
                                                 " triples");
    }

    std::vector<CiDecision> violations;
    for (std::size_t x = 0; x < n; ++x) {
        for (std::size_t y = x + 1; y < n; ++y) {
            std::vector<std::size_t> rest;
            for (std::size_t v = 0; v < n; ++v)
                if (v != x && v != y) rest.push_back(v);
            for (std::size_t mask = 0; mask < (std::size_t{1} << rest.size()); ++mask) {
                VariableSet s;
                for (std::size_t k = 0; k < rest.size(); ++k)
                    if (mask >> k & 1U) s.push_back(dag.variable(rest[k]));
                CiQuery q{dag.variable(x), dag.variable(y), s};
                auto d = exact_ci(joint, q, tol);
                if (d.independent && !d_separated(dag, q.x, q.y, q.s)) violations.push_back(std::move(d));
            }
        }
    }
    return violations;
}

} // namespace pcg
