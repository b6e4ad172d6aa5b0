#include "pcg/discovery.hpp"

#include "pcg/error.hpp"

#include <algorithm>
#include <optional>
#include <set>

namespace pcg {

namespace {

// Calls f(subset) for every k-subset of `items` in lexicographic order of
// positions; stops early when f returns true.
template <class F>
bool for_each_combination(const std::vector<VariableId>& items, std::size_t k, F&& f) {
    if (k > items.size()) return false;
    std::vector<std::size_t> pick(k);
    for (std::size_t i = 0; i < k; ++i) pick[i] = i;
    VariableSet subset(k);
    while (true) {
        for (std::size_t i = 0; i < k; ++i) subset[i] = items[pick[i]];
        if (f(subset)) return true;
        std::size_t i = k;
        while (i > 0 && pick[i - 1] == items.size() - k + i - 1) --i;
        if (i == 0) return false;
        ++pick[i - 1];
        for (std::size_t j = i; j < k; ++j) pick[j] = pick[j - 1] + 1;
    }
}

TimeOrder resolve_order(const CiOracle& oracle, const TimeOrder& order) {
    const auto known = oracle.variables();
    if (order.size() != known.size())
        throw Error(ErrorKind::InvalidOrder, "time order lists " + std::to_string(order.size()) +
                                                 " variables, the oracle has " + std::to_string(known.size()));
    std::set<std::string> seen;
    TimeOrder resolved;
    for (const auto& v : order) {
        if (!seen.insert(v.name).second) throw Error(ErrorKind::InvalidOrder, v.name + " appears twice");
        auto it = std::find_if(known.begin(), known.end(), [&](const VariableId& k) { return k.name == v.name; });
        if (it == known.end()) throw Error(ErrorKind::InvalidOrder, v.name + " is unknown to the oracle");
        resolved.push_back(*it);
    }
    return resolved;
}

} // namespace

DiscoveryResult algorithm_i(const CiOracle& oracle, const TimeOrder& order, std::size_t max_cond_size) {
    const TimeOrder time = resolve_order(oracle, order);
    DiscoveryResult result;

    for (std::size_t xi = 0; xi < time.size(); ++xi) {
        const VariableId& x = time[xi];
        for (std::size_t yi = xi + 1; yi < time.size(); ++yi) {
            const VariableId& y = time[yi];
            std::optional<CausalLink> found;

            for (std::size_t zi = 0; zi < xi && !found; ++zi) {
                const VariableId& z = time[zi];
                VariableSet context_pool;
                for (std::size_t k = 0; k < xi; ++k)
                    if (k != zi) context_pool.push_back(time[k]);
                std::sort(context_pool.begin(), context_pool.end());

                const std::size_t largest = std::min(max_cond_size, context_pool.size());
                for (std::size_t size = 0; size <= largest && !found; ++size) {
                    result.max_cond_size_used = std::max(result.max_cond_size_used, size);
                    for_each_combination(context_pool, size, [&](const VariableSet& s) {
                        ++result.queries_issued;
                        if (oracle.decide(CiQuery{z, y, s}).independent) return false;
                        VariableSet with_x = s;
                        with_x.insert(std::upper_bound(with_x.begin(), with_x.end(), x), x);
                        ++result.queries_issued;
                        if (!oracle.decide(CiQuery{z, y, with_x}).independent) return false;
                        found = CausalLink{x, y, z, s};
                        return true;
                    });
                }
            }
            if (found) result.links.push_back(std::move(*found));
        }
    }
    return result;
}

std::vector<CausalLink> soundness_check(const DiscoveryResult& result, const Dag& truth) {
    std::vector<CausalLink> violations;
    for (const auto& link : result.links) {
        const VariableId from = truth.variable(link.from.name);
        const VariableId to = truth.variable(link.to.name);
        const auto reach = descendants(truth, from);
        if (!std::binary_search(reach.begin(), reach.end(), to)) violations.push_back(link);
    }
    return violations;
}

} // namespace pcg
