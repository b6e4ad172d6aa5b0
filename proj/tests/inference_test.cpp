#include "pcg/error.hpp"
#include "pcg/inference.hpp"

#include "support/fixtures.hpp"
#include "support/oracles.hpp"
#include "support/random_networks.hpp"

#include <gtest/gtest.h>

#include <functional>
#include <numeric>

using namespace pcg;
using pcg::test::id;

namespace {

constexpr double kTol = 1e-9;

// Frozen from tests/oracles/derive_values.py (plain itertools enumeration).
constexpr double kF2Burglar = 0.009999999999999998;
constexpr double kF2BurglarGivenAlarm = 0.5790621459290213;
constexpr double kF2BurglarGivenAlarmQuake = 0.031942633637548894;
constexpr double kF2BurglarGivenAlarmFootprints = 0.9611826206533939;
constexpr double kF2Alarm = 0.0164162;
constexpr double kF1Wet = 0.639;
constexpr double kF1Rain = 0.4;
constexpr double kF1RainGivenSprinkler = 0.25;
constexpr double kF1Sprinkler = 0.4;
constexpr double kF1SprinklerGivenWet = 0.5774647887323944;
constexpr double kF1SprinklerGivenWetRain = 0.29203539823008845;
constexpr double kF1SlipperyGivenWet = 0.8;
constexpr double kF1Slippery = 0.52925;
constexpr double kC1YGivenZ = 0.82;
constexpr double kNormativeGivenE = 0.6428571428571429;
constexpr double kNormativeGivenEC2 = 0.5;

double p_true(const Network& net, const std::string& target, std::initializer_list<std::string> observed_true) {
    Evidence e;
    for (const auto& name : observed_true) e.observe(id(net, name), 1);
    return eliminate(net, id(net, target), e).probs[1];
}

double belief_true(const Network& net, const std::string& target, std::initializer_list<std::string> observed_true) {
    Evidence e;
    for (const auto& name : observed_true) e.observe(id(net, name), 1);
    return propagate_polytree(net, e)[id(net, target).index].probs[1];
}

// C1 -> E <- C2, state 1 = present.
Network two_cause(double p1, double p2, const EffectTable& t) {
    const Dag dag = build_dag({"C1", "C2", "E"}, {{"C1", "E"}, {"C2", "E"}});
    std::vector<Variable> vars;
    for (std::size_t i = 0; i < 3; ++i) vars.push_back({dag.variable(i), {"absent", "present"}});
    std::vector<Cpt> cpts = {
        {0, {}, 2, {1 - p1, p1}},
        {1, {}, 2, {1 - p2, p2}},
        {2, {0, 1}, 2, {1 - t.neither, t.neither, 1 - t.only_c2, t.only_c2, 1 - t.only_c1, t.only_c1, 1 - t.both, t.both}}};
    return Network(dag, vars, cpts);
}

Network holmes_alarm_ignores_quake() {
    const Network f2 = test::holmes_f2();
    auto cpts = f2.cpts();
    // parents (BURGLAR, EARTHQUAKE): the EARTHQUAKE=true rows copy EARTHQUAKE=false
    auto& alarm = cpts[f2.variable("ALARM").id.index].table;
    for (std::size_t b = 0; b < 2; ++b)
        for (std::size_t k = 0; k < 2; ++k) alarm[(2 * b + 1) * 2 + k] = alarm[(2 * b) * 2 + k];
    return Network(f2.dag(), f2.variables(), cpts);
}

// Each variable observed with probability 1/3, in a random state.
std::vector<std::pair<std::size_t, std::size_t>> random_evidence(const Network& net, std::mt19937_64& rng) {
    std::vector<std::pair<std::size_t, std::size_t>> ev;
    std::uniform_int_distribution<int> pick(0, 5);
    for (std::size_t v = 0; v < net.size(); ++v) {
        const int r = pick(rng);
        if (r < 2) ev.emplace_back(v, static_cast<std::size_t>(r));
    }
    return ev;
}

Evidence to_evidence(const Network& net, const std::vector<std::pair<std::size_t, std::size_t>>& ev) {
    Evidence e;
    for (const auto& [v, s] : ev) e.observe(net.variable(v).id, s);
    return e;
}

ErrorKind error_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    ADD_FAILURE() << "no error raised";
    return ErrorKind::InvalidArgument;
}

} // namespace

TEST(Eliminate, SingleNodePrior) {
    const Dag dag = build_dag({"A"}, {});
    const Network net(dag, {{dag.variable(0), {"lo", "mid", "hi"}}}, {{0, {}, 3, {0.2, 0.3, 0.5}}});
    const Posterior p = eliminate(net, dag.variable(0));
    ASSERT_EQ(p.probs.size(), 3u);
    EXPECT_NEAR(p.probs[0], 0.2, 1e-15);
    EXPECT_NEAR(p.probs[2], 0.5, 1e-15);
}

TEST(Eliminate, SprinklerValues) {
    const Network f1 = test::sprinkler_f1();
    EXPECT_NEAR(p_true(f1, "WET", {}), kF1Wet, kTol);
    EXPECT_NEAR(p_true(f1, "SLIPPERY", {}), kF1Slippery, kTol);
    EXPECT_NEAR(p_true(f1, "SPRINKLER", {}), kF1Sprinkler, kTol);
    EXPECT_NEAR(p_true(f1, "SPRINKLER", {"WET"}), kF1SprinklerGivenWet, kTol);
    EXPECT_NEAR(p_true(f1, "SPRINKLER", {"WET", "RAIN"}), kF1SprinklerGivenWetRain, kTol);
}

TEST(Eliminate, WetScreensSlipperyFromUpstreamEvidence) {
    const Network f1 = test::sprinkler_f1();
    EXPECT_NEAR(p_true(f1, "SLIPPERY", {"WET"}), kF1SlipperyGivenWet, kTol);
    EXPECT_NEAR(p_true(f1, "SLIPPERY", {"WET", "SPRINKLER"}), kF1SlipperyGivenWet, kTol);
    EXPECT_NEAR(p_true(f1, "SLIPPERY", {"WET", "RAIN"}), kF1SlipperyGivenWet, kTol);
    Evidence winter{{id(f1, "WET"), 1}, {id(f1, "SEASON"), 1}};
    EXPECT_NEAR(eliminate(f1, id(f1, "SLIPPERY"), winter).probs[1], kF1SlipperyGivenWet, kTol);
}

TEST(Eliminate, SprinklerLowersRain) {
    const Network f1 = test::sprinkler_f1();
    EXPECT_NEAR(p_true(f1, "RAIN", {}), kF1Rain, kTol);
    EXPECT_NEAR(p_true(f1, "RAIN", {"SPRINKLER"}), kF1RainGivenSprinkler, kTol);
    EXPECT_LT(p_true(f1, "RAIN", {"SPRINKLER"}), p_true(f1, "RAIN", {}));
}

TEST(Eliminate, ChainValue) {
    const Network c1 = test::chain_c1();
    EXPECT_NEAR(p_true(c1, "Y", {"Z"}), kC1YGivenZ, kTol);
    EXPECT_NEAR(p_true(c1, "Y", {}), 0.5, kTol);
}

TEST(Eliminate, Errors) {
    const Network f2 = test::holmes_f2();
    const auto b = id(f2, "BURGLAR");
    EXPECT_EQ(error_of([&] { eliminate(f2, b, Evidence{{b, 1}}); }), ErrorKind::InvalidEvidence);
    EXPECT_EQ(error_of([&] { eliminate(f2, b, Evidence{{id(f2, "ALARM"), 2}}); }), ErrorKind::InvalidEvidence);
    EXPECT_EQ(error_of([&] { eliminate(f2, VariableId{0, "NOPE"}); }), ErrorKind::UnknownVariable);
    EXPECT_EQ(error_of([&] { Evidence e{{b, 1}}; e.observe(b, 0); }), ErrorKind::InvalidEvidence);
}

TEST(Polytree, HolmesOrderings) {
    const Network f2 = test::holmes_f2();
    const double prior = belief_true(f2, "BURGLAR", {});
    const double alarm = belief_true(f2, "BURGLAR", {"ALARM"});
    const double quake = belief_true(f2, "BURGLAR", {"ALARM", "EARTHQUAKE"});
    const double prints = belief_true(f2, "BURGLAR", {"ALARM", "FOOTPRINTS"});
    EXPECT_NEAR(prior, kF2Burglar, kTol);
    EXPECT_NEAR(alarm, kF2BurglarGivenAlarm, kTol);
    EXPECT_NEAR(quake, kF2BurglarGivenAlarmQuake, kTol);
    EXPECT_NEAR(prints, kF2BurglarGivenAlarmFootprints, kTol);
    EXPECT_GT(alarm - prior, 1e-6);
    EXPECT_GT(alarm - quake, 1e-6);
    EXPECT_GT(prints - alarm, 1e-6);
    EXPECT_NEAR(belief_true(f2, "ALARM", {}), kF2Alarm, kTol);
}

TEST(Polytree, ObservedNodesGetTheirIndicator) {
    const Network f2 = test::holmes_f2();
    const auto beliefs = propagate_polytree(f2, Evidence{{id(f2, "ALARM"), 1}});
    ASSERT_EQ(beliefs.size(), 4u);
    EXPECT_EQ(beliefs[id(f2, "ALARM").index].probs, (std::vector<double>{0.0, 1.0}));
    for (const auto& b : beliefs) EXPECT_NEAR(std::accumulate(b.probs.begin(), b.probs.end(), 0.0), 1.0, kTol);
}

TEST(Polytree, Errors) {
    const Network f1 = test::sprinkler_f1();
    EXPECT_EQ(error_of([&] { propagate_polytree(f1); }), ErrorKind::NotAPolytree);
}

TEST(Engines, EliminateMatchesEnumerationOnRandomNetworks) {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 150; ++trial) {
        const Network net = test::with_random_cpts(test::random_dag(rng, 1 + trial % 8, 0.45), rng);
        const auto ev = random_evidence(net, rng);
        const Evidence e = to_evidence(net, ev);
        for (std::size_t v = 0; v < net.size(); ++v) {
            if (e.contains(net.variable(v).id)) continue;
            const auto want = test::brute_posterior(net, v, ev);
            const auto got = eliminate(net, net.variable(v).id, e).probs;
            for (std::size_t s = 0; s < want.size(); ++s) EXPECT_NEAR(got[s], want[s], kTol);
        }
    }
}

TEST(Engines, PolytreeMatchesEliminate) {
    std::mt19937_64 rng(4242);
    for (int trial = 0; trial < 150; ++trial) {
        const Network net = test::with_random_cpts(test::random_polytree(rng, 1 + trial % 8), rng);
        const auto ev = random_evidence(net, rng);
        const Evidence e = to_evidence(net, ev);
        const auto beliefs = propagate_polytree(net, e);
        ASSERT_EQ(beliefs.size(), net.size());
        for (std::size_t v = 0; v < net.size(); ++v) {
            if (e.contains(net.variable(v).id)) continue;
            const auto want = eliminate(net, net.variable(v).id, e).probs;
            for (std::size_t s = 0; s < want.size(); ++s) EXPECT_NEAR(beliefs[v].probs[s], want[s], kTol);
        }
    }
}

TEST(Engines, PolytreeHandlesForestsWithSeveralComponents) {
    const Dag dag = build_dag({"A", "B", "C", "D", "E"}, {{"A", "B"}, {"D", "C"}});
    std::mt19937_64 rng(1);
    const Network net = test::with_random_cpts(dag, rng);
    const Evidence e{{dag.variable(1), 1}, {dag.variable(2), 0}};
    const auto beliefs = propagate_polytree(net, e);
    for (std::size_t v : {0u, 3u, 4u})
        EXPECT_NEAR(beliefs[v].probs[1], eliminate(net, dag.variable(v), e).probs[1], kTol);
}

TEST(Engines, ImpossibleEvidenceThreshold) {
    const Dag dag = build_dag({"A", "B"}, {{"A", "B"}});
    auto build = [&](double p) {
        return Network(dag, {{dag.variable(0), {"0", "1"}}, {dag.variable(1), {"0", "1"}}},
                       {{0, {}, 2, {1 - p, p}}, {1, {0}, 2, {0.5, 0.5, 0.5, 0.5}}});
    };
    const Evidence a{{dag.variable(0), 1}};
    for (double p : {0.0, 1e-13, 1e-11}) {
        const Network net = build(p);
        double pe = 0.0;
        test::brute_posterior(net, 1, {{0, 1}}, &pe);
        const bool impossible = pe < kImpossibleEvidenceThreshold;
        EXPECT_EQ(impossible, p < 1e-12);
        if (impossible) {
            EXPECT_EQ(error_of([&] { eliminate(net, dag.variable(1), a); }), ErrorKind::ImpossibleEvidence);
            EXPECT_EQ(error_of([&] { propagate_polytree(net, a); }), ErrorKind::ImpossibleEvidence);
        } else {
            EXPECT_NEAR(eliminate(net, dag.variable(1), a).probs[1], 0.5, kTol);
            EXPECT_NEAR(propagate_polytree(net, a)[1].probs[1], 0.5, kTol);
        }
    }
}

TEST(Discounting, Holmes) {
    const Network f2 = test::holmes_f2();
    const auto r = discounting_report(f2, id(f2, "BURGLAR"), id(f2, "EARTHQUAKE"), id(f2, "ALARM"));
    EXPECT_NEAR(r.p_prior, kF2Burglar, kTol);
    EXPECT_NEAR(r.p_given_effect, kF2BurglarGivenAlarm, kTol);
    EXPECT_NEAR(r.p_given_effect_and_alt, kF2BurglarGivenAlarmQuake, kTol);
    EXPECT_LT(r.p_given_effect_and_alt, r.p_given_effect);
}

TEST(Discounting, Sprinkler) {
    const Network f1 = test::sprinkler_f1();
    const auto r = discounting_report(f1, id(f1, "SPRINKLER"), id(f1, "RAIN"), id(f1, "WET"));
    EXPECT_NEAR(r.p_given_effect, kF1SprinklerGivenWet, kTol);
    EXPECT_NEAR(r.p_given_effect_and_alt, kF1SprinklerGivenWetRain, kTol);
    EXPECT_LT(r.p_given_effect_and_alt, r.p_given_effect);
}

TEST(Discounting, VacuousEdgeMeansNoDiscounting) {
    const Network net = holmes_alarm_ignores_quake();
    const auto r = discounting_report(net, id(net, "BURGLAR"), id(net, "EARTHQUAKE"), id(net, "ALARM"));
    EXPECT_NEAR(r.p_given_effect_and_alt, r.p_given_effect, kTol);
}

TEST(Discounting, PresentStatesAndRoles) {
    const Network f2 = test::holmes_f2();
    const auto b = id(f2, "BURGLAR"), e = id(f2, "EARTHQUAKE"), a = id(f2, "ALARM");
    const auto r = discounting_report(f2, b, e, a, PresentStates{0, 1, 1});
    EXPECT_NEAR(r.p_prior, 1 - kF2Burglar, kTol);
    EXPECT_NEAR(r.p_given_effect, 1 - kF2BurglarGivenAlarm, kTol);
    EXPECT_EQ(error_of([&] { discounting_report(f2, b, b, a); }), ErrorKind::InvalidArgument);
}

TEST(Normative, Examples) {
    const EffectTable table{0.9, 0.9, 0.9, 0.1};
    const auto n = normative_discounting(0.5, 0.5, table);
    EXPECT_NEAR(n.p_c1_given_e, kNormativeGivenE, 1e-12);
    EXPECT_NEAR(n.p_c1_given_e_c2, kNormativeGivenEC2, 1e-12);

    const Network net = two_cause(0.5, 0.5, table);
    EXPECT_NEAR(eliminate(net, id(net, "C1"), Evidence{{id(net, "E"), 1}}).probs[1], n.p_c1_given_e, 1e-12);
    EXPECT_NEAR(eliminate(net, id(net, "C1"), Evidence{{id(net, "E"), 1}, {id(net, "C2"), 1}}).probs[1],
                n.p_c1_given_e_c2, 1e-12);

    // c2 sufficient: full discounting back to the prior
    EXPECT_NEAR(normative_discounting(0.3, 0.6, {1.0, 0.7, 1.0, 0.2}).p_c1_given_e_c2, 0.3, 1e-12);
    // likelihood ratio 1
    EXPECT_NEAR(normative_discounting(0.3, 0.6, {0.8, 0.4, 0.8, 0.4}).p_c1_given_e, 0.3, 1e-12);
}

TEST(Normative, Errors) {
    EXPECT_EQ(error_of([] { normative_discounting(1.2, 0.5, {0.5, 0.5, 0.5, 0.5}); }), ErrorKind::InvalidArgument);
    EXPECT_EQ(error_of([] { normative_discounting(0.5, 0.5, {0.0, 0.0, 0.0, 0.0}); }),
              ErrorKind::ZeroEvidenceProbability);
    EXPECT_EQ(error_of([] { normative_discounting(0.5, 0.0, {0.9, 0.9, 0.9, 0.1}); }),
              ErrorKind::ZeroEvidenceProbability);
}

TEST(Normative, MatchesTheTwoCauseNetwork) {
    std::mt19937_64 rng(2718);
    std::uniform_real_distribution<double> u(0.01, 0.99);
    for (int trial = 0; trial < 1000; ++trial) {
        const double p1 = u(rng), p2 = u(rng);
        const EffectTable t{u(rng), u(rng), u(rng), u(rng)};
        const auto n = normative_discounting(p1, p2, t);
        const Network net = two_cause(p1, p2, t);
        const auto c1 = id(net, "C1"), c2 = id(net, "C2"), e = id(net, "E");
        EXPECT_NEAR(n.p_c1_given_e, eliminate(net, c1, Evidence{{e, 1}}).probs[1], kTol);
        EXPECT_NEAR(n.p_c1_given_e_c2, eliminate(net, c1, Evidence{{e, 1}, {c2, 1}}).probs[1], kTol);
    }
}
