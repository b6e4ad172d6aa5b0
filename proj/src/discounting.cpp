#include "pcg/error.hpp"
#include "pcg/inference.hpp"

namespace pcg {

DiscountingReport discounting_report(const Network& network, const VariableId& cause,
                                     const VariableId& alt_cause, const VariableId& effect,
                                     const PresentStates& present) {
    if (cause.name == alt_cause.name || cause.name == effect.name || alt_cause.name == effect.name)
        throw Error(ErrorKind::InvalidArgument, "cause, alternative cause and effect must be distinct");
    network.dag().require(cause);
    if (present.cause >= network.variable(cause.index).arity())
        throw Error(ErrorKind::InvalidArgument, "present state of " + cause.name + " is out of range");

    DiscountingReport report{cause, alt_cause, effect};
    report.p_prior = eliminate(network, cause).probs[present.cause];
    report.p_given_effect = eliminate(network, cause, Evidence{{effect, present.effect}}).probs[present.cause];
    report.p_given_effect_and_alt =
        eliminate(network, cause, Evidence{{effect, present.effect}, {alt_cause, present.alt_cause}})
            .probs[present.cause];
    return report;
}

NormativeDiscounting normative_discounting(double p_c1, double p_c2, const EffectTable& effect) {
    for (double p : {p_c1, p_c2, effect.both, effect.only_c1, effect.only_c2, effect.neither})
        if (!(p >= 0.0 && p <= 1.0))
            throw Error(ErrorKind::InvalidArgument, "probabilities must lie in [0, 1]");

    // P(e, c1) and P(e) with the causes marginally independent
    const double e_and_c1 = p_c1 * (p_c2 * effect.both + (1.0 - p_c2) * effect.only_c1);
    const double e_and_not_c1 = (1.0 - p_c1) * (p_c2 * effect.only_c2 + (1.0 - p_c2) * effect.neither);
    const double p_e = e_and_c1 + e_and_not_c1;
    if (!(p_e > 0.0)) throw Error(ErrorKind::ZeroEvidenceProbability, "P(effect) is 0");

    // P(c2) cancels from P(c1 | e, c2)
    const double c1_side = p_c1 * effect.both;
    const double e_given_c2 = c1_side + (1.0 - p_c1) * effect.only_c2;
    if (!(p_c2 > 0.0) || !(e_given_c2 > 0.0))
        throw Error(ErrorKind::ZeroEvidenceProbability, "P(effect, second cause) is 0");

    return {e_and_c1 / p_e, c1_side / e_given_c2};
}

} // namespace pcg
