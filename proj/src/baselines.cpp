#include "amc/baselines.hpp"

#include <limits>

namespace amc {

int clairvoyant_classify(ObservationSet& obs, const ParamVector& truth,
                         const HypothesisSet& hypotheses) {
    int decision = 0;
    double best = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < hypotheses.count(); ++i) {
        double lambda = log_likelihood(obs, truth, hypotheses.constellations[i]);
        if (lambda > best) {
            best = lambda;
            decision = i;
        }
    }
    return decision;
}

ClassifyOutcome clairvoyant_em_classify(ObservationSet& obs, const HypothesisSet& hypotheses,
                                        const InitScheme& scheme, const InitContext& ctx,
                                        GemConfig config) {
    config.variant = GemVariant::KnownEpsilon;
    std::vector<double> pinned;
    pinned.reserve(ctx.truth.per_sensor.size());
    for (const auto& p : ctx.truth.per_sensor) pinned.push_back(p.timing);
    return classify_hml(obs, hypotheses, make_initializer(scheme, ctx), config, pinned);
}

ClassifyOutcome zero_offset_em_classify(ObservationSet& obs, const HypothesisSet& hypotheses,
                                        const InitScheme& scheme, const InitContext& ctx,
                                        GemConfig config) {
    config.variant = GemVariant::KnownEpsilon;
    std::vector<double> pinned(ctx.truth.per_sensor.size(), 0.0);
    return classify_hml(obs, hypotheses, make_initializer(scheme, ctx), config, pinned);
}

}  // namespace amc
