#pragma once

#include "amc/init.hpp"

namespace amc {

// Genie-aided reference: evaluates Lambda_i at the true parameters, no
// estimation. Ties break toward the lowest hypothesis index.
int clairvoyant_classify(ObservationSet& obs, const ParamVector& truth,
                         const HypothesisSet& hypotheses);

// EM with the timing offsets known: the init scheme supplies (a0, theta0),
// eps is pinned to the true values and never updated.
ClassifyOutcome clairvoyant_em_classify(ObservationSet& obs, const HypothesisSet& hypotheses,
                                        const InitScheme& scheme, const InitContext& ctx,
                                        GemConfig config);

// EM that ignores timing: eps pinned to 0 for every sensor.
ClassifyOutcome zero_offset_em_classify(ObservationSet& obs, const HypothesisSet& hypotheses,
                                        const InitScheme& scheme, const InitContext& ctx,
                                        GemConfig config);

}  // namespace amc
