#pragma once

#include <cmath>
#include <optional>
#include <vector>

#include "amc/baselines.hpp"

namespace amc_test {

inline const amc::PulseSpec& std_pulse() {
    static const amc::PulseSpec p = amc::rrc_pulse(0.3, 8, 16);
    return p;
}

// Owns the waveforms a bank set points into; safe to move as a unit because
// vector moves keep elements in place.
struct TestObservation {
    std::vector<amc::Waveform> waveforms;
    std::optional<amc::ObservationSet> obs;
    amc::ParamVector truth;
    amc::SymbolSequence symbols;
};

// Synthesizes one observation of `n` symbols for every sensor in `truth`.
// noise_psd = 0 gives a noiseless record (only valid for synthesis; pass a
// positive model_n0 for the ObservationSet used by likelihood code).
inline TestObservation make_observation(const amc::ConstellationSet& constellation,
                                        const amc::ParamVector& truth, int n, double noise_psd,
                                        std::uint64_t seed, double model_n0 = -1.0,
                                        const amc::PulseSpec& pulse = std_pulse()) {
    TestObservation t;
    t.truth = truth;
    amc::Rng rng(seed);
    t.symbols = amc::draw_symbols(n, constellation.cardinality, rng);
    amc::ScenarioConfig scenario;
    scenario.sensor_count = truth.sensor_count();
    scenario.symbol_count = n;
    scenario.noise_psd = noise_psd;
    for (const auto& p : truth.per_sensor)
        t.waveforms.push_back(
            amc::synthesize_received(t.symbols, constellation, p, pulse, scenario, rng));
    t.obs.emplace(t.waveforms, pulse, model_n0 > 0 ? model_n0 : noise_psd);
    return t;
}

inline amc::ParamVector single_sensor(double a, double theta, double eps) {
    amc::ParamVector u;
    u.per_sensor.push_back({a, theta, eps});
    return u;
}

inline amc::ParamVector random_params(int sensors, double sigma, amc::Rng& rng) {
    amc::ParamVector u;
    for (int l = 0; l < sensors; ++l) u.per_sensor.push_back(amc::draw_sensor_params(sigma, rng));
    return u;
}

inline double circular_distance(double a, double b, double period) {
    double d = std::fmod(std::abs(a - b), period);
    return std::min(d, period - d);
}

}  // namespace amc_test
