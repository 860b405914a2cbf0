#pragma once

#include <complex>
#include <vector>

#include "amc/constellation.hpp"
#include "amc/frontend.hpp"

namespace amc {

// Concatenated per-sensor unknowns u = [a_1..a_L, theta_1..theta_L,
// eps_1..eps_L], stored sensor-major.
struct ParamVector {
    std::vector<SensorParams> per_sensor;
    int sensor_count() const { return static_cast<int>(per_sensor.size()); }
};

// One trial's L matched-filter banks plus the shared model constants.
// Owns the banks; the referenced waveforms/pulse must outlive it.
struct ObservationSet {
    std::vector<MatchedFilterBank> banks;
    int n_symbols = 0;
    double noise_psd = 1.0;
    double pulse_energy = 1.0;

    ObservationSet(const std::vector<Waveform>& waveforms, const PulseSpec& pulse,
                   double noise_psd_in)
        : noise_psd(noise_psd_in), pulse_energy(pulse.energy) {
        banks.reserve(waveforms.size());
        for (const auto& w : waveforms) banks.emplace_back(w, pulse);
        n_symbols = banks.empty() ? 0 : banks.front().symbol_count();
    }
    int sensor_count() const { return static_cast<int>(banks.size()); }
};

// Marginalized log-likelihood of the symbol-i.i.d. model:
//   Lambda(u) = sum_n log mean_k exp( (2/N0) Re{I_k^* s_n} - (E_g/N0)|I_k|^2 A )
// with s_n = sum_l a_l e^{-j theta_l} y_{n,l}(eps_l) and A = sum_l a_l^2,
// evaluated with max-subtracted log-sum-exp. Throws std::runtime_error if a
// non-finite value appears.
double log_likelihood(ObservationSet& obs, const ParamVector& u,
                      const ConstellationSet& constellation);

// Shared exponent pass: fills `exponents` (row-major N x M) with the
// log-sum-exp arguments above and returns Lambda(u). The E-step normalizes
// the same exponents, so EM rounds reuse one computation for both.
double likelihood_exponents(ObservationSet& obs, const ParamVector& u,
                            const ConstellationSet& constellation,
                            std::vector<double>& exponents);

}  // namespace amc
