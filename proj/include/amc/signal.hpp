#pragma once

#include <complex>
#include <vector>

#include "amc/constellation.hpp"
#include "amc/rng.hpp"

namespace amc {

// Root-raised-cosine transmit pulse, truncated to the half-open window
// [-span/2 T, span/2 T) and sampled at dt = T/Q. `scale` normalizes the
// discrete energy: energy = dt * sum(taps^2) = 1 after construction.
struct PulseSpec {
    double rolloff = 0.3;
    int span_symbols = 8;
    int samples_per_symbol = 16;
    double symbol_duration = 1.0;
    std::vector<double> taps;  // length span*Q + 1, tap j at t = (j - span/2*Q)*dt
    double energy = 1.0;       // E_g after normalization
    double scale = 1.0;        // normalized = scale * raw formula

    double dt() const { return symbol_duration / samples_per_symbol; }
    double half_width() const { return 0.5 * span_symbols * symbol_duration; }

    // Normalized pulse value at arbitrary time; zero outside the truncation
    // window. Evaluated from the closed form, not by tap interpolation.
    double eval(double t) const;
};

// Closed-form RRC with singular points (t = 0, |t| = T/(4a)) replaced by
// their analytic limits. Unnormalized.
double rrc_eval_raw(double t, double rolloff, double symbol_duration);

// Throws std::invalid_argument unless rolloff in (0,1], span even and > 0,
// Q >= 4.
PulseSpec rrc_pulse(double rolloff, int span_symbols, int samples_per_symbol,
                    double symbol_duration = 1.0);

// Per-sensor unknowns: amplitude > 0, phase in [-pi, pi), timing in [0, 1).
struct SensorParams {
    double amplitude = 1.0;
    double phase = 0.0;
    double timing = 0.0;
};

struct ScenarioConfig {
    int sensor_count = 1;
    int symbol_count = 100;
    double symbol_duration = 1.0;
    double noise_psd = 1.0;      // N0
    double rayleigh_scale = 1.0; // sigma; SNR = 2 sigma^2 at N0 = 1
};

// Oversampled complex baseband record covering [-span/2 T, (N + span/2) T]:
// sample k sits at t = (k - span/2*Q) * dt, length (N + span)*Q + 1.
struct Waveform {
    std::vector<std::complex<double>> samples;
    int samples_per_symbol = 16;
};

struct SymbolSequence {
    std::vector<int> indices;  // each in [0, M)
};

// amplitude ~ Rayleigh(sigma), phase ~ U[-pi, pi), timing ~ U[0, 1).
SensorParams draw_sensor_params(double sigma, Rng& rng);

SymbolSequence draw_symbols(int n, int cardinality, Rng& rng);

// samples[k] = a e^{j theta} sum_n I_n g(t_k - nT - eps T) + w[k], with w
// i.i.d. circular complex Gaussian of variance N0/dt per sample (so the
// matched-filter output variance is N0 * E_g).
Waveform synthesize_received(const SymbolSequence& symbols, const ConstellationSet& constellation,
                             const SensorParams& params, const PulseSpec& pulse,
                             const ScenarioConfig& config, Rng& rng);

inline double wrap_phase(double x) {
    double y = std::fmod(x + kPi, 2.0 * kPi);
    if (y < 0) y += 2.0 * kPi;
    return y - kPi;  // [-pi, pi)
}

inline double wrap_unit(double x) {
    double y = x - std::floor(x);
    if (y >= 1.0) y = 0.0;  // guard against fmod edge at exact integers
    return y;
}

}  // namespace amc
