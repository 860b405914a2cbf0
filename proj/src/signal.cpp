#include "amc/signal.hpp"

#include <cmath>
#include <stdexcept>

namespace amc {

double rrc_eval_raw(double t, double rolloff, double symbol_duration) {
    const double T = symbol_duration;
    const double a = rolloff;
    const double x = t / T;
    // limit at t = 0
    if (std::abs(x) < 1e-10) return (1.0 - a + 4.0 * a / kPi) / std::sqrt(T);
    // limit at |t| = T/(4a)
    const double s = 4.0 * a * std::abs(x);
    if (std::abs(s - 1.0) < 1e-10) {
        double arg = kPi / (4.0 * a);
        return a / std::sqrt(2.0 * T) *
               ((1.0 + 2.0 / kPi) * std::sin(arg) + (1.0 - 2.0 / kPi) * std::cos(arg));
    }
    double num = std::sin(kPi * x * (1.0 - a)) + 4.0 * a * x * std::cos(kPi * x * (1.0 + a));
    double den = kPi * x * (1.0 - (4.0 * a * x) * (4.0 * a * x));
    return num / den / std::sqrt(T);
}

double PulseSpec::eval(double t) const {
    // Half-open support [-half, half): the truncated tail is nonzero at the
    // edges, and a closed window would count both edge samples whenever a
    // query lands exactly on the sample lattice (support width is a whole
    // number of samples), putting an isolated spike on the matched-filter
    // output there. Left-closed keeps lattice queries equal to their
    // one-sided limit.
    if (t < -half_width() || t >= half_width()) return 0.0;
    return scale * rrc_eval_raw(t, rolloff, symbol_duration);
}

PulseSpec rrc_pulse(double rolloff, int span_symbols, int samples_per_symbol,
                    double symbol_duration) {
    if (!(rolloff > 0.0) || rolloff > 1.0)
        throw std::invalid_argument("rrc_pulse: rolloff must be in (0, 1]");
    if (span_symbols <= 0 || span_symbols % 2 != 0)
        throw std::invalid_argument("rrc_pulse: span_symbols must be positive and even");
    if (samples_per_symbol < 4)
        throw std::invalid_argument("rrc_pulse: samples_per_symbol must be >= 4");

    PulseSpec p;
    p.rolloff = rolloff;
    p.span_symbols = span_symbols;
    p.samples_per_symbol = samples_per_symbol;
    p.symbol_duration = symbol_duration;

    const int half = span_symbols / 2 * samples_per_symbol;
    const double dt = p.dt();
    p.taps.resize(2 * half + 1);
    double e = 0.0;
    for (int j = -half; j <= half; ++j) {
        double v = rrc_eval_raw(j * dt, rolloff, symbol_duration);
        p.taps[j + half] = v;
        e += v * v;
    }
    e *= dt;
    p.scale = 1.0 / std::sqrt(e);
    for (auto& v : p.taps) v *= p.scale;
    double en = 0.0;
    for (double v : p.taps) en += v * v;
    p.energy = en * dt;
    return p;
}

SensorParams draw_sensor_params(double sigma, Rng& rng) {
    if (!(sigma > 0.0)) throw std::invalid_argument("draw_sensor_params: sigma must be positive");
    SensorParams s;
    s.amplitude = rng.rayleigh(sigma);
    s.phase = rng.uniform(-kPi, kPi);
    s.timing = rng.uniform();
    return s;
}

SymbolSequence draw_symbols(int n, int cardinality, Rng& rng) {
    SymbolSequence seq;
    seq.indices.resize(n);
    for (int i = 0; i < n; ++i) seq.indices[i] = rng.uniform_int(cardinality);
    return seq;
}

Waveform synthesize_received(const SymbolSequence& symbols, const ConstellationSet& constellation,
                             const SensorParams& params, const PulseSpec& pulse,
                             const ScenarioConfig& config, Rng& rng) {
    const int n_sym = static_cast<int>(symbols.indices.size());
    const int q = pulse.samples_per_symbol;
    const int span = pulse.span_symbols;
    const int k0 = span / 2 * q;
    const double dt = pulse.dt();

    Waveform wf;
    wf.samples_per_symbol = q;
    wf.samples.assign(static_cast<size_t>(n_sym + span) * q + 1, {0.0, 0.0});

    // The pulse shifted by eps*T has the same fractional taps for every
    // symbol; build them once. Relative sample index m around each symbol
    // instant: t_k - nT - eps T = (m - eps*q) * dt.
    const double eq = params.timing * q;
    const int m_lo = static_cast<int>(std::ceil(eq)) - k0;
    const int m_hi = static_cast<int>(std::floor(eq)) + k0;
    std::vector<double> taps(m_hi - m_lo + 1);
    for (int m = m_lo; m <= m_hi; ++m) taps[m - m_lo] = pulse.eval((m - eq) * dt);

    for (int n = 0; n < n_sym; ++n) {
        const std::complex<double> sym = constellation.symbols[symbols.indices[n]];
        const int base = k0 + n * q;
        for (int m = m_lo; m <= m_hi; ++m) wf.samples[base + m] += sym * taps[m - m_lo];
    }

    const std::complex<double> gain = std::polar(params.amplitude, params.phase);
    const double noise_var = config.noise_psd / dt;
    for (auto& s : wf.samples) s = gain * s + rng.complex_gaussian(noise_var);
    return wf;
}

}  // namespace amc
