#include "amc/likelihood.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace amc {

double likelihood_exponents(ObservationSet& obs, const ParamVector& u,
                            const ConstellationSet& constellation,
                            std::vector<double>& exponents) {
    const int n_sym = obs.n_symbols;
    const int m = constellation.cardinality;
    const int n_sensors = obs.sensor_count();
    if (u.sensor_count() != n_sensors)
        throw std::invalid_argument("log_likelihood: parameter vector length != sensor count");

    const double n0 = obs.noise_psd;
    const double eg = obs.pulse_energy;

    // Fuse sensors once: s_n = sum_l a_l e^{-j theta_l} y_{n,l}, A = sum a^2.
    std::vector<std::complex<double>> s(n_sym, {0.0, 0.0});
    double a2 = 0.0;
    for (int l = 0; l < n_sensors; ++l) {
        const auto& p = u.per_sensor[l];
        const auto& y = obs.banks[l].samples(p.timing);
        const std::complex<double> rot = std::polar(p.amplitude, -p.phase);
        for (int n = 0; n < n_sym; ++n) s[n] += rot * y[n];
        a2 += p.amplitude * p.amplitude;
    }

    std::vector<double> energy_term(m);
    for (int k = 0; k < m; ++k)
        energy_term[k] = eg / n0 * std::norm(constellation.symbols[k]) * a2;

    exponents.resize(static_cast<size_t>(n_sym) * m);
    double total = 0.0;
    for (int n = 0; n < n_sym; ++n) {
        double* row = exponents.data() + static_cast<size_t>(n) * m;
        double mx = -std::numeric_limits<double>::infinity();
        for (int k = 0; k < m; ++k) {
            const auto& ik = constellation.symbols[k];
            double v = 2.0 / n0 * (ik.real() * s[n].real() + ik.imag() * s[n].imag()) -
                       energy_term[k];
            row[k] = v;
            if (v > mx) mx = v;
        }
        double acc = 0.0;
        for (int k = 0; k < m; ++k) acc += std::exp(row[k] - mx);
        total += mx + std::log(acc);
    }
    double lambda = total - static_cast<double>(n_sym) * std::log(static_cast<double>(m));
    if (!std::isfinite(lambda))
        throw std::runtime_error("log_likelihood: non-finite value (format '" +
                                 constellation.format_id + "')");
    return lambda;
}

double log_likelihood(ObservationSet& obs, const ParamVector& u,
                      const ConstellationSet& constellation) {
    std::vector<double> scratch;
    return likelihood_exponents(obs, u, constellation, scratch);
}

}  // namespace amc
