#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include "amc/likelihood.hpp"

namespace amc_test {

// Independent evaluation of the marginal log-likelihood by enumerating all
// M^N symbol sequences of the conditional model and log-sum-exp'ing them.
// Shares only the matched-filter front end with the production code; the
// marginalization, sensor fusion, and exponent algebra are redone from
// scratch with plain loops.
inline double brute_force_log_likelihood(amc::ObservationSet& obs, const amc::ParamVector& u,
                                         const amc::ConstellationSet& c) {
    const int n = obs.n_symbols;
    const int m = c.cardinality;
    const int sensors = obs.sensor_count();
    const double n0 = obs.noise_psd;
    const double eg = obs.pulse_energy;

    std::vector<const std::vector<std::complex<double>>*> y(sensors);
    for (int l = 0; l < sensors; ++l) y[l] = &obs.banks[l].samples(u.per_sensor[l].timing);

    double a2 = 0.0;
    for (int l = 0; l < sensors; ++l) a2 += u.per_sensor[l].amplitude * u.per_sensor[l].amplitude;

    long long total = 1;
    for (int i = 0; i < n; ++i) total *= m;

    std::vector<double> seq_exponents;
    seq_exponents.reserve(total);
    std::vector<int> digits(n, 0);
    for (long long s = 0; s < total; ++s) {
        double e = 0.0;
        for (int i = 0; i < n; ++i) {
            const std::complex<double> sym = c.symbols[digits[i]];
            for (int l = 0; l < sensors; ++l) {
                const auto& p = u.per_sensor[l];
                std::complex<double> term =
                    std::conj(sym) * std::polar(1.0, -p.phase) * (*y[l])[i];
                e += 2.0 / n0 * p.amplitude * term.real();
            }
            e -= eg / n0 * std::norm(sym) * a2;
        }
        seq_exponents.push_back(e);
        for (int i = 0; i < n; ++i) {
            if (++digits[i] < m) break;
            digits[i] = 0;
        }
    }

    double mx = seq_exponents[0];
    for (double v : seq_exponents) mx = std::max(mx, v);
    double acc = 0.0;
    for (double v : seq_exponents) acc += std::exp(v - mx);
    return mx + std::log(acc) - n * std::log(static_cast<double>(m));
}

}  // namespace amc_test
