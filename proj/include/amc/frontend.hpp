#pragma once

#include <complex>
#include <cstdint>
#include <unordered_map>
#include <vector>

#include "amc/signal.hpp"

namespace amc {

// Matched-filter access to one sensor's waveform:
//   y_n(eps) = dt * sum_k y[k] g(t_k - nT - eps T),  n = 0..N-1.
// eps is quantized to 1e-6 and the filter is evaluated *at* the quantized
// value, so repeated queries (line search, likelihood, E-step) all see one
// consistent function of eps. The cache is an internal memoization only;
// results are pure functions of (waveform, pulse, eps).
class MatchedFilterBank {
  public:
    MatchedFilterBank(const Waveform& waveform, const PulseSpec& pulse);

    int symbol_count() const { return n_symbols_; }
    const PulseSpec& pulse() const { return *pulse_; }

    // Throws std::invalid_argument outside [0, 1).
    const std::vector<std::complex<double>>& samples(double eps);

    static std::int64_t quantize(double eps) {
        return static_cast<std::int64_t>(std::llround(eps * 1e6));
    }

  private:
    std::vector<std::complex<double>> compute(double eps) const;

    const Waveform* waveform_;
    const PulseSpec* pulse_;
    int n_symbols_;
    std::unordered_map<std::int64_t, std::vector<std::complex<double>>> cache_;
};

// Convenience wrapper matching the operation-level interface.
inline std::vector<std::complex<double>> mf_samples(MatchedFilterBank& bank, double eps) {
    return bank.samples(eps);
}

}  // namespace amc
