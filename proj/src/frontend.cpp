#include "amc/frontend.hpp"

#include <cmath>
#include <stdexcept>

namespace amc {

MatchedFilterBank::MatchedFilterBank(const Waveform& waveform, const PulseSpec& pulse)
    : waveform_(&waveform), pulse_(&pulse) {
    const int q = pulse.samples_per_symbol;
    if (waveform.samples_per_symbol != q)
        throw std::invalid_argument("MatchedFilterBank: waveform/pulse sampling mismatch");
    const int len = static_cast<int>(waveform.samples.size());
    n_symbols_ = (len - 1) / q - pulse.span_symbols;
    if (n_symbols_ < 1 || (n_symbols_ + pulse.span_symbols) * q + 1 != len)
        throw std::invalid_argument("MatchedFilterBank: waveform length inconsistent with pulse");
}

const std::vector<std::complex<double>>& MatchedFilterBank::samples(double eps) {
    if (!(eps >= 0.0) || eps >= 1.0)
        throw std::invalid_argument("mf_samples: eps must lie in [0, 1)");
    const std::int64_t key = quantize(eps);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    auto [ins, ok] = cache_.emplace(key, compute(static_cast<double>(key) * 1e-6));
    return ins->second;
}

std::vector<std::complex<double>> MatchedFilterBank::compute(double eps) const {
    const PulseSpec& p = *pulse_;
    const int q = p.samples_per_symbol;
    const int k0 = p.span_symbols / 2 * q;
    const double dt = p.dt();
    const double eq = eps * q;

    // Window for symbol n spans samples n*q + j, j = 0..W-1, with tap
    // g((j - k0 - eq) dt); W = (span+1)*q covers the support for any eps in
    // [0,1) and stays inside the buffer for every n by construction.
    const int w = (p.span_symbols + 1) * q;
    std::vector<double> taps(w);
    for (int j = 0; j < w; ++j) taps[j] = p.eval((j - k0 - eq) * dt);

    const int n_sym = n_symbols_;
    const double* y = reinterpret_cast<const double*>(waveform_->samples.data());
    std::vector<std::complex<double>> out(n_sym);
    for (int n = 0; n < n_sym; ++n) {
        const double* base = y + 2 * static_cast<size_t>(n) * q;
        // Interleaved re/im dot product; two accumulator pairs break the
        // dependence chain without changing the summation order per pair.
        double re0 = 0.0, im0 = 0.0, re1 = 0.0, im1 = 0.0;
        int j = 0;
        for (; j + 1 < w; j += 2) {
            re0 += base[2 * j] * taps[j];
            im0 += base[2 * j + 1] * taps[j];
            re1 += base[2 * j + 2] * taps[j + 1];
            im1 += base[2 * j + 3] * taps[j + 1];
        }
        for (; j < w; ++j) {
            re0 += base[2 * j] * taps[j];
            im0 += base[2 * j + 1] * taps[j];
        }
        out[n] = {dt * (re0 + re1), dt * (im0 + im1)};
    }
    return out;
}

}  // namespace amc
