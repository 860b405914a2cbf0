#pragma once

#include <complex>
#include <string>
#include <vector>

namespace amc {

// One candidate modulation alphabet, normalized so the mean symbol energy
// over the alphabet is exactly 1.
struct ConstellationSet {
    std::string format_id;
    std::vector<std::complex<double>> symbols;
    int cardinality = 0;
};

// Ordered candidate list; index into `constellations` is the hypothesis
// index used by every classifier decision and confusion matrix.
struct HypothesisSet {
    std::vector<ConstellationSet> constellations;
    int count() const { return static_cast<int>(constellations.size()); }
};

// Supported ids: BPSK, QPSK, 8PSK, 8QAM, 16PSK, 16QAM.
// Throws std::invalid_argument on anything else.
ConstellationSet build_constellation(const std::string& format_id);

// Throws std::invalid_argument on an empty list, duplicates, or unknown ids.
HypothesisSet build_hypothesis_set(const std::vector<std::string>& format_ids);

}  // namespace amc
