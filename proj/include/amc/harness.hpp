#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "amc/baselines.hpp"

namespace amc {

enum class ClassifierKind { Clairvoyant, ClairvoyantEm, Gem, EmJoint, ZeroOffsetEm };

std::string classifier_kind_name(ClassifierKind kind);

struct ClassifierSpec {
    std::string name;  // unique per experiment; used in output filenames
    ClassifierKind kind = ClassifierKind::Gem;
    InitScheme init;
    GemConfig gem;
};

struct ExperimentConfig {
    std::vector<double> snr_db_list{0.0, 5.0, 10.0, 15.0};
    std::vector<int> sensor_counts{1};
    int symbol_count = 100;
    std::vector<std::string> formats{"8PSK", "8QAM", "16PSK", "16QAM"};
    int trials = 500;  // per true format per cell
    std::uint64_t master_seed = 42;
    int samples_per_symbol = 16;
    double rolloff = 0.3;
    int span_symbols = 8;
    double noise_psd = 1.0;
    int threads = 1;
    std::vector<ClassifierSpec> classifiers;
};

struct ConfusionMatrix {
    int size = 0;
    std::vector<long long> counts;  // row = true format, col = decision

    long long at(int row, int col) const { return counts[static_cast<size_t>(row) * size + col]; }
    long long row_sum(int row) const {
        long long s = 0;
        for (int c = 0; c < size; ++c) s += at(row, c);
        return s;
    }
};

// (1/S) sum_i counts[i][i] / rowsum[i]; throws std::invalid_argument on an
// empty row.
double pcc(const ConfusionMatrix& matrix);

// One (classifier, SNR, L) cell of the result table.
struct CellResult {
    double snr_db = 0.0;
    int sensor_count = 0;
    ConfusionMatrix confusion;
    std::vector<std::vector<int>> decisions;  // [format][trial], -1 = error
    std::vector<double> per_format_pcc;
    double pcc_value = 0.0;
    double mean_ms = 0.0;
    double max_ascent_dip = 0.0;  // largest likelihood-trace decrease seen
    long long error_count = 0;
    std::vector<std::string> error_messages;  // truncated sample
};

struct ExperimentResult {
    ExperimentConfig config;
    // cell_results[cell][classifier]; cells ordered snr-major then sensors,
    // matching the config lists.
    std::vector<std::vector<CellResult>> cell_results;

    const CellResult& cell(int snr_index, int sensor_index, int classifier_index) const {
        return cell_results[static_cast<size_t>(snr_index) * config.sensor_counts.size() +
                            sensor_index][classifier_index];
    }
};

struct TrialOutcome {
    std::vector<int> decisions;  // per classifier, -1 on error
    std::vector<double> elapsed_ms;
    std::vector<double> ascent_dips;
    std::vector<std::string> errors;
};

// Runs every classifier on one synthesized observation. The rng stream is
// derived from (master_seed, snr, L, trial, format), so all classifiers see
// the same waveforms and reruns are bit-identical; each classifier's init
// stream additionally keys on its init-scheme serialization so identical
// schemes draw identical starts.
TrialOutcome run_trial(const ExperimentConfig& config, const PulseSpec& pulse,
                       const HypothesisSet& hypotheses, double snr_db, int sensor_count,
                       int trial_index, int true_format);

// Full sweep: cells x classifiers x formats x trials, formats cycled so each
// gets exactly `trials` runs per cell. Decision slots are preallocated and
// each trial writes only its own, so any execution order (threads > 1)
// produces identical results.
ExperimentResult run_experiment(const ExperimentConfig& config);

}  // namespace amc
