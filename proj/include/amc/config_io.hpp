#pragma once

#include <string>

#include "amc/harness.hpp"

namespace amc {

inline constexpr const char* kArtifactVersion = "1.0.0";

// Strict JSON ingestion: unknown keys, type mismatches, and out-of-range
// values raise std::invalid_argument naming the offending key. Absent keys
// take the documented defaults (Q=16, N=100, trials=500, quaternary formats,
// one GEM classifier with perturbed-truth init).
ExperimentConfig parse_config_text(const std::string& json_text);
ExperimentConfig parse_config_file(const std::string& path);

// Canonical full serialization; parse_config_text round-trips it exactly.
std::string config_to_json_text(const ExperimentConfig& config);

// Flag grammar: "perturbed:da,dtheta,deps" | "sa:uniform" | "sa:nonuniform"
// | "fixed" | "fixed:a,theta,eps".
InitScheme parse_init_flag(const std::string& text);

// Builds specs from comma-separated classifier kinds, all sharing `init`.
// em_joint defaults to the 60x50 grid.
std::vector<ClassifierSpec> make_classifier_specs(const std::vector<std::string>& kinds,
                                                  const InitScheme& init);

struct RunManifest {
    std::string artifact_version = kArtifactVersion;
    std::string started_utc;
    std::string finished_utc;
    std::uint64_t master_seed = 0;
    std::string config_json;  // echo; parse_config_text(config_json) rebuilds the run
};

// Writes into `out_dir` (created if missing):
//   curves_<classifier>.csv   header: snr_db,L,<format ids>,pcc,mean_ms
//   confusion_<classifier>_snr<v>_L<n>.csv
//   run_manifest.json
// Throws std::runtime_error naming the path on I/O failure.
void emit_results(const ExperimentResult& result, const std::string& out_dir,
                  const RunManifest& manifest);

std::string utc_timestamp_now();

}  // namespace amc
