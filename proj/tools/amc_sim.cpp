#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "amc/config_io.hpp"

namespace {

std::vector<std::string> split_csv(const std::string& text) {
    std::vector<std::string> out;
    size_t start = 0;
    while (start <= text.size()) {
        size_t comma = text.find(',', start);
        if (comma == std::string::npos) {
            out.push_back(text.substr(start));
            break;
        }
        out.push_back(text.substr(start, comma - start));
        start = comma + 1;
    }
    return out;
}

std::vector<double> parse_double_list(const std::string& text, const std::string& flag) {
    std::vector<double> out;
    for (const auto& tok : split_csv(text)) {
        try {
            out.push_back(std::stod(tok));
        } catch (...) {
            throw std::invalid_argument(flag + ": '" + tok + "' is not a number");
        }
    }
    return out;
}

std::vector<int> parse_int_list(const std::string& text, const std::string& flag) {
    std::vector<int> out;
    for (const auto& tok : split_csv(text)) {
        try {
            out.push_back(std::stoi(tok));
        } catch (...) {
            throw std::invalid_argument(flag + ": '" + tok + "' is not an integer");
        }
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hybrid-ML modulation classification Monte Carlo simulator"};

    std::string config_path, snr, sensors, formats, classifiers, init_flag;
    std::string out_dir = "runs";
    int symbols = -1, trials = -1, threads = -1;
    std::uint64_t seed = 0;
    bool seed_set = false;

    app.add_option("--config", config_path, "JSON experiment config");
    app.add_option("--snr", snr, "SNR list in dB, comma separated");
    app.add_option("--sensors", sensors, "Sensor counts, comma separated");
    app.add_option("--symbols", symbols, "Symbols per observation (N)");
    app.add_option("--trials", trials, "Trials per true format per cell");
    app.add_option("--seed", seed, "Master seed")->each([&](const std::string&) { seed_set = true; });
    app.add_option("--formats", formats, "Candidate formats, comma separated");
    app.add_option("--classifiers", classifiers,
                   "Classifier kinds from {clairvoyant, clairvoyant_em, gem, em_joint, "
                   "zero_offset_em}, comma separated");
    app.add_option("--init", init_flag,
                   "Init scheme: perturbed:da,dth,de | sa:uniform | sa:nonuniform | fixed[:a,th,e]"
                   " (overrides every classifier's scheme)");
    app.add_option("--out", out_dir, "Output directory (run subdirectory is created inside)");
    app.add_option("--threads", threads, "Worker threads");

    CLI11_PARSE(app, argc, argv);

    try {
        amc::ExperimentConfig config = config_path.empty()
                                           ? amc::parse_config_text("{}")
                                           : amc::parse_config_file(config_path);
        if (!snr.empty()) config.snr_db_list = parse_double_list(snr, "--snr");
        if (!sensors.empty()) config.sensor_counts = parse_int_list(sensors, "--sensors");
        if (symbols >= 0) config.symbol_count = symbols;
        if (trials >= 0) config.trials = trials;
        if (seed_set) config.master_seed = seed;
        if (!formats.empty()) config.formats = split_csv(formats);
        if (threads >= 1) config.threads = threads;
        if (!classifiers.empty()) {
            amc::InitScheme scheme;  // default perturbed(5, pi/10, 0.1)
            if (!init_flag.empty()) scheme = amc::parse_init_flag(init_flag);
            config.classifiers = amc::make_classifier_specs(split_csv(classifiers), scheme);
        } else if (!init_flag.empty()) {
            amc::InitScheme scheme = amc::parse_init_flag(init_flag);
            for (auto& spec : config.classifiers) spec.init = scheme;
        }
        // Re-validate the merged config through the canonical parser.
        config = amc::parse_config_text(amc::config_to_json_text(config));

        amc::RunManifest manifest;
        manifest.master_seed = config.master_seed;
        manifest.config_json = amc::config_to_json_text(config);
        manifest.started_utc = amc::utc_timestamp_now();

        amc::ExperimentResult result = amc::run_experiment(config);
        manifest.finished_utc = amc::utc_timestamp_now();

        const std::string run_dir = out_dir + "/" + manifest.started_utc + "_" +
                                    std::to_string(config.master_seed);
        amc::emit_results(result, run_dir, manifest);

        std::printf("run dir: %s\n", run_dir.c_str());
        std::printf("%-18s %8s %4s %8s %10s\n", "classifier", "snr_db", "L", "pcc", "mean_ms");
        double worst_dip = 0.0;
        long long errors = 0;
        for (const auto& row : result.cell_results) {
            for (size_t ci = 0; ci < row.size(); ++ci) {
                const amc::CellResult& cell = row[ci];
                std::printf("%-18s %8g %4d %8.4f %10.3f\n",
                            config.classifiers[ci].name.c_str(), cell.snr_db,
                            cell.sensor_count, cell.pcc_value, cell.mean_ms);
                worst_dip = std::max(worst_dip, cell.max_ascent_dip);
                errors += cell.error_count;
            }
        }
        if (worst_dip > 1e-6)
            std::fprintf(stderr, "warning: likelihood ascent violated (max dip %.3e)\n",
                         worst_dip);
        if (errors > 0) std::fprintf(stderr, "warning: %lld classifier errors\n", errors);
        return 0;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
