#include "amc/config_io.hpp"

#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace amc {

namespace {

using nlohmann::json;

[[noreturn]] void bad_key(const std::string& context, const std::string& key,
                          const std::string& what) {
    throw std::invalid_argument("config: " + context + "." + key + ": " + what);
}

void reject_unknown(const json& obj, const std::string& context,
                    std::initializer_list<const char*> allowed) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool known = false;
        for (const char* k : allowed)
            if (it.key() == k) {
                known = true;
                break;
            }
        if (!known) bad_key(context, it.key(), "unknown key");
    }
}

template <typename T>
T get_or(const json& obj, const std::string& context, const char* key, T fallback) {
    if (!obj.contains(key)) return fallback;
    try {
        return obj.at(key).get<T>();
    } catch (const json::exception&) {
        bad_key(context, key, "type mismatch");
    }
}

std::string fmt_g(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%g", v);
    return buf;
}

InitScheme init_from_json(const json& j, const std::string& context) {
    reject_unknown(j, context,
                   {"type", "delta_a", "delta_theta", "delta_eps", "grid", "iterations",
                    "temperature", "grid_a", "grid_theta", "grid_eps", "quantile", "amplitude",
                    "phase", "timing"});
    InitScheme s;
    std::string type = get_or<std::string>(j, context, "type", "perturbed");
    if (type == "perturbed") {
        s.kind = InitKind::PerturbedTruth;
        s.delta_a = get_or(j, context, "delta_a", s.delta_a);
        s.delta_theta = get_or(j, context, "delta_theta", s.delta_theta);
        s.delta_eps = get_or(j, context, "delta_eps", s.delta_eps);
        if (s.delta_a < 0) bad_key(context, "delta_a", "must be >= 0");
        if (s.delta_theta < 0) bad_key(context, "delta_theta", "must be >= 0");
        if (s.delta_eps < 0) bad_key(context, "delta_eps", "must be >= 0");
    } else if (type == "sa") {
        s.kind = InitKind::SimulatedAnnealing;
        std::string grid = get_or<std::string>(j, context, "grid", "uniform");
        if (grid == "uniform") {
            s.sa.grid_points_a = 10;
            s.sa.grid_points_theta = 10;
            s.sa.grid_points_epsilon = 10;
        } else if (grid == "nonuniform") {
            s.sa.grid_points_a = 5;
            s.sa.grid_points_theta = 20;
            s.sa.grid_points_epsilon = 10;
        } else {
            bad_key(context, "grid", "must be 'uniform' or 'nonuniform'");
        }
        s.sa.iterations = get_or(j, context, "iterations", s.sa.iterations);
        s.sa.temperature_param = get_or(j, context, "temperature", s.sa.temperature_param);
        s.sa.grid_points_a = get_or(j, context, "grid_a", s.sa.grid_points_a);
        s.sa.grid_points_theta = get_or(j, context, "grid_theta", s.sa.grid_points_theta);
        s.sa.grid_points_epsilon = get_or(j, context, "grid_eps", s.sa.grid_points_epsilon);
        s.sa.amplitude_upper_quantile = get_or(j, context, "quantile",
                                               s.sa.amplitude_upper_quantile);
        if (s.sa.iterations < 2) bad_key(context, "iterations", "must be >= 2");
        if (s.sa.grid_points_a < 2 || s.sa.grid_points_theta < 2 || s.sa.grid_points_epsilon < 2)
            bad_key(context, "grid_*", "grid counts must be >= 2");
        if (!(s.sa.amplitude_upper_quantile > 0.0 && s.sa.amplitude_upper_quantile < 1.0))
            bad_key(context, "quantile", "must lie in (0, 1)");
    } else if (type == "fixed") {
        s.kind = InitKind::Fixed;
        s.fixed_params.amplitude = get_or(j, context, "amplitude", 1.0);
        s.fixed_params.phase = get_or(j, context, "phase", 0.0);
        s.fixed_params.timing = get_or(j, context, "timing", 0.0);
        if (!(s.fixed_params.amplitude > 0)) bad_key(context, "amplitude", "must be > 0");
        if (s.fixed_params.timing < 0 || s.fixed_params.timing >= 1)
            bad_key(context, "timing", "must lie in [0, 1)");
    } else {
        bad_key(context, "type", "must be 'perturbed', 'sa', or 'fixed'");
    }
    return s;
}

json init_to_json(const InitScheme& s) {
    json j;
    switch (s.kind) {
        case InitKind::PerturbedTruth:
            j["type"] = "perturbed";
            j["delta_a"] = s.delta_a;
            j["delta_theta"] = s.delta_theta;
            j["delta_eps"] = s.delta_eps;
            break;
        case InitKind::SimulatedAnnealing:
            j["type"] = "sa";
            j["iterations"] = s.sa.iterations;
            j["temperature"] = s.sa.temperature_param;
            j["grid_a"] = s.sa.grid_points_a;
            j["grid_theta"] = s.sa.grid_points_theta;
            j["grid_eps"] = s.sa.grid_points_epsilon;
            j["quantile"] = s.sa.amplitude_upper_quantile;
            break;
        case InitKind::Fixed:
            j["type"] = "fixed";
            j["amplitude"] = s.fixed_params.amplitude;
            j["phase"] = s.fixed_params.phase;
            j["timing"] = s.fixed_params.timing;
            break;
    }
    return j;
}

GemConfig gem_from_json(const json& j, const std::string& context) {
    reject_unknown(j, context,
                   {"stop_delta", "max_iterations", "epsilon_grid", "epsilon_refine_tol",
                    "amplitude_floor", "grid_theta", "grid_eps"});
    GemConfig g;
    g.stop_delta = get_or(j, context, "stop_delta", g.stop_delta);
    g.max_iterations = get_or(j, context, "max_iterations", g.max_iterations);
    g.epsilon_grid = get_or(j, context, "epsilon_grid", g.epsilon_grid);
    g.epsilon_refine_tol = get_or(j, context, "epsilon_refine_tol", g.epsilon_refine_tol);
    g.amplitude_floor = get_or(j, context, "amplitude_floor", g.amplitude_floor);
    g.grid_theta = get_or(j, context, "grid_theta", g.grid_theta);
    g.grid_eps = get_or(j, context, "grid_eps", g.grid_eps);
    if (!(g.stop_delta > 0)) bad_key(context, "stop_delta", "must be > 0");
    if (g.max_iterations < 1) bad_key(context, "max_iterations", "must be >= 1");
    if (g.epsilon_grid < 2) bad_key(context, "epsilon_grid", "must be >= 2");
    if (!(g.epsilon_refine_tol > 0)) bad_key(context, "epsilon_refine_tol", "must be > 0");
    if (!(g.amplitude_floor > 0)) bad_key(context, "amplitude_floor", "must be > 0");
    if (g.grid_theta < 1) bad_key(context, "grid_theta", "must be >= 1");
    if (g.grid_eps < 2) bad_key(context, "grid_eps", "must be >= 2");
    return g;
}

json gem_to_json(const GemConfig& g) {
    json j;
    j["stop_delta"] = g.stop_delta;
    j["max_iterations"] = g.max_iterations;
    j["epsilon_grid"] = g.epsilon_grid;
    j["epsilon_refine_tol"] = g.epsilon_refine_tol;
    j["amplitude_floor"] = g.amplitude_floor;
    j["grid_theta"] = g.grid_theta;
    j["grid_eps"] = g.grid_eps;
    return j;
}

ClassifierKind kind_from_name(const std::string& name, const std::string& context) {
    if (name == "clairvoyant") return ClassifierKind::Clairvoyant;
    if (name == "clairvoyant_em") return ClassifierKind::ClairvoyantEm;
    if (name == "gem") return ClassifierKind::Gem;
    if (name == "em_joint") return ClassifierKind::EmJoint;
    if (name == "zero_offset_em") return ClassifierKind::ZeroOffsetEm;
    bad_key(context, "kind", "unknown classifier kind '" + name + "'");
}

}  // namespace

ExperimentConfig parse_config_text(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("config: invalid JSON: ") + e.what());
    }
    if (!j.is_object()) throw std::invalid_argument("config: top level must be an object");
    reject_unknown(j, "root",
                   {"snr_db", "sensors", "symbols", "formats", "trials", "seed",
                    "samples_per_symbol", "rolloff", "span", "noise_psd", "threads",
                    "classifiers"});

    ExperimentConfig c;
    c.snr_db_list = get_or(j, "root", "snr_db", c.snr_db_list);
    c.sensor_counts = get_or(j, "root", "sensors", c.sensor_counts);
    c.symbol_count = get_or(j, "root", "symbols", c.symbol_count);
    c.formats = get_or(j, "root", "formats", c.formats);
    c.trials = get_or(j, "root", "trials", c.trials);
    c.master_seed = get_or(j, "root", "seed", c.master_seed);
    c.samples_per_symbol = get_or(j, "root", "samples_per_symbol", c.samples_per_symbol);
    c.rolloff = get_or(j, "root", "rolloff", c.rolloff);
    c.span_symbols = get_or(j, "root", "span", c.span_symbols);
    c.noise_psd = get_or(j, "root", "noise_psd", c.noise_psd);
    c.threads = get_or(j, "root", "threads", c.threads);

    if (c.snr_db_list.empty()) bad_key("root", "snr_db", "must be nonempty");
    if (c.sensor_counts.empty()) bad_key("root", "sensors", "must be nonempty");
    for (int l : c.sensor_counts)
        if (l < 1) bad_key("root", "sensors", "entries must be >= 1");
    if (c.symbol_count < 1) bad_key("root", "symbols", "must be >= 1");
    if (c.formats.empty()) bad_key("root", "formats", "must be nonempty");
    if (c.trials < 1) bad_key("root", "trials", "must be >= 1");
    if (c.samples_per_symbol < 4) bad_key("root", "samples_per_symbol", "must be >= 4");
    if (!(c.rolloff > 0 && c.rolloff <= 1)) bad_key("root", "rolloff", "must lie in (0, 1]");
    if (c.span_symbols < 2 || c.span_symbols % 2 != 0)
        bad_key("root", "span", "must be positive and even");
    if (!(c.noise_psd > 0)) bad_key("root", "noise_psd", "must be > 0");
    if (c.threads < 1) bad_key("root", "threads", "must be >= 1");
    try {
        build_hypothesis_set(c.formats);
    } catch (const std::invalid_argument& e) {
        bad_key("root", "formats", e.what());
    }

    if (j.contains("classifiers")) {
        const json& arr = j.at("classifiers");
        if (!arr.is_array()) bad_key("root", "classifiers", "must be an array");
        for (size_t i = 0; i < arr.size(); ++i) {
            const std::string context = "classifiers[" + std::to_string(i) + "]";
            const json& cj = arr[i];
            if (!cj.is_object()) bad_key("root", context, "must be an object");
            reject_unknown(cj, context, {"name", "kind", "init", "gem"});
            ClassifierSpec spec;
            std::string kind = get_or<std::string>(cj, context, "kind", "gem");
            spec.kind = kind_from_name(kind, context);
            spec.name = get_or<std::string>(cj, context, "name", kind);
            if (cj.contains("init")) spec.init = init_from_json(cj.at("init"), context + ".init");
            if (cj.contains("gem")) spec.gem = gem_from_json(cj.at("gem"), context + ".gem");
            c.classifiers.push_back(std::move(spec));
        }
    }
    if (c.classifiers.empty()) {
        ClassifierSpec spec;
        spec.kind = ClassifierKind::Gem;
        spec.name = "gem";
        c.classifiers.push_back(spec);
    }
    for (size_t i = 0; i < c.classifiers.size(); ++i)
        for (size_t k = i + 1; k < c.classifiers.size(); ++k)
            if (c.classifiers[i].name == c.classifiers[k].name)
                bad_key("root", "classifiers", "duplicate name '" + c.classifiers[i].name + "'");
    return c;
}

ExperimentConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("config: cannot open file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

std::string config_to_json_text(const ExperimentConfig& c) {
    json j;
    j["snr_db"] = c.snr_db_list;
    j["sensors"] = c.sensor_counts;
    j["symbols"] = c.symbol_count;
    j["formats"] = c.formats;
    j["trials"] = c.trials;
    j["seed"] = c.master_seed;
    j["samples_per_symbol"] = c.samples_per_symbol;
    j["rolloff"] = c.rolloff;
    j["span"] = c.span_symbols;
    j["noise_psd"] = c.noise_psd;
    j["threads"] = c.threads;
    json arr = json::array();
    for (const auto& spec : c.classifiers) {
        json cj;
        cj["name"] = spec.name;
        cj["kind"] = classifier_kind_name(spec.kind);
        cj["init"] = init_to_json(spec.init);
        cj["gem"] = gem_to_json(spec.gem);
        arr.push_back(cj);
    }
    j["classifiers"] = arr;
    return j.dump(2);
}

InitScheme parse_init_flag(const std::string& text) {
    InitScheme s;
    auto colon = text.find(':');
    std::string head = text.substr(0, colon);
    std::string args = colon == std::string::npos ? "" : text.substr(colon + 1);
    auto parse_triple = [&](double& a, double& b, double& c) {
        if (std::sscanf(args.c_str(), "%lf,%lf,%lf", &a, &b, &c) != 3)
            throw std::invalid_argument("config: --init '" + text +
                                        "': expected three comma-separated numbers");
    };
    if (head == "perturbed") {
        s.kind = InitKind::PerturbedTruth;
        if (!args.empty()) parse_triple(s.delta_a, s.delta_theta, s.delta_eps);
    } else if (head == "sa") {
        s.kind = InitKind::SimulatedAnnealing;
        if (args == "nonuniform") {
            s.sa.grid_points_a = 5;
            s.sa.grid_points_theta = 20;
            s.sa.grid_points_epsilon = 10;
        } else if (args != "uniform" && !args.empty()) {
            throw std::invalid_argument("config: --init sa grid must be 'uniform' or 'nonuniform'");
        }
    } else if (head == "fixed") {
        s.kind = InitKind::Fixed;
        s.fixed_params = {1.0, 0.0, 0.0};
        if (!args.empty())
            parse_triple(s.fixed_params.amplitude, s.fixed_params.phase, s.fixed_params.timing);
    } else {
        throw std::invalid_argument("config: --init must start with perturbed|sa|fixed");
    }
    return s;
}

std::vector<ClassifierSpec> make_classifier_specs(const std::vector<std::string>& kinds,
                                                  const InitScheme& init) {
    std::vector<ClassifierSpec> specs;
    for (const auto& kind : kinds) {
        ClassifierSpec spec;
        spec.kind = kind_from_name(kind, "--classifiers");
        spec.name = kind;
        spec.init = init;
        specs.push_back(std::move(spec));
    }
    return specs;
}

std::string utc_timestamp_now() {
    std::time_t t = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y%m%dT%H%M%SZ", &tm);
    return buf;
}

namespace {

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("emit_results: cannot open '" + path + "' for writing");
    out << content;
    if (!out) throw std::runtime_error("emit_results: write failed for '" + path + "'");
}

}  // namespace

void emit_results(const ExperimentResult& result, const std::string& out_dir,
                  const RunManifest& manifest) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) throw std::runtime_error("emit_results: cannot create directory '" + out_dir + "'");

    const ExperimentConfig& config = result.config;
    const int n_classifiers = static_cast<int>(config.classifiers.size());

    for (int ci = 0; ci < n_classifiers; ++ci) {
        const std::string& name = config.classifiers[ci].name;
        std::ostringstream csv;
        csv << "snr_db,L";
        for (const auto& f : config.formats) csv << "," << f;
        csv << ",pcc,mean_ms\n";
        for (const auto& row : result.cell_results) {
            const CellResult& cell = row[ci];
            char buf[64];
            csv << fmt_g(cell.snr_db) << "," << cell.sensor_count;
            for (double p : cell.per_format_pcc) {
                std::snprintf(buf, sizeof(buf), "%.6f", p);
                csv << "," << buf;
            }
            std::snprintf(buf, sizeof(buf), "%.6f", cell.pcc_value);
            csv << "," << buf;
            std::snprintf(buf, sizeof(buf), "%.3f", cell.mean_ms);
            csv << "," << buf << "\n";
        }
        write_file(out_dir + "/curves_" + name + ".csv", csv.str());

        for (const auto& row : result.cell_results) {
            const CellResult& cell = row[ci];
            std::ostringstream conf;
            conf << "true_format";
            for (const auto& f : config.formats) conf << "," << f;
            conf << "\n";
            for (int i = 0; i < cell.confusion.size; ++i) {
                conf << config.formats[i];
                for (int k = 0; k < cell.confusion.size; ++k)
                    conf << "," << cell.confusion.at(i, k);
                conf << "\n";
            }
            write_file(out_dir + "/confusion_" + name + "_snr" + fmt_g(cell.snr_db) + "_L" +
                           std::to_string(cell.sensor_count) + ".csv",
                       conf.str());
        }
    }

    nlohmann::json mj;
    mj["artifact_version"] = manifest.artifact_version;
    mj["started_utc"] = manifest.started_utc;
    mj["finished_utc"] = manifest.finished_utc;
    mj["master_seed"] = manifest.master_seed;
    mj["config"] = nlohmann::json::parse(manifest.config_json);
    write_file(out_dir + "/run_manifest.json", mj.dump(2) + "\n");
}

}  // namespace amc
