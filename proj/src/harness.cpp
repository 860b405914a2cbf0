#include "amc/harness.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace amc {

namespace {

constexpr std::uint64_t kTagObservation = 0x0b5e;
constexpr std::uint64_t kTagInit = 0x1217;

std::uint64_t observation_seed(const ExperimentConfig& config, double snr_db, int sensor_count,
                               int trial_index, int true_format) {
    return seed_combine({config.master_seed, kTagObservation, double_bits(snr_db),
                         static_cast<std::uint64_t>(sensor_count),
                         static_cast<std::uint64_t>(trial_index),
                         static_cast<std::uint64_t>(true_format)});
}

GemConfig variant_config(const ClassifierSpec& spec) {
    GemConfig g = spec.gem;
    switch (spec.kind) {
        case ClassifierKind::Gem:
            g.variant = GemVariant::Gem;
            break;
        case ClassifierKind::EmJoint:
            g.variant = GemVariant::EmJoint;
            break;
        case ClassifierKind::ClairvoyantEm:
        case ClassifierKind::ZeroOffsetEm:
            g.variant = GemVariant::KnownEpsilon;
            break;
        case ClassifierKind::Clairvoyant:
            break;
    }
    return g;
}

}  // namespace

std::string classifier_kind_name(ClassifierKind kind) {
    switch (kind) {
        case ClassifierKind::Clairvoyant: return "clairvoyant";
        case ClassifierKind::ClairvoyantEm: return "clairvoyant_em";
        case ClassifierKind::Gem: return "gem";
        case ClassifierKind::EmJoint: return "em_joint";
        case ClassifierKind::ZeroOffsetEm: return "zero_offset_em";
    }
    throw std::logic_error("classifier_kind_name: unknown kind");
}

double pcc(const ConfusionMatrix& matrix) {
    if (matrix.size == 0) throw std::invalid_argument("pcc: empty matrix");
    double acc = 0.0;
    for (int i = 0; i < matrix.size; ++i) {
        long long rs = matrix.row_sum(i);
        if (rs <= 0) throw std::invalid_argument("pcc: empty row in confusion matrix");
        acc += static_cast<double>(matrix.at(i, i)) / static_cast<double>(rs);
    }
    return acc / matrix.size;
}

TrialOutcome run_trial(const ExperimentConfig& config, const PulseSpec& pulse,
                       const HypothesisSet& hypotheses, double snr_db, int sensor_count,
                       int trial_index, int true_format) {
    const int n_classifiers = static_cast<int>(config.classifiers.size());
    TrialOutcome out;
    out.decisions.assign(n_classifiers, -1);
    out.elapsed_ms.assign(n_classifiers, 0.0);
    out.ascent_dips.assign(n_classifiers, 0.0);
    out.errors.assign(n_classifiers, "");

    const double snr_linear = std::pow(10.0, snr_db / 10.0);
    const double sigma = std::sqrt(snr_linear / 2.0 * config.noise_psd);

    ScenarioConfig scenario;
    scenario.sensor_count = sensor_count;
    scenario.symbol_count = config.symbol_count;
    scenario.symbol_duration = pulse.symbol_duration;
    scenario.noise_psd = config.noise_psd;
    scenario.rayleigh_scale = sigma;

    Rng rng(observation_seed(config, snr_db, sensor_count, trial_index, true_format));
    const ConstellationSet& true_set = hypotheses.constellations[true_format];
    SymbolSequence symbols = draw_symbols(config.symbol_count, true_set.cardinality, rng);

    ParamVector truth;
    std::vector<Waveform> waveforms;
    truth.per_sensor.reserve(sensor_count);
    waveforms.reserve(sensor_count);
    for (int l = 0; l < sensor_count; ++l) {
        SensorParams p = draw_sensor_params(sigma, rng);
        truth.per_sensor.push_back(p);
        waveforms.push_back(synthesize_received(symbols, true_set, p, pulse, scenario, rng));
    }

    for (int ci = 0; ci < n_classifiers; ++ci) {
        const ClassifierSpec& spec = config.classifiers[ci];
        const GemConfig gem_config = variant_config(spec);
        InitContext ctx;
        ctx.truth = truth;
        ctx.rayleigh_scale = sigma;
        ctx.amplitude_floor = gem_config.amplitude_floor;
        ctx.seed = seed_combine({config.master_seed, kTagInit, double_bits(snr_db),
                                 static_cast<std::uint64_t>(sensor_count),
                                 static_cast<std::uint64_t>(trial_index),
                                 static_cast<std::uint64_t>(true_format),
                                 hash_string(spec.init.canonical_string())});

        auto t0 = std::chrono::steady_clock::now();
        try {
            ObservationSet obs(waveforms, pulse, config.noise_psd);
            if (spec.kind == ClassifierKind::Clairvoyant) {
                out.decisions[ci] = clairvoyant_classify(obs, truth, hypotheses);
            } else {
                ClassifyOutcome outcome;
                switch (spec.kind) {
                    case ClassifierKind::ClairvoyantEm:
                        outcome = clairvoyant_em_classify(obs, hypotheses, spec.init, ctx,
                                                          gem_config);
                        break;
                    case ClassifierKind::ZeroOffsetEm:
                        outcome = zero_offset_em_classify(obs, hypotheses, spec.init, ctx,
                                                          gem_config);
                        break;
                    default:
                        outcome = classify_hml(obs, hypotheses,
                                               make_initializer(spec.init, ctx), gem_config);
                        break;
                }
                out.decisions[ci] = outcome.decision;
                double dip = 0.0;
                for (const auto& r : outcome.per_hypothesis)
                    dip = std::max(dip, max_trace_dip(r));
                out.ascent_dips[ci] = dip;
            }
        } catch (const std::exception& e) {
            out.decisions[ci] = -1;
            out.errors[ci] = e.what();
        }
        auto t1 = std::chrono::steady_clock::now();
        out.elapsed_ms[ci] = std::chrono::duration<double, std::milli>(t1 - t0).count();
    }
    return out;
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
    if (config.trials < 1) throw std::invalid_argument("run_experiment: trials must be >= 1");
    if (config.snr_db_list.empty() || config.sensor_counts.empty() || config.formats.empty() ||
        config.classifiers.empty())
        throw std::invalid_argument("run_experiment: empty snr/sensor/format/classifier list");
    for (size_t i = 0; i < config.classifiers.size(); ++i)
        for (size_t j = i + 1; j < config.classifiers.size(); ++j)
            if (config.classifiers[i].name == config.classifiers[j].name)
                throw std::invalid_argument("run_experiment: duplicate classifier name \"" +
                                            config.classifiers[i].name + "\"");

    const PulseSpec pulse =
        rrc_pulse(config.rolloff, config.span_symbols, config.samples_per_symbol);
    const HypothesisSet hypotheses = build_hypothesis_set(config.formats);
    const int n_formats = hypotheses.count();
    const int n_classifiers = static_cast<int>(config.classifiers.size());
    const int n_trials = config.trials;

    ExperimentResult result;
    result.config = config;

    for (double snr_db : config.snr_db_list) {
        for (int sensor_count : config.sensor_counts) {
            // Slot tables: [classifier][format*trials]; each work item fills
            // its own slots, so execution order is irrelevant.
            const int n_items = n_formats * n_trials;
            std::vector<std::vector<int>> decisions(
                n_classifiers, std::vector<int>(n_items, -1));
            std::vector<std::vector<double>> elapsed(
                n_classifiers, std::vector<double>(n_items, 0.0));
            std::vector<std::vector<double>> dips(
                n_classifiers, std::vector<double>(n_items, 0.0));
            std::vector<std::vector<std::string>> errors(n_classifiers);

            std::atomic<int> next{0};
            std::vector<std::vector<std::vector<std::string>>> worker_errors;
            auto worker = [&](std::vector<std::vector<std::string>>& my_errors) {
                for (;;) {
                    int item = next.fetch_add(1);
                    if (item >= n_items) break;
                    int format = item / n_trials;
                    int trial = item % n_trials;
                    TrialOutcome t = run_trial(config, pulse, hypotheses, snr_db, sensor_count,
                                               trial, format);
                    for (int ci = 0; ci < n_classifiers; ++ci) {
                        decisions[ci][item] = t.decisions[ci];
                        elapsed[ci][item] = t.elapsed_ms[ci];
                        dips[ci][item] = t.ascent_dips[ci];
                        if (!t.errors[ci].empty() && my_errors[ci].size() < 8)
                            my_errors[ci].push_back(t.errors[ci]);
                    }
                }
            };

            const int n_threads = std::max(1, config.threads);
            worker_errors.assign(n_threads,
                                 std::vector<std::vector<std::string>>(n_classifiers));
            if (n_threads == 1) {
                worker(worker_errors[0]);
            } else {
                std::vector<std::thread> pool;
                for (int t = 0; t < n_threads; ++t)
                    pool.emplace_back([&, t] { worker(worker_errors[t]); });
                for (auto& th : pool) th.join();
            }

            std::vector<CellResult> row(n_classifiers);
            for (int ci = 0; ci < n_classifiers; ++ci) {
                CellResult& cell = row[ci];
                cell.snr_db = snr_db;
                cell.sensor_count = sensor_count;
                cell.confusion.size = n_formats;
                cell.confusion.counts.assign(static_cast<size_t>(n_formats) * n_formats, 0);
                cell.decisions.assign(n_formats, std::vector<int>(n_trials, -1));
                double ms_sum = 0.0;
                for (int item = 0; item < n_items; ++item) {
                    int format = item / n_trials;
                    int trial = item % n_trials;
                    int d = decisions[ci][item];
                    cell.decisions[format][trial] = d;
                    if (d >= 0)
                        ++cell.confusion.counts[static_cast<size_t>(format) * n_formats + d];
                    else
                        ++cell.error_count;
                    ms_sum += elapsed[ci][item];
                    cell.max_ascent_dip = std::max(cell.max_ascent_dip, dips[ci][item]);
                }
                cell.mean_ms = ms_sum / n_items;
                for (const auto& we : worker_errors)
                    for (const auto& msg : we[ci])
                        if (cell.error_messages.size() < 8) cell.error_messages.push_back(msg);
                cell.per_format_pcc.resize(n_formats);
                for (int i = 0; i < n_formats; ++i) {
                    long long rs = cell.confusion.row_sum(i);
                    cell.per_format_pcc[i] =
                        rs > 0 ? static_cast<double>(cell.confusion.at(i, i)) / rs : 0.0;
                }
                cell.pcc_value = pcc(cell.confusion);
            }
            result.cell_results.push_back(std::move(row));
        }
    }
    return result;
}

}  // namespace amc
