#include "amc/init.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <memory>
#include <stdexcept>

namespace amc {

namespace {

std::string fmt_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

constexpr std::uint64_t kTagSaHypothesis = 0x5a11;

}  // namespace

std::string InitScheme::canonical_string() const {
    switch (kind) {
        case InitKind::PerturbedTruth:
            return "perturbed:" + fmt_double(delta_a) + "," + fmt_double(delta_theta) + "," +
                   fmt_double(delta_eps);
        case InitKind::SimulatedAnnealing:
            return "sa:K=" + std::to_string(sa.iterations) +
                   ",d=" + fmt_double(sa.temperature_param) +
                   ",ga=" + std::to_string(sa.grid_points_a) +
                   ",gt=" + std::to_string(sa.grid_points_theta) +
                   ",ge=" + std::to_string(sa.grid_points_epsilon) +
                   ",q=" + fmt_double(sa.amplitude_upper_quantile);
        case InitKind::Fixed:
            return "fixed:" + fmt_double(fixed_params.amplitude) + "," +
                   fmt_double(fixed_params.phase) + "," + fmt_double(fixed_params.timing);
    }
    throw std::logic_error("InitScheme: unknown kind");
}

ParamVector perturbed_truth_init(const ParamVector& truth, double delta_a, double delta_theta,
                                 double delta_eps, Rng& rng, double floor) {
    if (delta_a < 0 || delta_theta < 0 || delta_eps < 0)
        throw std::invalid_argument("perturbed_truth_init: deltas must be >= 0");
    ParamVector u;
    u.per_sensor.reserve(truth.per_sensor.size());
    for (const auto& t : truth.per_sensor) {
        // Always consume three uniforms per sensor so draw alignment does not
        // depend on which deltas are zero.
        double ua = rng.uniform();
        double ut = rng.uniform();
        double ue = rng.uniform();
        // Zero deltas return the truth coordinate bit-exactly (wrapping would
        // perturb it by an ulp).
        SensorParams p;
        p.amplitude = (delta_a == 0.0) ? t.amplitude : ua * (t.amplitude + delta_a);
        p.amplitude = std::max(p.amplitude, floor);
        p.phase = (delta_theta == 0.0) ? t.phase
                                       : wrap_phase(t.phase + (2.0 * ut - 1.0) * delta_theta);
        p.timing = (delta_eps == 0.0) ? t.timing
                                      : wrap_unit(t.timing + (2.0 * ue - 1.0) * delta_eps);
        u.per_sensor.push_back(p);
    }
    return u;
}

SaGrid build_grid(const SAConfig& config, double sigma) {
    if (!(sigma > 0.0)) throw std::invalid_argument("build_grid: sigma must be positive");
    if (config.grid_points_a < 2 || config.grid_points_theta < 2 || config.grid_points_epsilon < 2)
        throw std::invalid_argument("build_grid: grid counts must be >= 2");
    SaGrid g;
    const double a_u =
        sigma * std::sqrt(-2.0 * std::log(1.0 - config.amplitude_upper_quantile));
    const double da = a_u / config.grid_points_a;
    for (int i = 1; i <= config.grid_points_a; ++i) g.amplitudes.push_back(i * da);
    for (int i = 0; i < config.grid_points_theta; ++i)
        g.phases.push_back(-kPi + 2.0 * kPi * i / config.grid_points_theta);
    for (int i = 0; i < config.grid_points_epsilon; ++i)
        g.timings.push_back(static_cast<double>(i) / config.grid_points_epsilon);
    return g;
}

ParamVector sa_init(ObservationSet& obs, const ConstellationSet& constellation,
                    const SAConfig& config, double sigma, Rng& rng, SaTrace* trace) {
    if (config.iterations < 2) throw std::invalid_argument("sa_init: iterations must be >= 2");
    const SaGrid grid = build_grid(config, sigma);
    const int n_sensors = obs.sensor_count();
    const int sizes[3] = {static_cast<int>(grid.amplitudes.size()),
                          static_cast<int>(grid.phases.size()),
                          static_cast<int>(grid.timings.size())};

    // State = grid indices per sensor: [a, theta, eps].
    std::vector<std::array<int, 3>> idx(n_sensors);
    for (auto& s : idx)
        for (int c = 0; c < 3; ++c) s[c] = rng.uniform_int(sizes[c]);

    auto to_params = [&](const std::vector<std::array<int, 3>>& state) {
        ParamVector u;
        u.per_sensor.resize(n_sensors);
        for (int l = 0; l < n_sensors; ++l) {
            u.per_sensor[l].amplitude = grid.amplitudes[state[l][0]];
            u.per_sensor[l].phase = grid.phases[state[l][1]];
            u.per_sensor[l].timing = grid.timings[state[l][2]];
        }
        return u;
    };

    int evals = 0;
    auto lambda_of = [&](const std::vector<std::array<int, 3>>& state) {
        ++evals;
        return log_likelihood(obs, to_params(state), constellation);
    };

    double lambda_cur = lambda_of(idx);
    std::vector<std::array<int, 3>> best = idx;
    double lambda_best = lambda_cur;
    const double lambda_initial = lambda_cur;

    for (int k = 2; k <= config.iterations; ++k) {
        const double temperature = config.temperature_param / std::log(static_cast<double>(k));

        // One-hop neighbor: one sensor, one coordinate, +-1 step.
        std::vector<std::array<int, 3>> prop = idx;
        const int l = rng.uniform_int(n_sensors);
        const int c = rng.uniform_int(3);
        const int dir = rng.uniform_int(2) == 0 ? -1 : 1;
        int j = prop[l][c] + dir;
        if (c == 1) {  // theta is an angle: wrap
            if (j < 0) j = sizes[c] - 1;
            if (j >= sizes[c]) j = 0;
        } else {  // a, eps: reflect
            if (j < 0) j = -j;
            if (j >= sizes[c]) j = 2 * sizes[c] - 2 - j;
        }
        prop[l][c] = j;

        const double lambda_new = lambda_of(prop);
        bool accept = lambda_new >= lambda_cur;
        if (!accept) {
            double p = (lambda_cur == 0.0)
                           ? 1.0
                           : std::exp((lambda_new - lambda_cur) /
                                      (temperature * std::abs(lambda_cur)));
            accept = rng.uniform() < p;
        }
        if (accept) {
            idx = prop;
            lambda_cur = lambda_new;
        }
        if (lambda_new > lambda_best) {
            lambda_best = lambda_new;
            best = prop;
        }
    }

    if (trace) {
        trace->evaluations = evals;
        trace->lambda_initial = lambda_initial;
        trace->lambda_best = lambda_best;
    }
    return to_params(best);
}

Initializer make_initializer(const InitScheme& scheme, const InitContext& ctx) {
    switch (scheme.kind) {
        case InitKind::PerturbedTruth: {
            Rng rng(ctx.seed);
            ParamVector u0 = perturbed_truth_init(ctx.truth, scheme.delta_a, scheme.delta_theta,
                                                  scheme.delta_eps, rng, ctx.amplitude_floor);
            return [u0](ObservationSet&, const ConstellationSet&, int) { return u0; };
        }
        case InitKind::Fixed: {
            ParamVector u0;
            u0.per_sensor.assign(ctx.truth.per_sensor.size(), scheme.fixed_params);
            for (auto& p : u0.per_sensor) p.amplitude = std::max(p.amplitude, ctx.amplitude_floor);
            return [u0](ObservationSet&, const ConstellationSet&, int) { return u0; };
        }
        case InitKind::SimulatedAnnealing: {
            SAConfig sa = scheme.sa;
            double sigma = ctx.rayleigh_scale;
            std::uint64_t seed = ctx.seed;
            return [sa, sigma, seed](ObservationSet& obs, const ConstellationSet& c,
                                     int hyp_index) {
                Rng rng(seed_combine({seed, kTagSaHypothesis,
                                      static_cast<std::uint64_t>(hyp_index)}));
                return sa_init(obs, c, sa, sigma, rng);
            };
        }
    }
    throw std::logic_error("make_initializer: unknown scheme kind");
}

}  // namespace amc
