#pragma once

#include <cstdint>
#include <string>

#include "amc/gem.hpp"

namespace amc {

struct SAConfig {
    int iterations = 200;          // K, total likelihood evaluations
    double temperature_param = 1.6;  // d in T = d / log(k)
    int grid_points_a = 10;
    int grid_points_theta = 10;
    int grid_points_epsilon = 10;
    double amplitude_upper_quantile = 0.99;
};

enum class InitKind { PerturbedTruth, SimulatedAnnealing, Fixed };

struct InitScheme {
    InitKind kind = InitKind::PerturbedTruth;
    // PerturbedTruth
    double delta_a = 5.0;
    double delta_theta = kPi / 10.0;
    double delta_eps = 0.1;
    // SimulatedAnnealing
    SAConfig sa;
    // Fixed (broadcast to all sensors)
    SensorParams fixed_params;

    // Canonical serialization; equal schemes hash equally, so rng streams
    // keyed on it pair up across classifiers that share a scheme.
    std::string canonical_string() const;
};

// Everything an initializer may consult besides the observations.
struct InitContext {
    ParamVector truth;           // synthesis-time parameters
    double rayleigh_scale = 1.0; // sigma, bounds the SA amplitude grid
    std::uint64_t seed = 0;      // stream seed for this classification
    double amplitude_floor = 1e-6;
};

// Per sensor: a0 ~ U[0, a+delta_a] (delta_a = 0 degenerates to a exactly),
// theta0 ~ U[theta +- delta_theta] wrapped to [-pi, pi), eps0 ~
// U[eps +- delta_eps] wrapped to [0, 1); amplitudes floored.
ParamVector perturbed_truth_init(const ParamVector& truth, double delta_a, double delta_theta,
                                 double delta_eps, Rng& rng, double floor);

// Per-sensor product grid for SA. Theta spans [-pi, pi), eps spans [0, 1),
// amplitudes {da, 2 da, ..., a_U} with a_U the Rayleigh quantile
// sigma * sqrt(-2 ln(1 - p)).
struct SaGrid {
    std::vector<double> amplitudes;
    std::vector<double> phases;
    std::vector<double> timings;
};
SaGrid build_grid(const SAConfig& config, double sigma);

struct SaTrace {
    int evaluations = 0;
    double lambda_initial = 0.0;
    double lambda_best = 0.0;
};

// Simulated annealing over the joint 3L-dimensional product grid: random
// start, K-1 single-coordinate one-hop proposals (reflect a/eps, wrap theta)
// with acceptance probability exp((L_new - L_cur)/(T |L_cur|)), T =
// d/log(k); returns the best point visited. Exactly K likelihood
// evaluations.
ParamVector sa_init(ObservationSet& obs, const ConstellationSet& constellation,
                    const SAConfig& config, double sigma, Rng& rng, SaTrace* trace = nullptr);

// Builds the hypothesis-indexed initializer used by classify_hml.
// PerturbedTruth/Fixed draw once (shared by all hypotheses);
// SimulatedAnnealing runs per hypothesis on a derived substream.
Initializer make_initializer(const InitScheme& scheme, const InitContext& ctx);

}  // namespace amc
