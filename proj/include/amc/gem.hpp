#pragma once

#include <functional>
#include <vector>

#include "amc/likelihood.hpp"

namespace amc {

// N x M row-stochastic matrix of per-symbol posterior probabilities.
struct PosteriorTable {
    int rows = 0;
    int cols = 0;
    std::vector<double> probs;  // row-major

    double at(int n, int m) const { return probs[static_cast<size_t>(n) * cols + m]; }
};

struct PosteriorStats {
    std::vector<std::complex<double>> symbol_means;  // I_hat_n
    double mean_energy = 0.0;                        // E_hat_I = sum_n E[|I_n|^2]
};

enum class GemVariant { Gem, EmJoint, KnownEpsilon };

struct GemConfig {
    double stop_delta = 1e-3;       // stop when Lambda improves by <= this
    int max_iterations = 200;
    int epsilon_grid = 50;          // coarse line-search grid points
    double epsilon_refine_tol = 1e-4;  // golden-section interval tolerance
    GemVariant variant = GemVariant::Gem;
    int grid_theta = 60;            // EmJoint only
    int grid_eps = 50;              // EmJoint only
    double amplitude_floor = 1e-6;
};

struct GemResult {
    ParamVector estimate;
    double log_likelihood = 0.0;
    PosteriorTable posterior;   // E-step at the returned estimate
    int iterations = 0;         // parameter-update rounds performed
    std::vector<double> likelihood_trace;  // Lambda(u^(0)), Lambda(u^(1)), ...
};

// Posterior over symbols given current parameters; rows normalized via
// max-subtraction, so they sum to 1 even for extreme exponents.
PosteriorTable e_step(ObservationSet& obs, const ParamVector& u,
                      const ConstellationSet& constellation);

PosteriorStats posterior_stats(const PosteriorTable& table,
                               const ConstellationSet& constellation);

// argmax over eps in [0,1) of J(eps) = Re{e^{-j theta} sum_n I_hat_n^* y_n(eps)}
// via grid scan + golden-section refinement of the winning cell. eps_prev is
// always a candidate (evaluated first; ties keep it), so J never decreases
// across an update.
double update_epsilon(MatchedFilterBank& bank, const PosteriorStats& stats, double theta_hat,
                      double eps_prev, int grid_points, double refine_tol);

// theta maximizing Re{e^{-j theta} z} with z = I_hat^H y: the four-quadrant
// angle of z, in [-pi, pi). Returns theta_prev when z = 0.
double update_theta(const std::vector<std::complex<double>>& y_vec, const PosteriorStats& stats,
                    double theta_prev);

// Exact maximizer of the concave quadratic in a, clamped to >= floor.
// Throws std::runtime_error when mean_energy is zero.
double update_amplitude(const std::vector<std::complex<double>>& y_vec,
                        const PosteriorStats& stats, double theta_hat, double pulse_energy,
                        double floor);

// Exhaustive (theta, eps) grid maximization of the same J; the previous pair
// is an extra candidate evaluated first so the ascent property carries over.
std::pair<double, double> em_update_joint(MatchedFilterBank& bank, const PosteriorStats& stats,
                                          int grid_theta, int grid_eps, double theta_prev,
                                          double eps_prev);

// Coordinate-ascent EM loop: E-step, then per-sensor eps/theta/amplitude
// updates, until the likelihood improvement drops to stop_delta or the
// iteration cap. KnownEpsilon keeps each sensor's eps at its u0 value.
GemResult run_gem(ObservationSet& obs, const ConstellationSet& constellation,
                  const ParamVector& u0, const GemConfig& config);

// Produces u^(0) for hypothesis `hyp_index`; supplied by the init module.
using Initializer =
    std::function<ParamVector(ObservationSet&, const ConstellationSet&, int hyp_index)>;

struct ClassifyOutcome {
    int decision = 0;
    std::vector<GemResult> per_hypothesis;
};

// Runs the initializer + GEM per hypothesis and picks argmax Lambda; ties
// break toward the lowest hypothesis index. If pinned_eps is nonempty, every
// u0 gets its timings overwritten by it (known-epsilon baselines).
ClassifyOutcome classify_hml(ObservationSet& obs, const HypothesisSet& hypotheses,
                             const Initializer& init, const GemConfig& config,
                             const std::vector<double>& pinned_eps = {});

// Per-symbol argmax of the posterior, ties toward the lowest symbol index.
SymbolSequence map_decode(const GemResult& result);

// Largest per-step decrease in the trace (0 if none); ascent-violation probe.
double max_trace_dip(const GemResult& result);

}  // namespace amc
