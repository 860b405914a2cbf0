#include "amc/gem.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace amc {

namespace {

// Normalizes likelihood exponents row-wise into posteriors.
PosteriorTable normalize_rows(std::vector<double>&& exponents, int rows, int cols) {
    PosteriorTable t;
    t.rows = rows;
    t.cols = cols;
    t.probs = std::move(exponents);
    for (int n = 0; n < rows; ++n) {
        double* row = t.probs.data() + static_cast<size_t>(n) * cols;
        double mx = *std::max_element(row, row + cols);
        double acc = 0.0;
        for (int m = 0; m < cols; ++m) {
            row[m] = std::exp(row[m] - mx);
            acc += row[m];
        }
        for (int m = 0; m < cols; ++m) row[m] /= acc;
    }
    return t;
}

double estep_with_loglik(ObservationSet& obs, const ParamVector& u,
                         const ConstellationSet& constellation, PosteriorTable& table) {
    std::vector<double> exponents;
    double lambda = likelihood_exponents(obs, u, constellation, exponents);
    table = normalize_rows(std::move(exponents), obs.n_symbols, constellation.cardinality);
    return lambda;
}

// J factor shared by the eps/theta/joint updates.
std::complex<double> weighted_correlation(const std::vector<std::complex<double>>& y,
                                          const PosteriorStats& stats) {
    std::complex<double> c{0.0, 0.0};
    const size_t n = y.size();
    for (size_t i = 0; i < n; ++i) c += std::conj(stats.symbol_means[i]) * y[i];
    return c;
}

}  // namespace

PosteriorTable e_step(ObservationSet& obs, const ParamVector& u,
                      const ConstellationSet& constellation) {
    PosteriorTable t;
    estep_with_loglik(obs, u, constellation, t);
    return t;
}

PosteriorStats posterior_stats(const PosteriorTable& table,
                               const ConstellationSet& constellation) {
    if (table.cols != constellation.cardinality)
        throw std::invalid_argument("posterior_stats: table/constellation cardinality mismatch");
    PosteriorStats s;
    s.symbol_means.assign(table.rows, {0.0, 0.0});
    s.mean_energy = 0.0;
    for (int n = 0; n < table.rows; ++n) {
        const double* row = table.probs.data() + static_cast<size_t>(n) * table.cols;
        std::complex<double> mean{0.0, 0.0};
        for (int m = 0; m < table.cols; ++m) {
            mean += row[m] * constellation.symbols[m];
            s.mean_energy += row[m] * std::norm(constellation.symbols[m]);
        }
        s.symbol_means[n] = mean;
    }
    return s;
}

double update_epsilon(MatchedFilterBank& bank, const PosteriorStats& stats, double theta_hat,
                      double eps_prev, int grid_points, double refine_tol) {
    const std::complex<double> rot = std::polar(1.0, -theta_hat);
    auto objective = [&](double eps) {
        const auto& y = bank.samples(eps);
        std::complex<double> c = weighted_correlation(y, stats);
        return (rot * c).real();
    };

    double best_eps = eps_prev;
    double best_val = objective(eps_prev);

    const double step = 1.0 / grid_points;
    int best_cell = -1;
    for (int i = 0; i < grid_points; ++i) {
        double eps = i * step;
        double v = objective(eps);
        if (v > best_val) {
            best_val = v;
            best_eps = eps;
            best_cell = i;
        }
    }

    // Golden-section pass inside the winning cell (or around eps_prev when it
    // beat the whole grid). Every evaluated point competes; the best
    // evaluated point is returned, so refinement can only improve.
    double center = (best_cell >= 0) ? best_cell * step : eps_prev;
    double lo = std::max(0.0, center - step);
    double hi = std::min(1.0 - 1e-6, center + step);
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = hi - gr * (hi - lo);
    double x2 = lo + gr * (hi - lo);
    double f1 = objective(x1);
    double f2 = objective(x2);
    auto consider = [&](double eps, double v) {
        if (v > best_val) {
            best_val = v;
            best_eps = eps;
        }
    };
    consider(x1, f1);
    consider(x2, f2);
    while (hi - lo > refine_tol) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + gr * (hi - lo);
            f2 = objective(x2);
            consider(x2, f2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - gr * (hi - lo);
            f1 = objective(x1);
            consider(x1, f1);
        }
    }
    return best_eps;
}

double update_theta(const std::vector<std::complex<double>>& y_vec, const PosteriorStats& stats,
                    double theta_prev) {
    std::complex<double> z = weighted_correlation(y_vec, stats);
    if (z.real() == 0.0 && z.imag() == 0.0) return theta_prev;
    double theta = std::atan2(z.imag(), z.real());
    if (theta >= kPi) theta = -kPi;  // atan2 can return +pi; keep [-pi, pi)
    return theta;
}

double update_amplitude(const std::vector<std::complex<double>>& y_vec,
                        const PosteriorStats& stats, double theta_hat, double pulse_energy,
                        double floor) {
    if (!(stats.mean_energy > 0.0))
        throw std::runtime_error("update_amplitude: degenerate posterior (zero mean energy)");
    std::complex<double> c = weighted_correlation(y_vec, stats);
    double num = (std::polar(1.0, -theta_hat) * c).real();
    return std::max(floor, num / (pulse_energy * stats.mean_energy));
}

std::pair<double, double> em_update_joint(MatchedFilterBank& bank, const PosteriorStats& stats,
                                          int grid_theta, int grid_eps, double theta_prev,
                                          double eps_prev) {
    auto correlation_at = [&](double eps) {
        return weighted_correlation(bank.samples(eps), stats);
    };

    // J(theta, eps) = Re{e^{-j theta} c(eps)}: one correlation per eps, then
    // a cheap theta sweep. Previous pair first so exact ties keep it.
    double best_theta = theta_prev;
    double best_eps = eps_prev;
    std::complex<double> c0 = correlation_at(eps_prev);
    double best_val = (std::polar(1.0, -theta_prev) * c0).real();

    std::vector<double> cos_t(grid_theta), sin_t(grid_theta), theta_val(grid_theta);
    for (int i = 0; i < grid_theta; ++i) {
        double th = -kPi + 2.0 * kPi * i / grid_theta;
        theta_val[i] = th;
        cos_t[i] = std::cos(th);
        sin_t[i] = std::sin(th);
    }
    for (int j = 0; j < grid_eps; ++j) {
        double eps = static_cast<double>(j) / grid_eps;
        std::complex<double> c = correlation_at(eps);
        for (int i = 0; i < grid_theta; ++i) {
            double v = cos_t[i] * c.real() + sin_t[i] * c.imag();
            if (v > best_val) {
                best_val = v;
                best_theta = theta_val[i];
                best_eps = eps;
            }
        }
    }
    return {best_theta, best_eps};
}

GemResult run_gem(ObservationSet& obs, const ConstellationSet& constellation,
                  const ParamVector& u0, const GemConfig& config) {
    GemResult res;
    res.estimate = u0;
    for (auto& p : res.estimate.per_sensor)
        p.amplitude = std::max(p.amplitude, config.amplitude_floor);

    const int n_sensors = obs.sensor_count();
    double lambda_prev = -std::numeric_limits<double>::infinity();
    PosteriorTable table;

    for (int r = 0;; ++r) {
        double lambda = estep_with_loglik(obs, res.estimate, constellation, table);
        res.likelihood_trace.push_back(lambda);
        res.log_likelihood = lambda;
        res.iterations = r;
        if (r > 0 && lambda - lambda_prev <= config.stop_delta) break;
        if (r >= config.max_iterations) break;
        lambda_prev = lambda;

        PosteriorStats stats = posterior_stats(table, constellation);
        for (int l = 0; l < n_sensors; ++l) {
            SensorParams& p = res.estimate.per_sensor[l];
            MatchedFilterBank& bank = obs.banks[l];
            double eps_hat = p.timing;
            double theta_hat;
            if (config.variant == GemVariant::EmJoint) {
                auto [th, ep] = em_update_joint(bank, stats, config.grid_theta, config.grid_eps,
                                                p.phase, p.timing);
                theta_hat = th;
                eps_hat = ep;
            } else {
                if (config.variant == GemVariant::Gem)
                    eps_hat = update_epsilon(bank, stats, p.phase, p.timing,
                                             config.epsilon_grid, config.epsilon_refine_tol);
                theta_hat = update_theta(bank.samples(eps_hat), stats, p.phase);
            }
            const auto& y = bank.samples(eps_hat);
            double a_hat = update_amplitude(y, stats, theta_hat, obs.pulse_energy,
                                            config.amplitude_floor);
            p.timing = eps_hat;
            p.phase = theta_hat;
            p.amplitude = a_hat;
        }
    }
    res.posterior = std::move(table);
    return res;
}

ClassifyOutcome classify_hml(ObservationSet& obs, const HypothesisSet& hypotheses,
                             const Initializer& init, const GemConfig& config,
                             const std::vector<double>& pinned_eps) {
    ClassifyOutcome out;
    out.per_hypothesis.reserve(hypotheses.count());
    double best = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < hypotheses.count(); ++i) {
        const ConstellationSet& c = hypotheses.constellations[i];
        ParamVector u0 = init(obs, c, i);
        if (!pinned_eps.empty()) {
            if (static_cast<int>(pinned_eps.size()) != u0.sensor_count())
                throw std::invalid_argument("classify_hml: pinned_eps length != sensor count");
            for (int l = 0; l < u0.sensor_count(); ++l)
                u0.per_sensor[l].timing = pinned_eps[l];
        }
        GemResult r = run_gem(obs, c, u0, config);
        if (r.log_likelihood > best) {
            best = r.log_likelihood;
            out.decision = i;
        }
        out.per_hypothesis.push_back(std::move(r));
    }
    return out;
}

SymbolSequence map_decode(const GemResult& result) {
    SymbolSequence seq;
    const PosteriorTable& t = result.posterior;
    seq.indices.resize(t.rows);
    for (int n = 0; n < t.rows; ++n) {
        const double* row = t.probs.data() + static_cast<size_t>(n) * t.cols;
        int best = 0;
        for (int m = 1; m < t.cols; ++m)
            if (row[m] > row[best]) best = m;
        seq.indices[n] = best;
    }
    return seq;
}

double max_trace_dip(const GemResult& result) {
    double dip = 0.0;
    for (size_t i = 1; i < result.likelihood_trace.size(); ++i)
        dip = std::max(dip, result.likelihood_trace[i - 1] - result.likelihood_trace[i]);
    return dip;
}

}  // namespace amc
