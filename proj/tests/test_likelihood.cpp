#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "amc/likelihood.hpp"
#include "doctest.h"
#include "helpers.hpp"
#include "oracle_helpers.hpp"

using namespace amc;

namespace {

void check_against_oracle(ObservationSet& obs, const ParamVector& u, const ConstellationSet& c) {
    const double got = log_likelihood(obs, u, c);
    const double want = amc_test::brute_force_log_likelihood(obs, u, c);
    CHECK(std::abs(got - want) <= 1e-9 * std::max(1.0, std::abs(want)));
}

}  // namespace

TEST_CASE("marginal log-likelihood matches sequence enumeration") {
    Rng rng(21);
    struct Case {
        const char* format;
        int sensors;
        int symbols;
    };
    const Case cases[] = {
        {"BPSK", 1, 2}, {"BPSK", 2, 3}, {"QPSK", 1, 3}, {"QPSK", 2, 3},
        {"8PSK", 1, 2}, {"8QAM", 1, 2}, {"16QAM", 1, 2}, {"QPSK", 2, 2},
    };
    for (const auto& cs : cases) {
        auto c = build_constellation(cs.format);
        for (int rep = 0; rep < 3; ++rep) {
            auto truth = amc_test::random_params(cs.sensors, 1.0, rng);
            auto t = amc_test::make_observation(c, truth, cs.symbols, 1.0,
                                                rng.uniform_int(1 << 30));
            check_against_oracle(*t.obs, truth, c);
            // also at a mismatched parameter point
            auto off = amc_test::random_params(cs.sensors, 1.0, rng);
            check_against_oracle(*t.obs, off, c);
        }
    }
}

TEST_CASE("single-point constellation reduces to a coherent likelihood") {
    ConstellationSet c;
    c.format_id = "CW";
    c.symbols = {{1.0, 0.0}};
    c.cardinality = 1;
    Rng rng(22);
    auto truth = amc_test::random_params(2, 1.0, rng);
    auto t = amc_test::make_observation(c, truth, 4, 1.0, 23);
    check_against_oracle(*t.obs, truth, c);
}

TEST_CASE("zero amplitudes score exactly zero; zero waveform has a closed form") {
    auto c = build_constellation("16QAM");
    ParamVector u;
    u.per_sensor = {{1.0, 0.3, 0.2}, {2.0, -0.7, 0.9}};
    auto t = amc_test::make_observation(c, u, 6, 1.0, 24);

    // With all amplitudes zero every per-symbol exponent vanishes, so the
    // marginal term is ln M per symbol and cancels the -N ln M constant up to
    // summation rounding.
    ParamVector zero_gain;
    zero_gain.per_sensor = {{0.0, 0.0, 0.0}, {0.0, 0.0, 0.0}};
    CHECK(std::abs(log_likelihood(*t.obs, zero_gain, c)) <= 1e-12);

    // A zero waveform leaves only the energy penalty, which has a closed form.
    std::vector<Waveform> ws(2);
    for (auto& w : ws) {
        w.samples_per_symbol = 16;
        w.samples.assign((6 + 8) * 16 + 1, {0.0, 0.0});
    }
    ObservationSet obs(ws, amc_test::std_pulse(), 1.0);
    const double aa =
        u.per_sensor[0].amplitude * u.per_sensor[0].amplitude +
        u.per_sensor[1].amplitude * u.per_sensor[1].amplitude;
    const double coef = obs.pulse_energy / obs.noise_psd * aa;
    double per_symbol = 0.0;
    for (const auto& s : c.symbols) per_symbol += std::exp(-coef * std::norm(s));
    const double want = 6.0 * (std::log(per_symbol) - std::log((double)c.cardinality));
    const double got = log_likelihood(obs, u, c);
    CHECK(std::abs(got - want) <= 1e-9 * std::max(1.0, std::abs(want)));
}

TEST_CASE("likelihood is 2*pi periodic in phase") {
    auto c = build_constellation("8PSK");
    Rng rng(25);
    auto truth = amc_test::random_params(2, 1.0, rng);
    auto t = amc_test::make_observation(c, truth, 20, 1.0, 26);
    ParamVector shifted = truth;
    shifted.per_sensor[0].phase += 2.0 * kPi;
    shifted.per_sensor[1].phase -= 2.0 * kPi;
    const double a = log_likelihood(*t.obs, truth, c);
    const double b = log_likelihood(*t.obs, shifted, c);
    CHECK(std::abs(a - b) <= 1e-9 * std::max(1.0, std::abs(a)));
}

TEST_CASE("PSK likelihood is invariant to symbol-set rotations of the phase") {
    // Rotating the phase by a multiple of 2*pi/M permutes a PSK alphabet,
    // leaving the marginal likelihood unchanged.
    for (const char* fmt : {"BPSK", "QPSK", "8PSK"}) {
        auto c = build_constellation(fmt);
        Rng rng(27);
        auto truth = amc_test::random_params(1, 1.0, rng);
        auto t = amc_test::make_observation(c, truth, 15, 1.0, 28);
        const double base = log_likelihood(*t.obs, truth, c);
        for (int m = 1; m < c.cardinality; ++m) {
            ParamVector rot = truth;
            rot.per_sensor[0].phase =
                wrap_phase(truth.per_sensor[0].phase + 2.0 * kPi * m / c.cardinality);
            const double v = log_likelihood(*t.obs, rot, c);
            CHECK(std::abs(v - base) <= 1e-9 * std::max(1.0, std::abs(base)));
        }
    }
}

TEST_CASE("exponent matrix agrees with the scalar evaluation") {
    auto c = build_constellation("QPSK");
    Rng rng(29);
    auto truth = amc_test::random_params(2, 1.0, rng);
    auto t = amc_test::make_observation(c, truth, 12, 1.0, 30);
    std::vector<double> ex;
    const double lam = likelihood_exponents(*t.obs, truth, c, ex);
    CHECK(lam == log_likelihood(*t.obs, truth, c));
    REQUIRE((int)ex.size() == 12 * c.cardinality);
    // reconstruct: sum_n logsumexp_m(row) - N ln M
    double acc = 0.0;
    for (int n = 0; n < 12; ++n) {
        double mx = ex[n * c.cardinality];
        for (int m = 1; m < c.cardinality; ++m) mx = std::max(mx, ex[n * c.cardinality + m]);
        double s = 0.0;
        for (int m = 0; m < c.cardinality; ++m) s += std::exp(ex[n * c.cardinality + m] - mx);
        acc += mx + std::log(s);
    }
    acc -= 12.0 * std::log((double)c.cardinality);
    CHECK(std::abs(acc - lam) <= 1e-9 * std::max(1.0, std::abs(lam)));
}

TEST_CASE("dimension mismatches rejected") {
    auto c = build_constellation("QPSK");
    Rng rng(31);
    auto truth = amc_test::random_params(2, 1.0, rng);
    auto t = amc_test::make_observation(c, truth, 8, 1.0, 32);
    ParamVector wrong;
    wrong.per_sensor = {{1.0, 0.0, 0.0}};
    CHECK_THROWS_AS(log_likelihood(*t.obs, wrong, c), std::invalid_argument);
}
