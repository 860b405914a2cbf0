#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>

#include "amc/frontend.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace amc;
using amc_test::std_pulse;

TEST_CASE("zero waveform gives zero outputs") {
    Waveform w;
    w.samples_per_symbol = 16;
    w.samples.assign((10 + 8) * 16 + 1, {0.0, 0.0});
    MatchedFilterBank bank(w, std_pulse());
    CHECK(bank.symbol_count() == 10);
    for (const auto& v : bank.samples(0.37)) CHECK(std::abs(v) == 0.0);
}

TEST_CASE("eps out of range rejected") {
    Waveform w;
    w.samples_per_symbol = 16;
    w.samples.assign((5 + 8) * 16 + 1, {0.0, 0.0});
    MatchedFilterBank bank(w, std_pulse());
    CHECK_THROWS_AS(bank.samples(-0.01), std::invalid_argument);
    CHECK_THROWS_AS(bank.samples(1.0), std::invalid_argument);
    CHECK_NOTHROW(bank.samples(0.0));
    CHECK_NOTHROW(bank.samples(0.999999));
}

TEST_CASE("matched query recovers a e^{j theta} I_n") {
    auto c = build_constellation("QPSK");
    auto t = amc_test::make_observation(c, amc_test::single_sensor(1.7, 0.4, 0.37), 25, 0.0, 11,
                                        1.0);
    const auto& y = t.obs->banks[0].samples(0.37);
    const std::complex<double> gain = std::polar(1.7, 0.4);
    // Tolerance scales with the gain times accumulated pulse self-interference.
    for (int n = 0; n < 25; ++n)
        CHECK(std::abs(y[n] - gain * c.symbols[t.symbols.indices[n]]) <= 4e-2);
}

TEST_CASE("mismatched query spreads energy away from the symbols") {
    auto c = build_constellation("QPSK");
    auto t = amc_test::make_observation(c, amc_test::single_sensor(1.7, 0.4, 0.37), 25, 0.0, 11,
                                        1.0);
    const auto& y = t.obs->banks[0].samples(0.87);
    const std::complex<double> gain = std::polar(1.7, 0.4);
    double worst = 0.0;
    for (int n = 0; n < 25; ++n)
        worst = std::max(worst, std::abs(y[n] - gain * c.symbols[t.symbols.indices[n]]));
    CHECK(worst > 0.1);
}

TEST_CASE("cache transparency: repeated queries identical") {
    auto c = build_constellation("8PSK");
    auto t = amc_test::make_observation(c, amc_test::single_sensor(1.0, 0.0, 0.5), 20, 1.0, 12);
    auto first = t.obs->banks[0].samples(0.123456);  // copy
    const auto& second = t.obs->banks[0].samples(0.123456);
    REQUIRE(first.size() == second.size());
    for (size_t i = 0; i < first.size(); ++i) CHECK(first[i] == second[i]);

    // sub-quantum query lands on the same cached vector
    const auto& third = t.obs->banks[0].samples(0.1234564);
    for (size_t i = 0; i < first.size(); ++i) CHECK(first[i] == third[i]);
}

TEST_CASE("mf is linear in the waveform") {
    auto c = build_constellation("QPSK");
    auto t1 = amc_test::make_observation(c, amc_test::single_sensor(1.0, 0.2, 0.3), 15, 1.0, 13);
    auto t2 = amc_test::make_observation(c, amc_test::single_sensor(0.8, -1.0, 0.6), 15, 1.0, 14);
    Waveform sum = t1.waveforms[0];
    for (size_t k = 0; k < sum.samples.size(); ++k) sum.samples[k] += t2.waveforms[0].samples[k];
    MatchedFilterBank bank_sum(sum, std_pulse());
    auto y1 = t1.obs->banks[0].samples(0.44);
    auto y2 = t2.obs->banks[0].samples(0.44);
    auto ys = bank_sum.samples(0.44);
    for (int n = 0; n < 15; ++n) CHECK(std::abs(ys[n] - (y1[n] + y2[n])) <= 1e-12);
}

TEST_CASE("no isolated spike where the query hits the sample lattice") {
    // The pulse support is a whole number of samples wide, so queries at
    // multiples of 1/Q align the window with both truncation edges. The
    // output there must match its one-sided limit instead of picking up
    // extra edge taps.
    auto c = build_constellation("QPSK");
    auto t = amc_test::make_observation(c, amc_test::single_sensor(1.3, 0.9, 0.471), 40, 0.0, 16,
                                        1.0);
    MatchedFilterBank& bank = t.obs->banks[0];
    for (double lattice : {0.5, 0.0625, 0.9375}) {
        const auto& at = bank.samples(lattice);
        const auto& left = bank.samples(lattice - 1e-6);
        double gap = 0.0;
        for (int n = 0; n < 40; ++n) gap = std::max(gap, std::abs(at[n] - left[n]));
        CHECK(gap <= 1e-4);
    }
}

TEST_CASE("single active symbol: energy peaks at the true offset") {
    // One nonzero symbol in the middle; |y_0(eps)| over a 100-point grid
    // must peak within one step of the true eps.
    const auto& pulse = std_pulse();
    auto c = build_constellation("BPSK");
    const double true_eps = 0.43;
    SymbolSequence one;
    one.indices.assign(1, 0);
    ScenarioConfig sc;
    sc.symbol_count = 1;
    sc.noise_psd = 0.0;
    Rng rng(15);
    Waveform w = synthesize_received(one, c, {1.0, 0.0, true_eps}, pulse, sc, rng);
    MatchedFilterBank bank(w, pulse);
    double best_eps = 0.0, best = -1.0;
    for (int i = 0; i < 100; ++i) {
        double eps = i / 100.0;
        double mag = std::abs(bank.samples(eps)[0]);
        if (mag > best) {
            best = mag;
            best_eps = eps;
        }
    }
    CHECK(std::abs(best_eps - true_eps) <= 0.01 + 1e-12);
}
