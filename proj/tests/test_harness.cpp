#include <stdexcept>
#include <vector>

#include "amc/harness.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace amc;

namespace {

ConfusionMatrix make_matrix(int size, std::vector<long long> counts) {
    ConfusionMatrix m;
    m.size = size;
    m.counts = std::move(counts);
    return m;
}

ExperimentConfig small_config() {
    ExperimentConfig cfg;
    cfg.snr_db_list = {5.0};
    cfg.sensor_counts = {1, 2};
    cfg.symbol_count = 30;
    cfg.formats = {"BPSK", "QPSK"};
    cfg.trials = 5;
    cfg.master_seed = 4242;

    ClassifierSpec genie;
    genie.name = "clairvoyant";
    genie.kind = ClassifierKind::Clairvoyant;
    ClassifierSpec gem;
    gem.name = "gem";
    gem.kind = ClassifierKind::Gem;
    cfg.classifiers = {genie, gem};
    return cfg;
}

}  // namespace

TEST_CASE("pcc averages per-class accuracies") {
    CHECK(pcc(make_matrix(2, {7, 0, 0, 3})) == 1.0);
    CHECK(pcc(make_matrix(2, {9, 1, 2, 8})) == doctest::Approx(0.85).epsilon(1e-15));
    ConfusionMatrix uniform = make_matrix(4, std::vector<long long>(16, 25));
    CHECK(pcc(uniform) == doctest::Approx(0.25).epsilon(1e-15));
    CHECK_THROWS_AS(pcc(make_matrix(2, {5, 1, 0, 0})), std::invalid_argument);
}

TEST_CASE("classifier kinds map to stable names") {
    CHECK(classifier_kind_name(ClassifierKind::Clairvoyant) == "clairvoyant");
    CHECK(classifier_kind_name(ClassifierKind::ClairvoyantEm) == "clairvoyant_em");
    CHECK(classifier_kind_name(ClassifierKind::Gem) == "gem");
    CHECK(classifier_kind_name(ClassifierKind::EmJoint) == "em_joint");
    CHECK(classifier_kind_name(ClassifierKind::ZeroOffsetEm) == "zero_offset_em");
}

TEST_CASE("experiment fills every slot and is rerun-identical") {
    ExperimentConfig cfg = small_config();
    ExperimentResult r1 = run_experiment(cfg);
    ExperimentResult r2 = run_experiment(cfg);

    REQUIRE(r1.cell_results.size() == 2);  // 1 snr x 2 sensor counts
    for (int cell = 0; cell < 2; ++cell) {
        REQUIRE(r1.cell_results[cell].size() == 2);  // 2 classifiers
        for (int ci = 0; ci < 2; ++ci) {
            const CellResult& c1 = r1.cell_results[cell][ci];
            const CellResult& c2 = r2.cell_results[cell][ci];
            CHECK(c1.error_count == 0);
            REQUIRE(c1.decisions.size() == 2);
            for (int f = 0; f < 2; ++f) {
                REQUIRE(c1.decisions[f].size() == 5);
                for (int tr = 0; tr < 5; ++tr) {
                    CHECK(c1.decisions[f][tr] >= 0);
                    CHECK(c1.decisions[f][tr] < 2);
                    CHECK(c1.decisions[f][tr] == c2.decisions[f][tr]);
                }
                CHECK(c1.confusion.row_sum(f) == 5);
            }
            CHECK(c1.confusion.counts == c2.confusion.counts);
            CHECK(c1.pcc_value == c2.pcc_value);
            CHECK(c1.pcc_value == pcc(c1.confusion));
            REQUIRE(c1.per_format_pcc.size() == 2);
            CHECK(c1.max_ascent_dip <= 1e-6);
        }
    }

    // cell accessor agrees with the flat layout
    CHECK(&r1.cell(0, 1, 1) == &r1.cell_results[1][1]);
}

TEST_CASE("identical classifier specs produce identical decisions") {
    ExperimentConfig cfg = small_config();
    ClassifierSpec twin = cfg.classifiers[1];  // the gem entry
    twin.name = "gem_twin";
    cfg.classifiers.push_back(twin);
    ExperimentResult r = run_experiment(cfg);
    for (size_t cell = 0; cell < r.cell_results.size(); ++cell) {
        const CellResult& a = r.cell_results[cell][1];
        const CellResult& b = r.cell_results[cell][2];
        CHECK(a.decisions == b.decisions);
    }
}

TEST_CASE("thread count does not change the results") {
    ExperimentConfig cfg = small_config();
    cfg.sensor_counts = {2};
    ExperimentResult serial = run_experiment(cfg);
    cfg.threads = 2;
    ExperimentResult threaded = run_experiment(cfg);
    REQUIRE(serial.cell_results.size() == threaded.cell_results.size());
    for (size_t cell = 0; cell < serial.cell_results.size(); ++cell)
        for (size_t ci = 0; ci < serial.cell_results[cell].size(); ++ci) {
            CHECK(serial.cell_results[cell][ci].decisions ==
                  threaded.cell_results[cell][ci].decisions);
            CHECK(serial.cell_results[cell][ci].confusion.counts ==
                  threaded.cell_results[cell][ci].confusion.counts);
        }
}

TEST_CASE("clairvoyant reference is near-perfect in an easy cell") {
    ExperimentConfig cfg;
    cfg.snr_db_list = {15.0};
    cfg.sensor_counts = {2};
    cfg.symbol_count = 60;
    cfg.formats = {"BPSK", "QPSK"};
    cfg.trials = 10;
    ClassifierSpec genie;
    genie.name = "clairvoyant";
    genie.kind = ClassifierKind::Clairvoyant;
    cfg.classifiers = {genie};
    ExperimentResult r = run_experiment(cfg);
    CHECK(r.cell_results[0][0].pcc_value >= 0.95);
}

TEST_CASE("config validation rejects bad setups") {
    ExperimentConfig cfg = small_config();
    cfg.trials = 0;
    CHECK_THROWS_AS(run_experiment(cfg), std::invalid_argument);
    cfg = small_config();
    cfg.classifiers.clear();
    CHECK_THROWS_AS(run_experiment(cfg), std::invalid_argument);
    cfg = small_config();
    cfg.classifiers[1].name = cfg.classifiers[0].name;
    CHECK_THROWS_AS(run_experiment(cfg), std::invalid_argument);
    cfg = small_config();
    cfg.formats = {"BPSK", "BPSK"};
    CHECK_THROWS_AS(run_experiment(cfg), std::invalid_argument);
}
