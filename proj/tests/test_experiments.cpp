#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <regex>
#include <string>
#include <vector>

#include "sclab/errors.hpp"
#include "sclab/experiments.hpp"
#include "sclab/montecarlo.hpp"

using namespace sclab;

namespace {

ExperimentConfig cfg(const std::string& experiment, std::vector<std::int64_t> n_list,
                     std::int64_t trials, std::uint64_t seed = 5) {
    ExperimentConfig c;
    c.experiment = experiment;
    c.n_list = std::move(n_list);
    c.trials = trials;
    c.master_seed = seed;
    c.threads = 1;
    return c;
}

std::string strip_threads_echo(std::string text) {
    return std::regex_replace(text, std::regex("\"threads\":\\s*[0-9]+"), "\"threads\": _");
}

}  // namespace

TEST_SUITE("experiments") {

TEST_CASE("the experiment catalog is fixed") {
    const std::vector<std::string> ids = experiment_ids();
    const std::vector<std::string> expect = {"homology",    "growth", "chernoff", "antialign",
                                             "translation", "turtle", "rotation"};
    CHECK(ids == expect);
    CHECK_THROWS_AS(run_trials("alchemy", cfg("alchemy", {64}, 10)), Error);
}

TEST_CASE("reports are byte-deterministic and thread-count invariant") {
    ExperimentConfig c = cfg("translation", {500}, 120);
    const Report a = run_trials(c);
    const Report b = run_trials(c);
    CHECK(a.to_json() == b.to_json());

    c.threads = 3;
    const Report threaded = run_trials(c);
    CHECK(strip_threads_echo(threaded.to_json()) == strip_threads_echo(a.to_json()));
    CHECK(threaded.to_json() != a.to_json());  // the echo honestly reports its config
}

TEST_CASE("report envelope carries the config and seed") {
    const ExperimentConfig c = cfg("translation", {400}, 110, 77);
    const Report rep = run_trials(c);
    CHECK(rep.experiment == "translation");
    CHECK(rep.master_seed == 77);
    CHECK(rep.config_json == c.to_json());
    CHECK(rep.to_json().find("\"master_seed\": 77") != std::string::npos);
    CHECK(rep.rows.size() == 1);
    CHECK(rep.rows[0].n == 400);
    CHECK(rep.rows[0].trials_ok == 110);
}

TEST_CASE("homology decay fits the reciprocal law") {
    const Report rep = run_trials(cfg("homology", {16, 32, 64, 128}, 4000));
    REQUIRE(rep.rows.size() == 4);
    for (const SummaryRow& row : rep.rows) {
        CHECK(row.metric("p_zero") > 0.0);
    }
    const double slope = rep.total("fitted_exponent");
    CHECK(slope == doctest::Approx(-0.9729).epsilon(5e-3));
    CHECK(rep.gates_passed);
}

TEST_CASE("homology with too few usable points fails its gate") {
    const Report rep = run_trials(cfg("homology", {16, 32}, 2000));
    CHECK_FALSE(rep.gates_passed);
    bool found = false;
    for (const std::string& note : rep.gate_notes)
        if (note.find("at least 4") != std::string::npos) found = true;
    CHECK(found);
}

TEST_CASE("growth sandwich on geodesics at unit scale") {
    ExperimentConfig c = cfg("growth", {128, 256}, 12);
    c.condition_commutator = true;
    const Report rep = run_trials(c);
    REQUIRE(rep.rows.size() == 2);
    for (const SummaryRow& row : rep.rows) {
        CHECK(row.metric("violations") == 0.0);
        CHECK(row.metric("median_upper_norm") > 0.0);
        CHECK(row.metric("median_lower_norm") > 0.0);
    }
    CHECK(rep.rows[1].metric("median_upper_norm") <= std::log(3.0) / 2.0 + 0.15);
    CHECK(rep.gates_passed);
}

TEST_CASE("growth refuses odd n under conditioning") {
    ExperimentConfig c = cfg("growth", {127}, 5);
    CHECK_THROWS_AS(run_trials(c), Error);
}

TEST_CASE("growth on reduced random walks at unit scale") {
    ExperimentConfig c = cfg("growth", {1024}, 10);
    c.mode = "walk";
    c.condition_commutator = true;
    const Report rep = run_trials(c);
    const double ratio = rep.rows[0].metric("median_reduced_ratio");
    CHECK(ratio > 0.45);
    CHECK(ratio < 0.55);
    CHECK(rep.rows[0].metric("violations") == 0.0);
}

TEST_CASE("chernoff violations stay rare at unit scale") {
    const Report rep = run_trials(cfg("chernoff", {2048}, 200));
    CHECK(rep.rows[0].metric("violation_fraction") <= 0.05);
    CHECK(rep.gates_passed);
}

TEST_CASE("antialign fraction climbs toward one") {
    ExperimentConfig c = cfg("antialign", {256, 1024}, 20);
    c.L = 1.5;
    const Report rep = run_trials(c);
    REQUIRE(rep.rows.size() == 2);
    const double far = rep.rows[0].metric("mean_fraction");
    const double near = rep.rows[1].metric("mean_fraction");
    CHECK(far <= 0.2);
    CHECK(near <= far);
    CHECK(rep.gates_passed);
}

TEST_CASE("translation length concentrates near the drift") {
    const Report rep = run_trials(cfg("translation", {1000}, 600));
    CHECK(rep.rows[0].metric("frac_tau_below_04") <= 0.01);
    CHECK(rep.gates_passed);
}

TEST_CASE("turtle gates at unit scale") {
    ExperimentConfig c = cfg("turtle", {2000}, 500);
    c.step = 0.3;
    const Report rep = run_trials(c);
    CHECK(rep.rows[0].metric("winding_ks") <= 0.05);
    CHECK(rep.rows[0].metric("area_ks") <= 0.05);
    CHECK(rep.rows[0].metric("max_gauss_bonnet_residue") <= 1e-6);
    CHECK(rep.gates_passed);
}

TEST_CASE("supercritical turtle freezes the winding variance") {
    ExperimentConfig c = cfg("turtle", {2500, 5000}, 400);
    c.step = 2.5;
    const Report rep = run_trials(c);
    const double ratio = rep.total("winding_var_ratio_5000");
    CHECK(ratio > 0.5);
    CHECK(ratio < 1.5);
    CHECK(rep.gates_passed);
}

TEST_CASE("rotation drift and control rows") {
    const Report rep = run_trials(cfg("rotation", {256}, 2000, 12));
    REQUIRE(rep.rows.size() == 2);
    const SummaryRow& sym = rep.rows[0];
    const SummaryRow& control = rep.rows[1];
    CHECK(std::abs(sym.metric("drift")) <= 3.0 * sym.metric("drift_se"));
    CHECK(control.metric("ks") <= 0.05);
    CHECK(control.metric("refined_rot") == 0.0);
    CHECK(sym.metric("refined_rot") == 1.0);
}

TEST_CASE("samples csv is embedded and carries the header") {
    const Report rep = run_trials(cfg("turtle", {300}, 150));
    CHECK(rep.samples_csv.substr(0, 21) == "n,trial,winding,area\n");
    const Report again = run_trials(cfg("turtle", {300}, 150));
    CHECK(again.samples_csv == rep.samples_csv);
}

TEST_CASE("builtin rotation generator run matches the plain driver") {
    const ExperimentConfig c = cfg("rotation", {256}, 2000, 12);
    const Report direct = run_trials(c);
    const Report via_empty = run_rotation_with_generators(c, "");
    CHECK(via_empty.to_json() == direct.to_json());
}

TEST_CASE("custom generator sets reach the rotation experiment") {
    const ExperimentConfig c = cfg("rotation", {128}, 400, 9);
    const std::string commuting = R"({"generators": [
        {"pl": {"breakpoints": [0.0], "values": [0.1]}},
        {"pl": {"breakpoints": [0.0], "values": [0.35]}}]})";
    const Report rep = run_rotation_with_generators(c, commuting);
    REQUIRE(rep.rows.size() == 2);
    CHECK(rep.rows[0].metric("refined_rot") == 0.0);
    CHECK(std::abs(rep.rows[0].metric("drift") - 0.225) <=
          3.0 * rep.rows[0].metric("drift_se") + 1e-9);

    CHECK_THROWS_AS(run_rotation_with_generators(c, "{broken"), ParseError);
}

}  // TEST_SUITE
