#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "sclab/errors.hpp"
#include "sclab/montecarlo.hpp"
#include "sclab/rng.hpp"
#include "sclab/words.hpp"

using namespace sclab;

TEST_SUITE("montecarlo") {

TEST_CASE("trial batches are deterministic and thread-independent") {
    const TrialFn fn = [](std::int64_t index, std::uint64_t seed) {
        Rng rng(seed);
        return std::vector<double>{double(index), double(rng.below(1000))};
    };
    const TrialBatch serial = run_trial_batch(64, 99, 1, fn);
    const TrialBatch threaded = run_trial_batch(64, 99, 3, fn);
    CHECK(serial.rows == threaded.rows);
    CHECK(serial.failed == 0);
    CHECK_FALSE(serial.partial());
    REQUIRE(serial.rows.size() == 64);
    for (std::int64_t i = 0; i < 64; ++i) {
        CHECK(serial.rows[std::size_t(i)][0] == double(i));
        Rng rng(derive_seed(99, std::uint64_t(i)));
        CHECK(serial.rows[std::size_t(i)][1] == double(rng.below(1000)));
    }

    const TrialBatch one = run_trial_batch(1, 99, 4, fn);
    CHECK(one.rows.size() == 1);
}

TEST_CASE("a poisoned trial fails alone") {
    const TrialFn fn = [](std::int64_t index, std::uint64_t) -> std::vector<double> {
        if (index == 7) throw Error("trial seven declines to cooperate");
        return {1.0};
    };
    const TrialBatch batch = run_trial_batch(16, 1, 2, fn);
    CHECK(batch.failed == 1);
    CHECK(batch.partial());
    CHECK(batch.rows[7].empty());
    CHECK(batch.errors[7] == "trial seven declines to cooperate");
    CHECK(batch.rows[6] == std::vector<double>{1.0});
    CHECK(batch.rows[8] == std::vector<double>{1.0});
}

TEST_CASE("geodesic sampler hits the sphere exactly") {
    Rng rng(601);
    for (int it = 0; it < 2000; ++it) {
        const std::int64_t n = 1 + std::int64_t(rng.below(50));
        const Word w = random_geodesic_word(2, n, rng);
        CHECK(std::int64_t(w.size()) == n);
        for (std::size_t i = 1; i < w.size(); ++i) CHECK(w.at(i) != -w.at(i - 1));
    }
}

TEST_CASE("walk sampler reduces below its step count with matching parity") {
    Rng rng(602);
    for (int it = 0; it < 2000; ++it) {
        const std::int64_t n = 1 + std::int64_t(rng.below(60));
        const Word w = random_walk_word(2, n, rng);
        CHECK(std::int64_t(w.size()) <= n);
        CHECK((n - std::int64_t(w.size())) % 2 == 0);
        for (std::size_t i = 1; i < w.size(); ++i) CHECK(w.at(i) != -w.at(i - 1));
    }
}

TEST_CASE("walk sampler contracts to the expected drift") {
    Rng rng(603);
    const std::int64_t n = 4096;
    double total = 0.0;
    const int reps = 50;
    for (int it = 0; it < reps; ++it) total += double(random_walk_word(2, n, rng).size());
    const double ratio = total / double(reps) / double(n);
    CHECK(ratio > 0.45);
    CHECK(ratio < 0.55);
}

TEST_CASE("conditioned sampler bookkeeping") {
    ConditionedSampler sampler([](Rng& r) { return random_geodesic_word(2, 8, r); });
    Rng rng(604);
    for (int it = 0; it < 40; ++it) {
        const Word w = sampler.sample(rng);
        CHECK(is_homologically_trivial(w));
        CHECK(w.size() == 8);
    }
    CHECK(sampler.accepted() == 40);
    CHECK(sampler.attempted() >= 40);
    CHECK(sampler.acceptance_rate() == doctest::Approx(40.0 / double(sampler.attempted())));
}

TEST_CASE("impossible conditioning starves with a measured bound") {
    ConditionedSampler sampler([](Rng& r) { return random_geodesic_word(2, 7, r); }, 3000);
    Rng rng(605);
    try {
        sampler.sample(rng);
        FAIL("odd length cannot abelianize to zero");
    } catch (const StarvationError& e) {
        CHECK(e.observed_rate_bound > 0.0);
        CHECK(e.observed_rate_bound <= 1e-3);
    }
}

TEST_CASE("tight loop conditioners match the generic wrapper") {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        Rng a(seed);
        Rng b(seed);
        ConditionedSampler generic([](Rng& r) { return random_geodesic_word(2, 64, r); });
        const Word via_generic = generic.sample(a);
        const ConditionedDraw d = conditioned_geodesic(2, 64, b);
        CHECK(d.word.letters() == via_generic.letters());
        CHECK(d.attempts >= 1);
    }
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        Rng a(seed);
        Rng b(seed);
        ConditionedSampler generic([](Rng& r) { return random_walk_word(2, 64, r); });
        const Word via_generic = generic.sample(a);
        const ConditionedDraw d = conditioned_walk(2, 64, b);
        CHECK(d.word.letters() == via_generic.letters());
    }
}

TEST_CASE("conditioned acceptance rate scales like one over n") {
    // the zero-abelianization probability decays like c/n for geodesics, so
    // quadrupling n should cut the rate by roughly four
    Rng rng(606);
    ConditionedSampler small([](Rng& r) { return random_geodesic_word(2, 64, r); });
    ConditionedSampler large([](Rng& r) { return random_geodesic_word(2, 256, r); });
    for (int it = 0; it < 200; ++it) small.sample(rng);
    for (int it = 0; it < 50; ++it) large.sample(rng);
    const double ratio = large.acceptance_rate() / small.acceptance_rate();
    CHECK(ratio > 0.125);
    CHECK(ratio < 0.375);
}

TEST_CASE("normal fit corner cases") {
    CHECK_THROWS_AS(normal_fit_tests({2.0, 2.0, 2.0}), Error);

    const NormalFit flat = normal_fit_tests(std::vector<double>(200, 2.0));
    CHECK(flat.degenerate);
    CHECK(flat.ks_distance == doctest::Approx(1.0));

    Rng rng(607);
    std::vector<double> xs;
    for (int i = 0; i < 20000; ++i) {
        double u = 0.0;
        for (int k = 0; k < 12; ++k) u += rng.uniform();
        xs.push_back(u - 6.0);
    }
    const NormalFit fit = normal_fit_tests(xs);
    CHECK_FALSE(fit.degenerate);
    CHECK(std::abs(fit.mean) <= 0.05);
    CHECK(std::abs(fit.variance - 1.0) <= 0.05);
    CHECK(fit.ks_distance <= 0.02);
}

TEST_CASE("experiment config serialization and validation") {
    ExperimentConfig cfg;
    cfg.experiment = "turtle";
    cfg.n_list = {100, 200};
    cfg.trials = 500;
    cfg.master_seed = 42;
    cfg.validate();

    const ExperimentConfig back = ExperimentConfig::from_json(cfg.to_json());
    CHECK(back.to_json() == cfg.to_json());
    CHECK(back.n_list == cfg.n_list);
    CHECK(back.master_seed == 42);

    // overlay: only the keys present in the text move
    ExperimentConfig base = cfg;
    const ExperimentConfig merged = ExperimentConfig::from_json(R"({"trials": 7})", base);
    CHECK(merged.trials == 7);
    CHECK(merged.n_list == cfg.n_list);
    CHECK(merged.experiment == "turtle");

    CHECK_THROWS_AS(ExperimentConfig::from_json("{bad"), ParseError);
    CHECK_THROWS_AS(ExperimentConfig::from_json(R"({"mystery_knob": 1})"), ParseError);

    ExperimentConfig bad = cfg;
    bad.trials = 0;
    CHECK_THROWS_AS(bad.validate(), Error);
    bad = cfg;
    bad.rank = 0;
    CHECK_THROWS_AS(bad.validate(), Error);
    bad = cfg;
    bad.n_list = {};
    CHECK_THROWS_AS(bad.validate(), Error);
    bad = cfg;
    bad.mode = "saunter";
    CHECK_THROWS_AS(bad.validate(), Error);
}

TEST_CASE("report metric lookup is strict") {
    SummaryRow row;
    row.set_metric("alpha", 1.5);
    CHECK(row.metric("alpha") == 1.5);
    CHECK(row.has_metric("alpha"));
    CHECK_FALSE(row.has_metric("beta"));
    CHECK_THROWS_AS(row.metric("beta"), Error);

    Report rep;
    rep.set_total("fit", -1.0);
    CHECK(rep.total("fit") == -1.0);
    CHECK_THROWS_AS(rep.total("absent"), Error);
}

}  // TEST_SUITE
