#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "sclab/circle.hpp"
#include "sclab/errors.hpp"
#include "sclab/hyperbolic.hpp"

using namespace sclab;

namespace {

const double kPi = 3.14159265358979323846;

Mobius elliptic(double theta) {
    return Mobius{std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta)};
}

LiftedCircleMap rigid_rotation(double rho) {
    return LiftedCircleMap::piecewise({0.0}, {rho});
}

}  // namespace

TEST_SUITE("circle") {

TEST_CASE("lift structure for mobius boundary actions") {
    const LiftedCircleMap id = LiftedCircleMap::from_mobius(Mobius{1, 0, 0, 1});
    CHECK(id.is_mobius());
    CHECK(id.apply(0.0) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(id.apply(0.37) == doctest::Approx(0.37).epsilon(1e-12));

    const LiftedCircleMap rot = LiftedCircleMap::from_mobius(elliptic(kPi / 3.0));
    for (double t : {0.0, 0.21, 0.5, 0.93}) {
        CHECK(rot.apply(t + 1.0) == doctest::Approx(rot.apply(t) + 1.0).epsilon(1e-12));
    }
    CHECK(std::abs(rot.base_value()) < 1.0);

    // strict monotonicity on a fine grid
    const LiftedCircleMap hyp = LiftedCircleMap::from_mobius(Mobius{2.0, 0.0, 0.0, 0.5});
    double prev = hyp.apply(-0.5);
    for (int i = 1; i <= 1000; ++i) {
        const double t = -0.5 + double(i) / 400.0;
        const double v = hyp.apply(t);
        CHECK(v > prev);
        prev = v;
    }

    const double c = hyp.circle_apply(0.77);
    CHECK(c >= 0.0);
    CHECK(c < 1.0);
}

TEST_CASE("piecewise linear lifts") {
    const LiftedCircleMap r = rigid_rotation(0.25);
    CHECK_FALSE(r.is_mobius());
    CHECK(r.apply(0.0) == doctest::Approx(0.25));
    CHECK(r.apply(0.5) == doctest::Approx(0.75));
    CHECK(r.apply(1.25) == doctest::Approx(1.5));

    // kinked but monotone: two segments
    const LiftedCircleMap kinked = LiftedCircleMap::piecewise({0.0, 0.5}, {0.1, 0.8});
    CHECK(kinked.apply(0.25) == doctest::Approx(0.45));
    double prev = kinked.apply(0.0);
    for (int i = 1; i <= 200; ++i) {
        const double v = kinked.apply(double(i) / 100.0);
        CHECK(v > prev);
        prev = v;
    }

    CHECK_THROWS_AS(LiftedCircleMap::piecewise({}, {}), Error);
    CHECK_THROWS_AS(LiftedCircleMap::piecewise({0.0, 0.5}, {0.8, 0.1}), Error);
}

TEST_CASE("rotation number of rigid and mobius rotations") {
    const RotationEstimate flat = rotation_number(rigid_rotation(0.25), 400);
    CHECK(flat.value == doctest::Approx(0.25).epsilon(1e-9));

    // boundary rotation of the elliptic matrix runs backwards at angle/pi
    const RotationEstimate e = rotation_number(LiftedCircleMap::from_mobius(elliptic(kPi / 3.0)), 300);
    const double frac = e.value - std::floor(e.value);
    CHECK(std::abs(frac - (1.0 - 1.0 / 3.0)) <= e.error_bound + 1e-9);
    CHECK(e.error_bound <= 1.0 / 300.0 + 1e-15);

    const Mobius parabolic{1.0, 1.0, 0.0, 1.0};
    const RotationEstimate p = rotation_number(LiftedCircleMap::from_mobius(parabolic), 300);
    CHECK(std::abs(p.value) <= p.error_bound + 1e-12);

    const RotationEstimate coarse = rotation_number(rigid_rotation(0.25), 100);
    CHECK(std::abs(coarse.value - flat.value) <= coarse.error_bound + flat.error_bound);

    CHECK_THROWS_AS(rotation_number(rigid_rotation(0.25), 0), Error);
}

TEST_CASE("commuting rotations drift linearly with gaussian noise absent") {
    // two rigid rotations: rot of the product is the exact sum of the drawn
    // angles, so the centered normalized samples collapse near zero
    const std::vector<LiftedCircleMap> gens = {rigid_rotation(0.1), rigid_rotation(0.35)};
    const std::vector<double> weights = {0.5, 0.5};
    const RotationReport rep = random_rot_clt(gens, weights, 256, 2000, 12);
    CHECK(rep.samples.size() == 2000);
    const double expect_drift = 0.5 * 0.1 + 0.5 * 0.35;
    CHECK(std::abs(rep.drift - expect_drift) <= 3.0 * rep.drift_se + 1e-9);
    CHECK_FALSE(rep.refined_rot);
}

TEST_CASE("commuting control passes the normal fit at scale") {
    const std::vector<LiftedCircleMap> gens = {rigid_rotation(0.1), rigid_rotation(0.35)};
    const RotationReport rep = random_rot_clt(gens, {0.5, 0.5}, 1024, 2000, 12);
    CHECK(rep.ks_distance <= 0.025);
    CHECK(std::abs(rep.drift - 0.225) <= 3.0 * rep.drift_se + 1e-9);
}

TEST_CASE("turtle boundary actions keep the drift centered") {
    const auto [plus, minus] = turtle_step_maps(kPi / 2.0, 0.3);
    const std::vector<LiftedCircleMap> gens = {LiftedCircleMap::from_mobius(plus),
                                               LiftedCircleMap::from_mobius(minus)};
    const RotationReport rep = random_rot_clt(gens, {0.5, 0.5}, 256, 1500, 3);
    CHECK(rep.refined_rot);
    CHECK(std::abs(rep.drift) <= 3.0 * rep.drift_se);
    CHECK(rep.sigma > 0.0);
}

TEST_CASE("determinism of the rotation experiment") {
    const std::vector<LiftedCircleMap> gens = {rigid_rotation(0.1), rigid_rotation(0.35)};
    const RotationReport a = random_rot_clt(gens, {0.5, 0.5}, 128, 300, 9);
    const RotationReport b = random_rot_clt(gens, {0.5, 0.5}, 128, 300, 9);
    CHECK(a.samples == b.samples);
    CHECK(a.drift == b.drift);
}

TEST_CASE("stationary histogram finds the attracting fixed point") {
    // north-south dynamics: z -> 4z on the half-plane fixes 0 and infinity,
    // almost every orbit accumulates at the attractor, one bin soaks up
    // nearly all mass
    const std::vector<LiftedCircleMap> gens = {
        LiftedCircleMap::from_mobius(Mobius{2.0, 0.0, 0.0, 0.5})};
    const CircleHistogram h = stationary_measure_histogram(gens, {1.0}, 200, 4000, 32, 4);
    CHECK(h.bins == 32);
    double total = 0.0, top = 0.0;
    for (double d : h.density) {
        total += d;
        top = std::max(top, d);
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(top >= 0.5);
}

TEST_CASE("turtle generator pair has an approximately invariant histogram") {
    const auto [plus, minus] = turtle_step_maps(kPi / 2.0, 0.3);
    const std::vector<LiftedCircleMap> gens = {LiftedCircleMap::from_mobius(plus),
                                               LiftedCircleMap::from_mobius(minus)};
    const CircleHistogram h = stationary_measure_histogram(gens, {0.5, 0.5}, 500, 20000, 64, 5);
    CHECK(h.invariance_residual <= 5.0 / std::sqrt(20000.0));
}

TEST_CASE("irrational rigid rotation equidistributes") {
    const double golden = 0.6180339887498949;
    const CircleHistogram h =
        stationary_measure_histogram({rigid_rotation(golden)}, {1.0}, 100, 50000, 20, 6);
    for (double d : h.density) CHECK(std::abs(d - 0.05) <= 0.01);
}

TEST_CASE("generator set parsing") {
    const GeneratorSet gs = parse_generator_set(R"({
        "generators": [
            {"mobius": [1.0, 1.0, 0.0, 1.0]},
            {"pl": {"breakpoints": [0.0, 0.5], "values": [0.1, 0.8]}}
        ],
        "weights": [0.25, 0.75]})");
    CHECK(gs.maps.size() == 2);
    CHECK(gs.maps[0].is_mobius());
    CHECK_FALSE(gs.maps[1].is_mobius());
    CHECK(gs.weights[1] == doctest::Approx(0.75));

    const GeneratorSet uniform = parse_generator_set(
        R"({"generators": [{"mobius": [1.0, 0.0, 0.0, 1.0]}, {"mobius": [1.0, 1.0, 0.0, 1.0]}]})");
    CHECK(uniform.weights == std::vector<double>{1.0, 1.0});

    CHECK_THROWS_AS(parse_generator_set("nope"), ParseError);
    CHECK_THROWS_AS(parse_generator_set(R"({"generators": []})"), Error);
    CHECK_THROWS_AS(
        parse_generator_set(R"({"generators": [{"mobius": [1, 0, 0, 1]}], "weights": [0.5, 0.5]})"),
        Error);
    CHECK_THROWS_AS(parse_generator_set(R"({"generators": [{"mobius": [1, 0, 0, -1]}]})"), Error);
}

}  // TEST_SUITE
