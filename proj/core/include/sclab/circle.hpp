#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "sclab/hyperbolic.hpp"

namespace sclab {

// Degree-one lift of an orientation-preserving circle homeomorphism: a
// strictly increasing map of the line with h(t+1) = h(t) + 1, the circle
// being R/Z. Two kinds are supported: the boundary action of a Mobius
// matrix (lifted so |h(0)| < 1), and explicit piecewise-linear data on
// [0, 1) extended periodically.
class LiftedCircleMap {
  public:
    static LiftedCircleMap from_mobius(const Mobius& m);
    static LiftedCircleMap piecewise(std::vector<double> breakpoints,
                                     std::vector<double> values);

    double apply(double t) const;
    // The induced circle map: apply reduced mod 1 into [0, 1).
    double circle_apply(double t) const;

    bool is_mobius() const { return mobius_; }
    const DiskMobius& disk() const { return disk_; }
    double base_value() const { return base_; }  // h(0)
    const std::string& label() const { return label_; }

  private:
    LiftedCircleMap() = default;
    bool mobius_ = true;
    DiskMobius disk_;
    double base_ = 0.0;
    std::vector<double> xs_, ys_;
    std::string label_;
};

struct RotationEstimate {
    double value = 0.0;
    double error_bound = 0.0;
};

// h^N(0)/N with the standard 1/N bracket for degree-one lifts.
RotationEstimate rotation_number(const LiftedCircleMap& h, std::int64_t iterations);

struct RotationReport {
    std::int64_t n = 0;
    std::int64_t trials = 0;
    std::uint64_t master_seed = 0;
    double drift = 0.0;     // estimated linear drift E of rot under the product walk
    double drift_se = 0.0;  // standard error of that estimate
    double sigma = 0.0;     // standard deviation of the normalized samples
    double ks_distance = 0.0;
    // (rot(g_n) - E n)/sqrt(n) per trial.
    std::vector<double> samples;
    // True when every generator is a Mobius lift, in which case rot values
    // are refined by branch tracking plus terminal iteration; otherwise the
    // lift value at 0 stands in for rot (they differ by less than 1, which
    // vanishes under the sqrt(n) normalization).
    bool refined_rot = true;
};

// Random right-multiplied products g_j = g_{j-1} s_j with s_j drawn from
// gens by weight. Drift is estimated from the same trials at n/2 and n.
RotationReport random_rot_clt(const std::vector<LiftedCircleMap>& gens,
                              const std::vector<double>& weights, std::int64_t n,
                              std::int64_t trials, std::uint64_t master_seed);

struct CircleHistogram {
    int bins = 0;
    std::int64_t samples = 0;
    std::uint64_t seed = 0;
    std::vector<double> density;  // probability mass per bin
    // Max bin change after one push-forward by the weighted average of the
    // generators (evaluated at bin centers). Small values certify approximate
    // stationarity at the histogram's resolution.
    double invariance_residual = 0.0;
};

CircleHistogram stationary_measure_histogram(const std::vector<LiftedCircleMap>& gens,
                                             const std::vector<double>& weights,
                                             std::int64_t burn_in, std::int64_t samples,
                                             int bins, std::uint64_t seed);

struct GeneratorSet {
    std::vector<LiftedCircleMap> maps;
    std::vector<double> weights;
};

// {"generators": [{"mobius": [a,b,c,d]} | {"pl": {"breakpoints": [...],
// "values": [...]}}, ...], "weights": [...]}; weights default to uniform.
GeneratorSet parse_generator_set(const std::string& text);

}  // namespace sclab
