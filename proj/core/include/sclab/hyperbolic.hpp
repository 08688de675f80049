#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace sclab {

// Real 2x2 matrix acting on the upper half-plane by z -> (az+b)/(cz+d).
// Orientation-preserving uses require det > 0; normalize() rescales to det 1.
struct Mobius {
    double a = 1.0;
    double b = 0.0;
    double c = 0.0;
    double d = 1.0;

    double det() const { return a * d - b * c; }
    double trace() const { return a + d; }
    void normalize();
    Mobius inverse() const;
    Mobius operator*(const Mobius& rhs) const;  // composition, rhs applied first
    std::complex<double> apply(std::complex<double> z) const;
};

// The same isometry in Poincare disk coordinates, w -> (Aw+B)/(conj(B)w+conj(A)).
// Conjugating by the Cayley map z -> (z-i)/(z+i) sends the half-plane base
// point i to the disk origin. |A|^2 - |B|^2 equals the half-plane determinant.
struct DiskMobius {
    std::complex<double> A{1.0, 0.0};
    std::complex<double> B{0.0, 0.0};

    static DiskMobius from_half_plane(const Mobius& m);
    DiskMobius inverse() const;
    DiskMobius operator*(const DiskMobius& rhs) const;
    std::complex<double> apply(std::complex<double> w) const;
    // Projective rescale by the largest entry modulus. The induced map is
    // unchanged; long products stay bounded.
    void rescale();
};

double hyperbolic_distance(std::complex<double> p, std::complex<double> q);

// Step generators for turn angle alpha and edge length step. Both send the
// half-plane base point i to e^step * i; they differ in how the frame is
// rotated, one by +alpha and one by -alpha. trace(R) = 2 cosh(step/2) cos(alpha/2).
std::pair<Mobius, Mobius> turtle_step_maps(double alpha, double step);

// Critical edge length 2 arccosh(1/sin(alpha/2)). Below it closed turtle
// loops exist and the winding number fluctuates; above it every mixed
// product of the two step maps escapes to infinity and the winding freezes.
double phase_threshold(double alpha);

struct TurtlePolygon {
    double alpha = 0.0;
    double step = 0.0;
    std::vector<int> signs;
    // p_0..p_n in disk coordinates. Stored for reporting and small-polygon
    // checks; the area and angle sums are accumulated in frame-local
    // coordinates, so very long paths saturating near the rim stay accurate.
    std::vector<std::complex<double>> vertices;
    // Exterior turning angles, one per vertex, in vertex order: the closure
    // angle at p_0, the interior angles at p_1..p_{n-1}, the closure angle
    // at p_n. When the closing geodesic exactly reverses the path at both
    // ends the two closure angles are assigned +pi and -pi so a doubled
    // segment carries zero total turning.
    std::vector<double> turning_angles;
    double area = 0.0;           // signed, from a geodesic fan based at p_0
    std::int64_t winding = 0;    // (sum of turning - area) / 2 pi, rounded
    double gauss_bonnet_residue = 0.0;  // distance of that quotient from winding
};

// Walks n = signs.size() unit steps from the disk origin, turning by alpha
// with the orientation of signs[i] (+1 counterclockwise). The path is closed
// by the geodesic from p_n back to p_0. Throws DegeneratePolygonError when
// the closing edge has zero length.
TurtlePolygon run_turtle(double alpha, double step, const std::vector<int>& signs);

// Same angle and area bookkeeping for an explicit closed vertex chain
// p_0..p_n given in disk coordinates (the closing edge p_n -> p_0 is
// implied). Adjacent coincident vertices raise DegeneratePolygonError.
TurtlePolygon polygon_from_vertices(const std::vector<std::complex<double>>& vertices);

double signed_area(const TurtlePolygon& polygon);
std::int64_t winding_number(const TurtlePolygon& polygon);

struct TurtleTrialRow {
    std::int64_t trial = 0;
    std::int64_t winding = 0;
    double area = 0.0;
    std::uint64_t seed = 0;
};

struct TurtleCltReport {
    double alpha = 0.0;
    double step = 0.0;
    std::int64_t n = 0;
    std::int64_t trials = 0;
    std::uint64_t master_seed = 0;
    // Statistics of winding/sqrt(n) and area/sqrt(n) across trials.
    double winding_mean = 0.0;
    double winding_variance = 0.0;
    double winding_skewness = 0.0;
    double winding_ks = 0.0;
    double area_mean = 0.0;
    double area_variance = 0.0;
    double area_skewness = 0.0;
    double area_ks = 0.0;
    double max_gauss_bonnet_residue = 0.0;
    std::vector<TurtleTrialRow> rows;
    std::string csv() const;  // header trial,n,winding,area,seed
};

// Independent uniform sign sequences per trial, seeds derived from the
// master seed by trial index.
TurtleCltReport turtle_clt_experiment(double alpha, double step, std::int64_t n,
                                      std::int64_t trials, std::uint64_t master_seed);

}  // namespace sclab
