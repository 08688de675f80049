#include "sclab/hyperbolic.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "sclab/errors.hpp"
#include "sclab/rng.hpp"
#include "sclab/stats.hpp"

namespace sclab {

namespace {

constexpr double kPi = 3.141592653589793238462643383279503;
constexpr double kTwoPi = 2.0 * kPi;

double wrap_angle(double theta) { return std::remainder(theta, kTwoPi); }

// a/b written as a*conj(b)/|b|^2. The library division is faithfully rounded
// but not symmetric under conjugating both operands, and that symmetry is
// what the exact mirror property of turtle paths rests on.
std::complex<double> cdiv(std::complex<double> a, std::complex<double> b) {
    return a * std::conj(b) / std::norm(b);
}

// Disk automorphism sending p to the origin, evaluated at z. Geodesics
// through the origin are Euclidean straight lines, so after this move the
// direction to a point is just its argument.
std::complex<double> to_origin(std::complex<double> p, std::complex<double> z) {
    return cdiv(z - p, 1.0 - std::conj(p) * z);
}

double cross(std::complex<double> u, std::complex<double> v) {
    return u.real() * v.imag() - u.imag() * v.real();
}

double dot(std::complex<double> u, std::complex<double> v) {
    return u.real() * v.real() + u.imag() * v.imag();
}

// Unsigned angle between two directions, atan2(|cross|, dot). Invariant
// under conjugating both arguments, which arg-difference formulas are not
// (they can land on opposite sides of the atan2 branch cut).
double angle_between(std::complex<double> u, std::complex<double> v) {
    return std::atan2(std::abs(cross(u, v)), dot(u, v));
}

// Signed hyperbolic area of the geodesic triangle with ordered vertices
// (a, b, c) in disk coordinates: angle defect with the orientation sign,
// positive for a counterclockwise triple. Degenerate triples give zero.
double signed_triangle_area(std::complex<double> a, std::complex<double> b,
                            std::complex<double> c) {
    if (std::abs(a - b) < 1e-300 || std::abs(b - c) < 1e-300 || std::abs(c - a) < 1e-300)
        return 0.0;
    const std::complex<double> ab = to_origin(a, b);
    const std::complex<double> ac = to_origin(a, c);
    const std::complex<double> bc = to_origin(b, c);
    const std::complex<double> ba = to_origin(b, a);
    const std::complex<double> ca = to_origin(c, a);
    const std::complex<double> cb = to_origin(c, b);
    const double angle_a = angle_between(ab, ac);
    const double angle_b = angle_between(bc, ba);
    const double angle_c = angle_between(ca, cb);
    const double orient = cross(bc, ba);
    if (orient == 0.0) return 0.0;
    double defect = kPi - angle_a - angle_b - angle_c;
    if (defect < 0.0) {
        if (defect < -1e-6)
            throw NumericalIntegrityError("triangle angle defect came out negative");
        defect = 0.0;
    }
    return orient > 0.0 ? defect : -defect;
}

struct ClosedAngles {
    std::vector<double> turning;  // vertex order, closure angles at both ends
    double area = 0.0;
};

void apply_reversal_convention(std::vector<double>& turning) {
    const double tol = 1e-9;
    double& at_start = turning.front();
    double& at_end = turning.back();
    if (std::abs(kPi - std::abs(at_end)) < tol && std::abs(kPi - std::abs(at_start)) < tol) {
        // The closing geodesic retraces the path at both ends; the polygon is
        // a doubled segment. Split the two half-turns with opposite signs so
        // the total turning (and hence the winding) vanishes.
        at_end = kPi;
        at_start = -kPi;
    }
}

void finish_polygon(TurtlePolygon& poly, const ClosedAngles& data) {
    poly.turning_angles = data.turning;
    poly.area = data.area;
    double total_turning = 0.0;
    for (double t : poly.turning_angles) total_turning += t;
    const double quotient = (total_turning - poly.area) / kTwoPi;
    poly.winding = std::llround(quotient);
    poly.gauss_bonnet_residue = std::abs(quotient - static_cast<double>(poly.winding));
    if (poly.gauss_bonnet_residue > 1e-4) {
        std::ostringstream msg;
        msg << "turning sum minus area is not an integer multiple of 2 pi "
            << "(residue " << poly.gauss_bonnet_residue << ")";
        throw NumericalIntegrityError(msg.str());
    }
}

}  // namespace

void Mobius::normalize() {
    const double determinant = det();
    if (!(determinant > 0.0))
        throw Error("Mobius normalization requires positive determinant");
    const double s = 1.0 / std::sqrt(determinant);
    a *= s;
    b *= s;
    c *= s;
    d *= s;
}

Mobius Mobius::inverse() const {
    const double determinant = det();
    if (determinant == 0.0) throw Error("singular Mobius matrix");
    return Mobius{d / determinant, -b / determinant, -c / determinant, a / determinant};
}

Mobius Mobius::operator*(const Mobius& rhs) const {
    return Mobius{a * rhs.a + b * rhs.c, a * rhs.b + b * rhs.d,
                  c * rhs.a + d * rhs.c, c * rhs.b + d * rhs.d};
}

std::complex<double> Mobius::apply(std::complex<double> z) const {
    return (a * z + b) / (c * z + d);
}

DiskMobius DiskMobius::from_half_plane(const Mobius& m) {
    DiskMobius out;
    out.A = std::complex<double>((m.a + m.d) * 0.5, (m.b - m.c) * 0.5);
    out.B = std::complex<double>((m.a - m.d) * 0.5, -(m.b + m.c) * 0.5);
    return out;
}

DiskMobius DiskMobius::inverse() const {
    // Adjugate of [[A, B], [conj B, conj A]]; the determinant only rescales
    // projectively, so it is dropped.
    DiskMobius out;
    out.A = std::conj(A);
    out.B = -B;
    return out;
}

DiskMobius DiskMobius::operator*(const DiskMobius& rhs) const {
    DiskMobius out;
    out.A = A * rhs.A + B * std::conj(rhs.B);
    out.B = A * rhs.B + B * std::conj(rhs.A);
    return out;
}

std::complex<double> DiskMobius::apply(std::complex<double> w) const {
    return cdiv(A * w + B, std::conj(B) * w + std::conj(A));
}

void DiskMobius::rescale() {
    const double m = std::max(std::abs(A), std::abs(B));
    if (m > 1e30) {
        A /= m;
        B /= m;
    }
}

double hyperbolic_distance(std::complex<double> p, std::complex<double> q) {
    const double np = 1.0 - std::norm(p);
    const double nq = 1.0 - std::norm(q);
    if (!(np > 0.0) || !(nq > 0.0)) throw Error("points must lie in the open unit disk");
    return std::acosh(1.0 + 2.0 * std::norm(p - q) / (np * nq));
}

std::pair<Mobius, Mobius> turtle_step_maps(double alpha, double step) {
    if (!(alpha > 0.0) || !(alpha < kPi)) throw Error("turn angle must lie in (0, pi)");
    if (!(step > 0.0)) throw Error("step length must be positive");
    const double c = std::cos(alpha * 0.5);
    const double s = std::sin(alpha * 0.5);
    const double ep = std::exp(step * 0.5);
    const double em = std::exp(-step * 0.5);
    const Mobius right{ep * c, ep * s, -em * s, em * c};
    const Mobius left{ep * c, -ep * s, em * s, em * c};
    return {right, left};
}

double phase_threshold(double alpha) {
    if (!(alpha > 0.0) || !(alpha < kPi)) throw Error("turn angle must lie in (0, pi)");
    return 2.0 * std::acosh(1.0 / std::sin(alpha * 0.5));
}

TurtlePolygon run_turtle(double alpha, double step, const std::vector<int>& signs) {
    if (signs.empty()) throw Error("turtle path needs at least one step");
    for (int s : signs)
        if (s != 1 && s != -1) throw Error("turtle signs must be +1 or -1");

    const auto [right, left] = turtle_step_maps(alpha, step);
    const DiskMobius plus_map = DiskMobius::from_half_plane(right);
    const DiskMobius minus_map = DiskMobius::from_half_plane(left);
    const DiskMobius plus_inv = plus_map.inverse();
    const DiskMobius minus_inv = minus_map.inverse();

    // Seen from the frame parked at the current vertex, the next vertex is
    // always tanh(step/2) down the positive real axis, and the previous one
    // sits at a fixed spot depending only on the arriving sign. Interior
    // turning angles are therefore two constants, exact mirror images.
    const std::complex<double> next_local(std::tanh(step * 0.5), 0.0);
    const std::complex<double> prev_plus = plus_inv.apply({0.0, 0.0});
    const std::complex<double> prev_minus = minus_inv.apply({0.0, 0.0});
    // Turning is measured from the direction of travel into the vertex,
    // arg(-prev), to the outgoing direction. Writing it this way (instead of
    // adding pi to arg(prev)) keeps every term exactly odd under conjugation,
    // which is what makes the mirror symmetry bit-exact.
    const double turn_plus = wrap_angle(-std::arg(-prev_plus));
    const double turn_minus = -turn_plus;

    const std::size_t n = signs.size();
    TurtlePolygon poly;
    poly.alpha = alpha;
    poly.step = step;
    poly.signs = signs;
    poly.vertices.resize(n + 1);
    poly.vertices[0] = {0.0, 0.0};

    ClosedAngles data;
    data.turning.assign(n + 1, 0.0);

    // x is the start point expressed in the frame of the current vertex; its
    // modulus is tanh(d(p_0, p_i)/2), so it never overflows however long the
    // path gets. forward accumulates the global step product projectively.
    std::complex<double> x(0.0, 0.0);
    DiskMobius forward;
    for (std::size_t i = 1; i <= n; ++i) {
        const bool plus = signs[i - 1] > 0;
        x = (plus ? plus_inv : minus_inv).apply(x);
        forward = forward * (plus ? plus_map : minus_map);
        forward.rescale();
        poly.vertices[i] = forward.apply({0.0, 0.0});
        if (i < n) {
            // Fan triangle (p_0, p_i, p_{i+1}) in the frame of p_i.
            data.area += signed_triangle_area(x, {0.0, 0.0}, next_local);
            data.turning[i] = plus ? turn_plus : turn_minus;
        }
    }

    if (std::abs(x) <= 1e-14)
        throw DegeneratePolygonError("path returned to its start; closing edge has zero length");

    const std::complex<double> prev_last = signs[n - 1] > 0 ? prev_plus : prev_minus;
    data.turning[n] = wrap_angle(std::arg(x) - std::arg(-prev_last));
    data.turning[0] = wrap_angle(-std::arg(-forward.apply({0.0, 0.0})));
    apply_reversal_convention(data.turning);

    finish_polygon(poly, data);
    return poly;
}

TurtlePolygon polygon_from_vertices(const std::vector<std::complex<double>>& vertices) {
    const std::size_t count = vertices.size();
    if (count < 2) throw Error("polygon needs at least two vertices");
    for (const auto& v : vertices)
        if (!(std::abs(v) < 1.0)) throw Error("polygon vertices must lie in the open unit disk");
    for (std::size_t i = 0; i < count; ++i) {
        const std::size_t j = (i + 1) % count;
        if (std::abs(vertices[i] - vertices[j]) <= 1e-15)
            throw DegeneratePolygonError("adjacent polygon vertices coincide");
    }

    TurtlePolygon poly;
    poly.vertices = vertices;

    ClosedAngles data;
    data.turning.assign(count, 0.0);
    for (std::size_t i = 0; i < count; ++i) {
        const std::complex<double> prev = vertices[(i + count - 1) % count];
        const std::complex<double> next = vertices[(i + 1) % count];
        const double dir_next = std::arg(to_origin(vertices[i], next));
        const double dir_in = std::arg(-to_origin(vertices[i], prev));
        data.turning[i] = wrap_angle(dir_next - dir_in);
    }
    apply_reversal_convention(data.turning);
    for (std::size_t i = 1; i + 1 < count; ++i)
        data.area += signed_triangle_area(vertices[0], vertices[i], vertices[i + 1]);

    finish_polygon(poly, data);
    return poly;
}

double signed_area(const TurtlePolygon& polygon) { return polygon.area; }

std::int64_t winding_number(const TurtlePolygon& polygon) { return polygon.winding; }

std::string TurtleCltReport::csv() const {
    std::ostringstream out;
    out << "trial,n,winding,area,seed\n";
    out.precision(17);
    for (const auto& row : rows)
        out << row.trial << ',' << n << ',' << row.winding << ',' << row.area << ','
            << row.seed << '\n';
    return out.str();
}

TurtleCltReport turtle_clt_experiment(double alpha, double step, std::int64_t n,
                                      std::int64_t trials, std::uint64_t master_seed) {
    if (n < 1) throw Error("turtle experiment needs at least one step per trial");
    if (trials < 100) throw Error("turtle experiment needs at least 100 trials");

    TurtleCltReport report;
    report.alpha = alpha;
    report.step = step;
    report.n = n;
    report.trials = trials;
    report.master_seed = master_seed;
    report.rows.reserve(static_cast<std::size_t>(trials));

    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    std::vector<double> winding_scaled, area_scaled;
    winding_scaled.reserve(static_cast<std::size_t>(trials));
    area_scaled.reserve(static_cast<std::size_t>(trials));
    std::vector<int> signs(static_cast<std::size_t>(n));
    for (std::int64_t trial = 0; trial < trials; ++trial) {
        const std::uint64_t seed = derive_seed(master_seed, static_cast<std::uint64_t>(trial));
        Rng rng(seed);
        for (auto& s : signs) s = rng.below(2) == 0 ? 1 : -1;
        const TurtlePolygon poly = run_turtle(alpha, step, signs);
        report.rows.push_back({trial, poly.winding, poly.area, seed});
        winding_scaled.push_back(static_cast<double>(poly.winding) * scale);
        area_scaled.push_back(poly.area * scale);
        report.max_gauss_bonnet_residue =
            std::max(report.max_gauss_bonnet_residue, poly.gauss_bonnet_residue);
    }

    const SummaryStats ws = summarize(winding_scaled);
    report.winding_mean = ws.mean;
    report.winding_variance = ws.variance;
    report.winding_skewness = ws.skewness;
    report.winding_ks = ks_to_fitted_normal(winding_scaled);
    const SummaryStats as = summarize(area_scaled);
    report.area_mean = as.mean;
    report.area_variance = as.variance;
    report.area_skewness = as.skewness;
    report.area_ks = ks_to_fitted_normal(area_scaled);
    return report;
}

}  // namespace sclab
