#include "sclab/stats.hpp"

#include <algorithm>
#include <cmath>

#include "sclab/errors.hpp"

namespace sclab {

SummaryStats summarize(const std::vector<double>& samples) {
    SummaryStats out;
    out.count = samples.size();
    if (samples.empty()) return out;
    double sum = 0.0;
    for (double x : samples) sum += x;
    out.mean = sum / static_cast<double>(samples.size());
    double m2 = 0.0;
    double m3 = 0.0;
    for (double x : samples) {
        const double d = x - out.mean;
        m2 += d * d;
        m3 += d * d * d;
    }
    const double n = static_cast<double>(samples.size());
    out.variance = samples.size() > 1 ? m2 / (n - 1.0) : 0.0;
    const double m2n = m2 / n;
    out.skewness = m2n > 0.0 ? (m3 / n) / std::pow(m2n, 1.5) : 0.0;
    return out;
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

double ks_to_fitted_normal(const std::vector<double>& samples) {
    if (samples.size() < 2) return 1.0;
    const SummaryStats s = summarize(samples);
    const double sd = std::sqrt(s.variance);
    if (!(sd > 0.0)) return 1.0;
    std::vector<double> sorted = samples;
    std::sort(sorted.begin(), sorted.end());
    const double n = static_cast<double>(sorted.size());
    double dist = 0.0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const double f = normal_cdf((sorted[i] - s.mean) / sd);
        const double lo = static_cast<double>(i) / n;
        const double hi = static_cast<double>(i + 1) / n;
        dist = std::max(dist, std::max(std::abs(f - lo), std::abs(f - hi)));
    }
    return dist;
}

PowerLawFit powerlaw_fit(const std::vector<double>& xs, const std::vector<double>& ys) {
    if (xs.size() != ys.size() || xs.size() < 2)
        throw Error("powerlaw_fit requires two or more matched samples");
    std::vector<double> lx(xs.size()), ly(ys.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (!(xs[i] > 0.0) || !(ys[i] > 0.0))
            throw Error("powerlaw_fit requires strictly positive samples");
        lx[i] = std::log(xs[i]);
        ly[i] = std::log(ys[i]);
    }
    const double n = static_cast<double>(xs.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        mx += lx[i];
        my += ly[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        sxx += (lx[i] - mx) * (lx[i] - mx);
        sxy += (lx[i] - mx) * (ly[i] - my);
    }
    if (!(sxx > 0.0)) throw Error("powerlaw_fit requires at least two distinct x values");
    PowerLawFit fit;
    fit.exponent = sxy / sxx;
    fit.log_intercept = my - fit.exponent * mx;
    double rss = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        const double r = ly[i] - (fit.log_intercept + fit.exponent * lx[i]);
        rss += r * r;
    }
    fit.exponent_stderr =
        lx.size() > 2 ? std::sqrt(rss / (n - 2.0) / sxx) : 0.0;
    return fit;
}

}  // namespace sclab
