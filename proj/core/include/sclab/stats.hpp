#pragma once

#include <cstddef>
#include <vector>

namespace sclab {

struct SummaryStats {
    std::size_t count = 0;
    double mean = 0.0;
    double variance = 0.0;  // unbiased
    double skewness = 0.0;
};

SummaryStats summarize(const std::vector<double>& samples);

// Kolmogorov-Smirnov distance between the empirical distribution and the
// normal fitted by sample mean and standard deviation. A degenerate sample
// (zero variance) returns 1.
double ks_to_fitted_normal(const std::vector<double>& samples);

// Least squares on (log x, log y): y ~ C x^exponent.
struct PowerLawFit {
    double exponent = 0.0;
    double log_intercept = 0.0;
    double exponent_stderr = 0.0;
};
PowerLawFit powerlaw_fit(const std::vector<double>& xs, const std::vector<double>& ys);

double normal_cdf(double z);

}  // namespace sclab
