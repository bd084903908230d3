#pragma once

#include <cstdint>
#include <span>

namespace expander {

struct Interval {
    double low = 0, high = 0;
};

/// Wilson score interval for hits/n at normal quantile z.
Interval wilson_interval(std::uint64_t hits, std::uint64_t n, double z = 1.959963984540054);
/// Same, for a real-valued proportion estimate.
Interval wilson_interval(double p_hat, std::uint64_t n, double z = 1.959963984540054);

/// Least squares y = intercept + slope·x with a Student-t confidence interval.
struct LinearFit {
    double slope = 0, intercept = 0;
    double slope_se = 0;
    Interval slope_ci;
    double r_squared = 1;
    std::size_t points = 0;
};

LinearFit linear_fit(std::span<const double> x, std::span<const double> y, double level = 0.95);

/// P(X >= stat) for X ~ chi-square with dof degrees of freedom.
double chi_square_pvalue(double stat, unsigned dof);

} // namespace expander
