#include "expander/stats.hpp"

#include "expander/error.hpp"

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/students_t.hpp>

#include <algorithm>
#include <cmath>

namespace expander {

Interval wilson_interval(double p_hat, std::uint64_t n, double z)
{
    if (n == 0)
        return {0, 1};
    const double nn = static_cast<double>(n);
    const double z2 = z * z;
    const double center = (p_hat + z2 / (2 * nn)) / (1 + z2 / nn);
    const double half = z * std::sqrt(std::max(0.0, p_hat * (1 - p_hat) / nn + z2 / (4 * nn * nn))) / (1 + z2 / nn);
    return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

Interval wilson_interval(std::uint64_t hits, std::uint64_t n, double z)
{
    return wilson_interval(n ? static_cast<double>(hits) / static_cast<double>(n) : 0.0, n, z);
}

LinearFit linear_fit(std::span<const double> x, std::span<const double> y, double level)
{
    if (x.size() != y.size() || x.size() < 2)
        throw PreconditionError("linear_fit: need at least two paired points");
    const double n = static_cast<double>(x.size());
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (sxx == 0)
        throw PreconditionError("linear_fit: x values are all equal");
    LinearFit f;
    f.points = x.size();
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    double sse = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double r = y[i] - f.intercept - f.slope * x[i];
        sse += r * r;
    }
    f.r_squared = syy > 0 ? 1 - sse / syy : 1;
    if (x.size() > 2) {
        f.slope_se = std::sqrt(sse / (n - 2) / sxx);
        const boost::math::students_t dist(n - 2);
        const double t = boost::math::quantile(dist, 0.5 + level / 2);
        f.slope_ci = {f.slope - t * f.slope_se, f.slope + t * f.slope_se};
    } else {
        f.slope_ci = {f.slope, f.slope};
    }
    return f;
}

double chi_square_pvalue(double stat, unsigned dof)
{
    if (dof == 0)
        throw PreconditionError("chi_square_pvalue: zero degrees of freedom");
    if (stat <= 0)
        return 1;
    return boost::math::cdf(boost::math::complement(boost::math::chi_squared(dof), stat));
}

} // namespace expander
