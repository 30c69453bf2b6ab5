#include "maurey/fitting.hpp"

#include <cmath>

namespace maurey {

LineFit fit_line(const std::vector<std::pair<double, double>>& points) {
    const std::size_t m = points.size();
    if (m < 2) throw FitError("fit_line: need at least 2 points");
    double sx = 0, sy = 0;
    for (const auto& [x, y] : points) {
        sx += x;
        sy += y;
    }
    const double xbar = sx / m, ybar = sy / m;
    double sxx = 0, sxy = 0, syy = 0;
    for (const auto& [x, y] : points) {
        sxx += (x - xbar) * (x - xbar);
        sxy += (x - xbar) * (y - ybar);
        syy += (y - ybar) * (y - ybar);
    }
    if (sxx == 0.0) throw FitError("fit_line: degenerate abscissae");
    LineFit f;
    f.slope = sxy / sxx;
    f.intercept = ybar - f.slope * xbar;
    double ss_res = 0;
    for (const auto& [x, y] : points) {
        const double r = y - (f.intercept + f.slope * x);
        ss_res += r * r;
    }
    f.r_squared = (syy > 0.0) ? 1.0 - ss_res / syy : 1.0;
    f.slope_stderr = (m > 2) ? std::sqrt(ss_res / double(m - 2) / sxx) : 0.0;
    return f;
}

ScalingFit fit_scaling(const std::vector<std::pair<double, double>>& points) {
    if (points.size() < 4) throw FitError("fit_scaling: need at least 4 valid points");
    const LineFit lf = fit_line(points);
    ScalingFit sf;
    sf.exponent = lf.slope;
    sf.stderr_ = lf.slope_stderr;
    sf.intercept = lf.intercept;
    sf.r_squared = lf.r_squared;
    sf.points = points;
    return sf;
}

}  // namespace maurey
