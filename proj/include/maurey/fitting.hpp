#pragma once

#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

namespace maurey {

// Unweighted least-squares line fit.  Used in log-log space so that
// multiplicative equivalence constants become additive intercepts and do not
// bias slopes.
struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double slope_stderr = 0.0;
    double r_squared = 0.0;
};

LineFit fit_line(const std::vector<std::pair<double, double>>& points);

struct FitError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Scaling-law fit result: a fitted exponent with its standard error and the
// sample points (parameter, measured value) that produced it.
struct ScalingFit {
    double exponent = 0.0;
    double stderr_ = 0.0;
    std::vector<std::pair<double, double>> points;  // as fitted (x, y)
    double intercept = 0.0;
    double r_squared = 0.0;
};

ScalingFit fit_scaling(const std::vector<std::pair<double, double>>& points);

}  // namespace maurey
