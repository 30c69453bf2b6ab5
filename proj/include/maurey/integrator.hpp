#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "maurey/fitting.hpp"
#include "maurey/regions.hpp"
#include "maurey/scenario.hpp"

namespace maurey::integrate {

// Inner 1D integral with exponent -1 against a zero or infinite limit.
struct DivergenceError : std::runtime_error {
    std::string variable;
    explicit DivergenceError(const std::string& var)
        : std::runtime_error("divergent integral in variable " + var), variable(var) {}
};

// Exponent pinned at -1 between finite monomial bounds: the intermediate
// result would leave the monomial algebra (a log term), which happens exactly
// at parameter poles such as theta = 1.
struct PoleError : std::runtime_error {
    std::string variable;
    double exponent;
    PoleError(const std::string& var, double e)
        : std::runtime_error("exponent pole at -1 in variable " + var),
          variable(var), exponent(e) {}
};

struct RegionIntegral {
    std::pair<int, int> id;
    double value = 0.0;
    double sqrt_value = 0.0;
    double target = 0.0;  // 0 when no tabulated comparison value exists
    double ratio = 0.0;   // sqrt_value / target
};

// Exact value of the min-integral restricted to one region: the common factor
// times the active reduced weight, integrated by iterated elementary
// antiderivatives (intermediates stay finite signed sums of monomials).
double integrate_region(const interp::ScenarioSpec& spec, const interp::Region& region);

// Exact total min-integral: sum of integrate_region over the derived partition.
double integrate_min(const interp::ScenarioSpec& spec);

// Tabulated comparison value for region (i,j) of the 8-term scenario
// (the 12 listed rows A_{1,1}..A_{4,3}); releases sqrt-scale powers of n and
// the theta blowup factors.
double table2_target(int i, int j, double theta, double n);

// Report sqrt(integral)/target for the 12 listed regions at one (theta, n).
std::vector<RegionIntegral> table2_report(double theta, double n);

// Least-squares slope of log sqrt(integrate_min) against log n.
ScalingFit fit_n_exponent(interp::ScenarioKind kind, double theta,
                          const std::vector<double>& n_list);

// Fitted exponent of the endpoint gauge (theta near 0, 1-theta near 1, or
// 2*theta-1 near 1/2 for the 4-term scenario) for
// sqrt(integrate_min) / n^(leading exponent).
ScalingFit fit_theta_blowup(interp::ScenarioKind kind, double n,
                            const std::vector<double>& theta_list);

struct LogFactorResult {
    ScalingFit fit;          // statistic vs log n, affine fit
    double used_theta = 1.0; // 1 - eps fallback when the closed form has a pole
    bool pole_fallback = false;
};

// Block integral over the A_2 sub-regions divided by n, against log n.
// At theta = 1 the closed forms degenerate (pole), so theta is nudged to
// 1 - 1e-6 and the nudge is recorded.
LogFactorResult log_factor_check(const std::vector<double>& n_list, double theta = 1.0);

// Integral of the A_i block (sum over its sub-regions).
double block_integral(const interp::ScenarioSpec& spec,
                      const std::vector<interp::Region>& regions, int block);

}  // namespace maurey::integrate
