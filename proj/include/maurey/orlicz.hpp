#pragma once

#include <map>
#include <stdexcept>
#include <vector>

#include "maurey/fitting.hpp"
#include "maurey/sumsolve.hpp"

namespace maurey::orlicz {

struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Sampled lower convex envelope: value 0 at 0, nondecreasing, convex;
// evaluation by linear interpolation, extrapolation by the last chord slope.
struct PiecewiseConvexFunction {
    std::vector<double> xs;  // ascending, xs[0] == 0
    std::vector<double> ys;  // ys[0] == 0

    double operator()(double x) const;
    double inverse(double y) const;  // y >= 0
    void validate() const;           // convexity, base point, monotonicity
};

// lower convex envelope of the sampled graph (samples must include x = 0 and
// be nondecreasing)
PiecewiseConvexFunction convexify(const std::vector<double>& xs,
                                  const std::vector<double>& ys);

// Evaluates the scale-x decomposition value
//   psi(x) = inf { x^2 |f_1|^2 + x^2 |f_2|^2 + x |f_3|_pi + ... }
// over cellwise decompositions of 1 on the grid (n-free measures, so the
// grid is built from the scenario at n = 1).  Results are cached per x and
// the ladder is solved in ascending order with warm starts.
class PsiBuilder {
public:
    PsiBuilder(double theta, sumsolve::Grid grid, sumsolve::SolveConfig cfg);

    double psi(double x);

    // geometric default ladder 2^-12 .. 2^12 (25 points)
    static std::vector<double> default_ladder();

    // solve the ladder, convexify, and check the psi(x/2) <= env(x) <= psi(x)
    // sandwich at the sampled points
    PiecewiseConvexFunction build(const std::vector<double>& ladder);
    PiecewiseConvexFunction build() { return build(default_ladder()); }

    const sumsolve::Grid& grid() const { return grid_; }
    double theta() const { return theta_; }

private:
    double theta_;
    sumsolve::Grid grid_;
    sumsolve::SolveConfig cfg_;
    std::map<double, double> cache_;
    std::vector<std::vector<double>> warm_;
    bool have_warm_ = false;
};

// Orlicz sequence norm inf { rho > 0 : sum F(|a_i|/rho) <= 1 } by bisection
// (the sum is monotone in rho); relative tolerance 1e-10.
double orlicz_norm(const PiecewiseConvexFunction& F, const std::vector<double>& a);

// decomposition value of the identity at scale n: the n^(1/2)-weighted L2
// terms and n-weighted projective terms of the (theta, n) scenario
double identity_orlicz_norm(double theta, double n, const LogBox& box, int resolution,
                            const sumsolve::SolveConfig& cfg);

// fitted n-slope of log( |sum_{i<=n} e_i|_F / n^(1/p) ) against log n,
// p = 2/(2 - theta); flat slope witnesses the l_p inclusion
ScalingFit lp_inclusion_ratio(double theta, const PiecewiseConvexFunction& F,
                              const std::vector<double>& n_list);

}  // namespace maurey::orlicz
