#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "maurey/monomial.hpp"
#include "maurey/regions.hpp"
#include "maurey/scenario.hpp"

namespace maurey::oracle {

// min of positive monomial densities over a product of half-lines; the only
// integrand shape this oracle evaluates
struct MinOfMonomials {
    std::vector<std::string> vars;
    std::vector<MonomialWeight> terms;
    double n = 1.0;

    static MinOfMonomials from_scenario(const interp::ScenarioSpec& spec);

    // log min_l term_l at a log-coordinate point, including the Jacobian of
    // the log substitution (so exp of this integrates dx in log coordinates)
    double log_integrand(const std::vector<double>& logx) const;
};

struct OracleEstimate {
    double value = 0.0;
    double quadrature_error = 0.0;
    double tail_bound = 0.0;
    long long evaluations = 0;
    bool error_flagged = false;  // budget exhausted; error estimate inflated
};

struct UnboundedTailError : std::runtime_error {
    std::string direction;
    explicit UnboundedTailError(const std::string& dir)
        : std::runtime_error("no decaying bound along direction " + dir +
                             "; box must grow"),
          direction(dir) {}
};

// adaptive nested quadrature of the min integrand over a log-coordinate box;
// the innermost dimension integrates the exponential lower envelope exactly
OracleEstimate quad_box(const MinOfMonomials& mm, const LogBox& box, double rel_tol,
                        long long max_evals = 40'000'000);

// same machinery restricted to one region of the partition (bounds clipped to
// a large window; unbounded directions truncated using the decay rate of the
// region's active term)
OracleEstimate quad_region(const interp::ScenarioSpec& spec, const interp::Region& region,
                           double rel_tol, long long max_evals = 40'000'000);

// rigorous upper bound on the integral mass outside the box, by covering the
// complement with slab cells and bounding min by the best weighted geometric
// mean of the terms on each cell
double tail_bound(const MinOfMonomials& mm, const LogBox& box);

// per-direction decay rates of the min along the coordinate axes
// (first = toward 0, second = toward infinity); used by the proposal sampler
std::vector<std::pair<double, double>> axis_decay_rates(const MinOfMonomials& mm);

// seeded importance-sampling estimate of the full-domain integral with a
// product asymmetric-exponential proposal; deterministic given the seed
OracleEstimate mc_estimate(const MinOfMonomials& mm, std::uint64_t seed, long long N);

}  // namespace maurey::oracle
