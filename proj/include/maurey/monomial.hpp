#pragma once

#include <map>
#include <string>
#include <vector>

namespace maurey {

// Positive monomial density  coefficient * n^n_power * prod_v v^exp(v)
// over a product of half-lines.  The scale parameter n is kept symbolic
// (as n_power) and bound only at evaluation time, so one weight serves a
// whole sweep in n.
struct MonomialWeight {
    double coefficient = 1.0;
    double n_power = 0.0;
    std::vector<std::string> variables;  // ordered
    std::vector<double> exps;            // parallel to variables

    MonomialWeight() = default;
    MonomialWeight(double coef, double npow,
                   std::vector<std::string> vars, std::vector<double> es);

    static MonomialWeight one() { return MonomialWeight(); }

    double exponent(const std::string& var) const;  // 0 if absent
    std::map<std::string, double> exponent_map() const;

    bool depends_only_on(const std::vector<std::string>& allowed) const;

    double log_value(const std::map<std::string, double>& point, double n) const;
    double value(const std::map<std::string, double>& point, double n) const;

    MonomialWeight times(const MonomialWeight& o) const;
    MonomialWeight over(const MonomialWeight& o) const;
    MonomialWeight pow(double p) const;

    std::string str() const;

    void validate() const;  // coefficient > 0, finite exponents

private:
    void set_exponent(const std::string& var, double e);
};

// Exact integral of x^e over [lo, hi] with 0 <= lo < hi <= +inf.
// Divergent combinations throw std::domain_error.
double monomial_integral_1d(double e, double lo, double hi);

// Box in log coordinates, aligned to an external variable list.
struct LogBox {
    std::vector<std::pair<double, double>> lohi;  // (log lo, log hi) per variable

    static LogBox cube(std::size_t dims, double half_width);
    std::size_t dims() const { return lohi.size(); }
    bool contains_origin() const;
};

}  // namespace maurey
