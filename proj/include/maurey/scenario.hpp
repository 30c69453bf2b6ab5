#pragma once

#include <string>
#include <vector>

#include "maurey/monomial.hpp"

namespace maurey::interp {

enum class ScenarioKind { OhToLp, OhToLpRelaxed, OhToCp };

std::string to_string(ScenarioKind k);
ScenarioKind scenario_kind_from_string(const std::string& s);

enum class TermKind { L2, Proj };

// One summand of a sum-space norm.  Plain L2 terms carry a single density;
// projective terms carry a pair of densities over a disjoint split of the
// variable set, and `density` is the product of the pair.
struct Term {
    TermKind kind = TermKind::L2;
    MonomialWeight density;      // over all scenario variables, n folded in symbolically
    MonomialWeight row_weight;   // Proj only
    MonomialWeight col_weight;   // Proj only
    std::vector<std::string> row_vars;
    std::vector<std::string> col_vars;
    MonomialWeight reduced;      // density / common_factor
};

struct ScenarioSpec {
    ScenarioKind kind = ScenarioKind::OhToLp;
    double theta = 0.5;
    double n = 1.0;  // scale parameter; integers for the operator meaning,
                     // any real >= 1 accepted for scaling sweeps
    std::vector<std::string> variables;  // integration variables, in order
    std::vector<Term> terms;
    MonomialWeight common_factor;  // density_l = common_factor * reduced_l

    std::size_t dims() const { return variables.size(); }
    int var_index(const std::string& v) const;
};

ScenarioSpec build_scenario(ScenarioKind kind, double theta, double n);

// log of the reduced weight of term `t` at a point aligned with
// spec.variables (original coordinates, all > 0).
double reduced_log_value(const ScenarioSpec& spec, std::size_t t,
                         const std::vector<double>& point);

// Index (0-based) of the minimal reduced weight at the point; ties broken by
// smallest index.  Throws std::domain_error on nonpositive coordinates.
int active_term(const ScenarioSpec& spec, const std::vector<double>& point);

// log min_l density_l at the point (the min-integrand of the scenario).
double min_density_log(const ScenarioSpec& spec, const std::vector<double>& point);

}  // namespace maurey::interp
