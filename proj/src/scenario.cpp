#include "maurey/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace maurey::interp {

namespace {

MonomialWeight mono(double coef, double npow, std::vector<std::string> vars,
                    std::vector<double> es) {
    return MonomialWeight(coef, npow, std::move(vars), std::move(es));
}

Term l2_term(MonomialWeight density) {
    Term t;
    t.kind = TermKind::L2;
    t.density = std::move(density);
    return t;
}

Term proj_term(MonomialWeight row, std::vector<std::string> row_vars,
               MonomialWeight col, std::vector<std::string> col_vars) {
    Term t;
    t.kind = TermKind::Proj;
    t.density = row.times(col);
    t.row_weight = std::move(row);
    t.col_weight = std::move(col);
    t.row_vars = std::move(row_vars);
    t.col_vars = std::move(col_vars);
    return t;
}

// The 8-term scenario over (s,t,u,v): two plain L2 terms and six projective
// pairs.  Densities are with respect to Lebesgue measure ds dt du dv, with
// the 1/(stuv) weight already folded into the exponents.
ScenarioSpec build_oh_to_lp(double theta, double n, bool relaxed) {
    ScenarioSpec spec;
    spec.kind = relaxed ? ScenarioKind::OhToLpRelaxed : ScenarioKind::OhToLp;
    spec.theta = theta;
    spec.n = n;
    spec.variables = {"s", "t", "u", "v"};
    spec.common_factor = mono(1.0, 2.0, {"s", "t"}, {-1 - 2 * theta, -1 - 2 * theta});

    const double a = 3 - 2 * theta;   // s- or t-exponent of the heavy factor
    const double b = -1 - 2 * theta;  // s- or t-exponent of the light factor

    std::vector<Term> terms;
    terms.push_back(l2_term(mono(1, 1, {"s", "t", "u", "v"}, {a, b, -2, -2})));
    terms.push_back(l2_term(mono(1, 1, {"s", "t", "u", "v"}, {b, a, 0, 0})));
    terms.push_back(proj_term(mono(1, 1, {"s", "t", "u"}, {a, b, -2}), {"s", "t", "u"},
                              mono(1, 1, {"v"}, {0}), {"v"}));
    terms.push_back(proj_term(mono(1, 1, {"s", "t", "u"}, {b, a, 0}), {"s", "t", "u"},
                              mono(1, 1, {"v"}, {-2}), {"v"}));
    terms.push_back(proj_term(mono(1, 1, {"s"}, {b}), {"s"},
                              mono(1, 1, {"t", "u", "v"}, {b, -2, -2}), {"t", "u", "v"}));
    terms.push_back(proj_term(mono(1, 1, {"s", "v"}, {b, 0}), {"s", "v"},
                              mono(1, 1, {"t", "u"}, {b, -2}), {"t", "u"}));
    terms.push_back(proj_term(mono(1, 1, {"s", "u", "v"}, {b, 0, 0}), {"s", "u", "v"},
                              mono(1, 1, {"t"}, {b}), {"t"}));
    terms.push_back(proj_term(mono(1, 1, {"s", "u"}, {b, 0}), {"s", "u"},
                              mono(1, 1, {"t", "v"}, {b, -2}), {"t", "v"}));

    if (relaxed) {
        // all-L2 variant: each projective pair replaced by the L2 space of
        // its product density
        for (auto& t : terms) {
            if (t.kind == TermKind::Proj) {
                Term flat = l2_term(t.density);
                t = flat;
            }
        }
    }
    for (auto& t : terms) t.reduced = t.density.over(spec.common_factor);
    spec.terms = std::move(terms);
    return spec;
}

// The 4-term scenario over (t,s).
ScenarioSpec build_oh_to_cp(double theta, double n) {
    ScenarioSpec spec;
    spec.kind = ScenarioKind::OhToCp;
    spec.theta = theta;
    spec.n = n;
    spec.variables = {"t", "s"};
    spec.common_factor = mono(1.0, 2.0, {"t", "s"}, {-2, 1 - 2 * theta});

    std::vector<Term> terms;
    terms.push_back(l2_term(mono(1, 1, {"t", "s"}, {-2, -1 - 2 * theta})));
    terms.push_back(l2_term(mono(1, 1, {"t", "s"}, {0, 1 - 2 * theta})));
    terms.push_back(proj_term(mono(1, 1, {"t"}, {-2}), {"t"},
                              mono(1, 1, {"s"}, {1 - 2 * theta}), {"s"}));
    terms.push_back(proj_term(mono(1, 1, {"t"}, {0}), {"t"},
                              mono(1, 1, {"s"}, {-1 - 2 * theta}), {"s"}));
    for (auto& t : terms) t.reduced = t.density.over(spec.common_factor);
    spec.terms = std::move(terms);
    return spec;
}

}  // namespace

std::string to_string(ScenarioKind k) {
    switch (k) {
        case ScenarioKind::OhToLp: return "oh_to_lp";
        case ScenarioKind::OhToLpRelaxed: return "oh_to_lp_relaxed";
        case ScenarioKind::OhToCp: return "oh_to_cp";
    }
    return "?";
}

ScenarioKind scenario_kind_from_string(const std::string& s) {
    if (s == "oh_to_lp") return ScenarioKind::OhToLp;
    if (s == "oh_to_lp_relaxed") return ScenarioKind::OhToLpRelaxed;
    if (s == "oh_to_cp") return ScenarioKind::OhToCp;
    throw std::invalid_argument("unknown scenario kind: " + s);
}

int ScenarioSpec::var_index(const std::string& v) const {
    auto it = std::find(variables.begin(), variables.end(), v);
    if (it == variables.end()) throw std::invalid_argument("unknown variable " + v);
    return int(it - variables.begin());
}

ScenarioSpec build_scenario(ScenarioKind kind, double theta, double n) {
    if (!(n >= 1.0) || !std::isfinite(n))
        throw std::invalid_argument("build_scenario: n must be >= 1");
    switch (kind) {
        case ScenarioKind::OhToLp:
        case ScenarioKind::OhToLpRelaxed:
            if (!(theta > 0.0 && theta < 1.0))
                throw std::invalid_argument(
                    "build_scenario: theta must lie in (0, 1) for this scenario");
            return build_oh_to_lp(theta, n, kind == ScenarioKind::OhToLpRelaxed);
        case ScenarioKind::OhToCp:
            if (!(theta > 0.5 && theta < 1.0))
                throw std::invalid_argument(
                    "build_scenario: theta must lie in (1/2, 1) for this scenario");
            return build_oh_to_cp(theta, n);
    }
    throw std::invalid_argument("build_scenario: bad kind");
}

namespace {
double log_weight_at(const ScenarioSpec& spec, const MonomialWeight& w,
                     const std::vector<double>& point) {
    if (point.size() != spec.variables.size())
        throw std::invalid_argument("point dimension mismatch");
    double lv = std::log(w.coefficient) + w.n_power * std::log(spec.n);
    for (std::size_t i = 0; i < w.variables.size(); ++i) {
        if (w.exps[i] == 0.0) continue;
        const int j = spec.var_index(w.variables[i]);
        const double x = point[j];
        if (!(x > 0.0))
            throw std::domain_error("active_term: coordinate " + w.variables[i] +
                                    " must be positive");
        lv += w.exps[i] * std::log(x);
    }
    return lv;
}
}  // namespace

double reduced_log_value(const ScenarioSpec& spec, std::size_t t,
                         const std::vector<double>& point) {
    return log_weight_at(spec, spec.terms.at(t).reduced, point);
}

int active_term(const ScenarioSpec& spec, const std::vector<double>& point) {
    for (double x : point)
        if (!(x > 0.0)) throw std::domain_error("active_term: coordinates must be positive");
    int best = 0;
    double best_lv = reduced_log_value(spec, 0, point);
    for (std::size_t t = 1; t < spec.terms.size(); ++t) {
        const double lv = reduced_log_value(spec, t, point);
        if (lv < best_lv) {
            best_lv = lv;
            best = int(t);
        }
    }
    return best;
}

double min_density_log(const ScenarioSpec& spec, const std::vector<double>& point) {
    double best = log_weight_at(spec, spec.terms[0].density, point);
    for (std::size_t t = 1; t < spec.terms.size(); ++t)
        best = std::min(best, log_weight_at(spec, spec.terms[t].density, point));
    return best;
}

}  // namespace maurey::interp
