#include "maurey/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>

namespace maurey::integrate {

using interp::BoundExpr;
using interp::Region;
using interp::ScenarioKind;
using interp::ScenarioSpec;

namespace {

constexpr double kPoleTol = 1e-9;

// A signed monomial over the region's integration variables.
struct Mono {
    double coef;
    std::vector<double> exps;  // aligned to Region::order
};

std::int64_t quantize(double e) { return std::llround(e * 1e9); }

// Substitute a monomial bound for variable `level`: bound^p folded into the
// remaining exponents and coefficient.  n is numeric here.
Mono substitute(const Mono& m, std::size_t level, double p, const MonomialWeight& bound,
                const std::vector<std::string>& order, double n) {
    Mono r;
    r.coef = m.coef * std::pow(bound.coefficient, p) * std::pow(n, bound.n_power * p);
    r.exps = m.exps;
    r.exps[level] = 0.0;
    for (std::size_t i = 0; i < bound.variables.size(); ++i) {
        if (bound.exps[i] == 0.0) continue;
        auto it = std::find(order.begin(), order.end(), bound.variables[i]);
        if (it == order.end() || std::size_t(it - order.begin()) >= level)
            throw std::logic_error("bound depends on a variable not yet bound: " +
                                   bound.variables[i]);
        r.exps[it - order.begin()] += bound.exps[i] * p;
    }
    return r;
}

void combine(std::vector<Mono>& terms) {
    std::map<std::vector<std::int64_t>, double> acc;
    for (const auto& m : terms) {
        std::vector<std::int64_t> key(m.exps.size());
        for (std::size_t i = 0; i < m.exps.size(); ++i) key[i] = quantize(m.exps[i]);
        acc[key] += m.coef;
    }
    terms.clear();
    for (const auto& [key, coef] : acc) {
        Mono m;
        m.coef = coef;
        m.exps.resize(key.size());
        for (std::size_t i = 0; i < key.size(); ++i) m.exps[i] = double(key[i]) * 1e-9;
        terms.push_back(m);
    }
}

}  // namespace

double integrate_region(const ScenarioSpec& spec, const Region& region) {
    const auto& order = region.order;
    const double n = spec.n;

    // integrand = common_factor * reduced(active), exponents aligned to order
    const MonomialWeight w = spec.common_factor.times(spec.terms.at(region.active_term).reduced);
    Mono start;
    start.coef = w.coefficient * std::pow(n, w.n_power);
    start.exps.assign(order.size(), 0.0);
    for (std::size_t i = 0; i < w.variables.size(); ++i) {
        auto it = std::find(order.begin(), order.end(), w.variables[i]);
        if (it == order.end()) {
            if (w.exps[i] != 0.0)
                throw std::logic_error("integrand variable missing from region order");
            continue;
        }
        start.exps[it - order.begin()] = w.exps[i];
    }
    std::vector<Mono> terms = {start};

    for (std::size_t level = order.size(); level-- > 0;) {
        const BoundExpr& lo = region.bounds[level].first;
        const BoundExpr& hi = region.bounds[level].second;
        std::vector<Mono> next;
        for (const auto& m : terms) {
            const double e = m.exps[level];
            const double ep1 = e + 1.0;
            if (std::abs(ep1) <= kPoleTol) {
                if (lo.zero || hi.inf) throw DivergenceError(order[level]);
                throw PoleError(order[level], e);
            }
            Mono anti = m;
            anti.coef /= ep1;
            if (hi.inf) {
                if (ep1 > 0.0) throw DivergenceError(order[level]);
                // vanishing upper contribution
            } else {
                next.push_back(substitute(anti, level, ep1, hi.expr, order, n));
            }
            if (lo.zero) {
                if (ep1 < 0.0) throw DivergenceError(order[level]);
            } else {
                Mono low = substitute(anti, level, ep1, lo.expr, order, n);
                low.coef = -low.coef;
                next.push_back(low);
            }
        }
        combine(next);
        terms = std::move(next);
    }

    double value = 0.0;
    for (const auto& m : terms) value += m.coef;
    if (!std::isfinite(value))
        throw std::overflow_error("integrate_region: value not representable; reduce n");
    // empty ranges (e.g. the A_2 blocks at n = 1) integrate to zero; tiny
    // negative values from cancellation are clipped
    return std::max(value, 0.0);
}

double integrate_min(const ScenarioSpec& spec) {
    const ScenarioSpec* base = &spec;
    ScenarioSpec alias;
    if (spec.kind == ScenarioKind::OhToLpRelaxed) {
        // the relaxed variant has the same product densities, hence the same
        // partition and the same min-integral
        alias = interp::build_scenario(ScenarioKind::OhToLp, spec.theta, spec.n);
        base = &alias;
    }
    double total = 0.0;
    for (const auto& r : interp::derive_regions(*base)) total += integrate_region(*base, r);
    return total;
}

double table2_target(int i, int j, double theta, double n) {
    double n_exp, th_exp, omt_exp;
    const double quarter = (3.0 - theta) / 4.0;
    const double half = 1.0 - theta / 2.0;
    if (i == 1 || i == 3) {
        n_exp = quarter;
        th_exp = (j == 1) ? -1.0 : -0.5;
        omt_exp = (j == 1) ? -0.5 : -1.0;
    } else if (i == 2) {
        n_exp = half;
        th_exp = (j == 1) ? -1.0 : -0.5;
        omt_exp = (j == 3) ? -1.5 : -1.0;
    } else if (i == 4) {
        n_exp = half;
        th_exp = (j == 1) ? -1.0 : -0.5;
        omt_exp = (j == 1) ? -1.0 : -1.5;
    } else {
        throw std::invalid_argument("table2_target: only regions A_{1..4,1..3} are listed");
    }
    return std::pow(n, n_exp) * std::pow(theta, th_exp) * std::pow(1.0 - theta, omt_exp);
}

std::vector<RegionIntegral> table2_report(double theta, double n) {
    const ScenarioSpec spec = interp::build_scenario(ScenarioKind::OhToLp, theta, n);
    const auto regions = interp::derive_regions(spec);
    std::vector<RegionIntegral> out;
    for (int i = 1; i <= 4; ++i) {
        for (int j = 1; j <= 3; ++j) {
            const Region& r = interp::find_region(regions, i, j);
            RegionIntegral ri;
            ri.id = {i, j};
            ri.value = integrate_region(spec, r);
            ri.sqrt_value = std::sqrt(ri.value);
            ri.target = table2_target(i, j, theta, n);
            ri.ratio = ri.sqrt_value / ri.target;
            out.push_back(ri);
        }
    }
    return out;
}

ScalingFit fit_n_exponent(ScenarioKind kind, double theta, const std::vector<double>& n_list) {
    if (n_list.size() < 5)
        throw std::invalid_argument("fit_n_exponent: need a geometric list of >= 5 points");
    std::vector<std::pair<double, double>> pts;
    for (double n : n_list) {
        const double m = integrate_min(interp::build_scenario(kind, theta, n));
        if (m > 0.0 && std::isfinite(m)) pts.emplace_back(std::log(n), 0.5 * std::log(m));
    }
    return fit_scaling(pts);
}

ScalingFit fit_theta_blowup(ScenarioKind kind, double n, const std::vector<double>& theta_list) {
    if (theta_list.size() < 2)
        throw std::invalid_argument("fit_theta_blowup: need a monotone theta ladder");
    const bool increasing = theta_list.back() > theta_list.front();
    std::vector<std::pair<double, double>> pts;
    for (double theta : theta_list) {
        const double m = integrate_min(interp::build_scenario(kind, theta, n));
        double lead, gauge;
        if (kind == ScenarioKind::OhToCp) {
            lead = (1.0 + 2.0 * theta) / 4.0;  // sqrt-scale leading n-exponent
            gauge = 2.0 * theta - 1.0;
        } else {
            lead = 1.0 - theta / 2.0;
            gauge = increasing ? (1.0 - theta) : theta;
        }
        const double y = 0.5 * std::log(m) - lead * std::log(n);
        pts.emplace_back(std::log(gauge), y);
    }
    return fit_scaling(pts);
}

double block_integral(const ScenarioSpec& spec, const std::vector<Region>& regions, int block) {
    double total = 0.0;
    for (const auto& r : regions)
        if (r.id.first == block) total += integrate_region(spec, r);
    return total;
}

LogFactorResult log_factor_check(const std::vector<double>& n_list, double theta) {
    LogFactorResult res;
    res.used_theta = theta;
    auto block2 = [&](double th, double n) {
        const ScenarioSpec spec = interp::build_scenario(ScenarioKind::OhToLp, th, n);
        return block_integral(spec, interp::derive_regions(spec), 2);
    };
    if (theta >= 1.0) {
        res.used_theta = 1.0 - 1e-6;
        res.pole_fallback = true;  // closed forms pole at theta = 1 exactly
    } else {
        try {
            block2(theta, n_list.front());
        } catch (const PoleError&) {
            res.used_theta = theta - 1e-6;
            res.pole_fallback = true;
        } catch (const DivergenceError&) {
            res.used_theta = theta - 1e-6;
            res.pole_fallback = true;
        }
    }
    std::vector<std::pair<double, double>> pts;
    for (double n : n_list) pts.emplace_back(std::log(n), block2(res.used_theta, n) / n);
    res.fit = fit_scaling(pts);
    return res;
}

}  // namespace maurey::integrate
