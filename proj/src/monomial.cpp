#include "maurey/monomial.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace maurey {

MonomialWeight::MonomialWeight(double coef, double npow,
                               std::vector<std::string> vars, std::vector<double> es)
    : coefficient(coef), n_power(npow), variables(std::move(vars)), exps(std::move(es)) {
    if (variables.size() != exps.size())
        throw std::invalid_argument("MonomialWeight: variables/exponents size mismatch");
    validate();
}

void MonomialWeight::validate() const {
    if (!(coefficient > 0.0) || !std::isfinite(coefficient))
        throw std::invalid_argument("MonomialWeight: coefficient must be positive and finite");
    for (double e : exps)
        if (!std::isfinite(e)) throw std::invalid_argument("MonomialWeight: non-finite exponent");
    if (!std::isfinite(n_power)) throw std::invalid_argument("MonomialWeight: non-finite n_power");
}

double MonomialWeight::exponent(const std::string& var) const {
    for (std::size_t i = 0; i < variables.size(); ++i)
        if (variables[i] == var) return exps[i];
    return 0.0;
}

std::map<std::string, double> MonomialWeight::exponent_map() const {
    std::map<std::string, double> m;
    for (std::size_t i = 0; i < variables.size(); ++i) m[variables[i]] = exps[i];
    return m;
}

bool MonomialWeight::depends_only_on(const std::vector<std::string>& allowed) const {
    for (std::size_t i = 0; i < variables.size(); ++i) {
        if (exps[i] == 0.0) continue;
        if (std::find(allowed.begin(), allowed.end(), variables[i]) == allowed.end())
            return false;
    }
    return true;
}

double MonomialWeight::log_value(const std::map<std::string, double>& point, double n) const {
    double lv = std::log(coefficient) + n_power * std::log(n);
    for (std::size_t i = 0; i < variables.size(); ++i) {
        if (exps[i] == 0.0) continue;
        auto it = point.find(variables[i]);
        if (it == point.end())
            throw std::invalid_argument("MonomialWeight: missing coordinate " + variables[i]);
        if (!(it->second > 0.0))
            throw std::domain_error("MonomialWeight: coordinate " + variables[i] +
                                    " must be positive");
        lv += exps[i] * std::log(it->second);
    }
    return lv;
}

double MonomialWeight::value(const std::map<std::string, double>& point, double n) const {
    return std::exp(log_value(point, n));
}

void MonomialWeight::set_exponent(const std::string& var, double e) {
    for (std::size_t i = 0; i < variables.size(); ++i) {
        if (variables[i] == var) {
            exps[i] = e;
            return;
        }
    }
    variables.push_back(var);
    exps.push_back(e);
}

MonomialWeight MonomialWeight::times(const MonomialWeight& o) const {
    MonomialWeight r = *this;
    r.coefficient *= o.coefficient;
    r.n_power += o.n_power;
    for (std::size_t i = 0; i < o.variables.size(); ++i)
        r.set_exponent(o.variables[i], r.exponent(o.variables[i]) + o.exps[i]);
    return r;
}

MonomialWeight MonomialWeight::over(const MonomialWeight& o) const {
    return times(o.pow(-1.0));
}

MonomialWeight MonomialWeight::pow(double p) const {
    MonomialWeight r = *this;
    r.coefficient = std::pow(coefficient, p);
    r.n_power *= p;
    for (double& e : r.exps) e *= p;
    return r;
}

std::string MonomialWeight::str() const {
    std::ostringstream os;
    os << coefficient;
    if (n_power != 0.0) os << " n^" << n_power;
    for (std::size_t i = 0; i < variables.size(); ++i)
        if (exps[i] != 0.0) os << " " << variables[i] << "^" << exps[i];
    return os.str();
}

double monomial_integral_1d(double e, double lo, double hi) {
    if (!(lo >= 0.0) || !(hi > lo))
        throw std::invalid_argument("monomial_integral_1d: need 0 <= lo < hi");
    const double ep1 = e + 1.0;
    const bool lo_zero = (lo == 0.0);
    const bool hi_inf = std::isinf(hi);
    if (std::abs(ep1) <= 1e-12) {
        if (lo_zero || hi_inf)
            throw std::domain_error("monomial_integral_1d: divergent log endpoint");
        return std::log(hi / lo);
    }
    double upper, lower;
    if (hi_inf) {
        if (ep1 > 0.0) throw std::domain_error("monomial_integral_1d: divergent at infinity");
        upper = 0.0;
    } else {
        upper = std::pow(hi, ep1) / ep1;
    }
    if (lo_zero) {
        if (ep1 < 0.0) throw std::domain_error("monomial_integral_1d: divergent at zero");
        lower = 0.0;
    } else {
        lower = std::pow(lo, ep1) / ep1;
    }
    return upper - lower;
}

LogBox LogBox::cube(std::size_t dims, double half_width) {
    LogBox b;
    b.lohi.assign(dims, {-half_width, half_width});
    return b;
}

bool LogBox::contains_origin() const {
    for (const auto& [lo, hi] : lohi)
        if (!(lo < 0.0 && hi > 0.0)) return false;
    return true;
}

}  // namespace maurey
