#include "maurey/orlicz.hpp"

#include <algorithm>
#include <cmath>

namespace maurey::orlicz {

double PiecewiseConvexFunction::operator()(double x) const {
    if (x < 0.0) throw std::invalid_argument("PiecewiseConvexFunction: x must be >= 0");
    if (xs.size() < 2) return 0.0;
    auto it = std::upper_bound(xs.begin(), xs.end(), x);
    std::size_t hi = std::size_t(it - xs.begin());
    if (hi >= xs.size()) hi = xs.size() - 1;  // extrapolate by the last chord
    if (hi == 0) hi = 1;
    const std::size_t lo = hi - 1;
    const double t = (x - xs[lo]) / (xs[hi] - xs[lo]);
    return ys[lo] + t * (ys[hi] - ys[lo]);
}

double PiecewiseConvexFunction::inverse(double y) const {
    if (y < 0.0) throw std::invalid_argument("PiecewiseConvexFunction: y must be >= 0");
    if (y == 0.0) return 0.0;
    std::size_t hi = 1;
    while (hi < ys.size() && ys[hi] < y) ++hi;
    if (hi >= ys.size()) hi = ys.size() - 1;  // last chord
    const std::size_t lo = hi - 1;
    const double dy = ys[hi] - ys[lo];
    if (!(dy > 0.0))
        throw std::domain_error("PiecewiseConvexFunction: flat segment has no inverse");
    return xs[lo] + (y - ys[lo]) / dy * (xs[hi] - xs[lo]);
}

void PiecewiseConvexFunction::validate() const {
    if (xs.size() != ys.size() || xs.size() < 2)
        throw DataError("envelope: need at least two samples");
    if (xs[0] != 0.0 || ys[0] != 0.0) throw DataError("envelope: must start at (0, 0)");
    double prev_slope = -1.0;
    for (std::size_t i = 1; i < xs.size(); ++i) {
        if (!(xs[i] > xs[i - 1])) throw DataError("envelope: abscissae not increasing");
        if (ys[i] < ys[i - 1] - 1e-12 * std::abs(ys[i]))
            throw DataError("envelope: values decrease");
        const double slope = (ys[i] - ys[i - 1]) / (xs[i] - xs[i - 1]);
        if (slope < prev_slope * (1.0 - 1e-9) - 1e-300)
            throw DataError("envelope: chord slopes decrease");
        prev_slope = slope;
    }
}

PiecewiseConvexFunction convexify(const std::vector<double>& xs,
                                  const std::vector<double>& ys) {
    if (xs.size() != ys.size()) throw DataError("convexify: size mismatch");
    if (xs.size() < 8) throw DataError("convexify: need at least 8 samples including 0");
    std::vector<std::pair<double, double>> pts;
    for (std::size_t i = 0; i < xs.size(); ++i) pts.emplace_back(xs[i], ys[i]);
    std::sort(pts.begin(), pts.end());
    if (pts.front().first != 0.0) throw DataError("convexify: samples must include x = 0");
    double prev = -1e300;
    for (const auto& [x, y] : pts) {
        if (y < prev * (1.0 - 1e-9) - 1e-300)
            throw DataError("convexify: non-monotone input samples");
        prev = std::max(prev, y);
    }
    // lower hull, monotone chain
    std::vector<std::pair<double, double>> hull;
    for (const auto& p : pts) {
        while (hull.size() >= 2) {
            const auto& a = hull[hull.size() - 2];
            const auto& b = hull[hull.size() - 1];
            const double cross = (b.first - a.first) * (p.second - a.second) -
                                 (b.second - a.second) * (p.first - a.first);
            if (cross <= 0.0)
                hull.pop_back();
            else
                break;
        }
        hull.push_back(p);
    }
    PiecewiseConvexFunction f;
    for (const auto& [x, y] : hull) {
        f.xs.push_back(x);
        f.ys.push_back(std::max(y, 0.0));
    }
    f.ys[0] = 0.0;
    f.validate();
    return f;
}

PsiBuilder::PsiBuilder(double theta, sumsolve::Grid grid, sumsolve::SolveConfig cfg)
    : theta_(theta), grid_(std::move(grid)), cfg_(cfg) {
    if (grid_.spec.n != 1.0)
        throw std::invalid_argument("PsiBuilder: expects the n-free (n = 1) scenario grid");
    if (std::abs(grid_.spec.theta - theta) > 1e-12)
        throw std::invalid_argument("PsiBuilder: grid built for a different theta");
    // warm start for the first ladder point
    warm_ = sumsolve::region_assignment_fields(grid_, interp::derive_regions(grid_.spec));
    have_warm_ = true;
}

std::vector<double> PsiBuilder::default_ladder() {
    std::vector<double> xs;
    for (int k = -12; k <= 12; ++k) xs.push_back(std::ldexp(1.0, k));
    return xs;
}

double PsiBuilder::psi(double x) {
    if (x < 0.0) throw std::invalid_argument("psi: x must be >= 0");
    if (x == 0.0) return 0.0;
    auto it = cache_.find(x);
    if (it != cache_.end()) return it->second;

    std::vector<sumsolve::TermObjective> objs;
    for (const auto& t : grid_.spec.terms) {
        if (t.kind == interp::TermKind::Proj)
            objs.push_back({sumsolve::ObjectiveKind::Linear, x});
        else
            objs.push_back({sumsolve::ObjectiveKind::Squared, x * x});
    }
    const auto res = sumsolve::run_solver(grid_, objs, 1.0, cfg_,
                                          have_warm_ ? &warm_ : nullptr);
    warm_ = res.fields;
    have_warm_ = true;
    cache_[x] = res.objective;
    return res.objective;
}

PiecewiseConvexFunction PsiBuilder::build(const std::vector<double>& ladder) {
    std::vector<double> xs = {0.0}, ys = {0.0};
    std::vector<double> sorted = ladder;
    std::sort(sorted.begin(), sorted.end());
    for (double x : sorted) {
        xs.push_back(x);
        ys.push_back(psi(x));
    }
    const auto env = convexify(xs, ys);
    // sandwich psi(x/2) <= env(x) <= psi(x) at every sampled point
    for (std::size_t i = 1; i < xs.size(); ++i) {
        const double ex = env(xs[i]);
        if (ex > ys[i] * (1.0 + 1e-9))
            throw DataError("psi envelope exceeds the sampled value");
        if (psi(xs[i] / 2.0) > ex * (1.0 + 1e-6))
            throw DataError("psi sandwich violated at a ladder point");
    }
    return env;
}

double orlicz_norm(const PiecewiseConvexFunction& F, const std::vector<double>& a) {
    std::vector<double> mags;
    for (double v : a)
        if (v != 0.0) mags.push_back(std::abs(v));
    if (mags.empty()) return 0.0;
    const double amax = *std::max_element(mags.begin(), mags.end());
    const double m = double(mags.size());
    auto total = [&](double rho) {
        double s = 0.0;
        for (double v : mags) s += F(v / rho);
        return s;
    };
    double lo = amax / F.inverse(1.0);      // total >= F(amax/lo) = 1
    double hi = amax / F.inverse(1.0 / m);  // every summand <= 1/m
    if (!(hi > 0.0) || !(lo > 0.0) || !(hi >= lo))
        throw std::domain_error("orlicz_norm: degenerate bracket");
    for (int it = 0; it < 200 && (hi - lo) > 1e-10 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (total(mid) > 1.0)
            lo = mid;
        else
            hi = mid;
    }
    return hi;
}

double identity_orlicz_norm(double theta, double n, const LogBox& box, int resolution,
                            const sumsolve::SolveConfig& cfg) {
    const auto spec = interp::build_scenario(interp::ScenarioKind::OhToLp, theta, n);
    const auto grid = sumsolve::discretize(spec, box, resolution);
    return sumsolve::solve_decomposition(grid, 1.0, cfg).objective;
}

ScalingFit lp_inclusion_ratio(double theta, const PiecewiseConvexFunction& F,
                              const std::vector<double>& n_list) {
    const double p = 2.0 / (2.0 - theta);
    std::vector<std::pair<double, double>> pts;
    for (double n : n_list) {
        const std::vector<double> ones(std::size_t(n), 1.0);
        const double r = orlicz_norm(F, ones) / std::pow(n, 1.0 / p);
        pts.emplace_back(std::log(n), std::log(r));
    }
    return fit_scaling(pts);
}

}  // namespace maurey::orlicz
