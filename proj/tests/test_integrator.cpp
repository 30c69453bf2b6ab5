#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "maurey/integrator.hpp"

using namespace maurey;
using namespace maurey::interp;
using namespace maurey::integrate;

namespace {

// iterated elementary antiderivatives, worked by hand and frozen
double exact_A11(double th, double n) {
    return std::pow(n, (3 - th) / 2) / (4 * th * th * (1 - th));
}
double exact_A12(double th, double n) {
    return std::pow(n, (3 - th) / 2) / (8 * th * (1 - th) * (1 - th));
}
double exact_A21(double th, double n) {
    const double gap = 1.0 - std::pow(n, -(1 - th) / 2);
    return std::pow(n, 2 - th) * gap / (4 * th * th * (1 - th) * (1 - th));
}
double exact_A22(double th, double n) {
    const double gap = 1.0 - std::pow(n, -(1 - th) / 2);
    return std::pow(n, 2 - th) * gap / (8 * th * std::pow(1 - th, 3));
}
double exact_total(double th, double n) {
    return std::pow(n, 2 - th) * (1.0 - th * std::pow(n, -(1 - th) / 2)) /
           (th * th * std::pow(1 - th, 3));
}
double exact_cp_total(double th, double n) {
    return std::pow(n, (1 + 2 * th) / 2) / ((1 - th) * (2 * th - 1)) -
           std::pow(n, (3 - 2 * th) / 2) / (th * (2 * th - 1));
}

}  // namespace

TEST_CASE("region closed forms across the (theta, n) sweep") {
    for (double th : {0.2, 0.3, 0.5, 0.7, 0.8}) {
        for (double n : {1.0, 16.0, 256.0, 1024.0}) {
            const auto spec = build_scenario(ScenarioKind::OhToLp, th, n);
            const auto regions = derive_regions(spec);
            auto val = [&](int i, int j) {
                return integrate_region(spec, find_region(regions, i, j));
            };
            CHECK(val(1, 1) == doctest::Approx(exact_A11(th, n)).epsilon(1e-12));
            CHECK(val(1, 2) == doctest::Approx(exact_A12(th, n)).epsilon(1e-12));
            CHECK(val(1, 3) == doctest::Approx(exact_A12(th, n)).epsilon(1e-12));
            CHECK(val(3, 1) == doctest::Approx(exact_A11(th, n)).epsilon(1e-12));
            CHECK(val(3, 2) == doctest::Approx(exact_A12(th, n)).epsilon(1e-12));
            CHECK(val(3, 3) == doctest::Approx(exact_A12(th, n)).epsilon(1e-12));
            if (n > 1.0) {
                CHECK(val(2, 1) == doctest::Approx(exact_A21(th, n)).epsilon(1e-12));
                CHECK(val(2, 2) == doctest::Approx(exact_A22(th, n)).epsilon(1e-12));
                CHECK(val(2, 3) == doctest::Approx(exact_A22(th, n)).epsilon(1e-12));
                CHECK(val(4, 1) == doctest::Approx(exact_A21(th, n)).epsilon(1e-12));
                CHECK(val(4, 2) == doctest::Approx(exact_A22(th, n)).epsilon(1e-12));
                CHECK(val(4, 3) == doctest::Approx(exact_A22(th, n)).epsilon(1e-12));
            } else {
                // the v-ranges of the A_2 and A_4 blocks are empty at n = 1
                CHECK(val(2, 1) == 0.0);
                CHECK(val(4, 3) == 0.0);
            }
            // symmetry: each block 5..8 integral equals its partner's
            for (int i = 1; i <= 4; ++i)
                for (int j = 1; j <= 3; ++j)
                    CHECK(val(i + 4, j) == doctest::Approx(val(i, j)).epsilon(1e-10));
        }
    }
}

TEST_CASE("total min-integral closed form, positivity at n=1, monotone in n") {
    for (double th : {0.1, 0.4, 0.6, 0.9}) {
        double prev = 0.0;
        for (double n : {1.0, 2.0, 8.0, 64.0, 4096.0}) {
            const double m = integrate_min(build_scenario(ScenarioKind::OhToLp, th, n));
            CHECK(m == doctest::Approx(exact_total(th, n)).epsilon(1e-12));
            CHECK(m > 0.0);
            CHECK(m >= prev);
            prev = m;
        }
    }
    // relaxed variant shares the min-integral
    CHECK(integrate_min(build_scenario(ScenarioKind::OhToLpRelaxed, 0.5, 64.0)) ==
          doctest::Approx(exact_total(0.5, 64.0)).epsilon(1e-12));
}

TEST_CASE("4-term scenario: per-cell and total closed forms") {
    for (double th : {0.6, 0.7, 0.9}) {
        for (double n : {1.0, 8.0, 256.0}) {
            const auto spec = build_scenario(ScenarioKind::OhToCp, th, n);
            const auto regions = derive_regions(spec);
            auto val = [&](int i, int j) {
                return integrate_region(spec, find_region(regions, i, j));
            };
            const double np = std::pow(n, (2 * th - 1) / 2), nm = std::pow(n, (1 - 2 * th) / 2);
            const double t1 = n * ((np - nm) / (2 * th - 1) + nm / (2 * th));
            const double t2 = n * (np / (2 * (1 - th)) + (np - nm) / (2 * th - 1));
            const double t3 = std::pow(n, (1 + 2 * th) / 2) / (2 * (1 - th));
            const double t4 = std::pow(n, (3 - 2 * th) / 2) / (2 * th);
            CHECK(val(1, 1) + val(1, 2) == doctest::Approx(t1).epsilon(1e-12));
            CHECK(val(2, 1) + val(2, 2) == doctest::Approx(t2).epsilon(1e-12));
            CHECK(val(3, 1) == doctest::Approx(t3).epsilon(1e-12));
            CHECK(val(4, 1) == doctest::Approx(t4).epsilon(1e-12));
            CHECK(integrate_min(spec) == doctest::Approx(exact_cp_total(th, n)).epsilon(1e-12));
        }
    }
}

TEST_CASE("constant density over a finite box integrates to its volume") {
    ScenarioSpec spec;
    spec.kind = ScenarioKind::OhToLp;
    spec.theta = 0.5;
    spec.n = 1.0;
    spec.variables = {"x", "y"};
    Term t;
    t.kind = TermKind::L2;
    t.density = MonomialWeight(1.0, 0.0, {}, {});
    t.reduced = t.density;
    spec.terms = {t};
    spec.common_factor = MonomialWeight(1.0, 0.0, {}, {});
    Region r;
    r.id = {1, 1};
    r.active_term = 0;
    r.order = {"x", "y"};
    const auto one = BoundExpr::of(MonomialWeight(1.0, 0.0, {}, {}));
    const auto e1 = BoundExpr::of(MonomialWeight(std::exp(1.0), 0.0, {}, {}));
    r.bounds = {{one, e1}, {one, e1}};
    CHECK(integrate_region(spec, r) ==
          doctest::Approx(std::pow(std::exp(1.0) - 1.0, 2)).epsilon(1e-14));
}

TEST_CASE("table2 report: 12 rows, exact A_{1,1} ratio 1/2, n-free where expected") {
    for (double th : {0.3, 0.5, 0.7}) {
        for (double n : {16.0, 256.0}) {
            const auto rep = table2_report(th, n);
            REQUIRE(rep.size() == 12);
            CHECK(rep[0].id == std::pair{1, 1});
            CHECK(rep[0].ratio == doctest::Approx(0.5).epsilon(1e-12));
            CHECK(rep[1].ratio == doctest::Approx(1.0 / (2 * std::sqrt(2.0))).epsilon(1e-12));
            for (const auto& ri : rep) {
                CHECK(ri.value > 0.0);
                CHECK(ri.sqrt_value == doctest::Approx(std::sqrt(ri.value)));
                CHECK(ri.ratio > 0.0);
            }
        }
        // the A_1 and A_3 block ratios are n-free (pure power laws)
        const auto r16 = table2_report(th, 16.0);
        const auto r1024 = table2_report(th, 1024.0);
        for (std::size_t k : {0, 1, 2, 6, 7, 8}) {
            CHECK(r16[k].ratio == doctest::Approx(r1024[k].ratio).epsilon(1e-6));
        }
    }
}

TEST_CASE("example targets from the tabulated rows") {
    const double th = 0.45, n = 64.0;
    CHECK(table2_target(2, 1, th, n) ==
          doctest::Approx(std::pow(n, 1 - th / 2) / (th * (1 - th))).epsilon(1e-12));
    CHECK(table2_target(4, 2, th, n) ==
          doctest::Approx(std::pow(n, 1 - th / 2) / (std::sqrt(th) * std::pow(1 - th, 1.5)))
              .epsilon(1e-12));
}

TEST_CASE("fitted n-exponent: 1 - theta/2") {
    std::vector<double> ns;
    for (int k = 4; k <= 12; ++k) ns.push_back(std::pow(2.0, k));
    const auto fit = fit_n_exponent(ScenarioKind::OhToLp, 0.5, ns);
    CHECK(std::abs(fit.exponent - 0.75) <= 0.02);
    CHECK(fit.points.size() == ns.size());
    CHECK(fit.stderr_ >= 0.0);
    // deep ladder kills the transient at every acceptance theta
    std::vector<double> big;
    for (int k = 24; k <= 32; ++k) big.push_back(std::pow(2.0, k));
    for (double th : {0.3, 0.5, 0.7}) {
        const auto f = fit_n_exponent(ScenarioKind::OhToLp, th, big);
        CHECK(std::abs(f.exponent - (1 - th / 2)) <= 0.02);
    }
    CHECK_THROWS_AS(fit_n_exponent(ScenarioKind::OhToLp, 0.5, {2.0, 4.0, 8.0}),
                    std::invalid_argument);
}

TEST_CASE("constant-in-n integrand fits slope zero") {
    // the 4-term scenario at n fixed... use the ratio of integrals at equal n
    // instead: a list of equal n values is degenerate, so check via the
    // normalized statistic: sqrt(M)/n^(1-theta/2) has slope ~ 0 in log n
    std::vector<std::pair<double, double>> pts;
    for (int k = 24; k <= 32; ++k) {
        const double n = std::pow(2.0, k);
        const double m = integrate_min(build_scenario(ScenarioKind::OhToLp, 0.5, n));
        pts.emplace_back(std::log(n), 0.5 * std::log(m) - 0.75 * std::log(n));
    }
    const auto f = fit_scaling(pts);
    CHECK(std::abs(f.exponent) <= 0.01);
}

TEST_CASE("theta blowup exponents at the endpoints") {
    const double n = 1e130;
    const auto f0 = fit_theta_blowup(ScenarioKind::OhToLp, n,
                                     {0.10, 0.08, 0.06, 0.04, 0.02});
    CHECK(std::abs(f0.exponent - (-1.0)) <= 0.1);
    const auto f1 = fit_theta_blowup(ScenarioKind::OhToLp, n,
                                     {0.90, 0.92, 0.94, 0.96, 0.98});
    CHECK(std::abs(f1.exponent - (-1.5)) <= 0.1);
    const auto fc = fit_theta_blowup(ScenarioKind::OhToCp, n,
                                     {0.55, 0.54, 0.53, 0.52, 0.51});
    CHECK(std::abs(fc.exponent - (-0.5)) <= 0.1);
}

TEST_CASE("4-term scenario n-exponent (1+2 theta)/4") {
    std::vector<double> ns;
    for (int k = 8; k <= 16; ++k) ns.push_back(std::pow(2.0, k));
    const auto f = fit_n_exponent(ScenarioKind::OhToCp, 0.7, ns);
    CHECK(std::abs(f.exponent - 0.6) <= 0.02);
}

TEST_CASE("pole and divergence errors near theta = 1") {
    const double th = 1.0 - 1e-13;  // within the pole tolerance of the engine
    const auto spec = build_scenario(ScenarioKind::OhToLp, th, 16.0);
    const auto regions = derive_regions(spec);
    CHECK_THROWS_AS(integrate_region(spec, find_region(regions, 2, 1)), PoleError);
    CHECK_THROWS_AS(integrate_region(spec, find_region(regions, 1, 1)), DivergenceError);
    try {
        integrate_region(spec, find_region(regions, 2, 1));
    } catch (const PoleError& e) {
        CHECK(e.variable == "v");
    }
    try {
        integrate_region(spec, find_region(regions, 1, 1));
    } catch (const DivergenceError& e) {
        CHECK(e.variable == "u");
    }
}

TEST_CASE("log recovery near theta = 1: block statistic affine in log n") {
    std::vector<double> ns;
    for (int k = 6; k <= 16; ++k) ns.push_back(std::pow(2.0, k));
    const auto res = log_factor_check(ns);
    CHECK(res.pole_fallback);
    CHECK(res.used_theta == doctest::Approx(1.0 - 1e-6));
    CHECK(res.fit.exponent > 0.0);
    CHECK(res.fit.r_squared >= 0.99);
    // interior theta control: the same statistic normalized by the power law
    // is far from proportional growth in log n
    const auto ctrl = log_factor_check(ns, 0.5);
    CHECK_FALSE(ctrl.pole_fallback);
    // relative slope: b * mean(log n) / mean(statistic), ~1 when the
    // statistic is proportional to log n
    auto rel_slope = [](const maurey::ScalingFit& f) {
        double mx = 0, my = 0;
        for (auto& [x, y] : f.points) {
            mx += x;
            my += y;
        }
        mx /= f.points.size();
        my /= f.points.size();
        return f.exponent * mx / my;
    };
    CHECK(rel_slope(res.fit) == doctest::Approx(1.0).epsilon(0.02));
    CHECK(rel_slope(ctrl.fit) > 1.5);  // power-law growth, not log-like
    // n = 1: the A_2 block is empty, so the log factor degenerates to zero
    const auto spec1 = build_scenario(ScenarioKind::OhToLp, 0.5, 1.0);
    CHECK(block_integral(spec1, derive_regions(spec1), 2) == 0.0);
}
