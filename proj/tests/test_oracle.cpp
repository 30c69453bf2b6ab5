#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "maurey/integrator.hpp"
#include "maurey/oracle.hpp"

using namespace maurey;
using namespace maurey::interp;
using namespace maurey::oracle;

namespace {
MinOfMonomials toy_1d() {
    // min(t, t^-3): integral 1/2 + 1/2 = 1
    MinOfMonomials mm;
    mm.vars = {"t"};
    mm.n = 1.0;
    mm.terms = {MonomialWeight(1.0, 0.0, {"t"}, {1.0}),
                MonomialWeight(1.0, 0.0, {"t"}, {-3.0})};
    return mm;
}
}  // namespace

TEST_CASE("1d toy: exact envelope quadrature hits the elementary value") {
    const auto mm = toy_1d();
    LogBox box;
    box.lohi = {{std::log(1e-6), std::log(1e6)}};
    const auto est = quad_box(mm, box, 1e-9);
    // interior mass 1 - 1e-12
    CHECK(est.value == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(est.quadrature_error <= 1e-6);
    CHECK_FALSE(est.error_flagged);
    CHECK_THROWS_AS(quad_box(mm, box, 0.0), std::invalid_argument);
}

TEST_CASE("1d toy: tail bound is the elementary face integral and shrinks") {
    const auto mm = toy_1d();
    LogBox box;
    box.lohi = {{std::log(1e-6), std::log(1e6)}};
    const double tb = tail_bound(mm, box);
    // + face: int_{1e6}^inf t^-3 = 5e-13; - face: int_0^{1e-6} t = 5e-13
    CHECK(tb == doctest::Approx(1e-12).epsilon(1e-6));
    LogBox bigger;
    bigger.lohi = {{2 * std::log(1e-6), 2 * std::log(1e6)}};
    CHECK(tail_bound(mm, bigger) < tb);

    // a term with no decay in some direction leaves the tail unbounded
    MinOfMonomials flat;
    flat.vars = {"t"};
    flat.terms = {MonomialWeight(1.0, 0.0, {"t"}, {-1.0})};  // dt/t: no decay
    CHECK_THROWS_AS(tail_bound(flat, box), UnboundedTailError);
}

TEST_CASE("1d toy: seeded Monte Carlo covers the true value") {
    const auto mm = toy_1d();
    int covered = 0;
    for (int run = 0; run < 100; ++run) {
        const auto est = mc_estimate(mm, 1000 + std::uint64_t(run), 4000);
        if (std::abs(est.value - 1.0) <= est.quadrature_error) ++covered;
    }
    CHECK(covered >= 93);

    // determinism: same seed gives the bit-identical estimate
    const auto a = mc_estimate(mm, 7, 2000);
    const auto b = mc_estimate(mm, 7, 2000);
    CHECK(a.value == b.value);
    CHECK(a.quadrature_error == b.quadrature_error);

    // quadrupling the sample size roughly halves the interval
    const auto small = mc_estimate(mm, 99, 20000);
    const auto large = mc_estimate(mm, 99, 80000);
    const double shrink = large.quadrature_error / small.quadrature_error;
    CHECK(shrink > 0.35);
    CHECK(shrink < 0.65);

    CHECK_THROWS_AS(mc_estimate(mm, 1, 10), std::invalid_argument);
}

TEST_CASE("8-term scenario: box quadrature against the closed form") {
    const double th = 0.5, n = 16.0;
    const auto spec = build_scenario(ScenarioKind::OhToLp, th, n);
    const auto mm = MinOfMonomials::from_scenario(spec);
    const double exact = integrate::integrate_min(spec);

    const auto box = LogBox::cube(4, 40.0);
    const double tb = tail_bound(mm, box);
    CHECK(tb >= 0.0);
    const auto est = quad_box(mm, box, 2e-7);
    CHECK(std::abs(est.value - exact) <= est.quadrature_error + tb + 1e-6 * exact);
    CHECK(std::abs(est.value - exact) <= 1e-5 * exact);

    // Monte Carlo interval overlaps the exact value
    const auto mc = mc_estimate(mm, 42, 200000);
    CHECK(std::abs(mc.value - exact) <= 3.0 * mc.quadrature_error);
}

TEST_CASE("tail bound hits the 1e-8 target once the box is wide enough") {
    const double th = 0.5, n = 16.0;
    const auto spec = build_scenario(ScenarioKind::OhToLp, th, n);
    const auto mm = MinOfMonomials::from_scenario(spec);
    const double exact = integrate::integrate_min(spec);
    // the decay certificate is rate-limited by the mixed directions, so the
    // required half-width is set by 1/(1-theta) and 1/(2 theta) margins
    double W = 40.0;
    double tb = tail_bound(mm, LogBox::cube(4, W));
    while (tb > 1e-8 * exact && W < 200.0) {
        W += 10.0;
        tb = tail_bound(mm, LogBox::cube(4, W));
    }
    CHECK(tb <= 1e-8 * exact);
    CHECK(W <= 80.0);
}

TEST_CASE("region quadrature matches the exact region integrals") {
    for (auto [th, n] : {std::pair{0.3, 16.0}, std::pair{0.7, 256.0}}) {
        const auto spec = build_scenario(ScenarioKind::OhToLp, th, n);
        const auto regions = derive_regions(spec);
        double quad_total = 0.0, exact_total = 0.0;
        for (const auto& r : regions) {
            const double exact = integrate::integrate_region(spec, r);
            const auto est = quad_region(spec, r, 1e-7);
            if (exact == 0.0) {
                CHECK(est.value <= 1e-12);
                continue;
            }
            CHECK(std::abs(est.value - exact) <= 1e-6 * exact);
            quad_total += est.value;
            exact_total += exact;
        }
        CHECK(quad_total == doctest::Approx(exact_total).epsilon(1e-6));
    }
}

TEST_CASE("4-term scenario: region quads sum to the min integral") {
    const auto spec = build_scenario(ScenarioKind::OhToCp, 0.7, 64.0);
    const double exact = integrate::integrate_min(spec);
    double total = 0.0;
    for (const auto& r : derive_regions(spec)) total += quad_region(spec, r, 1e-8).value;
    CHECK(total == doctest::Approx(exact).epsilon(1e-6));
}

TEST_CASE("estimates respect the (s,t,u,v) -> (t,s,1/u,1/v) symmetry") {
    const auto spec = build_scenario(ScenarioKind::OhToLp, 0.4, 16.0);
    const auto mm = MinOfMonomials::from_scenario(spec);
    // half-box with u <= 1 maps to the half-box with u >= 1 under the
    // symmetry (with s and t swapped and v inverted)
    LogBox half_a, half_b;
    half_a.lohi = {{-20, 20}, {-20, 20}, {-20, 0}, {-20, 20}};
    half_b.lohi = {{-20, 20}, {-20, 20}, {0, 20}, {-20, 20}};
    const auto ea = quad_box(mm, half_a, 1e-6);
    const auto eb = quad_box(mm, half_b, 1e-6);
    CHECK(ea.value == doctest::Approx(eb.value).epsilon(1e-5));
}

TEST_CASE("constant integrand over a unit log-box integrates to its mass") {
    MinOfMonomials mm;
    mm.vars = {"x", "y"};
    mm.terms = {MonomialWeight(1.0, 0.0, {"x", "y"}, {-1.0, -1.0})};  // dx dy/(xy)
    LogBox box;
    box.lohi = {{0.0, 1.0}, {0.0, 1.0}};
    const auto est = quad_box(mm, box, 1e-10);
    CHECK(est.value == doctest::Approx(1.0).epsilon(1e-10));
}
