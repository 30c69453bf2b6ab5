#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "maurey/monomial.hpp"
#include "maurey/rng.hpp"

using maurey::LogBox;
using maurey::MonomialWeight;
using maurey::monomial_integral_1d;

TEST_CASE("evaluation and positivity") {
    MonomialWeight w(2.5, 1.0, {"s", "u"}, {3.0, -2.0});
    const double v = w.value({{"s", 2.0}, {"u", 0.5}}, 16.0);
    CHECK(v == doctest::Approx(2.5 * 16.0 * 8.0 * 4.0).epsilon(1e-14));
    CHECK(v > 0.0);
    CHECK(std::isfinite(w.value({{"s", 1e-8}, {"u", 1e8}}, 1.0)));
    CHECK_THROWS_AS(MonomialWeight(-1.0, 0.0, {}, {}), std::invalid_argument);
    CHECK_THROWS_AS(w.value({{"s", -1.0}, {"u", 1.0}}, 1.0), std::domain_error);
}

TEST_CASE("multiplicativity on random points") {
    MonomialWeight w(3.0, 0.5, {"s", "t"}, {1.5, -0.5});
    maurey::Rng rng(7);
    for (int i = 0; i < 50; ++i) {
        const double xs = std::exp(rng.uniform(-3, 3)), xt = std::exp(rng.uniform(-3, 3));
        const double ys = std::exp(rng.uniform(-3, 3)), yt = std::exp(rng.uniform(-3, 3));
        const double n = 4.0;
        const double lhs = w.value({{"s", xs * ys}, {"t", xt * yt}}, n);
        const double rhs = w.value({{"s", xs}, {"t", xt}}, n) *
                           w.value({{"s", ys}, {"t", yt}}, n) / (w.coefficient * std::pow(n, w.n_power));
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
    }
}

TEST_CASE("monomial arithmetic") {
    MonomialWeight a(2.0, 1.0, {"s"}, {2.0});
    MonomialWeight b(4.0, -1.0, {"s", "t"}, {-2.0, 1.0});
    auto p = a.times(b);
    CHECK(p.coefficient == doctest::Approx(8.0));
    CHECK(p.n_power == doctest::Approx(0.0));
    CHECK(p.exponent("s") == doctest::Approx(0.0));
    CHECK(p.exponent("t") == doctest::Approx(1.0));
    auto q = a.over(a);
    CHECK(q.coefficient == doctest::Approx(1.0));
    CHECK(q.exponent("s") == doctest::Approx(0.0));
    auto r = b.pow(0.25);
    CHECK(r.exponent("t") == doctest::Approx(0.25));
}

TEST_CASE("1d monomial integrals") {
    CHECK(monomial_integral_1d(2.0, 0.0, 1.0) == doctest::Approx(1.0 / 3.0));
    CHECK(monomial_integral_1d(-3.0, 1.0, INFINITY) == doctest::Approx(0.5));
    CHECK(monomial_integral_1d(-1.0, 1.0, std::exp(1.0)) == doctest::Approx(1.0));
    CHECK_THROWS_AS(monomial_integral_1d(-1.0, 0.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(monomial_integral_1d(-0.5, 1.0, INFINITY), std::domain_error);
    CHECK_THROWS_AS(monomial_integral_1d(-1.5, 0.0, 1.0), std::domain_error);
}

TEST_CASE("log box") {
    auto b = LogBox::cube(4, 10.0);
    CHECK(b.dims() == 4);
    CHECK(b.contains_origin());
    b.lohi[2] = {1.0, 2.0};
    CHECK_FALSE(b.contains_origin());
}
