#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "maurey/kfunc.hpp"
#include "maurey/rng.hpp"

using namespace maurey::interp;
using cvec = std::vector<std::complex<double>>;

namespace {
// independent oracle: numerically integrate (t^-theta K(t,x))^2 dt/t with the
// pointwise parallel-sum K on a fine geometric grid
double kfunc_norm_quadrature(const TwoWeightInterpolation& ti, const cvec& x) {
    const int M = 60000;
    // the integrand decays like t^(2-2h) at 0 and t^(-2h) at infinity
    const double reach = 45.0 / std::min(2.0 * ti.theta, 2.0 - 2.0 * ti.theta);
    const double lo = -reach, hi = reach, h = (hi - lo) / M;
    double acc = 0.0;
    for (int i = 0; i < M; ++i) {
        const double t = std::exp(lo + (i + 0.5) * h);
        double k2 = 0.0;
        for (std::size_t j = 0; j < x.size(); ++j) {
            const double a2 = ti.w0[j] * ti.w0[j], b2 = ti.w1[j] * ti.w1[j];
            k2 += std::norm(x[j]) * a2 * t * t * b2 / (a2 + t * t * b2);
        }
        acc += std::pow(t, -2.0 * ti.theta) * k2 * h;
    }
    return std::sqrt(acc);
}
}  // namespace

TEST_CASE("closed form matches the quadrature oracle") {
    maurey::Rng rng(41);
    for (double theta : {0.2, 0.5, 0.85}) {
        std::vector<double> w0(5), w1(5);
        cvec x(5);
        for (int i = 0; i < 5; ++i) {
            w0[i] = std::exp(rng.uniform(-1, 1));
            w1[i] = std::exp(rng.uniform(-1, 1));
            x[i] = {rng.normal(), rng.normal()};
        }
        TwoWeightInterpolation ti(w0, w1, theta);
        CHECK(kfunc_norm(ti, x) ==
              doctest::Approx(kfunc_norm_quadrature(ti, x)).epsilon(1e-6));
    }
}

TEST_CASE("unit weights: norm within the min-form bracket of ||x||_2") {
    // with K(t,x)^2 = min(1,t^2)||x||^2 the t-integral is
    // int_0^1 t^(2-2h) dt/t + int_1^inf t^(-2h) dt/t = 1/(2h(1-h));
    // the parallel sum lies within [1/2, 1] of that min form.
    for (double theta : {0.1, 0.5, 0.9}) {
        TwoWeightInterpolation ti({1, 1, 1}, {1, 1, 1}, theta);
        const cvec x = {{1, 0}, {2, -1}, {0, 3}};
        double l2 = 0;
        for (auto& c : x) l2 += std::norm(c);
        l2 = std::sqrt(l2);
        const double minform = l2 / std::sqrt(2.0 * theta * (1.0 - theta));
        const double got = kfunc_norm(ti, x);
        CHECK(got <= minform * (1 + 1e-12));
        CHECK(got >= minform / std::sqrt(2.0) * (1 - 1e-12));
        CHECK(got == doctest::Approx(l2 * kfunc_constant(theta)).epsilon(1e-13));
    }
}

TEST_CASE("zero vector and empty input") {
    TwoWeightInterpolation ti({1, 2}, {3, 4}, 0.3);
    CHECK(kfunc_norm(ti, cvec{{0, 0}, {0, 0}}) == 0.0);
    TwoWeightInterpolation empty({}, {}, 0.3);
    CHECK(kfunc_norm(empty, cvec{}) == 0.0);
}

TEST_CASE("general weights: C(theta) * weighted l2 with w0^(1-h) w1^h") {
    maurey::Rng rng(42);
    for (double theta : {0.05, 0.35, 0.95}) {
        std::vector<double> w0(4), w1(4);
        cvec x(4);
        for (int i = 0; i < 4; ++i) {
            w0[i] = std::exp(rng.uniform(-2, 2));
            w1[i] = std::exp(rng.uniform(-2, 2));
            x[i] = {rng.normal(), rng.normal()};
        }
        TwoWeightInterpolation ti(w0, w1, theta);
        double s = 0;
        for (int i = 0; i < 4; ++i) {
            const double w = std::pow(w0[i], 1 - theta) * std::pow(w1[i], theta);
            s += std::norm(x[i]) * w * w;
        }
        CHECK(kfunc_norm(ti, x) ==
              doctest::Approx(kfunc_constant(theta) * std::sqrt(s)).epsilon(1e-13));
    }
    // C(theta) * sqrt(theta (1-theta)) stays in a fixed band
    double lo = 1e9, hi = 0;
    for (double theta = 0.05; theta <= 0.951; theta += 0.01) {
        const double b = kfunc_constant(theta) * std::sqrt(theta * (1 - theta));
        lo = std::min(lo, b);
        hi = std::max(hi, b);
    }
    CHECK(lo > 0.55);
    CHECK(hi < 0.75);
    CHECK(hi / lo < 1.2);
}

TEST_CASE("norm axioms on random triples") {
    maurey::Rng rng(43);
    TwoWeightInterpolation ti({0.5, 2.0, 1.0, 3.0}, {1.5, 0.25, 1.0, 2.0}, 0.4);
    for (int it = 0; it < 200; ++it) {
        cvec a(4), b(4);
        for (int i = 0; i < 4; ++i) {
            a[i] = {rng.normal(), rng.normal()};
            b[i] = {rng.normal(), rng.normal()};
        }
        const double lam = std::exp(rng.uniform(-2, 2));
        cvec la(4), ab(4);
        for (int i = 0; i < 4; ++i) {
            la[i] = lam * a[i];
            ab[i] = a[i] + b[i];
        }
        CHECK(kfunc_norm(ti, la) == doctest::Approx(lam * kfunc_norm(ti, a)).epsilon(1e-12));
        CHECK(kfunc_norm(ti, ab) <=
              (kfunc_norm(ti, a) + kfunc_norm(ti, b)) * (1 + 1e-12));
    }
}
