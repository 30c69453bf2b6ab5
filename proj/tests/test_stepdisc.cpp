#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "maurey/rng.hpp"
#include "maurey/stepdisc.hpp"

using namespace maurey::interp;

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(StepDiscretization(1.0, 0.0, 4), std::invalid_argument);
    CHECK_THROWS_AS(StepDiscretization(0.9, 0.0, 4), std::invalid_argument);
    CHECK_THROWS_AS(StepDiscretization(1.5, 2.5, 4), std::invalid_argument);
    CHECK_NOTHROW(StepDiscretization(2.0, -0.9, 4));
}

TEST_CASE("round trip is the exact identity") {
    maurey::Rng rng(9);
    for (double delta : {1.1, 1.5, 2.0}) {
        StepDiscretization sd(delta, 0.7, 6);
        std::vector<double> x(sd.cells());
        for (auto& v : x) v = rng.normal();
        const auto back = step_project(sd, step_embed(sd, x));
        for (std::size_t i = 0; i < x.size(); ++i)
            CHECK(back[i] == doctest::Approx(x[i]).epsilon(1e-15));
    }
}

TEST_CASE("alpha = 0: embedding is an isometry") {
    StepDiscretization sd(1.7, 0.0, 5);
    CHECK(step_embed_norm(sd) == doctest::Approx(1.0).epsilon(1e-15));
    maurey::Rng rng(10);
    std::vector<double> x(sd.cells());
    for (auto& v : x) v = rng.normal();
    CHECK(step_function_norm(sd, step_embed(sd, x)) ==
          doctest::Approx(step_sequence_norm(sd, x)).epsilon(1e-13));
}

TEST_CASE("closed-form norms and the max(1, delta^alpha) bounds") {
    const double theta = 0.37;
    for (double delta : {1.1, 1.5, 2.0}) {
        for (double alpha : {-0.9, -theta, 1 - theta, 2 - theta, 1.9}) {
            StepDiscretization sd(delta, alpha, 4);
            const double phi2 = step_norm_factor(delta, alpha);
            const double expect =
                (alpha == 0.0) ? 1.0
                               : (std::pow(delta, 2 * alpha) - 1) / (2 * alpha * std::log(delta));
            CHECK(phi2 == doctest::Approx(expect).epsilon(1e-12));
            CHECK(step_embed_norm(sd) <= std::max(1.0, std::pow(delta, alpha)) * (1 + 1e-12));
            CHECK(step_project_norm(sd) <= std::max(1.0, std::pow(delta, -alpha)) * (1 + 1e-12));
            // the embedding norm is attained on every vector
            maurey::Rng rng(12);
            std::vector<double> x(sd.cells());
            for (auto& v : x) v = rng.normal();
            CHECK(step_function_norm(sd, step_embed(sd, x)) ==
                  doctest::Approx(step_embed_norm(sd) * step_sequence_norm(sd, x))
                      .epsilon(1e-12));
        }
    }
}
