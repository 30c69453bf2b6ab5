#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

namespace maurey::interp {

// Step discretization of the weighted half-line: cells [delta^k, delta^(k+1))
// for k in [-K, K].  The embedding scales by (log delta)^(-1/2); the
// projection averages against dt/t, so project(embed(x)) = x exactly.
struct StepDiscretization {
    double delta = 2.0;   // in (1, 2]
    double alpha = 0.0;   // in (-1, 2), the uniform-boundedness range
    int K = 8;

    StepDiscretization(double d, double a, int k) : delta(d), alpha(a), K(k) {
        if (!(delta > 1.0) || !(delta <= 2.0))
            throw std::invalid_argument("StepDiscretization: delta must lie in (1, 2]");
        if (!(alpha > -1.0 && alpha < 2.0))
            throw std::invalid_argument("StepDiscretization: alpha must lie in (-1, 2)");
        if (K < 0) throw std::invalid_argument("StepDiscretization: K must be >= 0");
    }

    std::size_t cells() const { return std::size_t(2 * K + 1); }
};

// Piecewise-constant function on the dyadic-like cells; value_k on
// [delta^k, delta^(k+1)), k = -K..K, zero outside.
struct StepFunction {
    StepDiscretization sd;
    std::vector<double> values;  // per cell
};

// g(beta) = (delta^(2 beta) - 1) / (2 beta log delta), continuously 1 at 0;
// the squared operator norms of the embedding and projection are g(alpha)
// and g(-alpha) (exact, from the closed-form cell masses).
inline double step_norm_factor(double delta, double beta) {
    const double y = 2.0 * beta * std::log(delta);
    if (std::abs(y) < 1e-12) return 1.0;
    return std::expm1(y) / y;
}

inline double step_embed_norm(const StepDiscretization& sd) {
    return std::sqrt(step_norm_factor(sd.delta, sd.alpha));
}

inline double step_project_norm(const StepDiscretization& sd) {
    return std::sqrt(step_norm_factor(sd.delta, -sd.alpha));
}

inline StepFunction step_embed(const StepDiscretization& sd, const std::vector<double>& x) {
    if (x.size() != sd.cells())
        throw std::invalid_argument("step_embed: expected 2K+1 coefficients");
    StepFunction f{sd, x};
    const double scale = 1.0 / std::sqrt(std::log(sd.delta));
    for (double& v : f.values) v *= scale;
    return f;
}

inline std::vector<double> step_project(const StepDiscretization& sd, const StepFunction& f) {
    if (f.values.size() != sd.cells())
        throw std::invalid_argument("step_project: cell count mismatch");
    // (log delta)^(-1/2) * int_cell f dt/t with f constant on the cell
    std::vector<double> x(f.values);
    const double scale = std::sqrt(std::log(sd.delta));
    for (double& v : x) v *= scale;
    return x;
}

// weighted sequence norm  (sum |x_k|^2 delta^(2 alpha k))^(1/2)
inline double step_sequence_norm(const StepDiscretization& sd, const std::vector<double>& x) {
    double s = 0.0;
    for (int k = -sd.K; k <= sd.K; ++k) {
        const double w = std::pow(sd.delta, sd.alpha * k);
        const double v = x.at(std::size_t(k + sd.K));
        s += v * v * w * w;
    }
    return std::sqrt(s);
}

// function-space norm  (int |f|^2 t^(2 alpha) dt/t)^(1/2) via exact cell masses
inline double step_function_norm(const StepDiscretization& sd, const StepFunction& f) {
    const double g = step_norm_factor(sd.delta, sd.alpha) * std::log(sd.delta);
    double s = 0.0;
    for (int k = -sd.K; k <= sd.K; ++k) {
        const double w2 = std::pow(sd.delta, 2.0 * sd.alpha * k) * g;
        const double v = f.values.at(std::size_t(k + sd.K));
        s += v * v * w2;
    }
    return std::sqrt(s);
}

}  // namespace maurey::interp
