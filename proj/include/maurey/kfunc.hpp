#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

namespace maurey::interp {

// Two-weight interpolation data: the couple of weighted l2 norms
// |x|_i^2 = sum_j |x_j|^2 w_i[j]^2 together with the interpolation parameter.
struct TwoWeightInterpolation {
    std::vector<double> w0;
    std::vector<double> w1;
    double theta = 0.5;

    TwoWeightInterpolation(std::vector<double> w0_, std::vector<double> w1_, double th)
        : w0(std::move(w0_)), w1(std::move(w1_)), theta(th) {
        if (w0.size() != w1.size())
            throw std::invalid_argument("TwoWeightInterpolation: weight lengths differ");
        if (!(theta > 0.0 && theta < 1.0))
            throw std::invalid_argument("TwoWeightInterpolation: theta must lie in (0,1)");
        for (std::size_t i = 0; i < w0.size(); ++i)
            if (!(w0[i] > 0.0) || !(w1[i] > 0.0))
                throw std::invalid_argument("TwoWeightInterpolation: weights must be positive");
    }
};

// Index-independent interpolation constant: the K-functional of a weighted l2
// couple has the pointwise parallel-sum closed form
//   K(t,x)^2 = sum_j |x_j|^2 a_j^2 t^2 b_j^2 / (a_j^2 + t^2 b_j^2),
// and per index the t-integral int (t^-theta K)^2 dt/t reduces to the Beta
// integral int_0^inf tau^(1-2 theta) / (1+tau^2) dtau = pi / (2 sin(pi theta)).
inline double kfunc_constant(double theta) {
    return std::sqrt(M_PI / (2.0 * std::sin(M_PI * theta)));
}

// Norm of x in the (2,theta) real-interpolation space of the couple:
// kfunc_constant(theta) times the l2 norm with weight w0^(1-theta) w1^theta.
inline double kfunc_norm(const TwoWeightInterpolation& ti,
                         const std::vector<std::complex<double>>& x) {
    if (x.size() != ti.w0.size())
        throw std::invalid_argument("kfunc_norm: length mismatch");
    if (x.empty()) return 0.0;
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double w = std::pow(ti.w0[i], 1.0 - ti.theta) * std::pow(ti.w1[i], ti.theta);
        s += std::norm(x[i]) * w * w;
    }
    return kfunc_constant(ti.theta) * std::sqrt(s);
}

inline double kfunc_norm(const TwoWeightInterpolation& ti, const std::vector<double>& x) {
    std::vector<std::complex<double>> cx(x.begin(), x.end());
    return kfunc_norm(ti, cx);
}

}  // namespace maurey::interp
