#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "maurey/orlicz.hpp"

namespace maurey::matnorm {

// tuple of m x m complex matrices (x_k), k = 1..K
struct MatrixTuple {
    std::vector<Eigen::MatrixXcd> xs;

    int m() const { return xs.empty() ? 0 : int(xs.front().rows()); }
    int K() const { return int(xs.size()); }
    void validate() const;
};

// operator-Hilbert-space matrix norm: the operator norm of
// sum_k x_k (tensor) conj(x_k) on the m^2-dimensional space, square-rooted
double oh_norm(const MatrixTuple& xs);

struct CpConfig {
    int restarts = 16;
    int max_alternations = 400;
    double tolerance = 1e-12;
    std::uint64_t seed = 0x5eed0cb5ull;
};

struct CpResult {
    double value = 0.0;
    bool converged = false;
    std::vector<double> objective_log;  // best run, nondecreasing half-steps
};

// sup over positive a, b with Schatten-2p and 2p' norms at most 1 of
// (sum_k |a x_k b|_2^2)^(1/2), by alternating exact partial maximization in
// the eigenbasis of the fixed-side Gram operator; best over seeded restarts
CpResult cp_norm_full(const MatrixTuple& xs, double p, const CpConfig& cfg = {});
double cp_norm(const MatrixTuple& xs, double p, const CpConfig& cfg = {});

// l_p norm of the row l2 norms of a coefficient array
double lp_l2_norm(const Eigen::MatrixXcd& a, double p);

// surrogate ratio of the summing-norm bound for diagonal coefficients:
//   theta (1-theta) |row norms|_F  /  ( (1-theta)^(-1/2) |a|_{l_p(l_2)} )
// with p = 2/(2-theta); expected O(1) across n and a
double maurey_ratio(double theta, const Eigen::MatrixXcd& a,
                    const orlicz::PiecewiseConvexFunction& F);

}  // namespace maurey::matnorm
