#include "maurey/matnorm.hpp"

#include <cmath>
#include <stdexcept>

#include "maurey/rng.hpp"

namespace maurey::matnorm {

void MatrixTuple::validate() const {
    if (xs.empty()) throw std::invalid_argument("MatrixTuple: need at least one matrix");
    const long m = xs.front().rows();
    for (const auto& x : xs)
        if (x.rows() != m || x.cols() != m)
            throw std::invalid_argument("MatrixTuple: dimensions must be uniform and square");
}

double oh_norm(const MatrixTuple& t) {
    t.validate();
    const int m = t.m();
    Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(m * m, m * m);
    for (const auto& x : t.xs) {
        const Eigen::MatrixXcd xc = x.conjugate();
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j)
                M.block(i * m, j * m, m, m) += x(i, j) * xc;
    }
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(M);
    return std::sqrt(svd.singularValues()(0));
}

namespace {

// positive matrix from spectral data: U diag(vals^power / scale) U^+
Eigen::MatrixXcd spectral_power(const Eigen::MatrixXcd& U, const Eigen::VectorXd& vals,
                                double power, double scale) {
    Eigen::VectorXd d(vals.size());
    for (long i = 0; i < vals.size(); ++i)
        d[i] = vals[i] > 0.0 ? std::pow(vals[i], power) / scale : 0.0;
    return U * d.asDiagonal() * U.adjoint();
}

double schatten_q_of_eigs(const Eigen::VectorXd& vals, double q) {
    double s = 0.0;
    for (long i = 0; i < vals.size(); ++i)
        if (vals[i] > 0.0) s += std::pow(vals[i], q);
    return std::pow(s, 1.0 / q);
}

Eigen::MatrixXcd random_psd(Rng& rng, int m) {
    Eigen::MatrixXcd G(m, m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) G(i, j) = std::complex<double>(rng.normal(), rng.normal());
    return G * G.adjoint() + 1e-3 * Eigen::MatrixXcd::Identity(m, m);
}

// normalize a positive matrix to unit Schatten-q norm
Eigen::MatrixXcd schatten_normalize(const Eigen::MatrixXcd& b, double q) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(b);
    double s = 0.0;
    for (long i = 0; i < es.eigenvalues().size(); ++i)
        s += std::pow(std::max(es.eigenvalues()[i], 0.0), q);
    return b / std::pow(s, 1.0 / q);
}

}  // namespace

CpResult cp_norm_full(const MatrixTuple& t, double p, const CpConfig& cfg) {
    t.validate();
    if (!(p > 1.0 && p < 2.0))
        throw std::invalid_argument("cp_norm: p must lie in (1, 2)");
    const int m = t.m();
    const double pp = p / (p - 1.0);  // conjugate index

    if (m == 1) {
        double s = 0.0;
        for (const auto& x : t.xs) s += std::norm(x(0, 0));
        CpResult r;
        r.value = std::sqrt(s);
        r.converged = true;
        return r;
    }

    auto half_step = [&](const Eigen::MatrixXcd& fixed_b, Eigen::MatrixXcd& out_a) {
        // with b fixed, tr(a^2 M) with M = sum_k x_k b^2 x_k^+ is maximized
        // over |a|_{2p} <= 1 at a = U diag(lam^(p'/2p)) U^+ / (sum lam^p')^(1/2p),
        // with value |M|_{p'}^(1/2)
        Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(m, m);
        const Eigen::MatrixXcd b2 = fixed_b * fixed_b;
        for (const auto& x : t.xs) M += x * b2 * x.adjoint();
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(M);
        Eigen::VectorXd lam = es.eigenvalues().cwiseMax(0.0);
        double sp = 0.0;
        for (long i = 0; i < lam.size(); ++i) sp += std::pow(lam[i], pp);
        if (sp <= 0.0) {
            out_a = Eigen::MatrixXcd::Identity(m, m) * std::pow(double(m), -0.5 / p);
            return 0.0;
        }
        out_a = spectral_power(es.eigenvectors(), lam, pp / (2.0 * p),
                               std::pow(sp, 1.0 / (2.0 * p)));
        return std::sqrt(std::pow(sp, 1.0 / pp));  // = |M|_{p'}^{1/2}
    };
    auto other_half = [&](const Eigen::MatrixXcd& fixed_a, Eigen::MatrixXcd& out_b) {
        Eigen::MatrixXcd N = Eigen::MatrixXcd::Zero(m, m);
        const Eigen::MatrixXcd a2 = fixed_a * fixed_a;
        for (const auto& x : t.xs) N += x.adjoint() * a2 * x;
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(N);
        Eigen::VectorXd nu = es.eigenvalues().cwiseMax(0.0);
        double sq = 0.0;
        for (long i = 0; i < nu.size(); ++i) sq += std::pow(nu[i], p);
        if (sq <= 0.0) {
            out_b = Eigen::MatrixXcd::Identity(m, m) * std::pow(double(m), -0.5 / pp);
            return 0.0;
        }
        out_b = spectral_power(es.eigenvectors(), nu, p / (2.0 * pp),
                               std::pow(sq, 1.0 / (2.0 * pp)));
        return std::sqrt(std::pow(sq, 1.0 / p));  // = |N|_p^{1/2}
    };

    CpResult best;
    for (int run = 0; run < cfg.restarts + 1; ++run) {
        Eigen::MatrixXcd b;
        if (run == 0) {
            b = Eigen::MatrixXcd::Identity(m, m) * std::pow(double(m), -0.5 / pp);
        } else {
            Rng rng = Rng::substream(cfg.seed, "cp_restart_" + std::to_string(run));
            b = schatten_normalize(random_psd(rng, m), 2.0 * pp);
        }
        Eigen::MatrixXcd a;
        double value = 0.0;
        std::vector<double> log;
        bool converged = false;
        for (int it = 0; it < cfg.max_alternations; ++it) {
            const double va = half_step(b, a);
            const double vb = other_half(a, b);
            log.push_back(va);
            log.push_back(vb);
            if (vb <= value * (1.0 + cfg.tolerance)) {
                value = std::max(value, vb);
                converged = true;
                break;
            }
            value = vb;
        }
        if (value > best.value) {
            best.value = value;
            best.converged = converged;
            best.objective_log = std::move(log);
        }
    }
    return best;
}

double cp_norm(const MatrixTuple& t, double p, const CpConfig& cfg) {
    return cp_norm_full(t, p, cfg).value;
}

double lp_l2_norm(const Eigen::MatrixXcd& a, double p) {
    if (!(p > 0.0)) throw std::invalid_argument("lp_l2_norm: p must be positive");
    double s = 0.0;
    for (long i = 0; i < a.rows(); ++i) s += std::pow(a.row(i).norm(), p);
    return std::pow(s, 1.0 / p);
}

double maurey_ratio(double theta, const Eigen::MatrixXcd& a,
                    const orlicz::PiecewiseConvexFunction& F) {
    if (!(theta > 0.0 && theta < 1.0))
        throw std::invalid_argument("maurey_ratio: theta must lie in (0, 1)");
    const double p = 2.0 / (2.0 - theta);
    std::vector<double> rows(std::size_t(a.rows()));
    double total = 0.0;
    for (long i = 0; i < a.rows(); ++i) {
        rows[std::size_t(i)] = a.row(i).norm();
        total += rows[std::size_t(i)];
    }
    if (total == 0.0) return 0.0;
    const double num = theta * (1.0 - theta) * orlicz_norm(F, rows);
    const double den = std::pow(1.0 - theta, -0.5) * lp_l2_norm(a, p);
    return num / den;
}

}  // namespace maurey::matnorm
