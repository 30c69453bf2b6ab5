#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "maurey/monomial.hpp"
#include "maurey/regions.hpp"
#include "maurey/scenario.hpp"

namespace maurey::sumsolve {

// Log-uniform tensor grid over a truncation box, with exact per-cell measure
// masses for every weight in the scenario (monomial antiderivatives per cell,
// never midpoint sampling).
struct Grid {
    interp::ScenarioSpec spec;
    LogBox box;
    int resolution = 8;  // cells per variable
    std::vector<std::vector<double>> edges;  // per variable, resolution+1, original coords
    std::size_t cells = 1;
    std::vector<std::size_t> stride;  // mixed-radix strides per variable

    struct TermMasses {
        std::vector<double> full;         // per cell
        std::vector<double> row, col;     // Proj: per row/col group cell
        std::vector<int> row_of, col_of;  // cell -> group indices (Proj)
        int rows = 1, cols = 1;
    };
    std::vector<TermMasses> term_masses;

    std::vector<double> centroid(std::size_t cell) const;  // original coords
    double mass_total(std::size_t term) const;
};

Grid discretize(const interp::ScenarioSpec& spec, const LogBox& box, int resolution);

// weighted l2 norm sqrt(sum_c mass_c value_c^2)
double l2_norm(const std::vector<double>& values, const std::vector<double>& masses);

// nuclear norm of the mass-scaled kernel diag(sqrt(rowmass)) K diag(sqrt(colmass))
double nuclear_norm(const Eigen::MatrixXd& kernel, const std::vector<double>& row_masses,
                    const std::vector<double>& col_masses);

// nuclear norm of a grid field for one projective term of the scenario
double nuclear_norm(const Grid& grid, std::size_t term, const std::vector<double>& values);

// norm of one term's field under the grid masses (l2 or nuclear by term kind)
double term_norm(const Grid& grid, std::size_t term, const std::vector<double>& values);

enum class ObjectiveKind { Linear, Squared };
struct TermObjective {
    ObjectiveKind kind = ObjectiveKind::Linear;
    double coef = 1.0;
};

struct SolveConfig {
    int max_iter = 5000;
    double tolerance = 1e-7;  // relative objective change
    double step = 0.0;        // proximal splitting step; 0 = scale-derived
    int patience = 12;        // consecutive small-change iterations to stop
};

struct DecompositionResult {
    double objective = 0.0;
    std::vector<std::vector<double>> fields;  // per term, per cell
    double lower_bound = 0.0;
    double upper_bound = 0.0;
    int iterations = 0;
    bool converged = false;
    std::vector<double> objective_log;  // running best, nonincreasing
};

// Proximal-splitting minimizer of sum_l obj_l(norm_l(f_l)) subject to
// sum_l f_l = target cellwise.  Linear terms use block (or singular-value)
// soft-shrinkage, squared terms a linear shrink; the affine sum constraint is
// projected exactly per cell.  Deterministic.
DecompositionResult run_solver(const Grid& grid, const std::vector<TermObjective>& objs,
                               double target, const SolveConfig& cfg,
                               const std::vector<std::vector<double>>* init = nullptr);

// Sum-space norm of the constant target with the scenario's own scales
// (masses already carry the n powers), bracketed by the relaxed lower bound
// and the region-assignment upper bound.
DecompositionResult solve_decomposition(const Grid& grid, double target,
                                        const SolveConfig& cfg);

// cost of the feasible decomposition f_l = indicator of the union of grid
// cells whose centroids lie in regions with active term l
double region_assignment_value(const Grid& grid, const std::vector<interp::Region>& regions);

std::vector<std::vector<double>> region_assignment_fields(
    const Grid& grid, const std::vector<interp::Region>& regions);

// (1/L) sqrt(box-truncated min-integral), certified from below by the oracle
double relaxed_lower_bound(const Grid& grid, double oracle_tol = 1e-8);

// oracle value of the min-integral over the grid box
double box_min_integral(const Grid& grid, double oracle_tol = 1e-8);

}  // namespace maurey::sumsolve
