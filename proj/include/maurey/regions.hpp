#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "maurey/monomial.hpp"
#include "maurey/scenario.hpp"

namespace maurey::interp {

// One endpoint of an iterated bound: zero, infinity, or a monomial in n and
// previously bound variables.
struct BoundExpr {
    bool zero = false;
    bool inf = false;
    MonomialWeight expr;  // ignored when zero/inf is set

    static BoundExpr at_zero();
    static BoundExpr at_inf();
    static BoundExpr of(MonomialWeight w);

    // evaluate given the already-bound outer coordinates
    double value(const std::map<std::string, double>& outer, double n) const;
};

// A cell of the min-decomposition: iterated monomial bounds, listed from the
// outermost integration variable to the innermost, on which one min-term is
// active.
struct Region {
    std::pair<int, int> id;  // (i, j)
    int active_term = 0;     // 0-based index into ScenarioSpec.terms
    std::vector<std::string> order;                    // outermost first
    std::vector<std::pair<BoundExpr, BoundExpr>> bounds;  // parallel to order

    std::string id_str() const;
    bool contains(const ScenarioSpec& spec, const std::vector<double>& point) const;
    // interior representative (log-midpoint per variable, clipped at open ends)
    std::vector<double> centroid(const ScenarioSpec& spec) const;
};

// Full partition of the positive orthant by activity of the min-terms.
// Derived from first principles; supports the 8-term and the 4-term scenario.
std::vector<Region> derive_regions(const ScenarioSpec& spec);

const Region& find_region(const std::vector<Region>& regions, int i, int j);

}  // namespace maurey::interp
