#include "maurey/regions.hpp"

#include <cmath>
#include <stdexcept>

namespace maurey::interp {

BoundExpr BoundExpr::at_zero() {
    BoundExpr b;
    b.zero = true;
    return b;
}

BoundExpr BoundExpr::at_inf() {
    BoundExpr b;
    b.inf = true;
    return b;
}

BoundExpr BoundExpr::of(MonomialWeight w) {
    BoundExpr b;
    b.expr = std::move(w);
    return b;
}

double BoundExpr::value(const std::map<std::string, double>& outer, double n) const {
    if (zero) return 0.0;
    if (inf) return std::numeric_limits<double>::infinity();
    return expr.value(outer, n);
}

std::string Region::id_str() const {
    return "A" + std::to_string(id.first) + "," + std::to_string(id.second);
}

bool Region::contains(const ScenarioSpec& spec, const std::vector<double>& point) const {
    std::map<std::string, double> outer;
    for (std::size_t k = 0; k < order.size(); ++k) {
        const double x = point.at(spec.var_index(order[k]));
        const double lo = bounds[k].first.value(outer, spec.n);
        const double hi = bounds[k].second.value(outer, spec.n);
        if (!(x >= lo && x < hi)) return false;
        outer[order[k]] = x;
    }
    return true;
}

std::vector<double> Region::centroid(const ScenarioSpec& spec) const {
    std::map<std::string, double> outer;
    std::vector<double> point(spec.dims(), 1.0);
    for (std::size_t k = 0; k < order.size(); ++k) {
        const double lo = bounds[k].first.value(outer, spec.n);
        const double hi = bounds[k].second.value(outer, spec.n);
        double x;
        if (lo > 0.0 && std::isfinite(hi))
            x = std::sqrt(lo * hi);
        else if (lo > 0.0)
            x = lo * std::exp(2.0);
        else if (std::isfinite(hi))
            x = hi * std::exp(-2.0);
        else
            x = 1.0;
        outer[order[k]] = x;
        point[spec.var_index(order[k])] = x;
    }
    return point;
}

const Region& find_region(const std::vector<Region>& regions, int i, int j) {
    for (const auto& r : regions)
        if (r.id.first == i && r.id.second == j) return r;
    throw std::invalid_argument("no region A" + std::to_string(i) + "," + std::to_string(j));
}

namespace {

MonomialWeight mono(double coef, double npow, std::vector<std::string> vars,
                    std::vector<double> es) {
    return MonomialWeight(coef, npow, std::move(vars), std::move(es));
}

// Data for one (u,v) block of the 8-term scenario: the reduced min-term list
// restricted to the block collapses to
//   min( cs * s^4, ct * t^4, C )
// with cs, ct, C monomials in n, u, v.  Which of the candidate terms supplies
// each coefficient is decided by comparing the candidates on the block.
struct Block {
    int index = 0;  // 1..8
    std::pair<BoundExpr, BoundExpr> u_range;
    std::pair<BoundExpr, BoundExpr> v_range;
    int s_term = 0, t_term = 0, c_term = 0;  // 0-based active term per branch
    MonomialWeight cs, ct, c_const;
};

// reduced weights of the 8-term scenario, as functions of (n,u,v) only:
//   term1 = n^-1 u^-2 v^-2 * s^4    term3 = u^-2 * s^4
//   term2 = n^-1 * t^4              term4 = v^-2 * t^4
//   term5 = u^-2 v^-2   term6 = u^-2   term7 = 1   term8 = v^-2
Block make_block(int index, bool u_low, int v_slot) {
    Block b;
    b.index = index;
    if (u_low) {
        b.u_range = {BoundExpr::at_zero(), BoundExpr::of(mono(1, 0, {}, {}))};
    } else {
        b.u_range = {BoundExpr::of(mono(1, 0, {}, {})), BoundExpr::at_inf()};
    }
    // v slots: 0: (0, n^-1/2)  1: [n^-1/2, 1)  2: [1, n^1/2)  3: [n^1/2, inf)
    const MonomialWeight n_neg = mono(1, -0.5, {}, {});
    const MonomialWeight one = mono(1, 0, {}, {});
    const MonomialWeight n_pos = mono(1, 0.5, {}, {});
    switch (v_slot) {
        case 0: b.v_range = {BoundExpr::at_zero(), BoundExpr::of(n_neg)}; break;
        case 1: b.v_range = {BoundExpr::of(n_neg), BoundExpr::of(one)}; break;
        case 2: b.v_range = {BoundExpr::of(one), BoundExpr::of(n_pos)}; break;
        case 3: b.v_range = {BoundExpr::of(n_pos), BoundExpr::at_inf()}; break;
        default: throw std::logic_error("bad v slot");
    }
    const bool v_ge_ninv = (v_slot >= 1);   // v >= n^-1/2 on the whole block
    const bool v_lt_npos = (v_slot <= 2);   // v <  n^1/2 on the whole block
    const bool v_low = (v_slot <= 1);       // v < 1

    // s-branch: term1 (n^-1 u^-2 v^-2) vs term3 (u^-2); term1 wins iff v >= n^-1/2
    if (v_ge_ninv) {
        b.s_term = 0;
        b.cs = mono(1, -1, {"u", "v"}, {-2, -2});
    } else {
        b.s_term = 2;
        b.cs = mono(1, 0, {"u"}, {-2});
    }
    // t-branch: term2 (n^-1) vs term4 (v^-2); term2 wins iff v <= n^1/2
    if (v_lt_npos) {
        b.t_term = 1;
        b.ct = mono(1, -1, {}, {});
    } else {
        b.t_term = 3;
        b.ct = mono(1, 0, {"v"}, {-2});
    }
    // constant branch: min(u^-2 v^-2, u^-2, 1, v^-2) factors over u and v
    const double ue = u_low ? 0.0 : -2.0;
    const double ve = v_low ? 0.0 : -2.0;
    b.c_const = mono(1, 0, {"u", "v"}, {ue, ve});
    if (u_low && v_low) b.c_term = 6;
    else if (u_low) b.c_term = 7;
    else if (v_low) b.c_term = 5;
    else b.c_term = 4;
    return b;
}

std::vector<Region> derive_oh_to_lp_regions() {
    std::vector<Region> regions;
    const std::vector<Block> blocks = {
        make_block(1, true, 0),  make_block(2, true, 1),
        make_block(3, true, 3),  make_block(4, true, 2),
        make_block(5, false, 3), make_block(6, false, 2),
        make_block(7, false, 0), make_block(8, false, 1),
    };
    for (const auto& b : blocks) {
        const MonomialWeight s_star = b.c_const.over(b.cs).pow(0.25);
        const MonomialWeight t_star = b.c_const.over(b.ct).pow(0.25);
        const MonomialWeight st_ratio = b.cs.over(b.ct).pow(0.25);   // t >= r * s
        const MonomialWeight ts_ratio = b.ct.over(b.cs).pow(0.25);   // s >= r * t

        Region corner;  // constant branch active: s and t both large
        corner.id = {b.index, 1};
        corner.active_term = b.c_term;
        corner.order = {"u", "v", "s", "t"};
        corner.bounds = {b.u_range, b.v_range,
                         {BoundExpr::of(s_star), BoundExpr::at_inf()},
                         {BoundExpr::of(t_star), BoundExpr::at_inf()}};

        Region s_min;  // s-branch active: s below its crossover, t above the ray
        s_min.active_term = b.s_term;
        s_min.order = {"u", "v", "s", "t"};
        s_min.bounds = {b.u_range, b.v_range,
                        {BoundExpr::at_zero(), BoundExpr::of(s_star)},
                        {BoundExpr::of(st_ratio.times(mono(1, 0, {"s"}, {1}))),
                         BoundExpr::at_inf()}};

        Region t_min;  // t-branch active
        t_min.active_term = b.t_term;
        t_min.order = {"u", "v", "t", "s"};
        t_min.bounds = {b.u_range, b.v_range,
                        {BoundExpr::at_zero(), BoundExpr::of(t_star)},
                        {BoundExpr::of(ts_ratio.times(mono(1, 0, {"t"}, {1}))),
                         BoundExpr::at_inf()}};

        // Blocks 5..8 are the images of blocks 1..4 under
        // (s,t,u,v) -> (t,s,1/u,1/v), which swaps the s- and t-branches; the
        // sub-region labels follow the images so that A_{i,j} and A_{i+4,j}
        // are partners.
        if (b.index <= 4) {
            s_min.id = {b.index, 2};
            t_min.id = {b.index, 3};
        } else {
            t_min.id = {b.index, 2};
            s_min.id = {b.index, 3};
        }
        regions.push_back(corner);
        regions.push_back(s_min);
        regions.push_back(t_min);
    }
    return regions;
}

// The 4-term scenario over (t,s): reduced weights are
//   term1 = n^-1 s^-2,  term2 = n^-1 t^2,  term3 = 1,  term4 = t^2 s^-2.
// Activity in log coordinates is a cross-shaped partition; the two large
// pieces need one split each to become iterated monomial cells.
std::vector<Region> derive_oh_to_cp_regions() {
    const MonomialWeight n_neg = mono(1, -0.5, {}, {});
    const MonomialWeight n_pos = mono(1, 0.5, {}, {});
    const MonomialWeight inv_s = mono(1, 0, {"s"}, {-1});
    std::vector<Region> regions;

    auto cell = [](int i, int j, int term, std::pair<BoundExpr, BoundExpr> s_range,
                   std::pair<BoundExpr, BoundExpr> t_range) {
        Region r;
        r.id = {i, j};
        r.active_term = term;
        r.order = {"s", "t"};
        r.bounds = {std::move(s_range), std::move(t_range)};
        return r;
    };

    // term1 active on { s >= n^-1/2, t >= n^-1/2, s t >= 1 }
    regions.push_back(cell(1, 1, 0, {BoundExpr::of(n_neg), BoundExpr::of(n_pos)},
                           {BoundExpr::of(inv_s), BoundExpr::at_inf()}));
    regions.push_back(cell(1, 2, 0, {BoundExpr::of(n_pos), BoundExpr::at_inf()},
                           {BoundExpr::of(n_neg), BoundExpr::at_inf()}));
    // term2 active on { s <= n^1/2, t <= n^1/2, s t <= 1 }
    regions.push_back(cell(2, 1, 1, {BoundExpr::at_zero(), BoundExpr::of(n_neg)},
                           {BoundExpr::at_zero(), BoundExpr::of(n_pos)}));
    regions.push_back(cell(2, 2, 1, {BoundExpr::of(n_neg), BoundExpr::of(n_pos)},
                           {BoundExpr::at_zero(), BoundExpr::of(inv_s)}));
    // term3 active on { s <= n^-1/2, t >= n^1/2 }
    regions.push_back(cell(3, 1, 2, {BoundExpr::at_zero(), BoundExpr::of(n_neg)},
                           {BoundExpr::of(n_pos), BoundExpr::at_inf()}));
    // term4 active on { s >= n^1/2, t <= n^-1/2 }
    regions.push_back(cell(4, 1, 3, {BoundExpr::of(n_pos), BoundExpr::at_inf()},
                           {BoundExpr::at_zero(), BoundExpr::of(n_neg)}));
    return regions;
}

}  // namespace

std::vector<Region> derive_regions(const ScenarioSpec& spec) {
    switch (spec.kind) {
        case ScenarioKind::OhToLp: return derive_oh_to_lp_regions();
        case ScenarioKind::OhToCp: return derive_oh_to_cp_regions();
        case ScenarioKind::OhToLpRelaxed:
            throw std::invalid_argument(
                "derive_regions: relaxed scenario shares the 8-term partition; "
                "derive on the oh_to_lp spec");
    }
    throw std::invalid_argument("derive_regions: bad scenario kind");
}

}  // namespace maurey::interp
