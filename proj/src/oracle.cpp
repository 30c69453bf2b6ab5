#include "maurey/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <map>

#include "maurey/rng.hpp"

namespace maurey::oracle {

using interp::Region;
using interp::ScenarioSpec;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// log-space affine form of one monomial term: b + sum_i a_i x_i, with the
// Jacobian of x = e^(logx) folded in (a_i = exponent_i + 1)
struct AffineTerm {
    double b = 0.0;
    std::vector<double> a;
};

std::vector<AffineTerm> to_affine(const MinOfMonomials& mm) {
    std::vector<AffineTerm> out;
    for (const auto& w : mm.terms) {
        AffineTerm t;
        t.b = std::log(w.coefficient) + w.n_power * std::log(mm.n);
        t.a.assign(mm.vars.size(), 1.0);
        for (std::size_t i = 0; i < w.variables.size(); ++i) {
            auto it = std::find(mm.vars.begin(), mm.vars.end(), w.variables[i]);
            if (it == mm.vars.end())
                throw std::invalid_argument("term variable outside the domain: " +
                                            w.variables[i]);
            t.a[std::size_t(it - mm.vars.begin())] += w.exps[i];
        }
        out.push_back(std::move(t));
    }
    return out;
}

double safe_exp(double x) { return std::exp(std::min(x, 700.0)); }

// exact integral of exp(alpha x + beta) over [xa, xb]
double exp_affine_integral(double alpha, double beta, double xa, double xb) {
    if (!(xb > xa)) return 0.0;
    if (std::abs(alpha) * (xb - xa) < 1e-10)
        return safe_exp(beta + alpha * 0.5 * (xa + xb)) * (xb - xa);
    return (safe_exp(alpha * xb + beta) - safe_exp(alpha * xa + beta)) / alpha;
}

// exact integral of (a + b x) exp(alpha x + beta) over [xa, xb]
double linexp_affine_integral(double a, double b, double alpha, double beta, double xa,
                              double xb) {
    if (!(xb > xa)) return 0.0;
    if (std::abs(alpha) * (xb - xa) < 1e-8) {
        const double xm = 0.5 * (xa + xb);
        return safe_exp(beta + alpha * xm) *
               (a * (xb - xa) + b * 0.5 * (xb * xb - xa * xa));
    }
    auto anti = [&](double x) {
        return safe_exp(alpha * x + beta) * ((a + b * x) / alpha - b / (alpha * alpha));
    };
    return anti(xb) - anti(xa);
}

// ------------------------------------------------------------------
// exact integration over the two innermost coordinates:
//   int_{ua}^{ub} int_{va(x)}^{vb(x)} exp( min_l (C_l + A_l x + B_l y) ) dy dx
// with affine v-range va(x) = va0 + va1 x, vb(x) = vb0 + vb1 x.
// The inner envelope structure changes only at computable linear crossings
// in x; between crossings each piece is exp(affine) or (linear)*exp(affine)
// and integrates in closed form.
// ------------------------------------------------------------------
struct PairLine {
    double C, A, B;
};

double exact_pair_integral(const std::vector<PairLine>& lines, double ua, double ub,
                           double va0, double va1, double vb0, double vb1) {
    if (!(ub > ua) || lines.empty()) return 0.0;
    const std::size_t L = lines.size();

    thread_local std::vector<double> cuts;
    cuts.clear();
    cuts.push_back(ua);
    cuts.push_back(ub);
    auto add_cut = [&](double x) {
        if (x > ua && x < ub && std::isfinite(x)) cuts.push_back(x);
    };
    // breakpoint curves y = p + q x for pairs with distinct B
    thread_local std::vector<std::array<double, 2>> bps;
    bps.clear();
    for (std::size_t l = 0; l < L; ++l) {
        for (std::size_t m = l + 1; m < L; ++m) {
            const double dB = lines[l].B - lines[m].B;
            if (std::abs(dB) > 1e-13) {
                const double p = (lines[m].C - lines[l].C) / dB;
                const double q = (lines[m].A - lines[l].A) / dB;
                bps.push_back({p, q});
                // crossing the affine range edges
                if (std::abs(q - va1) > 1e-13) add_cut((va0 - p) / (q - va1));
                if (std::abs(q - vb1) > 1e-13) add_cut((vb0 - p) / (q - vb1));
            } else if (std::abs(lines[l].A - lines[m].A) > 1e-13) {
                // equal v-slope: the preferred line flips where values match
                add_cut((lines[m].C - lines[l].C) / (lines[l].A - lines[m].A));
            }
        }
    }
    for (std::size_t i = 0; i < bps.size(); ++i)
        for (std::size_t j = i + 1; j < bps.size(); ++j)
            if (std::abs(bps[i][1] - bps[j][1]) > 1e-13)
                add_cut((bps[j][0] - bps[i][0]) / (bps[i][1] - bps[j][1]));
    // collapse of the v-range
    if (std::abs(vb1 - va1) > 1e-13) add_cut((va0 - vb0) / (vb1 - va1));
    std::sort(cuts.begin(), cuts.end());

    double total = 0.0;
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
        const double xa = cuts[k], xb = cuts[k + 1];
        if (!(xb > xa + 1e-15 * (ub - ua))) continue;
        const double xm = 0.5 * (xa + xb);
        const double vam = va0 + va1 * xm, vbm = vb0 + vb1 * xm;
        if (!(vbm > vam)) continue;

        // active sequence of the v-envelope at the midpoint
        thread_local std::vector<double> vcuts;
        vcuts.clear();
        vcuts.push_back(vam);
        vcuts.push_back(vbm);
        for (std::size_t l = 0; l < L; ++l)
            for (std::size_t m = l + 1; m < L; ++m) {
                const double dB = lines[l].B - lines[m].B;
                if (std::abs(dB) < 1e-13) continue;
                const double y =
                    ((lines[m].C + lines[m].A * xm) - (lines[l].C + lines[l].A * xm)) / dB;
                if (y > vam && y < vbm) vcuts.push_back(y);
            }
        std::sort(vcuts.begin(), vcuts.end());
        thread_local std::vector<int> active;
        active.clear();
        for (std::size_t s = 0; s + 1 < vcuts.size(); ++s) {
            const double ymid = 0.5 * (vcuts[s] + vcuts[s + 1]);
            int best = 0;
            double bv = lines[0].C + lines[0].A * xm + lines[0].B * ymid;
            for (std::size_t l = 1; l < L; ++l) {
                const double v = lines[l].C + lines[l].A * xm + lines[l].B * ymid;
                if (v < bv) {
                    bv = v;
                    best = int(l);
                }
            }
            if (active.empty() || active.back() != best) active.push_back(best);
        }

        // endpoints of segment j as affine functions of x: the range edges or
        // the breakpoint of the two adjacent active lines
        const std::size_t segs = active.size();
        thread_local std::vector<std::array<double, 2>> walls;
        walls.assign(segs + 1, {0.0, 0.0});
        walls[0] = {va0, va1};
        walls[segs] = {vb0, vb1};
        for (std::size_t j = 1; j < segs; ++j) {
            const auto& l1 = lines[std::size_t(active[j - 1])];
            const auto& l2 = lines[std::size_t(active[j])];
            const double dB = l1.B - l2.B;
            walls[j] = {(l2.C - l1.C) / dB, (l2.A - l1.A) / dB};
        }

        for (std::size_t j = 0; j < segs; ++j) {
            const auto& ln = lines[std::size_t(active[j])];
            const auto& w0 = walls[j];
            const auto& w1 = walls[j + 1];
            if (std::abs(ln.B) > 1e-12) {
                // [exp(B*w(x) + C + A x)]_{w0}^{w1} / B
                const double a1 = ln.B * w1[1] + ln.A, b1 = ln.B * w1[0] + ln.C;
                const double a0 = ln.B * w0[1] + ln.A, b0 = ln.B * w0[0] + ln.C;
                total += (exp_affine_integral(a1, b1, xa, xb) -
                          exp_affine_integral(a0, b0, xa, xb)) /
                         ln.B;
            } else {
                // constant in v: length (w1 - w0)(x) times exp(C + A x)
                total += linexp_affine_integral(w1[0] - w0[0], w1[1] - w0[1], ln.A, ln.C,
                                                xa, xb);
            }
        }
    }
    return total;
}

// 7-point Gauss / 15-point Kronrod nodes and weights on [-1, 1]
constexpr double kKronrodX[15] = {
    -0.991455371120813, -0.949107912342759, -0.864864423359769, -0.741531185599394,
    -0.586087235467691, -0.405845151377397, -0.207784955007898, 0.0,
    0.207784955007898,  0.405845151377397,  0.586087235467691,  0.741531185599394,
    0.864864423359769,  0.949107912342759,  0.991455371120813};
constexpr double kKronrodW[15] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728,
    0.204432940075298, 0.190350578064785, 0.169004726639267, 0.140653259715525,
    0.104790010322250, 0.063092092629979, 0.022935322010529};
constexpr double kGaussW[7] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469,
    0.381830050505119, 0.279705391489277, 0.129484966168870};

// affine 1D bound c0 + c1 * x_prev (x_prev = the immediately outer pair
// variable; c1 = 0 for numeric levels)
struct PairBounds {
    double ua, ub;
    double va0, va1, vb0, vb1;
};

struct NestedQuad {
    const std::vector<AffineTerm>* terms = nullptr;
    std::size_t dims = 0;
    long long max_evals = 0;
    long long evals = 0;
    bool flagged = false;
    double split_scale = 1.0;  // geometric pre-split ladder unit (log units)
    std::vector<double> split_hints;  // extra structural split offsets

    // numeric-level limits given the outer prefix (levels 0 .. dims-3)
    std::function<std::pair<double, double>(std::size_t, const std::vector<double>&)> limits;
    // bounds of the exact pair (levels dims-2, dims-1) given the prefix
    std::function<PairBounds(const std::vector<double>&)> pair_bounds;

    struct VE {
        double v, e;
    };

    VE eval_pair(const std::vector<double>& x) {
        const PairBounds pb = pair_bounds(x);
        if (!(pb.ub > pb.ua)) return {0.0, 0.0};
        thread_local std::vector<PairLine> lines;
        lines.clear();
        for (const auto& t : *terms) {
            double c = t.b;
            for (std::size_t i = 0; i + 2 < dims; ++i) c += t.a[i] * x[i];
            lines.push_back({c, t.a[dims - 2], t.a[dims - 1]});
        }
        ++evals;
        return {exact_pair_integral(lines, pb.ua, pb.ub, pb.va0, pb.va1, pb.vb0, pb.vb1),
                0.0};
    }

    VE integrate(std::size_t level, std::vector<double>& x, double rel_tol) {
        if (level + 2 == dims) return eval_pair(x);
        const auto [lo, hi] = limits(level, x);
        if (!(hi > lo)) return {0.0, 0.0};

        struct Panel {
            double a, b, v, e;
        };
        // pre-split: structural hints plus a geometric ladder around 0
        // (local: this routine recurses through gk_panel)
        std::vector<double> edges;
        edges.push_back(lo);
        edges.push_back(hi);
        auto add_edge = [&](double p) {
            if (p > lo + 1e-12 && p < hi - 1e-12) edges.push_back(p);
        };
        for (double h : split_hints) add_edge(h);
        for (double g = split_scale; g < std::max(std::abs(lo), std::abs(hi));
             g *= 2.0) {
            add_edge(g);
            add_edge(-g);
        }
        std::sort(edges.begin(), edges.end());

        std::vector<Panel> panels;
        double scale = 0.0;
        for (std::size_t k = 0; k + 1 < edges.size(); ++k) {
            const auto ve = gk_panel(level, x, edges[k], edges[k + 1], rel_tol);
            panels.push_back({edges[k], edges[k + 1], ve.v, ve.e});
            scale += std::abs(ve.v);
        }
        const double tol_abs = rel_tol * std::max(scale, 1e-300);

        auto total_err = [&]() {
            double e = 0.0;
            for (const auto& p : panels) e += p.e;
            return e;
        };
        while (total_err() > tol_abs) {
            if (evals >= max_evals || panels.size() > 4000) {
                flagged = true;
                break;
            }
            std::size_t worst = 0;
            for (std::size_t k = 1; k < panels.size(); ++k)
                if (panels[k].e > panels[worst].e) worst = k;
            const Panel p = panels[worst];
            const double mid = 0.5 * (p.a + p.b);
            const auto l = gk_panel(level, x, p.a, mid, rel_tol);
            const auto r = gk_panel(level, x, mid, p.b, rel_tol);
            panels[worst] = {p.a, mid, l.v, l.e};
            panels.push_back({mid, p.b, r.v, r.e});
        }
        VE out{0.0, 0.0};
        for (const auto& p : panels) {
            out.v += p.v;
            out.e += p.e;
        }
        return out;
    }

    VE gk_panel(std::size_t level, std::vector<double>& x, double a, double b,
                double rel_tol) {
        const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
        double k15 = 0.0, g7 = 0.0, inner_err = 0.0;
        int gi = 0;
        for (int i = 0; i < 15; ++i) {
            x[level] = mid + half * kKronrodX[i];
            const VE in = integrate(level + 1, x, rel_tol * 0.5);
            k15 += kKronrodW[i] * in.v;
            inner_err += kKronrodW[i] * in.e;
            if (i % 2 == 1) g7 += kGaussW[gi++] * in.v;
        }
        k15 *= half;
        g7 *= half;
        inner_err *= half;
        return {k15, std::abs(k15 - g7) + inner_err};
    }
};

// 1D exact envelope integral (no nesting needed)
double envelope_1d(const std::vector<AffineTerm>& affine, double lo, double hi) {
    std::vector<PairLine> lines;
    for (const auto& t : affine) lines.push_back({t.b - 0.0, 0.0, t.a[0]});
    // reuse the pair machinery with a dummy unit-width outer variable
    return exact_pair_integral(lines, 0.0, 1.0, lo, 0.0, hi, 0.0);
}

}  // namespace

MinOfMonomials MinOfMonomials::from_scenario(const ScenarioSpec& spec) {
    MinOfMonomials mm;
    mm.vars = spec.variables;
    mm.n = spec.n;
    for (const auto& t : spec.terms) mm.terms.push_back(t.density);
    return mm;
}

double MinOfMonomials::log_integrand(const std::vector<double>& logx) const {
    const auto affine = to_affine(*this);
    double best = kInf;
    for (const auto& t : affine) {
        double v = t.b;
        for (std::size_t i = 0; i < vars.size(); ++i) v += t.a[i] * logx[i];
        best = std::min(best, v);
    }
    return best;
}

OracleEstimate quad_box(const MinOfMonomials& mm, const LogBox& box, double rel_tol,
                        long long max_evals) {
    if (!(rel_tol > 0.0)) throw std::invalid_argument("quad_box: tol must be positive");
    if (box.dims() != mm.vars.size())
        throw std::invalid_argument("quad_box: box dimension mismatch");
    const auto affine = to_affine(mm);
    OracleEstimate est;
    if (mm.vars.size() == 1) {
        est.value = envelope_1d(affine, box.lohi[0].first, box.lohi[0].second);
        est.evaluations = 1;
        return est;
    }
    NestedQuad nq;
    nq.terms = &affine;
    nq.dims = mm.vars.size();
    nq.max_evals = max_evals;
    const double ln_n = std::log(std::max(mm.n, 1.0));
    nq.split_hints = {0.0, ln_n / 4, -ln_n / 4, ln_n / 2, -ln_n / 2};
    nq.limits = [&box](std::size_t level, const std::vector<double>&) {
        return box.lohi[level];
    };
    nq.pair_bounds = [&box, d = mm.vars.size()](const std::vector<double>&) {
        return PairBounds{box.lohi[d - 2].first, box.lohi[d - 2].second,
                          box.lohi[d - 1].first, 0.0, box.lohi[d - 1].second, 0.0};
    };
    std::vector<double> x(nq.dims, 0.0);
    const auto ve = nq.integrate(0, x, rel_tol);
    est.value = ve.v;
    est.quadrature_error = ve.e;
    est.evaluations = std::max<long long>(nq.evals, 1);
    est.error_flagged = nq.flagged;
    return est;
}

OracleEstimate quad_region(const ScenarioSpec& spec, const Region& region, double rel_tol,
                           long long max_evals) {
    if (!(rel_tol > 0.0)) throw std::invalid_argument("quad_region: tol must be positive");
    MinOfMonomials mm = MinOfMonomials::from_scenario(spec);
    mm.vars = region.order;  // integrate in the region's nesting order
    const auto affine = to_affine(mm);
    const std::size_t d = region.order.size();

    // Decay rates of the partially-integrated integrand along each nesting
    // direction, for truncating the open ends of the region at a negligible
    // relative tail.  Inner bound substitutions shift outer exponents, so the
    // rates come from exponent bookkeeping over all substitution branches,
    // not from the active term alone.
    const MonomialWeight active =
        spec.common_factor.times(spec.terms.at(region.active_term).reduced);
    std::vector<double> rate_zero(d), rate_inf(d);
    {
        std::vector<std::vector<double>> branches(1, std::vector<double>(d, 0.0));
        for (std::size_t k = 0; k < d; ++k)
            branches[0][k] = active.exponent(region.order[k]);
        for (std::size_t k = d; k-- > 0;) {
            rate_zero[k] = kInf;
            rate_inf[k] = kInf;
            for (const auto& br : branches) {
                rate_zero[k] = std::min(rate_zero[k], br[k] + 1.0);
                rate_inf[k] = std::min(rate_inf[k], -(br[k] + 1.0));
            }
            std::vector<std::vector<double>> next;
            for (const auto& br : branches) {
                const double p = br[k] + 1.0;
                for (const interp::BoundExpr* be :
                     {&region.bounds[k].first, &region.bounds[k].second}) {
                    if (be->zero || be->inf) continue;
                    auto nb = br;
                    nb[k] = 0.0;
                    for (std::size_t i = 0; i < be->expr.variables.size(); ++i) {
                        auto it = std::find(region.order.begin(), region.order.end(),
                                            be->expr.variables[i]);
                        if (it != region.order.end())
                            nb[std::size_t(it - region.order.begin())] +=
                                be->expr.exps[i] * p;
                    }
                    next.push_back(std::move(nb));
                }
            }
            if (!next.empty()) branches = std::move(next);
        }
    }

    const double eps_tail = rel_tol * 1e-2 / double(d);
    const double reach = std::log(1.0 / eps_tail);

    // log-affine view of a bound: constant part at the current prefix plus
    // the slope in the immediately-outer pair variable
    auto bound_log = [&](const interp::BoundExpr& b, const std::vector<double>& x,
                         std::size_t upto) {
        double c = std::log(b.expr.coefficient) + b.expr.n_power * std::log(spec.n);
        for (std::size_t i = 0; i < b.expr.variables.size(); ++i) {
            auto it = std::find(region.order.begin(), region.order.end(),
                                b.expr.variables[i]);
            const std::size_t idx = std::size_t(it - region.order.begin());
            if (idx < upto) c += b.expr.exps[i] * x[idx];
        }
        return c;
    };
    auto bound_slope_in = [&](const interp::BoundExpr& b, std::size_t var_idx) {
        return b.expr.exponent(region.order[var_idx]);
    };

    NestedQuad nq;
    nq.terms = &affine;
    nq.dims = d;
    nq.max_evals = max_evals;
    const double ln_n = std::log(std::max(spec.n, 1.0));
    nq.split_hints = {0.0, ln_n / 4, -ln_n / 4, ln_n / 2, -ln_n / 2};
    nq.limits = [&](std::size_t level, const std::vector<double>& x) {
        const auto& [lo_b, hi_b] = region.bounds[level];
        double lo = lo_b.zero ? -kInf : bound_log(lo_b, x, level);
        double hi = hi_b.inf ? kInf : bound_log(hi_b, x, level);
        if (std::isinf(hi)) {
            if (!(rate_inf[level] > 0.0))
                throw std::domain_error("quad_region: divergent direction " +
                                        region.order[level]);
            hi = lo + reach / rate_inf[level];
        }
        if (std::isinf(lo)) {
            if (!(rate_zero[level] > 0.0))
                throw std::domain_error("quad_region: divergent direction " +
                                        region.order[level]);
            lo = hi - reach / rate_zero[level];
        }
        return std::make_pair(lo, hi);
    };
    nq.pair_bounds = [&](const std::vector<double>& x) {
        PairBounds pb{};
        const std::size_t ou = d - 2, iv = d - 1;
        {
            const auto& [lo_b, hi_b] = region.bounds[ou];
            double lo = lo_b.zero ? -kInf : bound_log(lo_b, x, ou);
            double hi = hi_b.inf ? kInf : bound_log(hi_b, x, ou);
            if (std::isinf(hi)) {
                if (!(rate_inf[ou] > 0.0))
                    throw std::domain_error("quad_region: divergent direction " +
                                            region.order[ou]);
                hi = lo + reach / rate_inf[ou];
            }
            if (std::isinf(lo)) {
                if (!(rate_zero[ou] > 0.0))
                    throw std::domain_error("quad_region: divergent direction " +
                                            region.order[ou]);
                lo = hi - reach / rate_zero[ou];
            }
            pb.ua = lo;
            pb.ub = hi;
        }
        {
            const auto& [lo_b, hi_b] = region.bounds[iv];
            double lo0 = 0.0, lo1 = 0.0, hi0 = 0.0, hi1 = 0.0;
            bool lo_open = lo_b.zero, hi_open = hi_b.inf;
            if (!lo_open) {
                lo0 = bound_log(lo_b, x, ou);
                lo1 = bound_slope_in(lo_b, ou);
            }
            if (!hi_open) {
                hi0 = bound_log(hi_b, x, ou);
                hi1 = bound_slope_in(hi_b, ou);
            }
            if (lo_open && hi_open)
                throw std::domain_error("quad_region: doubly unbounded inner variable");
            if (hi_open) {
                if (!(rate_inf[iv] > 0.0))
                    throw std::domain_error("quad_region: divergent direction " +
                                            region.order[iv]);
                hi0 = lo0 + reach / rate_inf[iv];
                hi1 = lo1;
            }
            if (lo_open) {
                if (!(rate_zero[iv] > 0.0))
                    throw std::domain_error("quad_region: divergent direction " +
                                            region.order[iv]);
                lo0 = hi0 - reach / rate_zero[iv];
                lo1 = hi1;
            }
            pb.va0 = lo0;
            pb.va1 = lo1;
            pb.vb0 = hi0;
            pb.vb1 = hi1;
        }
        return pb;
    };

    std::vector<double> x(d, 0.0);
    const auto ve = nq.integrate(0, x, rel_tol);
    OracleEstimate est;
    est.value = ve.v;
    est.quadrature_error = ve.e + ve.v * eps_tail * double(d);
    est.evaluations = std::max<long long>(nq.evals, 1);
    est.error_flagged = nq.flagged;
    return est;
}

namespace {

// log of int_piece x^e dx for the piece shapes used by the tail cells;
// +inf when divergent
double log_piece_integral(double e, double log_a, double log_b, bool from_zero, bool to_inf) {
    const double ep1 = e + 1.0;
    if (to_inf) {
        if (ep1 >= -1e-12) return kInf;
        return ep1 * log_a - std::log(-ep1);
    }
    if (from_zero) {
        if (ep1 <= 1e-12) return kInf;
        return ep1 * log_b - std::log(ep1);
    }
    if (std::abs(ep1) <= 1e-12) return std::log(log_b - log_a);
    const double hi = ep1 * log_b, lo = ep1 * log_a;
    const double mx = std::max(hi, lo), mn = std::min(hi, lo);
    return mx + std::log1p(-std::exp(mn - mx)) - std::log(std::abs(ep1));
}

struct Piece {
    double log_a = 0.0, log_b = 0.0;
    bool from_zero = false, to_inf = false;
};

using Cell = std::vector<Piece>;

// best upper bound on int_cell min(terms) over weighted geometric means of
// one, two, or three terms (min <= prod term^lambda for simplex lambda)
double cell_bound_log(const MinOfMonomials& mm, const std::vector<std::vector<double>>& exps,
                      const std::vector<double>& logc, const Cell& cell) {
    const std::size_t L = mm.terms.size(), d = mm.vars.size();
    auto eval_mix = [&](const std::vector<std::pair<std::size_t, double>>& mix) {
        double total = 0.0;
        for (const auto& [l, lam] : mix) total += lam * logc[l];
        for (std::size_t i = 0; i < d; ++i) {
            double e = 0.0;
            for (const auto& [l, lam] : mix) e += lam * exps[l][i];
            const double p = log_piece_integral(e, cell[i].log_a, cell[i].log_b,
                                                cell[i].from_zero, cell[i].to_inf);
            if (std::isinf(p)) return kInf;
            total += p;
        }
        return total;
    };
    double best = kInf;
    for (std::size_t l = 0; l < L; ++l) best = std::min(best, eval_mix({{l, 1.0}}));
    const int steps = 64;
    for (std::size_t l1 = 0; l1 < L; ++l1)
        for (std::size_t l2 = l1 + 1; l2 < L; ++l2)
            for (int k = 1; k < steps; ++k) {
                const double lam = double(k) / steps;
                best = std::min(best, eval_mix({{l1, 1.0 - lam}, {l2, lam}}));
            }
    if (std::isinf(best)) {
        const int coarse = 8;
        for (std::size_t l1 = 0; l1 < L && std::isinf(best); ++l1)
            for (std::size_t l2 = l1 + 1; l2 < L; ++l2)
                for (std::size_t l3 = l2 + 1; l3 < L; ++l3)
                    for (int k1 = 1; k1 < coarse; ++k1)
                        for (int k2 = 1; k1 + k2 < coarse; ++k2) {
                            const double a = double(k1) / coarse, b = double(k2) / coarse;
                            best = std::min(best,
                                            eval_mix({{l1, a}, {l2, b}, {l3, 1.0 - a - b}}));
                        }
    }
    return best;
}

}  // namespace

double tail_bound(const MinOfMonomials& mm, const LogBox& box) {
    if (box.dims() != mm.vars.size())
        throw std::invalid_argument("tail_bound: box dimension mismatch");
    if (!box.contains_origin())
        throw std::invalid_argument(
            "tail_bound: box must contain the origin in log coordinates");
    const std::size_t d = mm.vars.size();
    std::vector<std::vector<double>> exps(mm.terms.size(), std::vector<double>(d, 0.0));
    std::vector<double> logc(mm.terms.size());
    for (std::size_t l = 0; l < mm.terms.size(); ++l) {
        logc[l] = std::log(mm.terms[l].coefficient) + mm.terms[l].n_power * std::log(mm.n);
        for (std::size_t i = 0; i < mm.terms[l].variables.size(); ++i) {
            auto it = std::find(mm.vars.begin(), mm.vars.end(), mm.terms[l].variables[i]);
            if (it == mm.vars.end())
                throw std::invalid_argument("tail_bound: unknown term variable");
            exps[l][std::size_t(it - mm.vars.begin())] += mm.terms[l].exps[i];
        }
    }

    // complement of the box covered by disjoint slabs: axis i outside its
    // range, axes < i inside the box, axes > i unconstrained; every finite
    // range is split at 1 to give the geometric-mean search room
    double total = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
        for (int dir = 0; dir < 2; ++dir) {
            std::vector<std::vector<Piece>> axis_pieces(d);
            for (std::size_t j = 0; j < d; ++j) {
                auto& ps = axis_pieces[j];
                if (j == i) {
                    Piece p;
                    if (dir == 0) {
                        p.to_inf = true;
                        p.log_a = box.lohi[j].second;
                    } else {
                        p.from_zero = true;
                        p.log_b = box.lohi[j].first;
                    }
                    ps.push_back(p);
                } else if (j < i) {
                    const auto [lo, hi] = box.lohi[j];
                    if (lo < 0.0 && hi > 0.0) {
                        ps.push_back({lo, 0.0, false, false});
                        ps.push_back({0.0, hi, false, false});
                    } else {
                        ps.push_back({lo, hi, false, false});
                    }
                } else {
                    ps.push_back({0.0, 0.0, true, false});  // (0, 1]
                    ps.push_back({0.0, 0.0, false, true});  // [1, inf)
                }
            }
            std::vector<std::size_t> idx(d, 0);
            while (true) {
                Cell cell(d);
                for (std::size_t j = 0; j < d; ++j) cell[j] = axis_pieces[j][idx[j]];
                const double lb = cell_bound_log(mm, exps, logc, cell);
                if (std::isinf(lb))
                    throw UnboundedTailError(mm.vars[i] + (dir == 0 ? "+" : "-"));
                total += std::exp(lb);
                std::size_t j = 0;
                for (; j < d; ++j) {
                    if (++idx[j] < axis_pieces[j].size()) break;
                    idx[j] = 0;
                }
                if (j == d) break;
            }
        }
    }
    return total;
}

std::vector<std::pair<double, double>> axis_decay_rates(const MinOfMonomials& mm) {
    const auto affine = to_affine(mm);
    std::vector<std::pair<double, double>> rates(mm.vars.size());
    for (std::size_t i = 0; i < mm.vars.size(); ++i) {
        double toward_zero = -kInf;
        double toward_inf = kInf;
        for (const auto& t : affine) {
            toward_zero = std::max(toward_zero, t.a[i]);
            toward_inf = std::min(toward_inf, t.a[i]);
        }
        if (!(toward_zero > 0.0)) throw UnboundedTailError(mm.vars[i] + "-");
        if (!(toward_inf < 0.0)) throw UnboundedTailError(mm.vars[i] + "+");
        rates[i] = {toward_zero, -toward_inf};
    }
    return rates;
}

OracleEstimate mc_estimate(const MinOfMonomials& mm, std::uint64_t seed, long long N) {
    if (N < 1000) throw std::invalid_argument("mc_estimate: N must be at least 1000");
    const auto affine = to_affine(mm);
    const auto rates = axis_decay_rates(mm);
    const std::size_t d = mm.vars.size();

    // asymmetric exponential proposal per axis, rates a quarter of the decay
    // certificates so importance weights stay integrable in every corner
    std::vector<double> rm(d), rp(d), logC(d), p_neg(d);
    for (std::size_t i = 0; i < d; ++i) {
        rm[i] = rates[i].first / 4.0;
        rp[i] = rates[i].second / 4.0;
        logC[i] = std::log(rm[i] * rp[i] / (rm[i] + rp[i]));
        p_neg[i] = rp[i] / (rm[i] + rp[i]);
    }

    Rng rng(seed);
    double sum = 0.0, sum2 = 0.0;
    std::vector<double> x(d);
    for (long long it = 0; it < N; ++it) {
        double logq = 0.0;
        for (std::size_t i = 0; i < d; ++i) {
            if (rng.uniform() < p_neg[i])
                x[i] = -rng.exponential(rm[i]);
            else
                x[i] = rng.exponential(rp[i]);
            logq += logC[i] - (x[i] < 0 ? rm[i] * (-x[i]) : rp[i] * x[i]);
        }
        double logf = kInf;
        for (const auto& t : affine) {
            double v = t.b;
            for (std::size_t i = 0; i < d; ++i) v += t.a[i] * x[i];
            logf = std::min(logf, v);
        }
        const double w = std::exp(logf - logq);
        sum += w;
        sum2 += w * w;
    }
    OracleEstimate est;
    est.value = sum / double(N);
    const double var = std::max(0.0, sum2 / double(N) - est.value * est.value);
    est.quadrature_error = 1.96 * std::sqrt(var / double(N));  // 95% CI half-width
    est.evaluations = N;
    return est;
}

}  // namespace maurey::oracle
