#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

#include "hexllg/coefficients.hpp"
#include "hexllg/grid.hpp"
#include "hexllg/model.hpp"

// Square-grid reference solver for the continuum LLG equation the lattice
// dynamics approaches under refinement:
//   dm/dt = -m x B_eff - alpha m x (m x B_eff),
//   B_eff = J* lap(m) + L*(x) (m.ez) ez + lambda*(x) (m.ex) ex + mu* B(x),
// with the atomistic-to-continuum coefficient map
//   J*      = 3/4 J1 + 9/2 J2 + 3 J3 + 3/2 K
//   L*(x)   = (L1 + L2 + L3)(x) / h*^2
//   lambda* = lambda(x) / h*^2
//   mu*     = mu / h*^2.

namespace hexllg {

struct ContinuumParams {
    double J_star = 0.0;
    double mu_star = 0.0;
    double alpha = 0.0;
    CoefficientSet coeffs;  // atomistic lambda, L_k, B; the maps below fold in h*
    double inv_hstar_sq = 1.0;

    double lambda_star_at(Vec2 p, double lx, double ly) const {
        return inv_hstar_sq * coeffs.lambda.eval(p, lx, ly);
    }
    double L_star_at(Vec2 p, double lx, double ly) const {
        return inv_hstar_sq * (coeffs.L[0].eval(p, lx, ly) + coeffs.L[1].eval(p, lx, ly) +
                               coeffs.L[2].eval(p, lx, ly));
    }
    Vec3 B_at(Vec2 p, double lx, double ly) const { return coeffs.B.eval(p, lx, ly); }
};

inline ContinuumParams continuum_params(const MaterialParams& p, const CoefficientSet& coeffs) {
    ContinuumParams cp;
    cp.J_star = 0.75 * p.J1 + 4.5 * p.J2 + 3.0 * p.J3 + 1.5 * p.K;
    cp.inv_hstar_sq = 1.0 / (p.h_star * p.h_star);
    cp.mu_star = p.mu * cp.inv_hstar_sq;
    cp.alpha = p.alpha;
    cp.coeffs = coeffs;
    return cp;
}

// 5-point periodic Laplacian plus the local terms.
inline GridField<Vec3> continuum_effective_field(const GridSpinField& g,
                                                 const ContinuumParams& cp) {
    GridField<Vec3> out;
    out.nx = g.nx;
    out.ny = g.ny;
    out.lx = g.lx;
    out.ly = g.ly;
    out.values.resize(g.values.size());
    const double ix2 = 1.0 / (g.dx() * g.dx());
    const double iy2 = 1.0 / (g.dy() * g.dy());
    for (int j = 0; j < g.ny; ++j) {
        for (int i = 0; i < g.nx; ++i) {
            const Vec3 m = g.at(i, j);
            const Vec3 lap = ix2 * (g.at_wrapped(i + 1, j) + g.at_wrapped(i - 1, j) - 2.0 * m) +
                             iy2 * (g.at_wrapped(i, j + 1) + g.at_wrapped(i, j - 1) - 2.0 * m);
            const Vec2 p{i * g.dx(), j * g.dy()};
            Vec3 b = cp.J_star * lap;
            b.z += cp.L_star_at(p, g.lx, g.ly) * m.z;
            b.x += cp.lambda_star_at(p, g.lx, g.ly) * m.x;
            b += cp.mu_star * cp.B_at(p, g.lx, g.ly);
            out.at(i, j) = b;
        }
    }
    return out;
}

inline GridField<Vec3> continuum_rhs(const GridSpinField& g, const ContinuumParams& cp) {
    GridField<Vec3> b = continuum_effective_field(g, cp);
    for (size_t i = 0; i < g.values.size(); ++i) {
        const Vec3 t = cross(g.values[i], b.values[i]);
        b.values[i] = -t - cp.alpha * cross(g.values[i], t);
    }
    return b;
}

inline void project_grid(GridSpinField& g) {
    for (Vec3& v : g.values) {
        const double n = norm(v);
        if (!(n > 0.0) || !std::isfinite(n))
            throw std::runtime_error("continuum step produced a non-renormalizable spin");
        v = v / n;
    }
}

inline GridSpinField continuum_step_rk4(const GridSpinField& g, double dt,
                                        const ContinuumParams& cp) {
    const size_t n = g.values.size();
    const GridField<Vec3> k1 = continuum_rhs(g, cp);
    GridSpinField tmp = g;
    for (size_t i = 0; i < n; ++i) tmp.values[i] = g.values[i] + (0.5 * dt) * k1.values[i];
    const GridField<Vec3> k2 = continuum_rhs(tmp, cp);
    for (size_t i = 0; i < n; ++i) tmp.values[i] = g.values[i] + (0.5 * dt) * k2.values[i];
    const GridField<Vec3> k3 = continuum_rhs(tmp, cp);
    for (size_t i = 0; i < n; ++i) tmp.values[i] = g.values[i] + dt * k3.values[i];
    const GridField<Vec3> k4 = continuum_rhs(tmp, cp);
    GridSpinField out = g;
    for (size_t i = 0; i < n; ++i)
        out.values[i] = g.values[i] + (dt / 6.0) * (k1.values[i] + 2.0 * k2.values[i] +
                                                    2.0 * k3.values[i] + k4.values[i]);
    project_grid(out);
    return out;
}

// Integrate to t_end recording the state at the requested times (which must be
// sorted, starting at 0). dt is snapped down so each interval is an integer
// number of steps.
inline std::vector<GridSpinField> continuum_integrate(const GridSpinField& initial, double dt,
                                                      const std::vector<double>& record_times,
                                                      const ContinuumParams& cp) {
    if (!(dt > 0.0)) throw std::invalid_argument("continuum_integrate: dt must be > 0");
    std::vector<GridSpinField> out;
    GridSpinField g = initial;
    double t = 0.0;
    for (double target : record_times) {
        if (target < t - 1e-12)
            throw std::invalid_argument("continuum_integrate: record times must be sorted");
        const double span = target - t;
        if (span > 1e-12) {
            const long steps = std::max(1L, std::lround(std::ceil(span / dt - 1e-9)));
            const double step_dt = span / static_cast<double>(steps);
            for (long s = 0; s < steps; ++s) g = continuum_step_rk4(g, step_dt, cp);
        }
        t = target;
        out.push_back(g);
    }
    return out;
}

}  // namespace hexllg
