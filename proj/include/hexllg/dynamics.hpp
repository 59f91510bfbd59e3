#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "hexllg/model.hpp"

// Time integration of the lattice LLG system in rescaled time t*, with
// pointwise renormalization after every accepted step, plus the runtime
// monitors (energy, stacked-gradient norms, torque and dm/dt norms).

namespace hexllg {

struct NumericalFailure : std::runtime_error {
    double t_star;
    explicit NumericalFailure(double t, const std::string& msg)
        : std::runtime_error(msg + " (t* = " + std::to_string(t) + ")"), t_star(t) {}
};

struct SimState {
    double t_star = 0.0;
    SpinField m;
    long step_count = 0;
};

struct MonitorSeries {
    std::vector<double> times;
    std::vector<double> energy_star;
    std::array<std::vector<double>, 3> grad_norm_sq;
    std::vector<double> torque_norm_sq;
    std::vector<double> dmdt_norm_sq;
};

enum class Integrator { Rk4, Midpoint };

struct LlgProblem {
    const HexLattice* lat = nullptr;
    MaterialParams params;
    ModelSample coeffs;

    // Unchecked evaluation: integrator stages and midpoint iterates sit off
    // the unit sphere by construction; unit length is enforced on states.
    VectorField rhs(const SpinField& m) const {
        return llg_rhs(*lat, m, params, coeffs, std::numeric_limits<double>::infinity());
    }
};

namespace detail {

inline void check_finite(const VectorField& f, double t, const char* stage) {
    for (const Vec3& v : f)
        if (!value_finite(v))
            throw NumericalFailure(t, std::string("non-finite values in ") + stage);
}

inline void project_unit(SpinField& m, double t) {
    for (Vec3& v : m) {
        const double n = norm(v);
        if (!(n > 0.0) || !std::isfinite(n))
            throw NumericalFailure(t, "cannot renormalize zero or non-finite spin");
        v = v / n;
    }
}

}  // namespace detail

// Classical 4-stage explicit step followed by renormalization.
inline SimState step_rk4_projected(const SimState& s, double dt, const LlgProblem& prob) {
    if (!(dt > 0.0)) throw std::invalid_argument("step_rk4_projected: dt must be > 0");
    if (max_unit_deviation(s.m) > 1e-9)
        throw std::invalid_argument("step_rk4_projected: state is not unit length");
    const size_t n = s.m.size();
    const VectorField k1 = prob.rhs(s.m);
    detail::check_finite(k1, s.t_star, "rk4 stage 1");
    SpinField tmp(n);
    for (size_t i = 0; i < n; ++i) tmp[i] = s.m[i] + (0.5 * dt) * k1[i];
    const VectorField k2 = prob.rhs(tmp);
    detail::check_finite(k2, s.t_star, "rk4 stage 2");
    for (size_t i = 0; i < n; ++i) tmp[i] = s.m[i] + (0.5 * dt) * k2[i];
    const VectorField k3 = prob.rhs(tmp);
    detail::check_finite(k3, s.t_star, "rk4 stage 3");
    for (size_t i = 0; i < n; ++i) tmp[i] = s.m[i] + dt * k3[i];
    const VectorField k4 = prob.rhs(tmp);
    detail::check_finite(k4, s.t_star, "rk4 stage 4");

    SimState out;
    out.m.resize(n);
    for (size_t i = 0; i < n; ++i)
        out.m[i] = s.m[i] + (dt / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    detail::project_unit(out.m, s.t_star + dt);
    out.t_star = s.t_star + dt;
    out.step_count = s.step_count + 1;
    return out;
}

// Implicit midpoint rule solved by fixed-point iteration (tolerance 1e-12,
// at most 50 sweeps), then renormalization. Preserves |m| up to the iteration
// tolerance on its own and is the integrator of record for energy-decay tests.
inline SimState step_midpoint_implicit(const SimState& s, double dt, const LlgProblem& prob,
                                       double fp_tol = 1e-12, int max_iter = 50) {
    if (!(dt > 0.0)) throw std::invalid_argument("step_midpoint_implicit: dt must be > 0");
    if (max_unit_deviation(s.m) > 1e-9)
        throw std::invalid_argument("step_midpoint_implicit: state is not unit length");
    const size_t n = s.m.size();
    SpinField next = s.m;
    SpinField mid(n);
    bool converged = false;
    for (int it = 0; it < max_iter; ++it) {
        for (size_t i = 0; i < n; ++i) mid[i] = 0.5 * (s.m[i] + next[i]);
        const VectorField f = prob.rhs(mid);
        detail::check_finite(f, s.t_star, "midpoint iteration");
        double delta = 0.0;
        for (size_t i = 0; i < n; ++i) {
            const Vec3 cand = s.m[i] + dt * f[i];
            delta = std::max(delta, norm(cand - next[i]));
            next[i] = cand;
        }
        if (delta <= fp_tol) {
            converged = true;
            break;
        }
    }
    if (!converged)
        throw NumericalFailure(s.t_star,
                               "midpoint fixed-point iteration did not converge; reduce dt");
    detail::project_unit(next, s.t_star + dt);
    SimState out;
    out.m = std::move(next);
    out.t_star = s.t_star + dt;
    out.step_count = s.step_count + 1;
    return out;
}

inline SimState step(const SimState& s, double dt, const LlgProblem& prob, Integrator which) {
    return which == Integrator::Rk4 ? step_rk4_projected(s, dt, prob)
                                    : step_midpoint_implicit(s, dt, prob);
}

inline void record_monitors(MonitorSeries& mon, const SimState& s, const LlgProblem& prob) {
    const HexLattice& lat = *prob.lat;
    mon.times.push_back(s.t_star);
    mon.energy_star.push_back(
        discrete_energy_star(lat, s.m, prob.params, prob.coeffs, 1e-3));
    for (int k = 1; k <= 3; ++k)
        mon.grad_norm_sq[k - 1].push_back(grad_norm_sq(lat, s.m, k));
    const EffectiveField f = effective_field_pde(lat, s.m, prob.params, prob.coeffs, 1e-3);
    const VectorField beff = f.total();
    VectorField torque(s.m.size());
    for (size_t i = 0; i < s.m.size(); ++i) torque[i] = cross(s.m[i], beff[i]);
    mon.torque_norm_sq.push_back(norm_l2h_sq(lat, torque));
    // dm/dt norm evaluated from the actual right-hand side, not via the
    // (1+alpha^2) identity it is tested against.
    VectorField rhs(s.m.size());
    for (size_t i = 0; i < s.m.size(); ++i)
        rhs[i] = -torque[i] - prob.params.alpha * cross(s.m[i], torque[i]);
    mon.dmdt_norm_sq.push_back(norm_l2h_sq(lat, rhs));
}

// Fixed-step integration to t_end with monitors every `monitor_stride` steps
// (plus the initial and final states). A shorter final step lands exactly on
// t_end when dt does not divide it.
inline std::pair<SimState, MonitorSeries> integrate(const SpinField& initial, double t_end,
                                                    double dt, Integrator which,
                                                    int monitor_stride,
                                                    const LlgProblem& prob) {
    if (t_end < 0.0) throw std::invalid_argument("integrate: t_end must be >= 0");
    if (!(dt > 0.0)) throw std::invalid_argument("integrate: dt must be > 0");
    if (monitor_stride < 1) throw std::invalid_argument("integrate: monitor stride must be >= 1");
    if (max_unit_deviation(initial) > 1e-9)
        throw std::invalid_argument("integrate: initial field is not unit length");

    SimState s;
    s.m = initial;
    MonitorSeries mon;
    record_monitors(mon, s, prob);
    if (t_end == 0.0) return {s, mon};

    const double eps = 1e-12 * dt;
    long steps_since_monitor = 0;
    while (s.t_star < t_end - eps) {
        const double step_dt = std::min(dt, t_end - s.t_star);
        s = step(s, step_dt, prob, which);
        if (++steps_since_monitor == monitor_stride) {
            record_monitors(mon, s, prob);
            steps_since_monitor = 0;
        }
    }
    if (steps_since_monitor != 0) record_monitors(mon, s, prob);
    return {s, mon};
}

}  // namespace hexllg
