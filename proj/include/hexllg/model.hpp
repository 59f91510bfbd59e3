#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "hexllg/calculus.hpp"
#include "hexllg/coefficients.hpp"
#include "hexllg/field.hpp"
#include "hexllg/lattice.hpp"

// Discrete spin Hamiltonian on the honeycomb lattice and its effective fields:
// the variational field (negative derivative of the Hamiltonian per spin) and
// the equivalent difference-quotient form used by the dynamics, together with
// the quotient-form energy that the dynamics dissipates.

namespace hexllg {

struct MaterialParams {
    double J1 = 0.0, J2 = 0.0, J3 = 0.0;  // bilinear exchange per layer
    double K = 0.0;                       // biquadratic exchange (1st layer)
    double mu = 1.0;                      // Zeeman prefactor
    double alpha = 0.1;                   // damping
    double h_star = 1.0;                  // dimensionless lattice constant
    double gamma = 1.0;                   // gyromagnetic ratio, reporting only

    void validate() const {
        if (!(alpha > 0.0)) throw std::invalid_argument("params: alpha must be > 0");
        if (!(h_star > 0.0)) throw std::invalid_argument("params: h_star must be > 0");
    }
};

enum class FieldKind { Variational, PdeType };

// Per-node effective field with the term decomposition kept retrievable.
// Variational kind: parts = {B1 exchange, B2 biquadratic, B3 anisotropy, B4 Zeeman}.
// PDE kind: parts = {B1*, B2*, B3^(1) local, B3^(2) quotient, B4*}.
struct EffectiveField {
    FieldKind kind = FieldKind::Variational;
    std::vector<VectorField> parts;

    VectorField total() const {
        VectorField t(parts.at(0).size(), Vec3{});
        for (const VectorField& p : parts)
            for (size_t i = 0; i < t.size(); ++i) t[i] += p[i];
        return t;
    }
};

namespace detail {
inline void check_unit(const SpinField& m, double tol, const char* what) {
    const double dev = max_unit_deviation(m);
    if (dev > tol)
        throw std::invalid_argument(std::string(what) + ": spins deviate from unit length by " +
                                    std::to_string(dev));
}
}  // namespace detail

// Pair weight of the symmetric exchange anisotropy: L_k(x_i) + L_k(x_j). Using the
// unhalved sum keeps the anisotropy field below equal to the exact variational
// derivative of this Hamiltonian.
inline double pair_weight_L(const ModelSample& c, int k, int i, int j) {
    return c.L[k - 1][i] + c.L[k - 1][j];
}

// H = (h*/h)^2 (H_e + H_b) + H_a + H_z, double sums over ordered pairs with the
// 1/2 prefactor compensating the double count.
inline double hamiltonian(const HexLattice& lat, const SpinField& m, const MaterialParams& p,
                          const ModelSample& c, double unit_tol = 1e-5) {
    require_bound(lat, m.size(), "hamiltonian");
    detail::check_unit(m, unit_tol, "hamiltonian");
    const std::array<double, 3> J{p.J1, p.J2, p.J3};
    double he = 0.0, hb = 0.0, ha = 0.0, hz = 0.0;
    for (int x = 0; x < lat.node_count(); ++x) {
        for (int k = 1; k <= 3; ++k) {
            for (int j = 1; j <= kNeighborCount[k - 1]; ++j) {
                const int y = lat.neighbor(x, k, j);
                const double mm = dot(m[x], m[y]);
                he -= 0.5 * J[k - 1] * mm;
                if (k == 1) hb -= 0.5 * p.K * mm * mm;
                ha -= 0.5 * pair_weight_L(c, k, x, y) * m[x].z * m[y].z;
            }
        }
        ha -= c.lambda[x] * m[x].x * m[x].x;
        hz -= p.mu * dot(m[x], c.B[x]);
    }
    const double s = (p.h_star / lat.h()) * (p.h_star / lat.h());
    return s * (he + hb) + ha + hz;
}

inline EffectiveField effective_field_variational(const HexLattice& lat, const SpinField& m,
                                                  const MaterialParams& p, const ModelSample& c,
                                                  double unit_tol = 1e-5) {
    require_bound(lat, m.size(), "effective_field_variational");
    detail::check_unit(m, unit_tol, "effective_field_variational");
    const int n = lat.node_count();
    const std::array<double, 3> J{p.J1, p.J2, p.J3};
    const double hs2 = p.h_star * p.h_star;
    const double h2 = lat.h() * lat.h();

    EffectiveField f;
    f.kind = FieldKind::Variational;
    f.parts.assign(4, VectorField(n, Vec3{}));
    for (int x = 0; x < n; ++x) {
        Vec3 b1{}, b2{}, b3{};
        for (int k = 1; k <= 3; ++k) {
            for (int j = 1; j <= kNeighborCount[k - 1]; ++j) {
                const int y = lat.neighbor(x, k, j);
                b1 += (J[k - 1] / h2) * m[y];
                if (k == 1) b2 += (2.0 * p.K / h2) * dot(m[x], m[y]) * m[y];
                b3.z += pair_weight_L(c, k, x, y) * m[y].z;
            }
        }
        b3.x += 2.0 * c.lambda[x] * m[x].x;
        f.parts[0][x] = hs2 * b1;
        f.parts[1][x] = hs2 * b2;
        f.parts[2][x] = b3;
        f.parts[3][x] = p.mu * c.B[x];
    }
    return f;
}

inline EffectiveField effective_field_pde(const HexLattice& lat, const SpinField& m,
                                          const MaterialParams& p, const ModelSample& c,
                                          double unit_tol = 1e-5) {
    require_bound(lat, m.size(), "effective_field_pde");
    detail::check_unit(m, unit_tol, "effective_field_pde");
    const int n = lat.node_count();
    const std::array<double, 3> J{p.J1, p.J2, p.J3};
    const double inv_hs2 = 1.0 / (p.h_star * p.h_star);
    const double h2 = lat.h() * lat.h();

    EffectiveField f;
    f.kind = FieldKind::PdeType;
    f.parts.assign(5, VectorField(n, Vec3{}));

    std::array<VectorField, 3> lap;
    for (int k = 1; k <= 3; ++k) lap[k - 1] = laplacian(lat, m, k);

    // B1* = sum_k l_k J_k lap_k m
    for (int x = 0; x < n; ++x) {
        Vec3 b{};
        for (int k = 1; k <= 3; ++k) b += (kLaplaceNorm[k - 1] * J[k - 1]) * lap[k - 1][x];
        f.parts[0][x] = b;
    }

    // B2* = 2 l_1 K lap_1 m + 2K sum_j (m . D^{1,j}m) D^{1,j}m
    {
        std::array<VectorField, 3> d1;
        for (int j = 1; j <= 3; ++j) d1[j - 1] = diff(lat, m, 1, j);
        for (int x = 0; x < n; ++x) {
            Vec3 b = (2.0 * kLaplaceNorm[0] * p.K) * lap[0][x];
            for (int j = 0; j < 3; ++j) b += (2.0 * p.K) * dot(m[x], d1[j][x]) * d1[j][x];
            f.parts[1][x] = b;
        }
    }

    // B3^(1): local anisotropy part.
    for (int x = 0; x < n; ++x) {
        Vec3 b{};
        b.x = 2.0 * inv_hs2 * c.lambda[x] * m[x].x;
        double lz = 0.0;
        for (int k = 0; k < 3; ++k) lz += kNeighborCount[k] * c.L[k][x];
        b.z = 2.0 * inv_hs2 * lz * m[x].z;
        f.parts[2][x] = b;
    }

    // B3^(2): quotient part, (h^2/h*^2) sum_k l_k { L_k (lap_k m . ez) + (lap_k(L_k m) . ez) } ez.
    for (int k = 1; k <= 3; ++k) {
        VectorField lm(n);
        for (int x = 0; x < n; ++x) lm[x] = c.L[k - 1][x] * m[x];
        const VectorField lap_lm = laplacian(lat, lm, k);
        const double ck = h2 * inv_hs2 * kLaplaceNorm[k - 1];
        for (int x = 0; x < n; ++x)
            f.parts[3][x].z += ck * (c.L[k - 1][x] * lap[k - 1][x].z + lap_lm[x].z);
    }

    // B4* = (mu/h*^2) B
    for (int x = 0; x < n; ++x) f.parts[4][x] = (p.mu * inv_hs2) * c.B[x];
    return f;
}

// Quotient form of the energy whose decay the midpoint integrator tracks:
// d/dt H* = -(dm/dt, B*_eff)_h along trajectories.
inline double discrete_energy_star(const HexLattice& lat, const SpinField& m,
                                   const MaterialParams& p, const ModelSample& c,
                                   double unit_tol = 1e-5) {
    require_bound(lat, m.size(), "discrete_energy_star");
    detail::check_unit(m, unit_tol, "discrete_energy_star");
    const int n = lat.node_count();
    for (int x = 0; x < n; ++x) {
        if (c.lambda[x] < 0.0)
            throw std::invalid_argument("discrete_energy_star: lambda must be >= 0 on nodes");
        for (int k = 0; k < 3; ++k)
            if (c.L[k][x] < 0.0)
                throw std::invalid_argument("discrete_energy_star: L_k must be >= 0 on nodes");
    }

    const std::array<double, 3> J{p.J1, p.J2, p.J3};
    const double w = lat.cell_area();  // measure of the (., .)_h inner product
    const double inv_hs2 = 1.0 / (p.h_star * p.h_star);
    const double h2 = lat.h() * lat.h();

    double e = 0.0;
    for (int k = 1; k <= 3; ++k) {
        const double dk2 = kBondFactor[k - 1] * kBondFactor[k - 1];
        double grad_sq = 0.0;       // sum_j ||D^{k,j} m||^2   (unweighted by g_k)
        double grad_sq_lz = 0.0;    // sum_j ||L_k^(1/2) D^{k,j} m . ez||^2
        double cross_lz = 0.0;      // sum_j ((D^{k,j}L_k)(m.ez) ez, D^{k,j} m)_h
        double proj_sq = 0.0;       // sum_j ||m . D^{1,j} m||^2 (layer 1 only)
        for (int j = 1; j <= kNeighborCount[k - 1]; ++j) {
            const VectorField d = diff(lat, m, k, j);
            const ScalarField dl = diff(lat, c.L[k - 1], k, j);
            for (int x = 0; x < n; ++x) {
                grad_sq += norm_sq(d[x]);
                grad_sq_lz += c.L[k - 1][x] * d[x].z * d[x].z;
                cross_lz += dl[x] * m[x].z * d[x].z;
                if (k == 1) proj_sq += dot(m[x], d[x]) * dot(m[x], d[x]);
            }
        }
        e += J[k - 1] * (dk2 / 4.0) * w * grad_sq;
        if (k == 1) e += p.K * (dk2 / 2.0) * w * (grad_sq - proj_sq);
        e += h2 * inv_hs2 * (dk2 / 2.0) * w * grad_sq_lz;
        e += h2 * inv_hs2 * (dk2 / 2.0) * w * cross_lz;
        double mass_lz = 0.0;
        for (int x = 0; x < n; ++x) mass_lz += c.L[k - 1][x] * m[x].z * m[x].z;
        e -= inv_hs2 * kNeighborCount[k - 1] * w * mass_lz;
    }
    double mass_lambda = 0.0, zeeman = 0.0;
    for (int x = 0; x < n; ++x) {
        mass_lambda += c.lambda[x] * m[x].x * m[x].x;
        zeeman += dot(m[x], c.B[x]);
    }
    e -= inv_hs2 * w * mass_lambda;
    e -= p.mu * inv_hs2 * w * zeeman;
    return e;
}

// Right-hand side of the rescaled dynamics: dm/dt* = -m x B* - alpha m x (m x B*).
inline VectorField llg_rhs_from_field(const SpinField& m, const VectorField& beff, double alpha) {
    VectorField out(m.size());
    for (size_t i = 0; i < m.size(); ++i) {
        const Vec3 t = cross(m[i], beff[i]);
        out[i] = -t - alpha * cross(m[i], t);
    }
    return out;
}

inline VectorField llg_rhs(const HexLattice& lat, const SpinField& m, const MaterialParams& p,
                           const ModelSample& c, double unit_tol = 1e-5) {
    const EffectiveField f = effective_field_pde(lat, m, p, c, unit_tol);
    return llg_rhs_from_field(m, f.total(), p.alpha);
}

}  // namespace hexllg
