#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "hexllg/field.hpp"
#include "hexllg/lattice.hpp"

// Difference calculus on the periodic honeycomb lattice: one-step quotients
// toward each neighbor, backward quotients, layer Laplacians, kappa-signed
// multi-step quotients along x and y, the auxiliary quotients connecting the
// two, and the weighted inner product / norms. All operators act on scalar
// fields and lift componentwise to 3-vector fields.

namespace hexllg {

namespace detail {
inline void check_layer(int k) {
    if (k < 1 || k > 3) throw std::invalid_argument("layer k must be 1, 2 or 3");
}
inline void check_dir(int k, int j) {
    check_layer(k);
    if (j < 1 || j > kNeighborCount[k - 1])
        throw std::invalid_argument("direction j out of range for layer");
}
inline void check_multistep_layer(int k) {
    if (k != 1 && k != 3)
        throw std::invalid_argument("multi-step quotients are defined for layers 1 and 3 only");
}
}  // namespace detail

// (u(x^{k,j}) - u(x)) / (d_k h)
template <class T>
std::vector<T> diff(const HexLattice& lat, const std::vector<T>& u, int k, int j) {
    detail::check_dir(k, j);
    require_bound(lat, u.size(), "diff");
    const double inv = 1.0 / (kBondFactor[k - 1] * lat.h());
    std::vector<T> out(u.size());
    for (int x = 0; x < lat.node_count(); ++x)
        out[x] = inv * (u[lat.neighbor(x, k, j)] - u[x]);
    return out;
}

// -D^{k,j} for k=1,3; -D^{2,j*} for k=2 with j* the reversal index.
template <class T>
std::vector<T> diff_backward(const HexLattice& lat, const std::vector<T>& u, int k, int j) {
    detail::check_dir(k, j);
    std::vector<T> out = k == 2 ? diff(lat, u, 2, HexLattice::jstar(j)) : diff(lat, u, k, j);
    for (T& v : out) v = -1.0 * v;
    return out;
}

// sum_j (u(x^{k,j}) - u(x)) / (l_k h^2)
template <class T>
std::vector<T> laplacian(const HexLattice& lat, const std::vector<T>& u, int k) {
    detail::check_layer(k);
    require_bound(lat, u.size(), "laplacian");
    const double inv = 1.0 / (kLaplaceNorm[k - 1] * lat.h() * lat.h());
    std::vector<T> out(u.size());
    for (int x = 0; x < lat.node_count(); ++x) {
        T acc = u[lat.neighbor(x, k, 1)] - u[x];
        for (int j = 2; j <= kNeighborCount[k - 1]; ++j)
            acc += u[lat.neighbor(x, k, j)] - u[x];
        out[x] = inv * acc;
    }
    return out;
}

// Two-step quotient along x: (sqrt(3)/3) kappa (D^{k,3} - D^{k,2}), k = 1 or 3.
template <class T>
std::vector<T> dx_multi(const HexLattice& lat, const std::vector<T>& u, int k) {
    detail::check_multistep_layer(k);
    require_bound(lat, u.size(), "dx_multi");
    const double inv = 1.0 / (kBondFactor[k - 1] * lat.h());
    std::vector<T> out(u.size());
    for (int x = 0; x < lat.node_count(); ++x) {
        const T d3 = u[lat.neighbor(x, k, 3)] - u[x];
        const T d2 = u[lat.neighbor(x, k, 2)] - u[x];
        out[x] = (kSqrt3 / 3.0 * lat.kappa(x) * inv) * (d3 - d2);
    }
    return out;
}

// Three-step quotient along y: (1/3) kappa (2 D^{k,1} - D^{k,2} - D^{k,3}), k = 1 or 3.
template <class T>
std::vector<T> dy_multi(const HexLattice& lat, const std::vector<T>& u, int k) {
    detail::check_multistep_layer(k);
    require_bound(lat, u.size(), "dy_multi");
    const double inv = 1.0 / (kBondFactor[k - 1] * lat.h());
    std::vector<T> out(u.size());
    for (int x = 0; x < lat.node_count(); ++x) {
        const T d1 = u[lat.neighbor(x, k, 1)] - u[x];
        const T d2 = u[lat.neighbor(x, k, 2)] - u[x];
        const T d3 = u[lat.neighbor(x, k, 3)] - u[x];
        out[x] = (lat.kappa(x) * inv / 3.0) * (2.0 * d1 - d2 - d3);
    }
    return out;
}

// Auxiliary quotients (k = 1 or 3, r = 0 or 1):
//   on A nodes  (2/3)^r D^{k,1},  on B nodes (1/3)^r (D^{k,2} + D^{k,3});
// the backward variant swaps the two branches and negates.
template <class T>
std::vector<T> aux_diff(const HexLattice& lat, const std::vector<T>& u, int k, int r) {
    detail::check_multistep_layer(k);
    if (r != 0 && r != 1) throw std::invalid_argument("aux_diff: r must be 0 or 1");
    require_bound(lat, u.size(), "aux_diff");
    const double inv = 1.0 / (kBondFactor[k - 1] * lat.h());
    const double ca = r == 0 ? 1.0 : 2.0 / 3.0;
    const double cb = r == 0 ? 1.0 : 1.0 / 3.0;
    std::vector<T> out(u.size());
    for (int x = 0; x < lat.node_count(); ++x) {
        if (lat.kappa(x) > 0) {
            out[x] = (ca * inv) * (u[lat.neighbor(x, k, 1)] - u[x]);
        } else {
            const T d2 = u[lat.neighbor(x, k, 2)] - u[x];
            const T d3 = u[lat.neighbor(x, k, 3)] - u[x];
            out[x] = (cb * inv) * (d2 + d3);
        }
    }
    return out;
}

template <class T>
std::vector<T> aux_diff_backward(const HexLattice& lat, const std::vector<T>& u, int k, int r) {
    detail::check_multistep_layer(k);
    if (r != 0 && r != 1) throw std::invalid_argument("aux_diff_backward: r must be 0 or 1");
    require_bound(lat, u.size(), "aux_diff_backward");
    const double inv = 1.0 / (kBondFactor[k - 1] * lat.h());
    const double ca = r == 0 ? 1.0 : 2.0 / 3.0;
    const double cb = r == 0 ? 1.0 : 1.0 / 3.0;
    std::vector<T> out(u.size());
    for (int x = 0; x < lat.node_count(); ++x) {
        if (lat.kappa(x) > 0) {
            const T d2 = u[lat.neighbor(x, k, 2)] - u[x];
            const T d3 = u[lat.neighbor(x, k, 3)] - u[x];
            out[x] = (-cb * inv) * (d2 + d3);
        } else {
            out[x] = (-ca * inv) * (u[lat.neighbor(x, k, 1)] - u[x]);
        }
    }
    return out;
}

template <class T>
StackedGradient<T> stacked_gradient(const HexLattice& lat, const std::vector<T>& u, int k) {
    detail::check_layer(k);
    StackedGradient<T> g;
    g.layer = k;
    g.scale = kGradScale[k - 1];
    g.components.reserve(kNeighborCount[k - 1]);
    for (int j = 1; j <= kNeighborCount[k - 1]; ++j) g.components.push_back(diff(lat, u, k, j));
    return g;
}

// (u, v)_h = (3 sqrt(3)/4) h^2 sum_x u(x).v(x); flat-index summation order is the
// determinism contract for every norm built on top.
template <class T>
double inner_product(const HexLattice& lat, const std::vector<T>& u, const std::vector<T>& v) {
    require_bound(lat, u.size(), "inner_product");
    if (u.size() != v.size())
        throw std::invalid_argument("inner_product: field lengths differ");
    double acc = 0.0;
    for (size_t i = 0; i < u.size(); ++i) acc += value_dot(u[i], v[i]);
    return lat.cell_area() * acc;
}

template <class T>
double norm_l2h_sq(const HexLattice& lat, const std::vector<T>& u) {
    return inner_product(lat, u, u);
}

template <class T>
double norm_l2h(const HexLattice& lat, const std::vector<T>& u) {
    return std::sqrt(norm_l2h_sq(lat, u));
}

// |grad_k u|^2 in L^2_h: g_k^2 sum_j ||D^{k,j} u||^2.
template <class T>
double grad_norm_sq(const HexLattice& lat, const std::vector<T>& u, int k) {
    detail::check_layer(k);
    const double gk = kGradScale[k - 1];
    double acc = 0.0;
    for (int j = 1; j <= kNeighborCount[k - 1]; ++j) {
        const std::vector<T> d = diff(lat, u, k, j);
        acc += norm_l2h_sq(lat, d);
    }
    return gk * gk * acc;
}

template <class T>
double norm_h1h(const HexLattice& lat, const std::vector<T>& u) {
    return std::sqrt(norm_l2h_sq(lat, u) + grad_norm_sq(lat, u, 1));
}

}  // namespace hexllg
