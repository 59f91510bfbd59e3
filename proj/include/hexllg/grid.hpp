#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "hexllg/vec.hpp"

namespace hexllg {

// Values on a periodic rectangular grid over [0,lx) x [0,ly); row-major
// values[j*nx + i] holds the value at (i*lx/nx, j*ly/ny).
template <class T>
struct GridField {
    int nx = 0, ny = 0;
    double lx = 0.0, ly = 0.0;
    std::vector<T> values;

    double dx() const { return lx / nx; }
    double dy() const { return ly / ny; }
    T& at(int i, int j) { return values[static_cast<size_t>(j) * nx + i]; }
    const T& at(int i, int j) const { return values[static_cast<size_t>(j) * nx + i]; }
    const T& at_wrapped(int i, int j) const {
        i = ((i % nx) + nx) % nx;
        j = ((j % ny) + ny) % ny;
        return values[static_cast<size_t>(j) * nx + i];
    }
};

using GridSpinField = GridField<Vec3>;

template <class T>
double grid_l2_distance(const GridField<T>& a, const GridField<T>& b) {
    if (a.nx != b.nx || a.ny != b.ny) throw std::invalid_argument("grid_l2_distance: shape mismatch");
    if (std::abs(a.lx - b.lx) > 1e-9 * (1.0 + std::abs(a.lx)) ||
        std::abs(a.ly - b.ly) > 1e-9 * (1.0 + std::abs(a.ly)))
        throw std::invalid_argument("grid_l2_distance: domain extents differ");
    double acc = 0.0;
    for (size_t i = 0; i < a.values.size(); ++i) {
        const T d = a.values[i] - b.values[i];
        acc += value_dot(d, d);
    }
    return std::sqrt(acc * a.dx() * a.dy());
}

template <class T>
double grid_max_distance(const GridField<T>& a, const GridField<T>& b) {
    if (a.values.size() != b.values.size())
        throw std::invalid_argument("grid_max_distance: shape mismatch");
    double m = 0.0;
    for (size_t i = 0; i < a.values.size(); ++i) {
        const T d = a.values[i] - b.values[i];
        m = std::max(m, std::sqrt(value_dot(d, d)));
    }
    return m;
}

}  // namespace hexllg
