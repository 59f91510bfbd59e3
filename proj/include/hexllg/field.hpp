#pragma once

#include <stdexcept>
#include <vector>

#include "hexllg/lattice.hpp"
#include "hexllg/vec.hpp"

namespace hexllg {

// One value per lattice node, flat-index order.
using ScalarField = std::vector<double>;
using VectorField = std::vector<Vec3>;
using SpinField = VectorField;  // unit 3-vector per node

inline void require_bound(const HexLattice& lat, size_t n, const char* what) {
    if (n != static_cast<size_t>(lat.node_count()))
        throw std::invalid_argument(std::string(what) + ": field length does not match lattice");
}

// All N_k one-step quotients of a field toward layer k, premultiplied bookkeeping
// for the scaled gradient: |grad_k u|^2 = scale^2 * sum_j |components[j]|^2.
template <class T>
struct StackedGradient {
    int layer = 1;
    double scale = 1.0;  // g_k
    std::vector<std::vector<T>> components;
};

inline double max_unit_deviation(const SpinField& m) {
    double dev = 0.0;
    for (const Vec3& v : m) dev = std::max(dev, std::abs(norm(v) - 1.0));
    return dev;
}

inline void normalize_spins(SpinField& m) {
    for (Vec3& v : m) v = normalized(v);
}

}  // namespace hexllg
