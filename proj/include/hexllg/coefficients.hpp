#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "hexllg/field.hpp"
#include "hexllg/lattice.hpp"
#include "hexllg/vec.hpp"

// Spatial coefficient fields lambda(x), L_k(x) and B(x): constant, gaussian
// bump, or tabulated-grid (bilinear, periodic over the rectangle chart).

namespace hexllg {

enum class CoefficientKind { Constant, Gaussian, Grid };

namespace detail {
inline double bilinear_periodic(const std::vector<double>& v, int nx, int ny, double sx,
                                double sy) {
    const int i0 = static_cast<int>(std::floor(sx));
    const int j0 = static_cast<int>(std::floor(sy));
    const double fx = sx - i0;
    const double fy = sy - j0;
    auto at = [&](int i, int j) {
        i = ((i % nx) + nx) % nx;
        j = ((j % ny) + ny) % ny;
        return v[static_cast<size_t>(j) * nx + i];
    };
    return (1 - fx) * (1 - fy) * at(i0, j0) + fx * (1 - fy) * at(i0 + 1, j0) +
           (1 - fx) * fy * at(i0, j0 + 1) + fx * fy * at(i0 + 1, j0 + 1);
}
}  // namespace detail

struct ScalarCoefficient {
    CoefficientKind kind = CoefficientKind::Constant;
    double value = 0.0;  // constant
    // gaussian: baseline + amplitude * exp(-|x-center|^2 / (2 width^2))
    double baseline = 0.0;
    double amplitude = 0.0;
    double width = 1.0;
    Vec2 center{};
    // grid: row-major values[j*nx + i] over [0,lx) x [0,ly)
    int nx = 0, ny = 0;
    std::vector<double> values;

    static ScalarCoefficient constant(double v) {
        ScalarCoefficient c;
        c.value = v;
        return c;
    }
    static ScalarCoefficient gaussian(double baseline, double amplitude, Vec2 center,
                                      double width) {
        ScalarCoefficient c;
        c.kind = CoefficientKind::Gaussian;
        c.baseline = baseline;
        c.amplitude = amplitude;
        c.center = center;
        c.width = width;
        return c;
    }

    double eval(Vec2 p, double lx, double ly) const {
        switch (kind) {
            case CoefficientKind::Constant:
                return value;
            case CoefficientKind::Gaussian: {
                const Vec2 d = p - center;
                return baseline + amplitude * std::exp(-dot(d, d) / (2.0 * width * width));
            }
            case CoefficientKind::Grid: {
                if (nx < 1 || ny < 1 || values.size() != static_cast<size_t>(nx) * ny)
                    throw std::invalid_argument("grid coefficient: bad table dimensions");
                return detail::bilinear_periodic(values, nx, ny, p.x / lx * nx, p.y / ly * ny);
            }
        }
        return 0.0;
    }
};

struct VectorCoefficient {
    CoefficientKind kind = CoefficientKind::Constant;
    Vec3 value{};  // constant
    Vec3 baseline{};
    Vec3 axis{0.0, 0.0, 1.0};
    double amplitude = 0.0;
    double width = 1.0;
    Vec2 center{};
    int nx = 0, ny = 0;
    std::vector<double> vx, vy, vz;  // grid tables per component

    static VectorCoefficient constant(Vec3 v) {
        VectorCoefficient c;
        c.value = v;
        return c;
    }

    Vec3 eval(Vec2 p, double lx, double ly) const {
        switch (kind) {
            case CoefficientKind::Constant:
                return value;
            case CoefficientKind::Gaussian: {
                const Vec2 d = p - center;
                return baseline +
                       (amplitude * std::exp(-dot(d, d) / (2.0 * width * width))) * axis;
            }
            case CoefficientKind::Grid: {
                const size_t n = static_cast<size_t>(nx) * ny;
                if (nx < 1 || ny < 1 || vx.size() != n || vy.size() != n || vz.size() != n)
                    throw std::invalid_argument("grid coefficient: bad table dimensions");
                const double sx = p.x / lx * nx, sy = p.y / ly * ny;
                return {detail::bilinear_periodic(vx, nx, ny, sx, sy),
                        detail::bilinear_periodic(vy, nx, ny, sx, sy),
                        detail::bilinear_periodic(vz, nx, ny, sx, sy)};
            }
        }
        return {};
    }
};

struct CoefficientSet {
    ScalarCoefficient lambda;
    std::array<ScalarCoefficient, 3> L;
    VectorCoefficient B;
};

// Coefficients sampled at the node positions (rectangle-chart representatives,
// matching how textures and the continuum reference sample space).
struct ModelSample {
    ScalarField lambda;
    std::array<ScalarField, 3> L;
    VectorField B;
};

inline ModelSample sample_coefficients(const HexLattice& lat, const CoefficientSet& c) {
    const int n = lat.node_count();
    const double lx = lat.rect_lx(), ly = lat.rect_ly();
    ModelSample s;
    s.lambda.resize(n);
    for (auto& f : s.L) f.resize(n);
    s.B.resize(n);
    for (int i = 0; i < n; ++i) {
        const Vec2 p = lat.wrap_to_rect(lat.position(i));
        s.lambda[i] = c.lambda.eval(p, lx, ly);
        for (int k = 0; k < 3; ++k) s.L[k][i] = c.L[k].eval(p, lx, ly);
        s.B[i] = c.B.eval(p, lx, ly);
    }
    return s;
}

}  // namespace hexllg
