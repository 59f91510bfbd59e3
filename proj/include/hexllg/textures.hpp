#pragma once

#include <cmath>
#include <random>
#include <stdexcept>
#include <variant>

#include "hexllg/field.hpp"
#include "hexllg/grid.hpp"
#include "hexllg/lattice.hpp"

// Initial spin textures. The closed-form generators evaluate anywhere on the
// plane (so the same function seeds both the lattice and the continuum
// reference); random_smooth exists only as a lattice field.

namespace hexllg {

struct UniformTexture {
    Vec3 direction{0.0, 0.0, 1.0};
};

// Base direction ez rotated toward `axis` by angle amplitude*exp(-r^2/(2 width^2)).
struct GaussianTiltTexture {
    Vec2 center{};
    double width = 1.0;
    Vec3 axis{1.0, 0.0, 0.0};
    double amplitude = 1.0;  // radians at the bump center
};

// In-plane vortex with an out-of-plane core:
//   m = (sin th cos(q phi), sin th sin(q phi), p cos th),  th(r) = (pi/2) min(r/R, 1).
struct MeronLikeTexture {
    Vec2 center{};
    double radius = 1.0;
    int polarity = 1;    // core direction, +1 -> +ez
    int vorticity = 1;   // winding number q
    double phase = 0.0;  // phi_0
};

struct RandomSmoothTexture {
    unsigned long long seed = 1;
    int smoothing_passes = 4;
};

using InitialCondition =
    std::variant<UniformTexture, GaussianTiltTexture, MeronLikeTexture, RandomSmoothTexture>;

inline bool is_closed_form(const InitialCondition& ic) {
    return !std::holds_alternative<RandomSmoothTexture>(ic);
}

inline Vec3 eval_texture(const UniformTexture& t, Vec2) { return normalized(t.direction); }

inline Vec3 eval_texture(const GaussianTiltTexture& t, Vec2 p) {
    const Vec2 d = p - t.center;
    const double theta = t.amplitude * std::exp(-dot(d, d) / (2.0 * t.width * t.width));
    // Rotate ez toward the (normalized, ez-orthogonal part of the) tilt axis.
    Vec3 a = t.axis;
    a.z = 0.0;
    const double an = norm(a);
    if (!(an > 0.0))
        throw std::invalid_argument("gaussian_tilt: axis must have an in-plane component");
    a = a / an;
    return std::cos(theta) * ez + std::sin(theta) * a;
}

inline Vec3 eval_texture(const MeronLikeTexture& t, Vec2 p) {
    const Vec2 d = p - t.center;
    const double r = norm(d);
    const double theta = 0.5 * M_PI * std::min(r / t.radius, 1.0);
    const double phi = std::atan2(d.y, d.x);
    const double a = t.vorticity * phi + t.phase;
    return {std::sin(theta) * std::cos(a), std::sin(theta) * std::sin(a),
            t.polarity >= 0 ? std::cos(theta) : -std::cos(theta)};
}

inline Vec3 eval_closed_form(const InitialCondition& ic, Vec2 p) {
    if (const auto* u = std::get_if<UniformTexture>(&ic)) return eval_texture(*u, p);
    if (const auto* g = std::get_if<GaussianTiltTexture>(&ic)) return eval_texture(*g, p);
    if (const auto* m = std::get_if<MeronLikeTexture>(&ic)) return eval_texture(*m, p);
    throw std::invalid_argument("random_smooth texture has no closed form");
}

// Seeded random directions smoothed by repeated first-neighbor averaging,
// renormalized after each pass.
inline SpinField generate_random_smooth(const HexLattice& lat, const RandomSmoothTexture& t) {
    std::mt19937_64 rng(t.seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    SpinField m(lat.node_count());
    for (Vec3& v : m) {
        do {
            v = {gauss(rng), gauss(rng), gauss(rng)};
        } while (norm(v) < 1e-8);
        v = normalized(v);
    }
    for (int pass = 0; pass < t.smoothing_passes; ++pass) {
        SpinField next(m.size());
        for (int x = 0; x < lat.node_count(); ++x) {
            Vec3 acc = 3.0 * m[x];
            for (int j = 1; j <= 3; ++j) acc += m[lat.neighbor(x, 1, j)];
            next[x] = normalized(acc);
        }
        m = std::move(next);
    }
    return m;
}

// Unit-length initial field on the lattice; closed forms are sampled at the
// rectangle-chart node positions and renormalized.
inline SpinField sample_initial(const HexLattice& lat, const InitialCondition& ic) {
    if (const auto* r = std::get_if<RandomSmoothTexture>(&ic))
        return generate_random_smooth(lat, *r);
    SpinField m(lat.node_count());
    for (int x = 0; x < lat.node_count(); ++x)
        m[x] = normalized(eval_closed_form(ic, lat.wrap_to_rect(lat.position(x))));
    return m;
}

inline GridSpinField sample_initial_grid(int nx, int ny, double lx, double ly,
                                         const InitialCondition& ic) {
    GridSpinField g;
    g.nx = nx;
    g.ny = ny;
    g.lx = lx;
    g.ly = ly;
    g.values.resize(static_cast<size_t>(nx) * ny);
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i)
            g.at(i, j) = normalized(eval_closed_form(ic, {i * lx / nx, j * ly / ny}));
    return g;
}

}  // namespace hexllg
