#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "hexllg/calculus.hpp"
#include "hexllg/field.hpp"
#include "hexllg/grid.hpp"
#include "hexllg/lattice.hpp"

// Interpolation of lattice fields to functions on the periodic plane. Each
// node owns a trapezoid cell of area (3 sqrt(3)/4) h^2: for an A node the cell
// with vertices {x, x^{1,3}, x^{2,6}, x^{1,1}} extending to the upper right,
// for a B node the point-reflected cell to the lower left. The step view q_h
// is constant per cell; the linear view p_h interpolates along the two slanted
// edges and then along the vertical chord through the query point, which makes
// it continuous across cells and bilinear in the chord coordinates (y1, y2).

namespace hexllg {

struct CellLocation {
    int node = -1;  // flat index of the owning node
    Vec2 rel{};     // query point minus the node position (unwrapped)
};

class CellDecomposition {
public:
    explicit CellDecomposition(const HexLattice& lat) : lat_(&lat) {}

    const HexLattice& lattice() const { return *lat_; }

    // Maps any point of the plane to the node whose closed trapezoid contains
    // its periodic representative. Boundary points resolve to the smallest
    // flat index among the touching cells.
    CellLocation locate(Vec2 p) const {
        const HexLattice& lat = *lat_;
        double f1, f2;
        lat.fractional(p, f1, f2);
        f1 -= std::floor(f1);
        f2 -= std::floor(f2);
        const Vec2 q = f1 * lat.period1() + f2 * lat.period2();
        const int bc1 = static_cast<int>(std::floor(f1 * lat.n1()));
        const int bc2 = static_cast<int>(std::floor(f2 * lat.n2()));

        CellLocation best;
        for (int sub = 0; sub < 2; ++sub) {
            for (int dc2 = -2; dc2 <= 2; ++dc2) {
                for (int dc1 = -2; dc1 <= 2; ++dc1) {
                    const int c1 = bc1 + dc1, c2 = bc2 + dc2;
                    Vec2 pos = c1 * lat.bravais1() + c2 * lat.bravais2();
                    if (sub == 1) pos += lat.basis_offset();
                    const Vec2 rel = q - pos;
                    if (!cell_contains(sub == 1, rel)) continue;
                    const int flat = lat.flat_index({wrap_cell(c1, lat.n1()),
                                                     wrap_cell(c2, lat.n2()),
                                                     sub == 0 ? Sublattice::A : Sublattice::B});
                    if (best.node < 0 || flat < best.node) best = {flat, rel};
                }
            }
        }
        if (best.node < 0) throw std::logic_error("CellDecomposition: point not covered");
        return best;
    }

    // Cell vertices {x, x^{1,3}, x^{2,6}, x^{1,1}}, unwrapped around the node.
    std::array<Vec2, 4> cell_vertices(int flat) const {
        const HexLattice& lat = *lat_;
        const Sublattice s = lat.sublattice(flat);
        const Vec2 p = lat.position(flat);
        return {p, p + lat.neighbor_offset(s, 1, 3), p + lat.neighbor_offset(s, 2, 6),
                p + lat.neighbor_offset(s, 1, 1)};
    }

private:
    bool cell_contains(bool sub_b, Vec2 rel) const {
        const double h = lat_->h();
        const Vec2 q = sub_b ? Vec2{-rel.x, -rel.y} : rel;
        const double tol = 1e-12 * h;
        if (q.x < -tol || q.x > kSqrt3 * h / 2.0 + tol) return false;
        const double lower = -q.x / kSqrt3;
        const double upper = h + q.x / kSqrt3;
        return q.y >= lower - tol && q.y <= upper + tol;
    }

    static int wrap_cell(int c, int n) {
        int r = c % n;
        return r < 0 ? r + n : r;
    }

    const HexLattice* lat_;
};

enum class InterpKind { Step, Linear };

template <class T>
class InterpolantView {
public:
    InterpolantView(const HexLattice& lat, std::vector<T> source, InterpKind kind)
        : lat_(&lat), cells_(lat), source_(std::move(source)), kind_(kind) {
        require_bound(lat, source_.size(), "InterpolantView");
    }

    const HexLattice& lattice() const { return *lat_; }
    InterpKind kind() const { return kind_; }
    const std::vector<T>& source() const { return source_; }
    const CellDecomposition& cells() const { return cells_; }

    T operator()(Vec2 p) const {
        const CellLocation loc = cells_.locate(p);
        if (kind_ == InterpKind::Step) return source_[loc.node];
        return eval_linear(loc);
    }

private:
    T eval_linear(const CellLocation& loc) const {
        const HexLattice& lat = *lat_;
        const double h = lat.h();
        const bool sub_b = lat.sublattice(loc.node) == Sublattice::B;
        const Vec2 q = sub_b ? Vec2{-loc.rel.x, -loc.rel.y} : loc.rel;
        // Chord coordinates: y1 along the slanted edge toward x^{1,3}, y2 the
        // distance from that edge along the vertical chord of length y1 + h.
        const double y1 = 2.0 / kSqrt3 * q.x;
        const double y2 = q.x / kSqrt3 + q.y;
        const T ua = source_[loc.node];
        const T ub = source_[lat.neighbor(loc.node, 1, 3)];
        const T uc = source_[lat.neighbor(loc.node, 2, 6)];
        const T ud = source_[lat.neighbor(loc.node, 1, 1)];
        return ua + (y1 / h) * (ub - ua) + (y2 / (y1 + h)) * (ud - ua) +
               (y1 * y2 / (h * (y1 + h))) * (ua - ub - ud + uc);
    }

    const HexLattice* lat_;
    CellDecomposition cells_;
    std::vector<T> source_;
    InterpKind kind_;
};

template <class T>
InterpolantView<T> q_interp(const HexLattice& lat, const std::vector<T>& u) {
    return InterpolantView<T>(lat, u, InterpKind::Step);
}

template <class T>
InterpolantView<T> p_interp(const HexLattice& lat, const std::vector<T>& u) {
    return InterpolantView<T>(lat, u, InterpKind::Linear);
}

namespace quadrature {

// Degree-5 rule on a triangle (7 points); each trapezoid cell splits into two
// triangles, on which the linear interpolant is a polynomial of degree <= 2,
// so products of two same-lattice views integrate exactly.
struct TriPoint {
    double l1, l2, l3, w;
};

inline const std::array<TriPoint, 7>& tri7() {
    static const std::array<TriPoint, 7> pts = [] {
        std::array<TriPoint, 7> p{};
        const double s15 = std::sqrt(15.0);
        const double a1 = (6.0 + s15) / 21.0, w1 = (155.0 + s15) / 1200.0;
        const double a2 = (6.0 - s15) / 21.0, w2 = (155.0 - s15) / 1200.0;
        p[0] = {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0, 9.0 / 40.0};
        p[1] = {a1, a1, 1.0 - 2.0 * a1, w1};
        p[2] = {a1, 1.0 - 2.0 * a1, a1, w1};
        p[3] = {1.0 - 2.0 * a1, a1, a1, w1};
        p[4] = {a2, a2, 1.0 - 2.0 * a2, w2};
        p[5] = {a2, 1.0 - 2.0 * a2, a2, w2};
        p[6] = {1.0 - 2.0 * a2, a2, a2, w2};
        return p;
    }();
    return pts;
}

template <class F>
double integrate_triangle(Vec2 a, Vec2 b, Vec2 c, F&& f) {
    const double area =
        0.5 * std::abs((b.x - a.x) * (c.y - a.y) - (c.x - a.x) * (b.y - a.y));
    double acc = 0.0;
    for (const TriPoint& p : tri7()) {
        const Vec2 x = p.l1 * a + p.l2 * b + p.l3 * c;
        acc += p.w * f(x);
    }
    return acc * area;  // weights sum to 1
}

// Integral of f over the whole periodic domain, cell by cell.
template <class F>
double integrate_cells(const HexLattice& lat, F&& f) {
    const CellDecomposition cells(lat);
    double acc = 0.0;
    for (int x = 0; x < lat.node_count(); ++x) {
        const std::array<Vec2, 4> v = cells.cell_vertices(x);
        acc += integrate_triangle(v[0], v[1], v[2], f);
        acc += integrate_triangle(v[0], v[2], v[3], f);
    }
    return acc;
}

}  // namespace quadrature

namespace detail {
template <class T>
const HexLattice& finer_lattice(const InterpolantView<T>& a, const InterpolantView<T>& b) {
    const Vec2 pa1 = a.lattice().period1(), pb1 = b.lattice().period1();
    const Vec2 pa2 = a.lattice().period2(), pb2 = b.lattice().period2();
    const double scale = norm(pa1) + norm(pa2);
    if (norm(pa1 - pb1) > 1e-9 * scale || norm(pa2 - pb2) > 1e-9 * scale)
        throw std::invalid_argument("l2_distance: views cover different periodic domains");
    return b.lattice().h() < a.lattice().h() ? b.lattice() : a.lattice();
}
}  // namespace detail

// L2 distance between two views over the same periodic domain, by quadrature
// over the cells of the finer of the two lattices.
template <class T>
double l2_distance(const InterpolantView<T>& a, const InterpolantView<T>& b) {
    const HexLattice& fine = detail::finer_lattice(a, b);
    const double sq = quadrature::integrate_cells(fine, [&](Vec2 x) {
        const T d = a(x) - b(x);
        return value_dot(d, d);
    });
    return std::sqrt(std::max(0.0, sq));
}

template <class T>
double l2_norm(const InterpolantView<T>& a) {
    const double sq = quadrature::integrate_cells(a.lattice(), [&](Vec2 x) {
        const T v = a(x);
        return value_dot(v, v);
    });
    return std::sqrt(std::max(0.0, sq));
}

// Evaluate a view at the sites of a regular nx x ny grid spanning the
// periodic rectangle.
template <class T>
GridField<T> sample_to_grid(const InterpolantView<T>& view, int nx, int ny) {
    if (nx < 2 || ny < 2) throw std::invalid_argument("sample_to_grid: nx, ny must be >= 2");
    GridField<T> g;
    g.nx = nx;
    g.ny = ny;
    g.lx = view.lattice().rect_lx();
    g.ly = view.lattice().rect_ly();
    g.values.resize(static_cast<size_t>(nx) * ny);
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i)
            g.at(i, j) = view({i * g.lx / nx, j * g.ly / ny});
    return g;
}

}  // namespace hexllg
