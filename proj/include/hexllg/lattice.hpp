#pragma once

#include <array>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <vector>

#include "hexllg/vec.hpp"

namespace hexllg {

inline constexpr double kSqrt3 = 1.7320508075688772935;

enum class Sublattice : int { A = 0, B = 1 };

// (cell1, cell2, sub) <-> flat index  sub*n1*n2 + cell2*n1 + cell1.
struct NodeId {
    int cell1 = 0;
    int cell2 = 0;
    Sublattice sub = Sublattice::A;
};

// Number of neighbors per layer, bond-length factors d_k (distance = d_k*h),
// Laplacian normalizers l_k and stacked-gradient scales g_k.
inline constexpr std::array<int, 3> kNeighborCount{3, 6, 3};
inline constexpr std::array<double, 3> kBondFactor{1.0, kSqrt3, 2.0};
inline constexpr std::array<double, 3> kLaplaceNorm{0.75, 4.5, 3.0};
inline const std::array<double, 3> kGradScale{std::sqrt(6.0) / 3.0, kSqrt3 / 3.0,
                                              std::sqrt(6.0) / 3.0};

// Fixed unit directions of the 2nd-neighbor bonds as seen from an A node.
inline constexpr std::array<Vec2, 6> kNu{{{-0.5, kSqrt3 / 2.0},
                                          {-1.0, 0.0},
                                          {-0.5, -kSqrt3 / 2.0},
                                          {0.5, -kSqrt3 / 2.0},
                                          {1.0, 0.0},
                                          {0.5, kSqrt3 / 2.0}}};

// Periodic honeycomb supercell: two triangular sublattices A (upright first-neighbor
// triangle, kappa=+1) and B (inverted triangle, kappa=-1), n1 x n2 primitive cells,
// bond length h. Neighbor tables cover the first three layers with the direction
// indexing the difference operators rely on:
//   k=1 from an A node: j=1 (0,h), j=2 (-s/2,-h/2), j=3 (s/2,-h/2)     [s = sqrt(3) h]
//   k=2 from an A node: j -> sqrt(3) h * nu^j
//   k=3 from an A node: j -> -2 * (k=1 offset j)
// B-node offsets are the negations at the same j, so following the same j twice
// returns to the start for k=1,3, and j* = ((j+2) mod 6)+1 reverses a k=2 bond.
class HexLattice {
public:
    HexLattice(int n1, int n2, double h) : n1_(n1), n2_(n2), h_(h) {
        if (n1 < 2) throw std::invalid_argument("HexLattice: n1 must be >= 2");
        if (n2 < 3) throw std::invalid_argument("HexLattice: n2 must be >= 3");
        if (!(h > 0.0)) throw std::invalid_argument("HexLattice: h must be > 0");
        build_tables();
    }

    int n1() const { return n1_; }
    int n2() const { return n2_; }
    double h() const { return h_; }
    int node_count() const { return 2 * n1_ * n2_; }

    Vec2 bravais1() const { return {kSqrt3 * h_, 0.0}; }
    Vec2 bravais2() const { return {kSqrt3 * h_ / 2.0, 1.5 * h_}; }
    Vec2 basis_offset() const { return {0.0, h_}; }
    // Supercell translations and the bounding rectangle spanned by them.
    Vec2 period1() const { return {n1_ * kSqrt3 * h_, 0.0}; }
    Vec2 period2() const { return {n2_ * kSqrt3 * h_ / 2.0, n2_ * 1.5 * h_}; }
    double rect_lx() const { return n1_ * kSqrt3 * h_; }
    double rect_ly() const { return n2_ * 1.5 * h_; }

    double cell_area() const { return 0.75 * kSqrt3 * h_ * h_; }
    double domain_area() const { return cell_area() * node_count(); }

    int flat_index(NodeId id) const {
        return static_cast<int>(id.sub) * n1_ * n2_ + id.cell2 * n1_ + id.cell1;
    }
    NodeId node(int flat) const {
        const int cells = n1_ * n2_;
        NodeId id;
        id.sub = flat < cells ? Sublattice::A : Sublattice::B;
        const int r = flat % cells;
        id.cell2 = r / n1_;
        id.cell1 = r % n1_;
        return id;
    }
    Sublattice sublattice(int flat) const {
        return flat < n1_ * n2_ ? Sublattice::A : Sublattice::B;
    }

    // +1 on the A sublattice, -1 on B; restores a common quotient direction
    // across the two staggered sublattices.
    int kappa(int flat) const { return flat < n1_ * n2_ ? 1 : -1; }

    Vec2 position(int flat) const { return positions_[flat]; }
    Vec2 position(NodeId id) const { return positions_[flat_index(id)]; }

    // Canonical (unwrapped) bond vector toward neighbor (k, j); k in 1..3, j 1-based.
    Vec2 neighbor_offset(Sublattice sub, int k, int j) const {
        check_kj(k, j);
        const double sign = sub == Sublattice::A ? 1.0 : -1.0;
        if (k == 2) return sign * kSqrt3 * h_ * kNu[j - 1];
        const Vec2 first = first_offset_a(j);
        return (k == 1 ? sign : -2.0 * sign) * first;
    }

    int neighbor(int flat, int k, int j) const {
        check_kj(k, j);
        return neighbor_table_[12 * flat + slot(k, j)];
    }

    // Reversal index for 2nd-layer bonds: neighbor(neighbor(x,2,j),2,jstar(j)) == x.
    static int jstar(int j) { return ((j + 2) % 6) + 1; }

    // Reduce a point into the fundamental parallelogram spanned by the periods.
    Vec2 wrap(Vec2 p) const {
        double f1, f2;
        fractional(p, f1, f2);
        f1 -= std::floor(f1);
        f2 -= std::floor(f2);
        return f1 * period1() + f2 * period2();
    }

    // Representative inside [0, rect_lx) x [0, rect_ly). (0, rect_ly) equals
    // n2*a2 - (n2/2)*a1, so the rectangle is a true period cell only for even
    // n2; callers that compare against rectangular grids must enforce that.
    Vec2 wrap_to_rect(Vec2 p) const {
        const double ly = rect_ly();
        const double lx = rect_lx();
        Vec2 q = p;
        q.y -= std::floor(q.y / ly) * ly;
        q.x -= std::floor(q.x / lx) * lx;
        if (q.x >= lx) q.x = 0.0;
        if (q.y >= ly) q.y = 0.0;
        return q;
    }

    void fractional(Vec2 p, double& f1, double& f2) const {
        // Inverse of p = f1*period1 + f2*period2.
        const Vec2 p1 = period1(), p2 = period2();
        const double det = p1.x * p2.y - p1.y * p2.x;
        f1 = (p.x * p2.y - p.y * p2.x) / det;
        f2 = (p1.x * p.y - p1.y * p.x) / det;
    }

private:
    static int slot(int k, int j) { return k == 1 ? (j - 1) : (k == 2 ? 3 + (j - 1) : 9 + (j - 1)); }

    static void check_kj(int k, int j) {
        if (k < 1 || k > 3) throw std::invalid_argument("neighbor layer k must be 1, 2 or 3");
        if (j < 1 || j > kNeighborCount[k - 1])
            throw std::invalid_argument("direction j out of range for layer " + std::to_string(k));
    }

    Vec2 first_offset_a(int j) const {
        switch (j) {
            case 1: return {0.0, h_};
            case 2: return {-kSqrt3 * h_ / 2.0, -h_ / 2.0};
            default: return {kSqrt3 * h_ / 2.0, -h_ / 2.0};
        }
    }

    static int wrap_cell(int c, int n) {
        int r = c % n;
        return r < 0 ? r + n : r;
    }

    void build_tables() {
        const int n = node_count();
        positions_.resize(n);
        for (int flat = 0; flat < n; ++flat) {
            const NodeId id = node(flat);
            Vec2 p = id.cell1 * bravais1() + id.cell2 * bravais2();
            if (id.sub == Sublattice::B) p += basis_offset();
            positions_[flat] = p;
        }

        neighbor_table_.assign(static_cast<size_t>(n) * 12, -1);
        for (int flat = 0; flat < n; ++flat) {
            const NodeId id = node(flat);
            for (int k = 1; k <= 3; ++k) {
                const Sublattice target_sub =
                    k == 2 ? id.sub
                           : (id.sub == Sublattice::A ? Sublattice::B : Sublattice::A);
                for (int j = 1; j <= kNeighborCount[k - 1]; ++j) {
                    const Vec2 target = positions_[flat] + neighbor_offset(id.sub, k, j);
                    neighbor_table_[12 * flat + slot(k, j)] = locate_node(target, target_sub);
                }
            }
        }
    }

    // Match a position against the lattice under periodic wrap.
    int locate_node(Vec2 p, Sublattice sub) const {
        if (sub == Sublattice::B) p -= basis_offset();
        const double c2r = p.y / (1.5 * h_);
        const double c1r = (p.x - c2r * kSqrt3 * h_ / 2.0) / (kSqrt3 * h_);
        const int c1 = static_cast<int>(std::lround(c1r));
        const int c2 = static_cast<int>(std::lround(c2r));
        if (std::abs(c1r - c1) > 1e-9 || std::abs(c2r - c2) > 1e-9)
            throw std::logic_error("HexLattice: offset does not land on a lattice node");
        return flat_index({wrap_cell(c1, n1_), wrap_cell(c2, n2_), sub});
    }

    int n1_, n2_;
    double h_;
    std::vector<Vec2> positions_;
    std::vector<int> neighbor_table_;
};

}  // namespace hexllg
