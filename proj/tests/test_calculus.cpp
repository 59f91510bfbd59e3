#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "hexllg/calculus.hpp"
#include "hexllg/lattice.hpp"

using namespace hexllg;

namespace {

ScalarField random_field(const HexLattice& lat, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    ScalarField u(lat.node_count());
    for (double& v : u) v = uni(rng);
    return u;
}

// Field sampled from a function of the (unwrapped) node position.
template <class F>
ScalarField sample(const HexLattice& lat, F&& f) {
    ScalarField u(lat.node_count());
    for (int x = 0; x < lat.node_count(); ++x) u[x] = f(lat.position(x));
    return u;
}

// Nodes whose stencils do not cross the periodic wrap, so fields sampled from
// non-periodic functions behave as if the lattice were infinite there.
bool interior(const HexLattice& lat, int x, int margin = 2) {
    const NodeId id = lat.node(x);
    return id.cell1 >= margin && id.cell1 < lat.n1() - margin && id.cell2 >= margin &&
           id.cell2 < lat.n2() - margin;
}

double max_abs(const ScalarField& u) {
    double m = 0.0;
    for (double v : u) m = std::max(m, std::abs(v));
    return m;
}

}  // namespace

TEST_CASE("one-step quotient: constants, linear fields, defining formula") {
    HexLattice lat(6, 6, 1.0);

    const ScalarField c(lat.node_count(), 3.25);
    for (int k = 1; k <= 3; ++k)
        for (int j = 1; j <= kNeighborCount[k - 1]; ++j)
            REQUIRE(max_abs(diff(lat, c, k, j)) == 0.0);

    // u(x,y) = y, layer 1 direction 1: +1 at A nodes (bond up), -1 at B nodes.
    const ScalarField uy = sample(lat, [](Vec2 p) { return p.y; });
    const ScalarField d = diff(lat, uy, 1, 1);
    for (int x = 0; x < lat.node_count(); ++x) {
        if (!interior(lat, x)) continue;
        REQUIRE(d[x] == Catch::Approx(lat.kappa(x) == 1 ? 1.0 : -1.0).margin(1e-12));
    }

    // Direct evaluation of the defining quotient from positions.
    const ScalarField u = random_field(lat, 7);
    for (int k = 1; k <= 3; ++k) {
        for (int j = 1; j <= kNeighborCount[k - 1]; ++j) {
            const ScalarField dk = diff(lat, u, k, j);
            for (int x = 0; x < lat.node_count(); ++x) {
                const double expect =
                    (u[lat.neighbor(x, k, j)] - u[x]) / (kBondFactor[k - 1] * lat.h());
                REQUIRE(dk[x] == Catch::Approx(expect).margin(0.0));
            }
        }
    }
}

TEST_CASE("backward quotient: negation for layers 1,3 and the exchange identity") {
    HexLattice lat(4, 4, 0.8);
    const ScalarField u = random_field(lat, 11);

    for (int k : {1, 3}) {
        for (int j = 1; j <= 3; ++j) {
            const ScalarField f = diff(lat, u, k, j);
            const ScalarField b = diff_backward(lat, u, k, j);
            for (int x = 0; x < lat.node_count(); ++x)
                REQUIRE(b[x] == Catch::Approx(-f[x]).margin(0.0));
        }
    }

    // D^{k,j} u(x) = D_B^{k,j} u(x^{k,j}) for every layer.
    for (int k = 1; k <= 3; ++k) {
        for (int j = 1; j <= kNeighborCount[k - 1]; ++j) {
            const ScalarField f = diff(lat, u, k, j);
            const ScalarField b = diff_backward(lat, u, k, j);
            for (int x = 0; x < lat.node_count(); ++x)
                REQUIRE(f[x] == Catch::Approx(b[lat.neighbor(x, k, j)]).margin(1e-15));
        }
    }

    const ScalarField c(lat.node_count(), -2.0);
    for (int k = 1; k <= 3; ++k)
        for (int j = 1; j <= kNeighborCount[k - 1]; ++j)
            REQUIRE(max_abs(diff_backward(lat, c, k, j)) == 0.0);
}

TEST_CASE("layer Laplacians are exact on quadratics and vanish on affine fields") {
    HexLattice lat(8, 8, 0.5);
    const ScalarField q = sample(lat, [](Vec2 p) { return p.x * p.x + p.y * p.y; });
    const ScalarField a = sample(lat, [](Vec2 p) { return 0.3 * p.x - 1.7 * p.y + 0.4; });
    for (int k = 1; k <= 3; ++k) {
        const ScalarField lq = laplacian(lat, q, k);
        const ScalarField la = laplacian(lat, a, k);
        for (int x = 0; x < lat.node_count(); ++x) {
            if (!interior(lat, x)) continue;
            REQUIRE(lq[x] == Catch::Approx(4.0).margin(1e-10));
            REQUIRE(la[x] == Catch::Approx(0.0).margin(1e-10));
        }
    }
}

TEST_CASE("Green's formula and the alternative Laplacian form hold pointwise") {
    HexLattice lat(5, 5, 1.1);
    const ScalarField u = random_field(lat, 23);
    for (int k = 1; k <= 3; ++k) {
        const ScalarField lap = laplacian(lat, u, k);
        const double dk = kBondFactor[k - 1], lk = kLaplaceNorm[k - 1];

        ScalarField green(lat.node_count(), 0.0);
        for (int j = 1; j <= kNeighborCount[k - 1]; ++j) {
            const ScalarField inner = diff_backward(lat, u, k, j);
            const ScalarField outer = diff(lat, inner, k, j);
            for (int x = 0; x < lat.node_count(); ++x) green[x] += outer[x];
        }
        ScalarField alt(lat.node_count(), 0.0);
        for (int j = 1; j <= kNeighborCount[k - 1]; ++j) {
            const ScalarField d = diff(lat, u, k, j);
            for (int x = 0; x < lat.node_count(); ++x) alt[x] += d[x];
        }
        const double scale = max_abs(lap) + 1.0;
        for (int x = 0; x < lat.node_count(); ++x) {
            REQUIRE(std::abs(lap[x] - dk * dk / (2.0 * lk) * green[x]) < 1e-12 * scale);
            REQUIRE(std::abs(lap[x] - dk / (lk * lat.h()) * alt[x]) < 1e-12 * scale);
        }
    }
}

TEST_CASE("multi-step quotients reproduce +/- cartesian derivatives of linear fields") {
    HexLattice lat(6, 6, 0.7);
    const ScalarField ux = sample(lat, [](Vec2 p) { return p.x; });
    const ScalarField uy = sample(lat, [](Vec2 p) { return p.y; });

    const ScalarField dx1 = dx_multi(lat, ux, 1);
    const ScalarField dx3 = dx_multi(lat, ux, 3);
    const ScalarField dx1_of_y = dx_multi(lat, uy, 1);
    const ScalarField dx3_of_y = dx_multi(lat, uy, 3);
    const ScalarField dy1 = dy_multi(lat, uy, 1);
    const ScalarField dy3 = dy_multi(lat, uy, 3);
    const ScalarField dy1_of_x = dy_multi(lat, ux, 1);
    const ScalarField dy3_of_x = dy_multi(lat, ux, 3);
    for (int x = 0; x < lat.node_count(); ++x) {
        if (!interior(lat, x)) continue;
        REQUIRE(dx1[x] == Catch::Approx(1.0).margin(1e-12));
        REQUIRE(dx3[x] == Catch::Approx(-1.0).margin(1e-12));
        REQUIRE(dy1[x] == Catch::Approx(1.0).margin(1e-12));
        REQUIRE(dy3[x] == Catch::Approx(-1.0).margin(1e-12));
        REQUIRE(dx1_of_y[x] == Catch::Approx(0.0).margin(1e-12));
        REQUIRE(dx3_of_y[x] == Catch::Approx(0.0).margin(1e-12));
        REQUIRE(dy1_of_x[x] == Catch::Approx(0.0).margin(1e-12));
        REQUIRE(dy3_of_x[x] == Catch::Approx(0.0).margin(1e-12));
    }

    REQUIRE_THROWS_AS(dx_multi(lat, ux, 2), std::invalid_argument);
    REQUIRE_THROWS_AS(dy_multi(lat, ux, 2), std::invalid_argument);
}

TEST_CASE("auxiliary quotients: decomposition of the y-quotient and direct values") {
    HexLattice lat(5, 4, 1.0);
    const ScalarField u = random_field(lat, 31);

    for (int k : {1, 3}) {
        const ScalarField dy = dy_multi(lat, u, k);
        const ScalarField a1 = aux_diff(lat, u, k, 1);
        const ScalarField b1 = aux_diff_backward(lat, u, k, 1);
        for (int x = 0; x < lat.node_count(); ++x)
            REQUIRE(dy[x] == Catch::Approx(a1[x] + b1[x]).margin(1e-14));
    }

    const ScalarField c(lat.node_count(), 5.0);
    for (int k : {1, 3})
        for (int r : {0, 1}) {
            REQUIRE(max_abs(aux_diff(lat, c, k, r)) == 0.0);
            REQUIRE(max_abs(aux_diff_backward(lat, c, k, r)) == 0.0);
        }

    // u = y at an A node, k=1, r=0: the j=1 quotient equals +1.
    const ScalarField uy = sample(lat, [](Vec2 p) { return p.y; });
    const ScalarField a0 = aux_diff(lat, uy, 1, 0);
    for (int x = 0; x < lat.node_count(); ++x) {
        if (!interior(lat, x) || lat.kappa(x) != 1) continue;
        REQUIRE(a0[x] == Catch::Approx(1.0).margin(1e-12));
    }

    REQUIRE_THROWS_AS(aux_diff(lat, u, 2, 0), std::invalid_argument);
    REQUIRE_THROWS_AS(aux_diff(lat, u, 1, 2), std::invalid_argument);
}

TEST_CASE("inner product: weight, bilinearity, naive-summation oracle") {
    HexLattice lat(2, 3, 1.0);
    const ScalarField one(lat.node_count(), 1.0);
    REQUIRE(inner_product(lat, one, one) == Catch::Approx(9.0 * kSqrt3));

    HexLattice lat2(4, 4, 0.6);
    const ScalarField u = random_field(lat2, 41);
    const ScalarField v = random_field(lat2, 43);
    const ScalarField w = random_field(lat2, 47);

    ScalarField au_bw(lat2.node_count());
    const double a = 1.7, b = -0.3;
    for (int x = 0; x < lat2.node_count(); ++x) au_bw[x] = a * u[x] + b * w[x];
    REQUIRE(inner_product(lat2, au_bw, v) ==
            Catch::Approx(a * inner_product(lat2, u, v) + b * inner_product(lat2, w, v))
                .epsilon(1e-12));

    double naive = 0.0;
    for (int x = 0; x < lat2.node_count(); ++x) naive += u[x] * v[x];
    naive *= 0.75 * kSqrt3 * 0.36;
    REQUIRE(inner_product(lat2, u, v) == Catch::Approx(naive).epsilon(1e-13));

    ScalarField bad(lat2.node_count() - 1, 0.0);
    REQUIRE_THROWS_AS(inner_product(lat2, u, bad), std::invalid_argument);
}

TEST_CASE("summation by parts: kappa-signed layer 2 and both multi-step quotients") {
    HexLattice lat(4, 4, 1.0);
    for (unsigned seed : {1u, 2u, 3u}) {
        const ScalarField u = random_field(lat, seed);
        const ScalarField v = random_field(lat, seed + 100);

        for (int j = 1; j <= 6; ++j) {
            ScalarField kdv = diff(lat, v, 2, j);
            ScalarField kbu = diff_backward(lat, u, 2, j);
            for (int x = 0; x < lat.node_count(); ++x) {
                kdv[x] *= lat.kappa(x);
                kbu[x] *= lat.kappa(x);
            }
            const double r = inner_product(lat, u, kdv) + inner_product(lat, kbu, v);
            REQUIRE(std::abs(r) < 1e-12);
        }
        for (int k : {1, 3}) {
            const double rx = inner_product(lat, u, dx_multi(lat, v, k)) +
                              inner_product(lat, dx_multi(lat, u, k), v);
            const double ry = inner_product(lat, u, dy_multi(lat, v, k)) +
                              inner_product(lat, dy_multi(lat, u, k), v);
            REQUIRE(std::abs(rx) < 1e-12);
            REQUIRE(std::abs(ry) < 1e-12);
        }
    }
}

TEST_CASE("Leibniz identity for one-step quotients") {
    HexLattice lat(4, 5, 0.9);
    const ScalarField u = random_field(lat, 51);
    const ScalarField v = random_field(lat, 53);
    ScalarField uv(lat.node_count());
    for (int x = 0; x < lat.node_count(); ++x) uv[x] = u[x] * v[x];

    for (int k = 1; k <= 3; ++k) {
        for (int j = 1; j <= kNeighborCount[k - 1]; ++j) {
            const ScalarField dv = diff(lat, v, k, j);
            const ScalarField bu = diff_backward(lat, u, k, j);
            const ScalarField duv = diff(lat, uv, k, j);
            for (int x = 0; x < lat.node_count(); ++x) {
                const int y = lat.neighbor(x, k, j);
                const double lhs = u[x] * dv[x] + bu[y] * v[y];
                REQUIRE(lhs == Catch::Approx(duv[x]).margin(1e-12));
            }
        }
    }
}

TEST_CASE("quadratic form decomposition into auxiliary and x-quotients") {
    HexLattice lat(4, 4, 1.2);
    const ScalarField u = random_field(lat, 61);
    const ScalarField v = random_field(lat, 67);

    for (int k : {1, 3}) {
        ScalarField lhs(lat.node_count(), 0.0);
        for (int j = 1; j <= 3; ++j) {
            const ScalarField du = diff(lat, u, k, j);
            const ScalarField dv = diff(lat, v, k, j);
            for (int x = 0; x < lat.node_count(); ++x) lhs[x] += du[x] * dv[x];
        }
        const ScalarField a1u = aux_diff(lat, u, k, 1);
        const ScalarField a0v = aux_diff(lat, v, k, 0);
        const ScalarField b1u = aux_diff_backward(lat, u, k, 1);
        const ScalarField b0v = aux_diff_backward(lat, v, k, 0);
        const ScalarField xu = dx_multi(lat, u, k);
        const ScalarField xv = dx_multi(lat, v, k);
        for (int x = 0; x < lat.node_count(); ++x) {
            const double rhs = 1.5 * (a1u[x] * a0v[x] + b1u[x] * b0v[x] + xu[x] * xv[x]);
            REQUIRE(lhs[x] == Catch::Approx(rhs).margin(1e-12));
        }
    }
}

TEST_CASE("telescoping sums vanish exactly under the periodic wrap") {
    HexLattice lat(5, 6, 0.8);
    const ScalarField u = random_field(lat, 71);
    for (int k = 1; k <= 3; ++k) {
        for (int j = 1; j <= kNeighborCount[k - 1]; ++j) {
            const ScalarField d = diff(lat, u, k, j);
            double s = 0.0;
            for (double x : d) s += x;
            REQUIRE(std::abs(s) < 1e-12);
        }
    }
    for (int k : {1, 3}) {
        const ScalarField d = dx_multi(lat, u, k);
        double s = 0.0;
        for (double x : d) s += x;
        REQUIRE(std::abs(s) < 1e-12);
    }
}

TEST_CASE("stacked gradient carries the layer scaling") {
    HexLattice lat(4, 4, 1.0);
    const ScalarField u = random_field(lat, 81);
    for (int k = 1; k <= 3; ++k) {
        const auto g = stacked_gradient(lat, u, k);
        REQUIRE(g.layer == k);
        REQUIRE(static_cast<int>(g.components.size()) == kNeighborCount[k - 1]);
        double sum = 0.0;
        for (const auto& comp : g.components) sum += norm_l2h_sq(lat, comp);
        REQUIRE(grad_norm_sq(lat, u, k) == Catch::Approx(g.scale * g.scale * sum));
    }
}

TEST_CASE("consistency orders on a smooth bump under refinement") {
    // Fixed physical domain, h halved repeatedly; orders fitted on log-log.
    const double h0 = 0.4;
    const int base_n1 = 16, base_n2 = 18;
    const Vec2 c{base_n1 * kSqrt3 * h0 / 2.0, base_n2 * 1.5 * h0 / 2.0};
    const double w = 0.8;
    auto phi = [&](Vec2 p) {
        const Vec2 d = p - c;
        return std::exp(-dot(d, d) / (2.0 * w * w));
    };
    auto lap_phi = [&](Vec2 p) {
        const Vec2 d = p - c;
        const double r2 = dot(d, d), w2 = w * w;
        return phi(p) * (r2 / (w2 * w2) - 2.0 / w2);
    };
    auto grad_phi = [&](Vec2 p) {
        const Vec2 d = p - c;
        return Vec2{-d.x / (w * w) * phi(p), -d.y / (w * w) * phi(p)};
    };

    std::vector<double> hs;
    std::vector<std::array<double, 3>> lap_err;
    std::vector<std::array<double, 2>> dx_err, dy_err;
    std::vector<double> nu_err;
    for (int level = 0; level < 4; ++level) {
        const double h = h0 / (1 << level);
        HexLattice lat(base_n1 << level, base_n2 << level, h);
        // Rectangle-chart positions keep the bump far from every wrap seam.
        std::vector<Vec2> pos(lat.node_count());
        for (int x = 0; x < lat.node_count(); ++x) pos[x] = lat.wrap_to_rect(lat.position(x));
        ScalarField f(lat.node_count());
        for (int x = 0; x < lat.node_count(); ++x) f[x] = phi(pos[x]);
        hs.push_back(h);

        std::array<double, 3> le{};
        for (int k = 1; k <= 3; ++k) {
            const ScalarField l = laplacian(lat, f, k);
            ScalarField err(lat.node_count());
            for (int x = 0; x < lat.node_count(); ++x) err[x] = l[x] - lap_phi(pos[x]);
            le[k - 1] = norm_l2h(lat, err);
        }
        lap_err.push_back(le);

        std::array<double, 2> xe{}, ye{};
        for (int idx = 0; idx < 2; ++idx) {
            const int k = idx == 0 ? 1 : 3;
            const double sign = k == 1 ? 1.0 : -1.0;
            const ScalarField dx = dx_multi(lat, f, k);
            const ScalarField dy = dy_multi(lat, f, k);
            ScalarField ex(lat.node_count()), ey(lat.node_count());
            for (int x = 0; x < lat.node_count(); ++x) {
                const Vec2 g = grad_phi(pos[x]);
                ex[x] = dx[x] - sign * g.x;
                ey[x] = dy[x] - sign * g.y;
            }
            xe[idx] = norm_l2h(lat, ex);
            ye[idx] = norm_l2h(lat, ey);
        }
        dx_err.push_back(xe);
        dy_err.push_back(ye);

        double worst_nu = 0.0;
        for (int j = 1; j <= 6; ++j) {
            ScalarField kd = diff(lat, f, 2, j);
            ScalarField err(lat.node_count());
            for (int x = 0; x < lat.node_count(); ++x) {
                kd[x] *= lat.kappa(x);
                const Vec2 g = grad_phi(pos[x]);
                err[x] = kd[x] - (g.x * kNu[j - 1].x + g.y * kNu[j - 1].y);
            }
            worst_nu = std::max(worst_nu, norm_l2h(lat, err));
        }
        nu_err.push_back(worst_nu);
    }

    auto fitted_order = [&](auto&& err_at) {
        // least-squares slope of log(err) vs log(h)
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        const int n = static_cast<int>(hs.size());
        for (int i = 0; i < n; ++i) {
            const double lx = std::log(hs[i]), ly = std::log(err_at(i));
            sx += lx;
            sy += ly;
            sxx += lx * lx;
            sxy += lx * ly;
        }
        return (n * sxy - sx * sy) / (n * sxx - sx * sx);
    };

    REQUIRE(fitted_order([&](int i) { return lap_err[i][1]; }) >= 1.8);  // layer 2
    REQUIRE(fitted_order([&](int i) { return lap_err[i][0]; }) >= 0.8);
    REQUIRE(fitted_order([&](int i) { return lap_err[i][2]; }) >= 0.8);
    REQUIRE(fitted_order([&](int i) { return dx_err[i][0]; }) >= 0.8);
    REQUIRE(fitted_order([&](int i) { return dx_err[i][1]; }) >= 0.8);
    REQUIRE(fitted_order([&](int i) { return dy_err[i][0]; }) >= 0.8);
    REQUIRE(fitted_order([&](int i) { return dy_err[i][1]; }) >= 0.8);
    REQUIRE(fitted_order([&](int i) { return nu_err[i]; }) >= 0.8);
}
