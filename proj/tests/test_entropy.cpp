#include <doctest.h>

#include <cmath>

#include "xdiff/entropy.hpp"
#include "xdiff/reference.hpp"
#include "xdiff/rng.hpp"

using namespace xdiff;

namespace {

State positive_random(Rng& rng, const Grid1D& grid, double lo, double hi) {
    const auto n = static_cast<std::size_t>(grid.n_cells());
    std::vector<double> f(n), g(n);
    for (std::size_t i = 0; i < n; ++i) {
        f[i] = rng.uniform(lo, hi);
        g[i] = rng.uniform(lo, hi);
    }
    return make_state(grid, std::move(f), std::move(g));
}

} // namespace

TEST_CASE("relative entropy closed forms") {
    const ModelParams p(1, 1, 1, 2); // b/c = 1
    const Grid1D grid(0, 1, 4);

    SUBCASE("identical states give exactly zero") {
        const auto u = constant_state(grid, 1.3, 0.8);
        CHECK(relative_entropy(p, u, u) == 0.0);
    }
    SUBCASE("constants f1=2, f2=1 give 2 ln 2 - 1") {
        const auto u1 = constant_state(grid, 2.0, 1.0);
        const auto u2 = constant_state(grid, 1.0, 1.0);
        CHECK(relative_entropy(p, u1, u2) ==
              doctest::Approx(0.38629436111989062).epsilon(1e-14));
    }
    SUBCASE("vanishing f1 contributes the reference mass") {
        const auto u1 = constant_state(grid, 0.0, 1.0);
        const auto u2 = constant_state(grid, 1.0, 1.0);
        CHECK(relative_entropy(p, u1, u2) == 1.0);
    }
    SUBCASE("degenerate reference is rejected") {
        const auto u1 = constant_state(grid, 1.0, 1.0);
        const auto u2 = make_state(grid, {1, 1, 0, 1}, {1, 1, 1, 1});
        CHECK_THROWS_AS(relative_entropy(p, u1, u2), DegenerateReference);
        CHECK_THROWS_AS(relative_entropy(p, u1, u2, 1e-10), DegenerateReference);
        // explicit sigma_min below the smallest reference value passes
        const auto u3 = constant_state(grid, 0.5, 0.5);
        CHECK_NOTHROW(relative_entropy(p, u1, u3, 0.4));
        CHECK_THROWS_AS(relative_entropy(p, u1, u3, 0.6), DegenerateReference);
    }
    SUBCASE("grid mismatch is rejected") {
        const auto u1 = constant_state(grid, 1.0, 1.0);
        const auto u2 = constant_state(Grid1D(0, 1, 8), 1.0, 1.0);
        CHECK_THROWS_AS(relative_entropy(p, u1, u2), GridMismatch);
    }
}

TEST_CASE("relative entropy basic properties") {
    const ModelParams p(1.5, 0.8, 1.1, 2.0);
    const Grid1D grid(0, 1, 16);
    Rng rng(13);
    for (int trial = 0; trial < 100; ++trial) {
        const auto u1 = positive_random(rng, grid, 0.0, 3.0);
        const auto u2 = positive_random(rng, grid, 0.1, 3.0);
        const double H = relative_entropy(p, u1, u2);
        CHECK(H >= 0.0);

        // quadratic control: H >= weighted L2^2 / (2 sup)
        double sup = 0.0;
        for (std::size_t i = 0; i < u1.f.size(); ++i) {
            sup = std::max({sup, u1.f[i], u1.g[i], u2.f[i], u2.g[i]});
        }
        CHECK(H - weighted_l2_sq(p, u1, u2) / (2.0 * sup) >= -1e-10);
    }

    SUBCASE("identity of indiscernibles") {
        const auto u1 = positive_random(rng, grid, 0.2, 2.0);
        auto u2 = u1;
        CHECK(relative_entropy(p, u1, u2) == 0.0);
        u2.f[3] += 0.25;
        CHECK(relative_entropy(p, u1, u2) > 0.0);
    }

    SUBCASE("additive over disjoint subintervals") {
        Rng r2(29);
        const Grid1D whole(0, 1, 8);
        const Grid1D left(0, 0.5, 4);
        const Grid1D right(0.5, 1, 4);
        const auto u1 = positive_random(r2, whole, 0.3, 2.0);
        const auto u2 = positive_random(r2, whole, 0.3, 2.0);
        auto restrict_to = [&](const State& s, const Grid1D& sub, std::size_t off) {
            std::vector<double> f(s.f.begin() + off, s.f.begin() + off + 4);
            std::vector<double> g(s.g.begin() + off, s.g.begin() + off + 4);
            return make_state(sub, std::move(f), std::move(g));
        };
        const double total = relative_entropy(p, u1, u2);
        const double parts =
            relative_entropy(p, restrict_to(u1, left, 0), restrict_to(u2, left, 0)) +
            relative_entropy(p, restrict_to(u1, right, 4), restrict_to(u2, right, 4));
        CHECK(total == doctest::Approx(parts).epsilon(1e-13));
    }
}

TEST_CASE("regularized entropy") {
    const ModelParams p(1, 1, 1, 2);
    const Grid1D grid(0, 1, 4);

    SUBCASE("constant closed form 2 ln 1.5") {
        const auto u = constant_state(grid, 1.0, 1.0);
        CHECK(relative_entropy_regularized(p, u, u, 0.5) ==
              doctest::Approx(0.81093021621632876).epsilon(1e-14));
    }
    SUBCASE("eta domain gate") {
        const auto u = constant_state(grid, 1.0, 1.0);
        CHECK_THROWS_AS(relative_entropy_regularized(p, u, u, 0.0), BadEta);
        CHECK_THROWS_AS(relative_entropy_regularized(p, u, u, 1.0), BadEta);
        CHECK_THROWS_AS(relative_entropy_regularized(p, u, u, -0.1), BadEta);
    }
    SUBCASE("zero cells contribute only the reference value to the f-term") {
        const auto u1 = constant_state(grid, 0.0, 1.0);
        const auto u2 = constant_state(grid, 1.0, 1.0);
        // f-term: 0 * ln(eta/f2) - (0 - 1) = 1; g-term: ln((1 + eta)/1)
        CHECK(relative_entropy_regularized(p, u1, u2, 0.5) ==
              doctest::Approx(1.0 + std::log(1.5)).epsilon(1e-14));
    }
    SUBCASE("converges to the unregularized value from above") {
        Rng rng(37);
        const Grid1D g16(0, 1, 16);
        for (int trial = 0; trial < 50; ++trial) {
            const auto u1 = positive_random(rng, g16, 0.0, 3.0);
            const auto u2 = positive_random(rng, g16, 0.1, 3.0);
            const double H = relative_entropy(p, u1, u2);
            const double h2 = relative_entropy_regularized(p, u1, u2, 1e-2);
            const double h4 = relative_entropy_regularized(p, u1, u2, 1e-4);
            const double h6 = relative_entropy_regularized(p, u1, u2, 1e-6);
            CHECK(h2 >= h4);
            CHECK(h4 >= h6);
            CHECK(h6 >= H - 1e-12);
            CHECK(std::abs(h6 - H) <= 1e-4 * (1.0 + H));
        }
    }
}

TEST_CASE("pointwise quadratic bound") {
    SUBCASE("closed-form points") {
        auto qb = pointwise_quadratic_bound(1.0, 1.0);
        CHECK(qb.lhs == 0.0);
        CHECK(qb.rhs == 0.0);

        qb = pointwise_quadratic_bound(2.0, 1.0);
        CHECK(qb.lhs == doctest::Approx(0.38629436111989062).epsilon(1e-14));
        CHECK(qb.rhs == 0.25);
        CHECK(qb.lhs >= qb.rhs);

        qb = pointwise_quadratic_bound(0.0, 1.0);
        CHECK(qb.lhs == 1.0);
        CHECK(qb.rhs == 0.5);
    }
    SUBCASE("argument gate") {
        CHECK_THROWS_AS(pointwise_quadratic_bound(-1.0, 1.0), BadArgs);
        CHECK_THROWS_AS(pointwise_quadratic_bound(1.0, 0.0), BadArgs);
        CHECK_THROWS_AS(pointwise_quadratic_bound(1.0, -2.0), BadArgs);
    }
    SUBCASE("random battery") {
        Rng rng(43);
        double worst = 1.0;
        for (int i = 0; i < 20000; ++i) {
            const double x = rng.uniform(0.0, 10.0);
            const double y = rng.uniform(1e-6, 10.0);
            const auto qb = pointwise_quadratic_bound(x, y);
            worst = std::min(worst, qb.lhs - qb.rhs);
        }
        CHECK(worst >= -1e-12);
    }
}

TEST_CASE("mass and weighted distance") {
    const ModelParams p(1, 1, 1, 2);
    const Grid1D grid(0, 1, 8);

    SUBCASE("uniform unit field has unit mass") {
        const auto m = mass(constant_state(grid, 1.0, 0.0));
        CHECK(m.f == doctest::Approx(1.0).epsilon(1e-15));
        CHECK(m.g == 0.0);
    }
    SUBCASE("half indicator of value two has unit mass") {
        std::vector<double> f(8, 0.0);
        for (std::size_t i = 0; i < 4; ++i) f[i] = 2.0;
        CHECK(mass(make_state(grid, f, std::vector<double>(8, 0.0))).f ==
              doctest::Approx(1.0).epsilon(1e-15));
    }
    SUBCASE("weighted L2 of unit f-shift is one") {
        const auto u1 = constant_state(grid, 2.0, 1.0);
        const auto u2 = constant_state(grid, 1.0, 1.0);
        CHECK(weighted_l2_sq(p, u1, u2) == doctest::Approx(1.0).epsilon(1e-15));
        CHECK(weighted_l2_sq(p, u1, u1) == 0.0);
    }
}

TEST_CASE("sigma bounds") {
    const Grid1D grid(0, 1, 4);
    SUBCASE("constants") {
        const auto b = sigma_bounds(constant_state(grid, 2.0, 3.0));
        CHECK(b.sigma_lower == 2.0);
        CHECK(b.grad_sup == 0.0);
    }
    SUBCASE("linear field") {
        const auto s = make_state(grid, grid.cell_centers(), std::vector<double>(4, 1.0));
        const auto b = sigma_bounds(s);
        CHECK(b.grad_sup == 1.0);
        CHECK(b.sigma_lower == 0.125); // min over min(f, g)
    }
    SUBCASE("zero sigma_lower chains into the entropy gate") {
        const ModelParams p(1, 1, 1, 2);
        const auto u2 = make_state(grid, {0.0, 1, 1, 1}, {1, 1, 1, 1});
        CHECK(sigma_bounds(u2).sigma_lower == 0.0);
        CHECK_THROWS_AS(relative_entropy(p, constant_state(grid, 1, 1), u2, 1e-10),
                        DegenerateReference);
    }
}

namespace {

// independent per-face evaluation of the completed-square route for T2_I and
// of the pre-completion route for T2_II
ProductionDecomposition decomposition_oracle(const ModelParams& p, const State& u1,
                                             const State& u2) {
    const auto Gf1 = face_gradient(u1.grid, u1.f);
    const auto Gg1 = face_gradient(u1.grid, u1.g);
    const auto Gf2 = face_gradient(u2.grid, u2.f);
    const auto Gg2 = face_gradient(u2.grid, u2.g);
    const double h = u1.grid.h();
    const double k_I = p.b() * p.ad_minus_bc() / (p.a() * p.c());
    const double ba = p.b() / p.a();
    const double dc = p.d() / p.c();

    double t2_I = 0.0, bound_I = 0.0, t2_total_over_a = 0.0, bound_II = 0.0;
    for (std::size_t k = 1; k < u1.f.size(); ++k) {
        const double f1 = 0.5 * (u1.f[k - 1] + u1.f[k]);
        const double g1 = 0.5 * (u1.g[k - 1] + u1.g[k]);
        const double f2 = 0.5 * (u2.f[k - 1] + u2.f[k]);
        const double g2 = 0.5 * (u2.g[k - 1] + u2.g[k]);
        const double rf = f1 / f2;
        const double rg = g1 / g2;

        // completed-square route for T2_I
        const double cs1 = Gg1[k] - 0.5 * (1.0 + rg) * Gg2[k];
        const double rem = (g1 - g2) / (2.0 * g2) * Gg2[k];
        t2_I -= k_I * (cs1 * cs1 - rem * rem);
        bound_I += k_I * rem * rem;

        // T2 from the four regrouped integrals (pre-completion route)
        const double t1 = Gf1[k] * (Gf1[k] + ba * Gg1[k]) + ba * Gg1[k] * (Gf1[k] + dc * Gg1[k]);
        const double t2 =
            rf * Gf2[k] * (Gf1[k] + ba * Gg1[k]) + ba * rg * Gg2[k] * (Gf1[k] + dc * Gg1[k]);
        const double t3 = Gf1[k] * (Gf2[k] + ba * Gg2[k]) + ba * Gg1[k] * (Gf2[k] + dc * Gg2[k]);
        const double t4 =
            rf * Gf2[k] * (Gf2[k] + ba * Gg2[k]) + ba * rg * Gg2[k] * (Gf2[k] + dc * Gg2[k]);
        t2_total_over_a += -t1 + t2 + t3 - t4;

        const double ef = (1.0 - rf) * Gf2[k];
        const double eg = ba * (1.0 - rg) * Gg2[k];
        bound_II += 0.5 * (ef * ef + eg * eg);
    }
    ProductionDecomposition out;
    out.T2_I = h * t2_I;
    out.bound_I = h * bound_I;
    out.T2_II = p.a() * h * t2_total_over_a - out.T2_I; // T2_II := T2 - T2_I
    out.bound_II = h * bound_II;
    return out;
}

} // namespace

TEST_CASE("production decomposition") {
    const ModelParams p(1.4, 0.6, 1.0, 1.9);
    const Grid1D grid(0, 1, 16);
    Rng rng(53);

    SUBCASE("identical states: completed square with zero remainder") {
        const auto u = positive_random(rng, grid, 0.4, 2.0);
        const auto dec = production_decomposition(p, u, u);
        CHECK(dec.bound_I == 0.0);
        CHECK(dec.T2_I <= 0.0);
        CHECK(dec.T2_I == doctest::Approx(0.0).epsilon(1e-12));
    }
    SUBCASE("constant pairs: every term vanishes") {
        const auto u1 = constant_state(grid, 1.0, 2.0);
        const auto u2 = constant_state(grid, 0.5, 1.5);
        const auto dec = production_decomposition(p, u1, u2);
        CHECK(dec.T2_I == 0.0);
        CHECK(dec.T2_II == 0.0);
        CHECK(dec.bound_I == 0.0);
        CHECK(dec.bound_II == 0.0);
    }
    SUBCASE("bounds hold and both algebraic routes agree") {
        for (int trial = 0; trial < 300; ++trial) {
            const auto u1 = positive_random(rng, grid, 0.1, 3.0);
            const auto u2 = positive_random(rng, grid, 0.1, 3.0);
            const auto dec = production_decomposition(p, u1, u2);
            CHECK(dec.T2_I <= dec.bound_I + 1e-10);
            CHECK(dec.T2_II / p.a() <= dec.bound_II + 1e-10);

            const auto oracle = decomposition_oracle(p, u1, u2);
            const double scale = 1.0 + std::abs(oracle.T2_I) + std::abs(oracle.T2_II);
            CHECK(std::abs(dec.T2_I - oracle.T2_I) <= 1e-10 * scale);
            CHECK(std::abs(dec.T2_II - oracle.T2_II) <= 1e-9 * scale);
            CHECK(dec.bound_I == doctest::Approx(oracle.bound_I).epsilon(1e-12));
            CHECK(dec.bound_II == doctest::Approx(oracle.bound_II).epsilon(1e-12));
        }
    }
    SUBCASE("gates") {
        const auto u1 = constant_state(grid, 1.0, 1.0);
        const auto u2 = make_state(grid, std::vector<double>(16, 1.0),
                                   [] {
                                       std::vector<double> g(16, 1.0);
                                       g[7] = 0.0;
                                       return g;
                                   }());
        CHECK_THROWS_AS(production_decomposition(p, u1, u2), DegenerateReference);
        CHECK_THROWS_AS(
            production_decomposition(p, u1, constant_state(Grid1D(0, 1, 8), 1, 1)),
            GridMismatch);
    }
}

TEST_CASE("discrete chain rule residual") {
    const Grid1D grid(0, 1, 12);

    SUBCASE("constant-in-time series vanishes") {
        const auto s = constant_state(grid, 1.0, 0.5);
        std::vector<State> series{s, s, s};
        series[1].time = 0.1;
        series[2].time = 0.2;
        CHECK(chain_rule_residual(series, ChainRulePhi::Square) == 0.0);
        CHECK(chain_rule_residual(series, ChainRulePhi::XLogXEta, 1e-2) == 0.0);
    }
    SUBCASE("midpoint bracket is exact for the square test function") {
        Rng rng(59);
        std::vector<double> base(12), slope(12);
        for (auto& v : base) v = rng.uniform(0.5, 2.0);
        for (auto& v : slope) v = rng.uniform(-0.5, 0.5);
        std::vector<State> series;
        for (int k = 0; k < 5; ++k) {
            const double t = 0.05 * k;
            std::vector<double> f(12);
            for (std::size_t i = 0; i < 12; ++i) f[i] = base[i] + slope[i] * t;
            series.push_back(make_state(grid, std::move(f), std::vector<double>(12, 1.0), t));
        }
        CHECK(chain_rule_residual(series, ChainRulePhi::Square) <= 1e-14);
    }
    SUBCASE("series gates") {
        const auto s = constant_state(grid, 1.0, 0.5);
        std::vector<State> one{s};
        CHECK_THROWS_AS(chain_rule_residual(one, ChainRulePhi::Square), BadSeries);

        std::vector<State> mixed{s, constant_state(Grid1D(0, 1, 6), 1.0, 0.5)};
        mixed[1].time = 0.1;
        CHECK_THROWS_AS(chain_rule_residual(mixed, ChainRulePhi::Square), BadSeries);

        std::vector<State> uneven{s, s, s};
        uneven[1].time = 0.1;
        uneven[2].time = 0.35;
        CHECK_THROWS_AS(chain_rule_residual(uneven, ChainRulePhi::Square), BadSeries);

        std::vector<State> pair{s, s};
        pair[1].time = 0.1;
        CHECK_THROWS_AS(chain_rule_residual(pair, ChainRulePhi::XLogXEta, 0.0), BadEta);
    }
}
