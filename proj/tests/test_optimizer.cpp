#include <numbers>
#include <random>

#include "test_helpers.hpp"

using namespace chlab;
using namespace chtest;

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

TEST_CASE("objective values") {
    SUBCASE("sl2(1): E(u=0, r=0) = 8, E(u=0, r=0.3) = 8.72") {
        const Model m = sl2(1.0);
        ParamProblem prob(m);
        CHECK(prob.objective(constant_field(1, 0.0), constant_field(1, 0.0)) ==
              doctest::Approx(8.0).epsilon(1e-13));
        CHECK(prob.objective(constant_field(1, 0.0), constant_field(1, 0.3)) ==
              doctest::Approx(8.72).epsilon(1e-13));
        // the energy is u-invariant on a single site (kappa family)
        CHECK(prob.objective(constant_field(1, 0.7), constant_field(1, 0.3)) ==
              doctest::Approx(8.72).epsilon(1e-13));
    }
    SUBCASE("torus m=1: E(0,0) = (2 pi)^3") {
        const Model m = torus(1, 32);
        ParamProblem prob(m);
        const std::size_t n = m.backend->sites();
        CHECK(prob.objective(constant_field(n, 0.0), constant_field(n, 0.0)) ==
              doctest::Approx(std::pow(kTwoPi, 3)).epsilon(1e-9));
    }
    SUBCASE("objective agrees with the generic energy route") {
        const Model m = torus(1, 16);
        InitOptions init;
        init.perturb_amplitude = 0.15;
        init.seed = 7;
        const ScalarField u = seeded_fields(m, init, false);
        const ScalarField r = seeded_fields(m, init, true);
        ParamProblem prob(m);
        const double direct = prob.objective(u, r);
        const double generic = energy(prob.metric(u, r), m.contact, *m.backend);
        CHECK(direct == doctest::Approx(generic).epsilon(1e-10));
    }
    SUBCASE("|u| > 30 is rejected") {
        const Model m = sl2(1.0);
        ParamProblem prob(m);
        CHECK_THROWS_AS(prob.objective(constant_field(1, 31.0), constant_field(1, 0.0)),
                        std::invalid_argument);
    }
}

TEST_CASE("gradient values and finite-difference agreement") {
    SUBCASE("critical point of sl2 has zero gradient") {
        const Model m = sl2(2.0);
        ScalarField du, dr;
        gradient(constant_field(1, 0.0), constant_field(1, 0.0), m, du, dr);
        CHECK(std::abs(du[0]) <= 1e-12);
        CHECK(std::abs(dr[0]) <= 1e-12);
    }
    SUBCASE("sl2(1) at r = 0.3: dE/dr = 16 r lambda^2 Vol = 4.8") {
        const Model m = sl2(1.0);
        ScalarField du, dr;
        gradient(constant_field(1, 0.0), constant_field(1, 0.3), m, du, dr);
        CHECK(dr[0] == doctest::Approx(4.8).epsilon(1e-12));
        CHECK(std::abs(du[0]) <= 1e-12);
    }
    SUBCASE("adjoint matches central differences on both backends") {
        auto check_fd = [](const Model& m, double amp, std::uint64_t seed) {
            InitOptions init;
            init.u0 = 0.05;
            init.r0 = -0.1;
            init.perturb_amplitude = amp;
            init.seed = seed;
            ScalarField u = seeded_fields(m, init, false);
            ScalarField r = seeded_fields(m, init, true);
            ParamProblem prob(m);
            ScalarField du, dr;
            prob.gradient(u, r, du, dr);

            std::mt19937_64 rng(seed);
            const std::size_t n = m.backend->sites();
            const double step = 1e-5;
            int checked = 0;
            while (checked < 10) {
                const std::size_t site = rng() % n;
                const bool on_r = (rng() % 2) == 1;
                ScalarField& field = on_r ? r : u;
                const double saved = field[site];
                field[site] = saved + step;
                const double fp = prob.objective(u, r);
                field[site] = saved - step;
                const double fm = prob.objective(u, r);
                field[site] = saved;
                const double fd = (fp - fm) / (2.0 * step);
                const double an = on_r ? dr[site] : du[site];
                const double scale = std::max({1e-8, std::abs(fd), std::abs(an)});
                CHECK(std::abs(fd - an) / scale < 1e-5);
                ++checked;
            }
        };
        check_fd(sl2(1.0), 0.2, 42);
        check_fd(torus(1, 16), 0.2, 42);
        check_fd(torus(1, 16, DerivKernel::Stencil), 0.2, 42);  // stencil transpose path
    }
}

TEST_CASE("minimize") {
    SUBCASE("sl2(1) from (u, r) = (0.2, 0.3) reaches the critical set") {
        const Model m = sl2(1.0);
        OptConfig cfg;
        InitOptions init;
        init.u0 = 0.2;
        init.r0 = 0.3;
        const MinimizeResult res = minimize(m, cfg, init);
        CHECK(res.converged);
        CHECK(res.state.iter <= 200);
        CHECK(res.state.grad_norm <= 1e-8);
        CHECK(res.state.energy == doctest::Approx(8.0).epsilon(1e-9));
        CHECK(std::abs(res.state.r[0]) <= 1e-5);
        // u is a flat direction of the single-site energy: it stays put
        CHECK(res.state.u[0] == doctest::Approx(0.2).epsilon(1e-12));
        for (std::size_t i = 1; i < res.trace.size(); ++i)
            CHECK(res.trace[i].energy <= res.trace[i - 1].energy + 1e-12);
        CHECK(res.constraint_drift == 0.0);
    }
    SUBCASE("critical initialization needs zero iterations") {
        const Model m = sl2(2.0);
        const MinimizeResult res = minimize(m, OptConfig{}, InitOptions{});
        CHECK(res.converged);
        CHECK(res.state.iter == 0);
        CHECK(res.state.energy == doctest::Approx(32.0).epsilon(1e-12));
    }
    SUBCASE("torus descent decreases energy without converging") {
        const Model m = torus(1, 8);
        OptConfig cfg;
        cfg.max_iter = 40;
        cfg.trace_every = 5;
        const MinimizeResult res = minimize(m, cfg, InitOptions{});
        CHECK_FALSE(res.converged);
        CHECK_FALSE(res.stalled);
        CHECK(res.state.energy < std::pow(kTwoPi, 3));
        for (std::size_t i = 1; i < res.trace.size(); ++i)
            CHECK(res.trace[i].energy <= res.trace[i - 1].energy);
        // tanno residual stays well above zero along the run
        for (const TraceRow& row : res.trace) CHECK(row.residual > 1e-3);
    }
    SUBCASE("line search that cannot shrink out of the overshoot region stalls") {
        // with shrink = 0.99 all 60 candidate steps stay in [0.55, 1], every
        // one of them overshoots the quadratic bowl, and the run must stop
        // with the stalled flag instead of looping
        const Model m = sl2(1.0);
        OptConfig cfg;
        cfg.shrink = 0.99;
        InitOptions init;
        init.r0 = 0.3;
        const MinimizeResult res = minimize(m, cfg, init);
        CHECK(res.stalled);
        CHECK_FALSE(res.converged);
        CHECK(res.state.energy == doctest::Approx(8.72).epsilon(1e-12));
    }
}

TEST_CASE("brute-force scan confirms the minimum set r = 0") {
    const Model m = sl2(1.0);
    ParamProblem prob(m);
    double best = 1e300;
    for (double u = -1.0; u <= 1.0 + 1e-9; u += 0.25)
        for (double r = -1.0; r <= 1.0 + 1e-9; r += 0.25) {
            const double e = prob.objective(constant_field(1, u), constant_field(1, r));
            CHECK(e >= 8.0 - 1e-12);
            if (std::abs(r) < 1e-12) CHECK(e == doctest::Approx(8.0).epsilon(1e-12));
            best = std::min(best, e);
        }
    CHECK(best == doctest::Approx(8.0).epsilon(1e-12));
}

TEST_CASE("seeded perturbations are deterministic and band-limited") {
    const Model m = torus(1, 16);
    InitOptions init;
    init.perturb_amplitude = 0.1;
    init.seed = 42;
    const ScalarField a = seeded_fields(m, init, false);
    const ScalarField b = seeded_fields(m, init, false);
    CHECK(a == b);
    const ScalarField r = seeded_fields(m, init, true);
    CHECK(a != r);  // independent streams for u and r
    double sup = 0.0;
    for (double v : a) sup = std::max(sup, std::abs(v));
    CHECK(sup <= 0.25);
}
