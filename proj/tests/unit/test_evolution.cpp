#include <doctest.h>

#include <cmath>
#include <complex>

#include "ohd/errors.hpp"
#include "ohd/evolution.hpp"
#include "ohd/nonlocal.hpp"
#include "ohd/spectral.hpp"
#include "test_util.hpp"

using namespace ohd;
using namespace ohd_test;

namespace {
SolverConfig test_config() {
    SolverConfig c;
    c.gamma = 0.5;
    c.delta = 0.1;
    c.t_end = 2.0;
    c.blowup_threshold = 100.0;
    c.record_every = 2;
    return c;
}
} // namespace

TEST_CASE("prepare_initial_data") {
    auto g = make_grid(M_PI, 256);

    SUBCASE("sine is returned essentially unchanged") {
        ProfileSpec ps;
        ps.name = "sine";
        ps.amplitude = 0.7;
        ps.mode = 2;
        const InitialData init = prepare_initial_data(ps, g);
        CHECK(std::abs(mean(init.u0)) <= 1e-15);
        const Field expect = sample(g, [](double x) { return 0.7 * std::sin(2 * x); });
        CHECK(max_abs_diff(init.u0, expect) <= 1e-15);
    }
    SUBCASE("gaussian on [-10,10) is mean-subtracted essentially exactly") {
        auto g10 = make_grid(10.0, 256);
        ProfileSpec ps;
        ps.name = "gaussian";
        const InitialData init = prepare_initial_data(ps, g10);
        CHECK(std::abs(mean(init.u0)) <= 1e-15);
    }
    SUBCASE("sine antiderivative is -cos with energy pi") {
        ProfileSpec ps;
        ps.name = "sine";
        const InitialData init = prepare_initial_data(ps, g);
        const Field expect = sample(g, [](double x) { return -std::cos(x); });
        CHECK(max_abs_diff(init.p0, expect) <= 1e-12);
        CHECK(init.p0_l2 * init.p0_l2 == doctest::Approx(M_PI).epsilon(1e-10));
        CHECK(init.u0_l2 * init.u0_l2 == doctest::Approx(M_PI).epsilon(1e-10));
        CHECK(init.u0_linf == doctest::Approx(1.0).epsilon(1e-10));
    }
    SUBCASE("compact bump and gaussian derivative are zero-mean") {
        for (const char* name : {"compact_bump", "gaussian_derivative"}) {
            ProfileSpec ps;
            ps.name = name;
            ps.radius = 1.5;
            const InitialData init = prepare_initial_data(ps, g);
            CHECK(std::abs(mean(init.u0)) <= 1e-15);
            CHECK(all_finite(init.u0));
        }
    }
    SUBCASE("random profile is seed-reproducible") {
        ProfileSpec ps;
        ps.name = "random_bandlimited";
        ps.seed = 99;
        const Field a = prepare_initial_data(ps, g).u0;
        const Field b = prepare_initial_data(ps, g).u0;
        CHECK(max_abs_diff(a, b) == 0.0);
        ps.seed = 100;
        const Field c = prepare_initial_data(ps, g).u0;
        CHECK(max_abs_diff(a, c) > 1e-3);
    }
    SUBCASE("bad parameters are rejected") {
        ProfileSpec ps;
        ps.name = "gaussian";
        ps.width = 0.0;
        CHECK_THROWS_AS(prepare_initial_data(ps, g), std::invalid_argument);
        ps.name = "no_such_profile";
        CHECK_THROWS_AS(prepare_initial_data(ps, g), std::invalid_argument);
    }
}

TEST_CASE("linear symbol values") {
    CHECK(linear_symbol(0.0, 1.0, 0.5) == std::complex<double>(0.0));
    const auto a = linear_symbol(1.0, 1.0, 0.0);
    CHECK(a.real() == doctest::Approx(-1.0).epsilon(1e-15));
    CHECK(a.imag() == doctest::Approx(-1.0).epsilon(1e-15));
    const auto b = linear_symbol(1.0, 2.0, 1.0);
    CHECK(std::abs(b - std::complex<double>(0.0, -1.0)) <= 1e-15);

    // real part of the nonlocal term is gamma delta / (delta^2 k^2 + 1)
    for (double k : {0.5, 2.0, 7.0}) {
        for (double d : {0.0, 0.3, 0.9}) {
            const double gamma = 0.8;
            const auto L = linear_symbol(k, gamma, d);
            const double expect = -k * k + gamma * d / (d * d * k * k + 1.0);
            CHECK(L.real() == doctest::Approx(expect).epsilon(1e-13));
        }
    }
}

TEST_CASE("phi functions satisfy their defining identities on both branches") {
    using C = std::complex<double>;
    // |z| <= 1 selects the series branch, |z| > 1 the closed form; the
    // identities z phi1 = e^z - 1 etc. pin both against std::exp
    for (double r : {0.3, 0.9, 1.0000001, 1.7, 4.0}) {
        for (int i = 0; i < 12; ++i) {
            const C z = std::polar(r, 2.0 * M_PI * i / 12);
            const C ez = std::exp(z);
            CHECK(std::abs(z * etd::phi1(z) - (ez - 1.0)) <= 1e-13 * std::abs(ez));
            CHECK(std::abs(z * z * etd::phi2(z) - (ez - 1.0 - z)) <= 1e-13 * std::abs(ez));
            CHECK(std::abs(z * z * z * etd::phi3(z) - (ez - 1.0 - z - 0.5 * z * z)) <=
                  1e-13 * std::abs(ez));
            // stage weights against their phi combinations
            const C p1 = etd::phi1(z), p2 = etd::phi2(z), p3 = etd::phi3(z);
            CHECK(std::abs(etd::weight1(z) - (p1 - 3.0 * p2 + 4.0 * p3)) <= 1e-12);
            CHECK(std::abs(etd::weight2(z) - (p2 - 2.0 * p3)) <= 1e-12);
            CHECK(std::abs(etd::weight3(z) - (4.0 * p3 - p2)) <= 1e-12);
        }
    }
    // small-argument limits: the series branch avoids the cancellation
    CHECK(std::abs(etd::phi1(C(0.0)) - 1.0) == 0.0);
    CHECK(std::abs(etd::phi2(C(0.0)) - 0.5) == 0.0);
    CHECK(std::abs(etd::phi3(C(0.0)) - 1.0 / 6) <= 1e-17);
    CHECK(std::abs(etd::weight1(C(1e-8, 0)) - 1.0 / 6) <= 1e-8);
    CHECK(std::abs(etd::weight2(C(1e-8, 0)) - 1.0 / 6) <= 1e-8);
    CHECK(std::abs(etd::weight3(C(1e-8, 0)) - 1.0 / 6) <= 1e-8);
}

TEST_CASE("cfl_dt") {
    const FluxModel burgers = burgers_flux();

    SUBCASE("quiescent data lands on the transit-time cap") {
        auto g = make_grid(M_PI, 64);
        const Field z = Field::zeros(g);
        CHECK(cfl_dt(z, *g, burgers, 0.5) == doctest::Approx(0.05 * 2.0 * M_PI).epsilon(1e-14));
    }
    SUBCASE("advective bound 0.025 for max|u| = 2, dx = 0.1, safety 0.5") {
        auto g = make_grid(10.0, 200);
        const Field u = sample(g, [](double x) { return 2.0 * std::sin(M_PI * x / 10.0); });
        CHECK(cfl_dt(u, *g, burgers, 0.5) == doctest::Approx(0.025).epsilon(1e-10));
    }
    SUBCASE("cubic flux uses |f'| = u^2") {
        auto g = make_grid(10.0, 200);
        const Field u = sample(g, [](double x) { return 2.0 * std::sin(M_PI * x / 10.0); });
        CHECK(cfl_dt(u, *g, cubic_flux(2.0), 0.5) == doctest::Approx(0.0125).epsilon(1e-10));
    }
}

TEST_CASE("step") {
    auto g = make_grid(M_PI, 64);
    const SolverConfig cfg = test_config();
    const FluxModel flux = burgers_flux();

    SUBCASE("zero data is a fixed point") {
        SimState st{0.0, Field::zeros(g), solve_p(Field::zeros(g), cfg.delta), 0};
        for (int i = 0; i < 50; ++i) {
            st = step(st, cfg, flux, 0.05);
            CHECK(linf_norm(st.u) == 0.0);
        }
        CHECK(st.t == doctest::Approx(2.5));
        CHECK(st.step_index == 50);
    }
    SUBCASE("tiny single mode follows the exact linear propagator") {
        SolverConfig c = cfg;
        c.gamma = 1.0;
        c.delta = 0.0;
        const double eps = 1e-8;
        const Field u0 = sample(g, [&](double x) { return eps * std::sin(x); });
        SimState st{0.0, u0, solve_p(u0, 0.0), 0};
        const double dt = 0.1;
        const SimState next = step(st, c, flux, dt);

        const Spectrum before = to_spectral(u0);
        const Spectrum after = to_spectral(next.u);
        const auto expect = before[1] * std::exp(std::complex<double>(-1.0, -1.0) * dt);
        CHECK(std::abs(after[1] - expect) <= 1e-8 * std::abs(expect));
    }
    SUBCASE("mean is conserved to machine precision") {
        const Field u0 = random_trig_field(g, 12, 3);
        Field u0z = u0;
        const double m0 = mean(u0);
        for (auto& v : u0z.values) v -= m0;
        SimState st{0.0, u0z, solve_p(u0z, cfg.delta), 0};
        const double before = mean(st.u);
        for (int i = 0; i < 20; ++i) st = step(st, cfg, flux, 0.01);
        CHECK(std::abs(mean(st.u) - before) <= 1e-15 * (linf_norm(u0z) + 1.0) * 20);
    }
    SUBCASE("blow-up threshold fires") {
        SolverConfig c = cfg;
        c.blowup_threshold = 0.5;
        const Field u0 = sample(g, [](double x) { return std::sin(x); });
        SimState st{0.0, u0, solve_p(u0, c.delta), 0};
        CHECK_THROWS_AS(step(st, c, flux, 0.01), BlowUpError);
    }
}

TEST_CASE("run") {
    const FluxModel flux = burgers_flux();

    SUBCASE("zero initial data stays exactly zero with empty diagnostics") {
        auto g = make_grid(M_PI, 64);
        SolverConfig cfg = test_config();
        cfg.t_end = 1.0;
        auto [state, report] = run(Field::zeros(g), cfg, flux);
        CHECK(linf_norm(state.u) == 0.0);
        for (double v : report.u_l2sq) CHECK(v == 0.0);
        for (double v : report.p_linf) CHECK(v == 0.0);
    }
    SUBCASE("standard sine run completes under the energy bound") {
        auto g = make_grid(M_PI, 256);
        ProfileSpec ps;
        ps.name = "sine";
        const Field u0 = prepare_initial_data(ps, g).u0;
        const SolverConfig cfg = test_config();
        auto [state, report] = run(u0, cfg, flux);
        CHECK(state.t == doctest::Approx(2.0).epsilon(1e-12));
        const double bound = std::exp(2.0 * cfg.gamma * 2.0) * M_PI;
        CHECK(report.u_l2sq.back() <= bound);
        CHECK(report.size() >= 10);
    }
    SUBCASE("initial data above the cap blows up at t = 0") {
        auto g = make_grid(M_PI, 64);
        SolverConfig cfg = test_config();
        cfg.blowup_threshold = 0.5;
        const Field u0 = sample(g, [](double x) { return std::sin(x); });
        try {
            run(u0, cfg, flux);
            FAIL("expected BlowUpError");
        } catch (const BlowUpError& e) {
            CHECK(e.time == 0.0);
        }
    }
    SUBCASE("trajectories are deterministic") {
        auto g = make_grid(M_PI, 128);
        ProfileSpec ps;
        ps.name = "random_bandlimited";
        ps.seed = 5;
        const Field u0 = prepare_initial_data(ps, g).u0;
        SolverConfig cfg = test_config();
        cfg.t_end = 0.5;
        auto [s1, r1] = run(u0, cfg, flux);
        auto [s2, r2] = run(u0, cfg, flux);
        CHECK(max_abs_diff(s1.u, s2.u) == 0.0);
        CHECK(r1.u_l2sq == r2.u_l2sq);
    }
    SUBCASE("config invariants are enforced") {
        SolverConfig bad = test_config();
        bad.gamma = 0.0;
        CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
        bad = test_config();
        bad.delta = 1.0;
        CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
        bad = test_config();
        bad.cfl_safety = 1.5;
        CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    }
}
