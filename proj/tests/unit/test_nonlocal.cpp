#include <doctest.h>

#include <cmath>

#include "ohd/errors.hpp"
#include "ohd/evolution.hpp"
#include "ohd/nonlocal.hpp"
#include "ohd/spectral.hpp"
#include "test_util.hpp"

using namespace ohd;
using namespace ohd_test;

namespace {
Field random_zero_mean(GridPtr grid, std::uint64_t seed, int max_mode = 0) {
    ProfileSpec ps;
    ps.name = "random_bandlimited";
    ps.amplitude = 1.0;
    ps.max_mode = max_mode;
    ps.seed = seed;
    return prepare_initial_data(ps, std::move(grid)).u0;
}
} // namespace

TEST_CASE("solve_p closed forms") {
    auto g = make_grid(M_PI, 64);
    const Field u = sample(g, [](double x) { return std::sin(x); });

    SUBCASE("zero in, zero out") {
        const Field p = solve_p(Field::zeros(g), 0.3);
        CHECK(linf_norm(p) == 0.0);
    }
    SUBCASE("delta = 1: undetermined coefficients give (sin - cos)/2") {
        const Field p = solve_p(u, 1.0);
        const Field expect = sample(g, [](double x) { return 0.5 * (std::sin(x) - std::cos(x)); });
        CHECK(max_abs_diff(p, expect) <= 1e-12);
    }
    SUBCASE("delta = 0: zero-mean antiderivative -cos") {
        const Field p = solve_p(u, 0.0);
        const Field expect = sample(g, [](double x) { return -std::cos(x); });
        CHECK(max_abs_diff(p, expect) <= 1e-12);
    }
    SUBCASE("u = cos 3x, delta = 0.5: complex symbol at k = 3") {
        // P = (delta k^2 cos kx + k sin kx) / (delta^2 k^4 + k^2), k = 3
        const Field u3 = sample(g, [](double x) { return std::cos(3 * x); });
        const Field p = solve_p(u3, 0.5);
        const Field expect = sample(g, [](double x) {
            return (4.5 * std::cos(3 * x) + 3.0 * std::sin(3 * x)) / 29.25;
        });
        CHECK(max_abs_diff(p, expect) <= 1e-12);
    }
}

TEST_CASE("solve_p rejects bad input") {
    auto g = make_grid(M_PI, 32);
    const Field ones = sample(g, [](double) { return 1.0; });
    CHECK_THROWS_AS(solve_p(ones, 0.1), NonZeroMeanError);
    CHECK_THROWS_AS(solve_p(Field::zeros(g), -0.5), std::invalid_argument);
}

TEST_CASE("elliptic identity is machine-exact") {
    auto g = make_grid(M_PI, 128);

    SUBCASE("closed-form case: each side equals pi/2 at delta = 1") {
        const Field u = sample(g, [](double x) { return std::sin(x); });
        const Field p = solve_p(u, 1.0);
        const Field px = derivative(p, 1);
        const Field pxx = derivative(p, 2);
        CHECK(l2_norm(px) * l2_norm(px) == doctest::Approx(M_PI / 2).epsilon(1e-12));
        CHECK(l2_norm(pxx) * l2_norm(pxx) == doctest::Approx(M_PI / 2).epsilon(1e-12));
        CHECK(check_elliptic_identity(u, p, 1.0) <= 1e-12);
    }
    SUBCASE("zero field has zero residual") {
        const Field z = Field::zeros(g);
        CHECK(check_elliptic_identity(z, solve_p(z, 0.2), 0.2) == 0.0);
    }
    SUBCASE("random zero-mean fields, a sweep of deltas") {
        for (std::uint64_t seed : {5, 6, 7}) {
            const Field u = random_zero_mean(g, seed);
            for (double d : {0.0, 0.01, 0.3, 0.9}) {
                const Field p = solve_p(u, d);
                CHECK(check_elliptic_identity(u, p, d) <= 1e-10);
            }
        }
    }
}

TEST_CASE("coupling product identity and bound") {
    auto g = make_grid(M_PI, 128);

    SUBCASE("sin at delta = 1 gives pi/2") {
        const Field u = sample(g, [](double x) { return std::sin(x); });
        const Field p = solve_p(u, 1.0);
        CHECK(coupling_product(u, p, 1.0) == doctest::Approx(M_PI / 2).epsilon(1e-12));
    }
    SUBCASE("sin at delta = 0 is orthogonal to its antiderivative") {
        const Field u = sample(g, [](double x) { return std::sin(x); });
        const Field p = solve_p(u, 0.0);
        CHECK(std::abs(coupling_product(u, p, 0.0)) <= 1e-12);
    }
    SUBCASE("random fields: <u,P> = delta ||Px||^2 and stays below ||u||^2") {
        for (std::uint64_t seed : {21, 22, 23}) {
            const Field u = random_zero_mean(g, seed);
            const double uu = l2_norm(u) * l2_norm(u);
            for (double d : {0.0, 0.05, 0.5, 0.99}) {
                const Field p = solve_p(u, d);
                CHECK(coupling_identity_residual(u, p, d) <= 1e-10);
                CHECK(coupling_product(u, p, d) <= uu * (1.0 + 1e-10));
            }
        }
    }
}

TEST_CASE("sup-gradient bound") {
    auto g = make_grid(M_PI, 128);

    SUBCASE("closed-form margin at delta = 1") {
        const Field u = sample(g, [](double x) { return std::sin(x); });
        const Field p = solve_p(u, 1.0);
        const BoundVerdict v = sup_gradient_bound_check(u, p, 1.0);
        CHECK(v.holds);
        CHECK(v.lhs == doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));
        CHECK(v.rhs == doctest::Approx(std::sqrt(M_PI)).epsilon(1e-6));
    }
    SUBCASE("zero field holds with zero margin") {
        const Field z = Field::zeros(g);
        const BoundVerdict v = sup_gradient_bound_check(z, solve_p(z, 0.25), 0.25);
        CHECK(v.holds);
        CHECK(v.margin == 0.0);
    }
    SUBCASE("random fields at delta = 0.25") {
        for (std::uint64_t seed : {31, 32, 33, 34}) {
            const Field u = random_zero_mean(g, seed);
            CHECK(sup_gradient_bound_check(u, solve_p(u, 0.25), 0.25).holds);
        }
    }
}

TEST_CASE("solve_p produces zero-mean P and is linear") {
    auto g = make_grid(2.0, 128);
    const Field u1 = random_zero_mean(g, 41);
    const Field u2 = random_zero_mean(g, 42);
    for (double d : {0.0, 0.4}) {
        const Field p1 = solve_p(u1, d);
        CHECK(std::abs(mean(p1)) <= 1e-13);

        const Field combo = solve_p(2.5 * u1 - 0.75 * u2, d);
        const Field linear = 2.5 * p1 - 0.75 * solve_p(u2, d);
        CHECK(max_abs_diff(combo, linear) <= 1e-12 * (linf_norm(p1) + 1.0));
    }
}

TEST_CASE("delta -> 0 consistency is first order") {
    auto g = make_grid(M_PI, 128);
    const Field u = random_zero_mean(g, 55, 12);
    const Field p0 = solve_p(u, 0.0);
    // mode-wise, |P_delta - P_0| / delta is largest in the small-delta
    // limit, so the constant is calibrated there
    const double c = l2_norm(solve_p(u, 0.025) - p0) / 0.025;
    double prev = -1.0;
    for (double d : {0.1, 0.05, 0.025}) {
        const double e = l2_norm(solve_p(u, d) - p0);
        CHECK(e <= d * c * 1.05);
        if (prev > 0.0) {
            const double ratio = prev / e;
            CHECK(ratio > 1.6);
            CHECK(ratio < 2.4);
        }
        prev = e;
    }
}

TEST_CASE("elliptic report fields are finite") {
    auto g = make_grid(M_PI, 64);
    const Field u = random_zero_mean(g, 77);
    const Field p = solve_p(u, 0.2);
    const EllipticSolveReport r = elliptic_report(u, p, 0.2);
    CHECK(std::isfinite(r.identity_residual));
    CHECK(std::isfinite(r.coupling_residual));
    CHECK(std::isfinite(r.p_mean));
    CHECK(r.identity_residual <= 1e-10);
    CHECK(r.coupling_residual <= 1e-10);
}

TEST_CASE("banded backend cross-checks the spectral solve") {
    // second-order backend; used in its intended regime delta >~ dx
    const auto smooth = [](double x) { return std::sin(x) + 0.3 * std::cos(2 * x); };

    SUBCASE("regularized solve converges at second order to the spectral one") {
        double prev = -1.0;
        for (int n : {64, 128, 256}) {
            auto g = make_grid(M_PI, n);
            const Field u = sample(g, smooth);
            const double diff = max_abs_diff(solve_p_banded(u, 0.5), solve_p(u, 0.5));
            if (prev > 0.0) {
                const double order = std::log2(prev / diff);
                CHECK(order > 1.7);
                CHECK(order < 2.3);
            }
            prev = diff;
        }
    }
    SUBCASE("antiderivative backend agrees at delta = 0") {
        auto g = make_grid(M_PI, 256);
        const Field u = sample(g, smooth);
        const double diff = max_abs_diff(solve_p_banded(u, 0.0), solve_p(u, 0.0));
        CHECK(diff <= 1e-3);
        auto g2 = make_grid(M_PI, 512);
        const Field u2 = sample(g2, smooth);
        const double diff2 = max_abs_diff(solve_p_banded(u2, 0.0), solve_p(u2, 0.0));
        CHECK(diff2 <= diff / 3.0);
    }
}
