#include <doctest.h>

#include <cmath>

#include "ohd/errors.hpp"
#include "ohd/flux.hpp"
#include "ohd/random.hpp"

using namespace ohd;

namespace {
double fd(const std::function<double(double)>& f, double x, double h = 1e-5) {
    return (f(x + h) - f(x - h)) / (2.0 * h);
}
} // namespace

TEST_CASE("burgers flux values") {
    const FluxModel m = burgers_flux();
    CHECK(m.f(2.0) == 2.0);
    CHECK(m.f_prime(-3.0) == -3.0);
    CHECK(std::abs(m.f_prime(-3.0)) == m.c0 * 3.0);  // c0 = 1 is tight
    CHECK(m.f_second(7.0) == 1.0);
    CHECK(m.c0 == 1.0);
}

TEST_CASE("validate_subquadratic") {
    SUBCASE("burgers on [-2,2] gives exactly 1") {
        CHECK(validate_subquadratic(burgers_flux(), {-2.0, 2.0}, 101) == 1.0);
    }
    SUBCASE("cubic on [-2,2] gives 2") {
        CHECK(validate_subquadratic(cubic_flux(2.0), {-2.0, 2.0}, 101) ==
              doctest::Approx(2.0).epsilon(1e-12));
    }
    SUBCASE("linear transport diverges at zero") {
        FluxModel transport;
        transport.f = [](double u) { return u; };
        transport.f_prime = [](double) { return 1.0; };
        transport.f_second = [](double) { return 0.0; };
        CHECK_THROWS_AS(validate_subquadratic(transport, {-2.0, 2.0}, 101), DivergesAtZeroError);
    }
    SUBCASE("preconditions") {
        CHECK_THROWS_AS(validate_subquadratic(burgers_flux(), {-2.0, 2.0}, 50),
                        std::invalid_argument);
        CHECK_THROWS_AS(validate_subquadratic(burgers_flux(), {1.0, 2.0}, 200),
                        std::invalid_argument);
    }
}

TEST_CASE("genuine nonlinearity probe") {
    CHECK(genuine_nonlinearity_probe(burgers_flux(), {-2.0, 2.0}, 101) == 0.0);
    // f'' = 2u vanishes only at the sample u = 0
    CHECK(genuine_nonlinearity_probe(cubic_flux(2.0), {-2.0, 2.0}, 101) ==
          doctest::Approx(1.0 / 101));
    FluxModel transport;
    transport.f = [](double u) { return u; };
    transport.f_prime = [](double) { return 1.0; };
    transport.f_second = [](double) { return 0.0; };
    CHECK(genuine_nonlinearity_probe(transport, {-2.0, 2.0}, 101) == 1.0);
}

TEST_CASE("polynomial flux") {
    SUBCASE("quadratic coefficients reproduce burgers") {
        const FluxModel m = polynomial_flux({0.0, 0.0, 0.5}, {-2.0, 2.0});
        CHECK(m.f(2.0) == 2.0);
        CHECK(m.f_prime(1.5) == 1.5);
        CHECK(m.f_second(0.3) == 1.0);
        CHECK(m.c0 == doctest::Approx(1.0));
    }
    SUBCASE("a linear term is rejected") {
        CHECK_THROWS_AS(polynomial_flux({0.0, 1.0}, {-2.0, 2.0}), DivergesAtZeroError);
    }
}

TEST_CASE("subquadratic bound holds at many random points") {
    SplitMix64 rng(42);
    for (const FluxModel& m : {burgers_flux(), cubic_flux(2.0),
                               polynomial_flux({0.0, 0.0, 0.3, 0.1}, {-2.0, 2.0})}) {
        const auto [lo, hi] = m.validity_range;
        for (int i = 0; i < 100000; ++i) {
            const double u = rng.uniform(lo, hi);
            CHECK(std::abs(m.f_prime(u)) <= m.c0 * std::abs(u) * (1.0 + 1e-12) + 1e-300);
        }
    }
}

TEST_CASE("derivatives are consistent with finite differences") {
    SplitMix64 rng(43);
    for (const FluxModel& m : {burgers_flux(), cubic_flux(2.0)}) {
        for (int i = 0; i < 50; ++i) {
            const double u = rng.uniform(-1.9, 1.9);
            CHECK(m.f_prime(u) ==
                  doctest::Approx(fd(m.f, u)).epsilon(1e-6));
            CHECK(m.f_second(u) ==
                  doctest::Approx(fd(m.f_prime, u)).epsilon(1e-6));
        }
    }
}
