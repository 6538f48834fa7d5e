#include <doctest.h>

#include <cmath>

#include "ohd/errors.hpp"
#include "ohd/grid.hpp"
#include "ohd/spectral.hpp"
#include "test_util.hpp"

using namespace ohd;
using namespace ohd_test;

TEST_CASE("make_grid produces the uniform grid and wavenumber table") {
    auto g = make_grid(M_PI, 8);
    CHECK(g->spacing == doctest::Approx(M_PI / 4).epsilon(1e-15));
    CHECK(g->point(0) == -M_PI);
    // signed k table {0,1,2,3,4} with antisymmetry
    for (int j = 0; j <= 4; ++j) CHECK(g->k_table[j] == doctest::Approx(j).epsilon(1e-15));
    CHECK(g->wavenumber(-3) == doctest::Approx(-g->wavenumber(3)));
    CHECK(g->wavenumber(0) == 0.0);

    auto g2 = make_grid(10.0, 256);
    CHECK(g2->spacing == 20.0 / 256);  // 0.078125 exactly
}

TEST_CASE("make_grid rejects bad arguments") {
    CHECK_THROWS_AS(make_grid(M_PI, 7), std::invalid_argument);   // odd
    CHECK_THROWS_AS(make_grid(M_PI, 6), std::invalid_argument);   // tiny
    CHECK_THROWS_AS(make_grid(0.0, 64), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(-1.0, 64), std::invalid_argument);
}

TEST_CASE("spectral derivative matches closed forms and finite differences") {
    auto g = make_grid(M_PI, 64);
    const Field u = sample(g, [](double x) { return std::sin(x); });

    const Field d1 = derivative(u, 1);
    const Field d2 = derivative(u, 2);
    double e1 = 0.0, e2 = 0.0, efd = 0.0;
    for (int i = 0; i < 64; ++i) {
        const double x = g->point(i);
        e1 = std::max(e1, std::abs(d1.values[i] - std::cos(x)));
        e2 = std::max(e2, std::abs(d2.values[i] + std::sin(x)));
        efd = std::max(efd, std::abs(d1.values[i] - fd_derivative([](double y) { return std::sin(y); }, x)));
    }
    CHECK(e1 <= 1e-12);
    CHECK(e2 <= 1e-12);
    CHECK(efd <= 1e-9);  // FD oracle is itself O(h^4)
}

TEST_CASE("derivative of a constant vanishes at every order") {
    auto g = make_grid(2.0, 32);
    const Field c = sample(g, [](double) { return 3.5; });
    for (int order = 1; order <= 4; ++order) {
        const Field d = derivative(c, order);
        CHECK(linf_norm(d) <= 1e-10);
    }
}

TEST_CASE("derivative rejects out-of-range order") {
    auto g = make_grid(M_PI, 16);
    const Field u = Field::zeros(g);
    CHECK_THROWS_AS(derivative(u, 0), std::invalid_argument);
    CHECK_THROWS_AS(derivative(u, 5), std::invalid_argument);
}

TEST_CASE("norms and inner products") {
    auto g = make_grid(M_PI, 64);
    const Field z = Field::zeros(g);
    CHECK(mean(z) == 0.0);
    CHECK(l2_norm(z) == 0.0);
    CHECK(linf_norm(z) == 0.0);

    const Field s = sample(g, [](double x) { return std::sin(x); });
    const Field c = sample(g, [](double x) { return std::cos(x); });
    CHECK(l2_norm(s) * l2_norm(s) == doctest::Approx(M_PI).epsilon(1e-14));
    CHECK(std::abs(inner_product(s, c)) <= 1e-12);

    auto other = make_grid(M_PI, 32);
    CHECK_THROWS_AS(inner_product(s, Field::zeros(other)), GridMismatchError);
}

TEST_CASE("dealias applies the two-thirds threshold") {
    auto g = make_grid(M_PI, 12);
    Spectrum s(7, 0.0);

    SUBCASE("zero spectrum stays zero") {
        dealias(s, *g);
        for (const auto& c : s) CHECK(c == std::complex<double>(0.0));
    }
    SUBCASE("mode 5 on N=12 is above 2/3 of the Nyquist index and zeroed") {
        s[5] = {1.0, 0.5};
        dealias(s, *g);
        CHECK(s[5] == std::complex<double>(0.0));
    }
    SUBCASE("mode 4 on N=12 is retained") {
        s[4] = {1.0, 0.5};
        dealias(s, *g);
        CHECK(s[4] == std::complex<double>(1.0, 0.5));
    }
}

TEST_CASE("Parseval consistency for random fields") {
    auto g = make_grid(3.0, 128);
    SplitMix64 rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<double> v(128);
        for (auto& x : v) x = rng.uniform(-1.0, 1.0);
        const Field f(g, v);
        const double phys = l2_norm(f) * l2_norm(f);
        const double spec = spectral_l2_squared(to_spectral(f), *g);
        CHECK(std::abs(phys - spec) <= 1e-12 * phys);
    }
}

TEST_CASE("derivative composition: d(d f) = d^2 f for band-limited fields") {
    auto g = make_grid(M_PI, 128);
    for (std::uint64_t seed : {1, 2, 3}) {
        const Field f = random_trig_field(g, 20, seed);
        const Field once_twice = derivative(derivative(f, 1), 1);
        const Field d2 = derivative(f, 2);
        double rel = 0.0;
        const double scale = linf_norm(d2);
        for (int i = 0; i < f.size(); ++i)
            rel = std::max(rel, std::abs(once_twice.values[i] - d2.values[i]) / scale);
        CHECK(rel <= 1e-10);
    }
}

TEST_CASE("mean of any derivative vanishes (periodic telescoping)") {
    auto g = make_grid(2.5, 64);
    for (std::uint64_t seed : {11, 12}) {
        const Field f = random_trig_field(g, 10, seed);
        for (int order = 1; order <= 4; ++order)
            CHECK(std::abs(mean(derivative(f, order))) <= 1e-13 * linf_norm(f));
    }
}

TEST_CASE("spectral tail fraction flags energy near the band top") {
    auto g = make_grid(M_PI, 64);
    const Field low = sample(g, [](double x) { return std::sin(2 * x); });
    CHECK(spectral_tail_fraction(low, g->nyquist_index()) <= 1e-25);

    const Field high = sample(g, [](double x) { return std::sin(30 * x); });
    CHECK(spectral_tail_fraction(high, g->nyquist_index()) == doctest::Approx(1.0));
}
