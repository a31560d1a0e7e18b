#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>

#include "chlab/sphere.hpp"

using namespace chlab;

TEST_SUITE("sphere") {
TEST_CASE("non-finite payloads become infinity") {
    const double inf = std::numeric_limits<double>::infinity();
    CHECK(SpherePoint(Complex{inf, 0}).is_infinite());
    CHECK(SpherePoint(Complex{0, std::nan("")}).is_infinite());
    CHECK(SpherePoint(Complex{1, 2}).is_finite());
    CHECK(SpherePoint::infinity() == SpherePoint(Complex{inf, inf}));
    CHECK_FALSE(SpherePoint(1.0) == SpherePoint::infinity());
}

TEST_CASE("chordal distance landmarks") {
    const SpherePoint inf = SpherePoint::infinity();
    CHECK(chordal_distance(0.0, inf) == doctest::Approx(2.0));
    CHECK(chordal_distance(1.0, -1.0) == doctest::Approx(2.0));
    CHECK(chordal_distance(1.0, Complex{0, 1}) == doctest::Approx(std::sqrt(2.0)));
    CHECK(chordal_distance(inf, inf) == 0.0);
    CHECK(chordal_distance(Complex{0.3, -2}, Complex{0.3, -2}) == 0.0);
    CHECK(chordal_distance(Complex{2, 1}, Complex{-1, 5}) == doctest::Approx(chordal_distance(Complex{-1, 5}, Complex{2, 1})));
}

TEST_CASE("chordal distance is invariant under z -> 1/z") {
    const Complex a{0.3, 1.7}, b{-2.5, 0.4};
    CHECK(chordal_distance(a, b) == doctest::Approx(chordal_distance(1.0 / a, 1.0 / b)).epsilon(1e-12));
}

TEST_CASE("chordal distance stays finite for huge points") {
    const double d = chordal_distance(Complex{1e300, 0}, Complex{2e300, 0});
    CHECK(std::isfinite(d));
    // 2|1/a - 1/b| / sqrt((1+|1/a|^2)(1+|1/b|^2))
    CHECK(d == doctest::Approx(2 * 0.5e-300).epsilon(1e-9));
    CHECK(chordal_distance(Complex{1e300, 0}, SpherePoint::infinity()) == doctest::Approx(2e-300).epsilon(1e-9));
}

TEST_CASE("ipow matches repeated multiplication") {
    const Complex z{0.9, -0.4};
    Complex acc{1, 0};
    for (int k = 0; k <= 40; ++k) {
        CHECK(std::abs(ipow(z, k) - acc) <= 1e-13 * std::abs(acc));
        acc *= z;
    }
}

TEST_CASE("nth roots") {
    const auto r = nth_roots(Complex{8, 0}, 3);
    REQUIRE(r.size() == 3);
    CHECK(std::abs(r[0] - 2.0) < 1e-14);
    for (const Complex& z : r) CHECK(std::abs(ipow(z, 3) - 8.0) < 1e-12);
    // counter-clockwise after the principal root
    CHECK(std::arg(r[1]) == doctest::Approx(2 * std::numbers::pi / 3));
    for (const Complex& z : nth_roots(Complex{}, 4)) CHECK(z == Complex{});
    const Complex w{-1, 1e-3};
    const Complex p = principal_root(w, 5);
    CHECK(std::abs(std::arg(p)) <= std::numbers::pi / 5 + 1e-15);
    CHECK(std::abs(ipow(p, 5) - w) < 1e-14);
}

TEST_CASE("unit roots are exact on the axes") {
    CHECK(unit_root(0, 7) == Complex{1, 0});
    CHECK(unit_root(1, 4) == Complex{0, 1});
    CHECK(unit_root(2, 4) == Complex{-1, 0});
    CHECK(unit_root(3, 4) == Complex{0, -1});
    for (int k = 0; k < 9; ++k) CHECK(std::abs(ipow(unit_root(k, 9), 9) - 1.0) < 1e-13);
}
}
