#include <doctest.h>

#include <random>

#include "chlab/errors.hpp"
#include "chlab/landmarks.hpp"
#include "chlab/orbits.hpp"
#include "oracle.hpp"

using namespace chlab;

namespace {

IterationBudget with_cycles() {
    IterationBudget b = IterationBudget::parameter_plane();
    b.cycle_detection = true;
    return b;
}

}  // namespace

TEST_SUITE("orbits") {
TEST_CASE("budget defaults") {
    CHECK(IterationBudget::parameter_plane().max_iterations == 150);
    CHECK(IterationBudget::dynamical_plane().max_iterations == 75);
    CHECK(IterationBudget{}.root_tolerance == 1e-4);
}

TEST_CASE("seed near a root converges to it") {
    const OrbitOutcome o = iterate_orbit({3, 0.7}, 1.01, IterationBudget::dynamical_plane());
    const auto* hit = std::get_if<ConvergedToRoot>(&o);
    REQUIRE(hit);
    CHECK(hit->root_index == 0);
    CHECK(hit->iterations <= 3);
}

TEST_CASE("a root seed converges at iteration 0") {
    const OrbitOutcome o = iterate_orbit({5, 0.3}, unit_root(2, 5), IterationBudget::dynamical_plane());
    CHECK(std::get<ConvergedToRoot>(o).root_index == 2);
    CHECK(std::get<ConvergedToRoot>(o).iterations == 0);
}

TEST_CASE("{0, infinity} two-cycle at the upper degenerate value") {
    const OrbitOutcome o = iterate_orbit({3, 1.25}, Complex{0.01, 0.01}, with_cycles());
    const auto* cyc = std::get_if<CycleDetected>(&o);
    REQUIRE(cyc);
    CHECK(cyc->period == 2);
    CHECK(std::abs(cyc->multiplier_estimate) < 1e-6);
    const SpherePoint r = cyc->representative;
    CHECK((chordal_distance(r, 0.0) < 1e-6 || chordal_distance(r, SpherePoint::infinity()) < 1e-6));
}

TEST_CASE("free critical point at the superattracting strange value") {
    const OrbitOutcome o = critical_orbit_fate({3, 2.5}, with_cycles());
    const auto* pt = std::get_if<ConvergedToPoint>(&o);
    REQUIRE(pt);
    bool strange = false;
    for (const auto& f : fixed_points({3, 2.5}))
        if (f.kind == FixedPointKind::Strange && chordal_distance(f.location, pt->location) < 1e-8) strange = true;
    CHECK(strange);
}

TEST_CASE("critical orbit fates") {
    SUBCASE("order 4: critical point is a root") {
        const OrbitOutcome o = critical_orbit_fate({3, 5.0 / 6.0}, IterationBudget::parameter_plane());
        CHECK(std::get<ConvergedToRoot>(o).iterations == 0);
    }
    SUBCASE("Chebyshev: 0 then infinity") {
        const OrbitOutcome o = critical_orbit_fate({3, 0.0}, IterationBudget::parameter_plane());
        const auto& pt = std::get<ConvergedToPoint>(o);
        CHECK(pt.location.is_infinite());
        CHECK(pt.iterations == 2);
    }
    SUBCASE("Newton-like value: infinity") {
        const OrbitOutcome o = critical_orbit_fate({2, 2.0}, IterationBudget::parameter_plane());
        CHECK(std::get<ConvergedToPoint>(o).location.is_infinite());
    }
    SUBCASE("degenerate forms raise") {
        CHECK_THROWS_AS(critical_orbit_fate({3, 0.5}, IterationBudget::parameter_plane()), DegenerateParameter);
    }
}

TEST_CASE("attracting two-cycle multiplier") {
    // n = 2, alpha = 3.62 lies in the period-doubling bulb of the strange disk
    const OrbitOutcome o = critical_orbit_fate({2, 3.62}, with_cycles());
    const auto* cyc = std::get_if<CycleDetected>(&o);
    REQUIRE(cyc);
    CHECK(cyc->period == 2);
    CHECK(std::abs(cyc->multiplier_estimate) < 1.0 + 1e-6);
    // compare with the product of finite-difference derivatives along the cycle
    const Complex a = cyc->representative.value();
    const Complex b = oracle::step(2, 3.62, a);
    const Complex ref = oracle::derivative(2, 3.62, a, 1e-7) * oracle::derivative(2, 3.62, b, 1e-7);
    CHECK(std::abs(cyc->multiplier_estimate - ref) < 1e-5);
}

TEST_CASE("attracting infinity reports infinity") {
    // alpha inside the infinity disk for n = 3 (center 1.7, radius 0.3)
    const OrbitOutcome o = critical_orbit_fate({3, 1.76}, with_cycles());
    CHECK(std::get<ConvergedToPoint>(o).location.is_infinite());
}

TEST_CASE("without cycle detection slow attractors exhaust the budget") {
    const OrbitOutcome o = critical_orbit_fate({2, 3.62}, IterationBudget::parameter_plane());
    CHECK(std::holds_alternative<MaxIterations>(o));
}

TEST_CASE("orbit outcomes rotate with the seed") {
    std::mt19937_64 rng(17);
    std::uniform_int_distribution<int> pick(2, 9);
    for (int t = 0; t < 500; ++t) {
        const int n = pick(rng);
        const FamilyParams p{n, oracle::random_point(rng, 2.0)};
        const Complex z = oracle::random_point(rng, 2.0);
        const int k = t % n;
        const OrbitOutcome a = iterate_orbit(p, z, IterationBudget::dynamical_plane());
        const OrbitOutcome b = iterate_orbit(p, unit_root(k, n) * z, IterationBudget::dynamical_plane());
        REQUIRE(a.index() == b.index());
        if (const auto* ha = std::get_if<ConvergedToRoot>(&a)) {
            const auto& hb = std::get<ConvergedToRoot>(b);
            CHECK(hb.root_index == (ha->root_index + k) % n);
            CHECK(hb.iterations == ha->iterations);
        }
    }
}

TEST_CASE("identical inputs give identical outcomes") {
    const FamilyParams p{4, Complex{0.3, 1.2}};
    for (Complex z : {Complex{0.4, 0.4}, Complex{-1.3, 0.2}, Complex{2, -2}}) {
        const OrbitOutcome a = iterate_orbit(p, z, with_cycles());
        const OrbitOutcome b = iterate_orbit(p, z, with_cycles());
        REQUIRE(a.index() == b.index());
        if (const auto* ra = std::get_if<ConvergedToRoot>(&a)) {
            CHECK(ra->iterations == std::get<ConvergedToRoot>(b).iterations);
        }
    }
}

TEST_CASE("root table lookup") {
    for (int n : {2, 3, 17}) {
        const RootTable t(n);
        for (int k = 0; k < n; ++k) {
            CHECK(t.find(t[k] * Complex{1, 5e-5}, 1e-4) == k);
            CHECK(t.find(t[k] * 1.001, 1e-4) == -1);
            // wide tolerance goes through the full scan
            CHECK(t.find(t[k] * 0.9, 2.0) == 0);
        }
    }
}

TEST_CASE("error map coefficient identities") {
    for (int n : {2, 3, 10}) {
        for (Complex a : {Complex{0.7, 0}, Complex{0.2, 1.592}, halley_alpha(), upper_degenerate_alpha(n),
                          newton_like_alpha(n)}) {
            const ChebyshevHalleyMap m({n, a});
            const auto& p = m.p();
            const auto& q = m.q();
            const Complex P1 = p[0] + p[1] + p[2], Q1 = q[0] + q[1] + q[2];
            const Complex A = (p[1] + 2.0 * p[2]) - (q[1] + 2.0 * q[2]);
            const Complex B = p[2] - q[2];
            const double scale = 1.0 + std::abs(P1) + n * n * std::abs(B);
            CHECK(std::abs(P1 - Q1) < 1e-12 * scale);
            CHECK(std::abs(P1 + double(n) * A) < 1e-12 * scale);
            CHECK(std::abs(A * (n * (n - 1) / 2.0) + double(n) * (p[1] + 2.0 * p[2]) + double(n * n) * B) <
                  1e-12 * scale * n * n);
        }
    }
}

TEST_CASE("error map matches direct evaluation away from the root") {
    for (int n : {2, 3, 10}) {
        const ChebyshevHalleyMap m({n, Complex{0.4, 0.3}});
        for (Complex d : {Complex{1e-2, 0}, Complex{-3e-2, 2e-2}, Complex{0, 5e-3}}) {
            const Complex direct = m(1.0 + d).value() - 1.0;
            CHECK(std::abs(root_error_map(m, d) - direct) < 1e-10 * std::abs(direct) + 1e-15);
        }
    }
}

TEST_CASE("convergence order") {
    CHECK(estimate_convergence_order({3, 5.0 / 6.0}, 0).order == doctest::Approx(4).epsilon(0.05));
    CHECK(estimate_convergence_order({3, 0.0}, 0).order == doctest::Approx(3).epsilon(0.066));
    CHECK(estimate_convergence_order({10, 0.5}, 0).order == doctest::Approx(3).epsilon(0.066));
    CHECK(estimate_convergence_order({2, 1.0}, 1).order == doctest::Approx(4).epsilon(0.05));
    const OrderEstimate e = estimate_convergence_order({3, 0.7}, 0);
    CHECK(e.errors.front() == doctest::Approx(1e-2));
    CHECK_FALSE(e.exponents.empty());
}

TEST_CASE("order estimation outside the basin") {
    // alpha = 2.5: a large offset leaves the immediate basin
    CHECK_THROWS_AS(estimate_convergence_order({3, 2.5}, 0, 0.6), BasinEscape);
    CHECK_THROWS_AS(estimate_convergence_order({3, 0.7}, 5), std::invalid_argument);
}

TEST_CASE("outcome names") {
    CHECK(std::string(outcome_name(OrbitOutcome{ConvergedToRoot{0, 1}})) == "ConvergedToRoot");
    CHECK(std::string(outcome_name(OrbitOutcome{MaxIterations{}})) == "MaxIterations");
}
}
