#include <doctest.h>

#include <random>

#include "chlab/errors.hpp"
#include "chlab/iteration_map.hpp"
#include "oracle.hpp"

using namespace chlab;

namespace {

double rel(const Complex& a, const Complex& b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

}  // namespace

TEST_SUITE("operator") {
TEST_CASE("evaluation agrees with the defining iteration") {
    std::mt19937_64 rng(11);
    for (int n : {2, 3, 5, 10}) {
        for (Complex alpha : {Complex{0, 0}, Complex{0.7, 0}, Complex{0.2, 1.592}, Complex{-1, 2}, Complex{2.5, 0},
                              halley_alpha(), upper_degenerate_alpha(n), newton_like_alpha(n)}) {
            const FamilyParams p{n, alpha};
            for (int k = 0; k < 50; ++k) {
                const Complex z = oracle::random_point(rng);
                const SpherePoint w = eval(p, z);
                const Complex ref = oracle::step(n, alpha, z);
                if (!std::isfinite(std::abs(ref))) continue;
                REQUIRE(w.is_finite());
                CHECK(rel(w.value(), ref) < 1e-9);
            }
        }
    }
}

TEST_CASE("form classification") {
    CHECK(classify_form({3, 0.5}) == OperatorForm::HalleyDegenerate);
    CHECK(classify_form({3, 1.25}) == OperatorForm::UpperDegenerate);
    CHECK(classify_form({3, 1.5}) == OperatorForm::NewtonLike);
    CHECK(classify_form({3, 0.7}) == OperatorForm::Generic);
    CHECK(classify_form({3, Complex{0.5 + 1e-13, 0}}) == OperatorForm::Generic);
    CHECK(classify_form({3, Complex{0.5, 1e-15}}) == OperatorForm::HalleyDegenerate);
    // n = 2: the upper degenerate value and the Newton-like one are 3/2 and 2
    CHECK(classify_form({2, 1.5}) == OperatorForm::UpperDegenerate);
    CHECK(classify_form({2, 2.0}) == OperatorForm::NewtonLike);
}

TEST_CASE("invalid parameters are rejected") {
    CHECK_THROWS_AS(validate({1, 0.3}), std::invalid_argument);
    CHECK_THROWS_AS(validate({3, Complex{std::nan(""), 0}}), std::invalid_argument);
}

TEST_CASE("degree by form") {
    for (int n : {2, 3, 7}) {
        CHECK(operator_degree({n, 0.3}) == 2 * n);
        CHECK(operator_degree({n, halley_alpha()}) == n + 1);
        CHECK(operator_degree({n, upper_degenerate_alpha(n)}) == 2 * n - 1);
        CHECK(operator_degree({n, newton_like_alpha(n)}) == 2 * n);
    }
}

TEST_CASE("images of zero and infinity") {
    const SpherePoint inf = SpherePoint::infinity();
    CHECK(eval({3, 0.7}, 0.0) == inf);
    CHECK(eval({3, 0.7}, inf) == inf);
    CHECK(eval({3, halley_alpha()}, 0.0) == SpherePoint(0.0));
    CHECK(eval({3, halley_alpha()}, inf) == inf);
    CHECK(eval({3, upper_degenerate_alpha(3)}, inf) == SpherePoint(0.0));
    CHECK(eval({3, upper_degenerate_alpha(3)}, 0.0) == inf);
}

TEST_CASE("large arguments do not overflow") {
    const FamilyParams p{5, Complex{0.3, 0.2}};
    const Complex z{1e60, 3e59};
    const SpherePoint w = eval(p, z);
    REQUIRE(w.is_finite());
    // O(z) ~ z p2 / q2 as z -> infinity
    const Complex a = p.alpha;
    const double n = 5;
    const Complex ratio = (n - 1) * (1.0 - 2.0 * a - 2 * n + 2.0 * a * n) / (2 * n * (-a - n + a * n));
    CHECK(rel(w.value() / z, ratio) < 1e-12);
    CHECK(eval(p, Complex{1e-80, 1e-80}).is_infinite());
}

TEST_CASE("derivative agrees with finite differences of the iteration") {
    std::mt19937_64 rng(5);
    for (int n : {2, 3, 6}) {
        for (Complex alpha : {Complex{0.7, 0}, Complex{0.2, 1.4}, halley_alpha(), upper_degenerate_alpha(n),
                              newton_like_alpha(n), Complex{0, 0}}) {
            const FamilyParams p{n, alpha};
            for (int k = 0; k < 20; ++k) {
                const Complex z = oracle::random_point(rng, 1.5);
                if (std::abs(z) < 0.2) continue;
                const Complex d = eval_derivative(p, z);
                const Complex ref = oracle::derivative(n, alpha, z);
                CHECK(std::abs(d - ref) < 1e-6 * std::max(1.0, std::abs(ref)));
            }
            // beyond the unit circle the evaluation switches to 1/z
            const Complex far{3.1, -2.2};
            const Complex ref_far = oracle::derivative(n, alpha, far);
            CHECK(std::abs(eval_derivative(p, far) - ref_far) < 1e-6 * std::max(1.0, std::abs(ref_far)));
        }
    }
}

TEST_CASE("derivative at the origin") {
    CHECK_THROWS_AS(eval_derivative({3, 0.7}, 0.0), DomainError);
    // Halley: O(z) ~ z (n+1)/(n-1) near 0
    CHECK(std::abs(eval_derivative({3, halley_alpha()}, 0.0) - 2.0) < 1e-15);
}

TEST_CASE("roots are superattracting fixed points") {
    for (int n : {2, 3, 10}) {
        const FamilyParams p{n, Complex{0.3, -0.8}};
        for (int k = 0; k < n; ++k) {
            const Complex xi = unit_root(k, n);
            CHECK(std::abs(eval(p, xi).value() - xi) < 1e-14);
            CHECK(std::abs(eval_derivative(p, xi)) < 1e-12);
        }
    }
}

TEST_CASE("rotation symmetry and semiconjugacy") {
    std::mt19937_64 rng(99);
    for (int n : {2, 3, 4, 10}) {
        const FamilyParams p{n, Complex{0.4, 1.1}};
        for (int t = 0; t < 100; ++t) {
            const Complex z = oracle::random_point(rng);
            const Complex xi = unit_root(t % n, n);
            const SpherePoint a = eval(p, xi * z), b = eval(p, z);
            REQUIRE(a.is_finite());
            CHECK(std::abs(a.value() - xi * b.value()) <= 1e-10 * std::abs(b.value()));
            const SpherePoint s = reduced_map(p, ipow(z, n));
            CHECK(std::abs(s.value() - ipow(b.value(), n)) <= 1e-9 * std::abs(ipow(b.value(), n)));
        }
    }
}

TEST_CASE("map object exposes its coefficients") {
    const ChebyshevHalleyMap m({3, halley_alpha()});
    CHECK(m.form() == OperatorForm::HalleyDegenerate);
    CHECK(m.p()[0] == Complex{4, 0});
    CHECK(m.p()[1] == Complex{2, 0});
    CHECK(m.q()[0] == Complex{2, 0});
    CHECK(m.q()[1] == Complex{4, 0});
    CHECK(m.degree() == 4);
    CHECK(std::string(to_string(m.form())) == "HalleyDegenerate");
}
}
