#pragma once

#include <vector>

#include "chlab/iteration_map.hpp"

namespace chlab {

/// Polynomial with complex coefficients in ascending degree order.
class ComplexPolynomial {
public:
    ComplexPolynomial() = default;
    /// Trailing coefficients below 1e-30 of the largest magnitude are trimmed.
    explicit ComplexPolynomial(std::vector<Complex> coefficients);

    int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
    const std::vector<Complex>& coefficients() const noexcept { return coeffs_; }
    const Complex& operator[](std::size_t k) const { return coeffs_[k]; }

    Complex operator()(const Complex& z) const noexcept;
    double max_coefficient() const noexcept;

private:
    std::vector<Complex> coeffs_;
};

/// Numerator and denominator of the operator as polynomials in z, with the common
/// power of z cancelled.
ComplexPolynomial operator_numerator(const FamilyParams& p);
ComplexPolynomial operator_denominator(const FamilyParams& p);

/// Polynomial whose roots are the finite solutions of O(z) = w.
ComplexPolynomial preimage_polynomial(const FamilyParams& p, const SpherePoint& w);

struct RootSolverOptions {
    int max_sweeps = 500;
};

/// All deg(q) roots (with multiplicity) by Aberth-Ehrlich simultaneous iteration
/// started on a perturbed circle of radius the Cauchy bound, then Newton-polished.
/// Throws NoConvergence when the residual bound
///   |q(r)| <= 1e-10 * max|c_k| * max(1,|r|)^deg
/// is not met after the sweep budget.
std::vector<Complex> all_roots(const ComplexPolynomial& q, const RootSolverOptions& options = {});

/// Roots of q within `radius` of `center`.
std::vector<Complex> roots_near(const std::vector<Complex>& roots, const Complex& center, double radius);

}  // namespace chlab
