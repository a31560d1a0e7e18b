#pragma once

#include <array>

#include "chlab/sphere.hpp"

namespace chlab {

/// One member of the family: the iteration with parameter alpha applied to z^n - 1.
struct FamilyParams {
    int n = 2;
    Complex alpha{};
};

/// Closed form used to evaluate the operator. The two degenerate forms drop degree;
/// NewtonLike keeps degree 2n but has its free critical points at infinity.
enum class OperatorForm { Generic, HalleyDegenerate, UpperDegenerate, NewtonLike };

const char* to_string(OperatorForm form) noexcept;

/// Absolute tolerance for matching alpha against the special values.
inline constexpr double kFormTolerance = 1e-14;

inline Complex halley_alpha() noexcept { return {0.5, 0.0}; }
inline Complex upper_degenerate_alpha(int n) noexcept { return {(2.0 * n - 1.0) / (2.0 * n - 2.0), 0.0}; }
inline Complex newton_like_alpha(int n) noexcept { return {double(n) / (n - 1.0), 0.0}; }

/// Throws std::invalid_argument unless n >= 2 and alpha is finite.
void validate(const FamilyParams& p);

OperatorForm classify_form(const FamilyParams& p);

/// The operator O(z) = z * P(z^n) / Q(z^n) with P, Q of degree <= 2.
///
/// Every form of the family fits this shape, which makes the rotation symmetry
/// O(xi z) = xi O(z) for xi^n = 1 structural. Evaluation computes z^n once; for
/// |z| > 1 the quadratics are evaluated in u = z^-n so that no intermediate
/// overflows. The images of 0 and infinity are fixed per form at construction.
class ChebyshevHalleyMap {
public:
    explicit ChebyshevHalleyMap(const FamilyParams& params);

    SpherePoint operator()(const SpherePoint& z) const noexcept;
    SpherePoint operator()(const Complex& z) const noexcept;

    /// O'(z) from the closed form of the matching operator form. Throws
    /// DomainError at z = 0 unless the form is HalleyDegenerate. Other poles
    /// return a non-finite value.
    Complex derivative(const Complex& z) const;

    const FamilyParams& params() const noexcept { return params_; }
    OperatorForm form() const noexcept { return form_; }
    int degree() const noexcept;

    /// Coefficients of P and Q in ascending powers of w = z^n.
    const std::array<Complex, 3>& p() const noexcept { return p_; }
    const std::array<Complex, 3>& q() const noexcept { return q_; }

    const SpherePoint& image_of_zero() const noexcept { return image_of_zero_; }
    const SpherePoint& image_of_infinity() const noexcept { return image_of_infinity_; }

private:
    FamilyParams params_;
    OperatorForm form_;
    std::array<Complex, 3> p_{};
    std::array<Complex, 3> q_{};
    // Generic / NewtonLike derivative: (w-1)^2 (n-1) (a + b w) / (2n w (c + e w)^2)
    Complex da_{}, db_{}, dc_{}, de_{};
    SpherePoint image_of_zero_;
    SpherePoint image_of_infinity_;
};

SpherePoint eval(const FamilyParams& p, const SpherePoint& z);
Complex eval_derivative(const FamilyParams& p, const Complex& z);

/// S(w) with S(z^n) = O(z)^n, evaluated through the principal n-th root of w.
SpherePoint reduced_map(const FamilyParams& p, const Complex& w);

int operator_degree(const FamilyParams& p);

}  // namespace chlab
