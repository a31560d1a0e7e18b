#include "chlab/iteration_map.hpp"

#include <stdexcept>

#include "chlab/errors.hpp"

namespace chlab {

const char* to_string(OperatorForm form) noexcept {
    switch (form) {
        case OperatorForm::Generic: return "Generic";
        case OperatorForm::HalleyDegenerate: return "HalleyDegenerate";
        case OperatorForm::UpperDegenerate: return "UpperDegenerate";
        case OperatorForm::NewtonLike: return "NewtonLike";
    }
    return "?";
}

void validate(const FamilyParams& p) {
    if (p.n < 2) throw std::invalid_argument("degree n must be >= 2");
    if (!is_finite(p.alpha)) throw std::invalid_argument("alpha must be finite");
}

OperatorForm classify_form(const FamilyParams& p) {
    validate(p);
    if (std::abs(p.alpha - halley_alpha()) <= kFormTolerance) return OperatorForm::HalleyDegenerate;
    if (std::abs(p.alpha - upper_degenerate_alpha(p.n)) <= kFormTolerance)
        return OperatorForm::UpperDegenerate;
    if (std::abs(p.alpha - newton_like_alpha(p.n)) <= kFormTolerance) return OperatorForm::NewtonLike;
    return OperatorForm::Generic;
}

ChebyshevHalleyMap::ChebyshevHalleyMap(const FamilyParams& params)
    : params_(params), form_(classify_form(params)) {
    const double n = params.n;
    const Complex a = params.alpha;
    switch (form_) {
        case OperatorForm::Generic:
            p_ = {(1.0 - 2.0 * a) * (n - 1.0),
                  2.0 - 4.0 * a - 4.0 * n + 6.0 * a * n - 2.0 * a * n * n,
                  (n - 1.0) * (1.0 - 2.0 * a - 2.0 * n + 2.0 * a * n)};
            q_ = {Complex{}, 2.0 * n * a * (1.0 - n), 2.0 * n * (-a - n + a * n)};
            break;
        case OperatorForm::HalleyDegenerate:
            p_ = {Complex{n + 1.0}, Complex{n - 1.0}, Complex{}};
            q_ = {Complex{n - 1.0}, Complex{n + 1.0}, Complex{}};
            break;
        case OperatorForm::UpperDegenerate:
            p_ = {Complex{1.0}, Complex{2.0 * n - 1.0}, Complex{}};
            q_ = {Complex{}, Complex{2.0 * n - 1.0}, Complex{1.0}};
            break;
        case OperatorForm::NewtonLike:
            p_ = {Complex{n + 1.0}, Complex{2.0 * (n * n - 1.0)}, Complex{-(n - 1.0)}};
            q_ = {Complex{}, Complex{2.0 * n * n}, Complex{}};
            break;
    }
    da_ = a * (1.0 - 2.0 * a) * (n - 1.0) * (n - 1.0);
    db_ = (1.0 - 2.0 * n - 2.0 * a + 2.0 * a * n) * (-a - n + a * n);
    dc_ = a * (n - 1.0);
    de_ = a + n - a * n;

    image_of_zero_ = (q_[0] != Complex{}) ? SpherePoint{Complex{}} : SpherePoint::infinity();
    image_of_infinity_ =
        (form_ == OperatorForm::UpperDegenerate) ? SpherePoint{Complex{}} : SpherePoint::infinity();
}

int ChebyshevHalleyMap::degree() const noexcept {
    switch (form_) {
        case OperatorForm::HalleyDegenerate: return params_.n + 1;
        case OperatorForm::UpperDegenerate: return 2 * params_.n - 1;
        default: return 2 * params_.n;
    }
}

SpherePoint ChebyshevHalleyMap::operator()(const SpherePoint& z) const noexcept {
    if (z.is_infinite()) return image_of_infinity_;
    return (*this)(z.value());
}

SpherePoint ChebyshevHalleyMap::operator()(const Complex& z) const noexcept {
    if (z == Complex{}) return image_of_zero_;
    Complex num, den;
    if (std::norm(z) <= 1.0) {
        const Complex w = ipow(z, params_.n);
        num = p_[0] + w * (p_[1] + w * p_[2]);
        den = q_[0] + w * (q_[1] + w * q_[2]);
    } else {
        const Complex u = ipow(1.0 / z, params_.n);
        num = p_[2] + u * (p_[1] + u * p_[0]);
        den = q_[2] + u * (q_[1] + u * q_[0]);
    }
    if (den == Complex{}) return SpherePoint::infinity();
    return SpherePoint{z * (num / den)};
}

Complex ChebyshevHalleyMap::derivative(const Complex& z) const {
    const int ni = params_.n;
    const double n = ni;
    if (z == Complex{}) {
        if (form_ == OperatorForm::HalleyDegenerate) return {(n + 1.0) / (n - 1.0), 0.0};
        throw DomainError("operator derivative has a pole at z = 0");
    }
    const bool large = std::norm(z) > 1.0;
    // For |z| > 1 every form is rewritten in u = z^-n; the factors of w cancel.
    const Complex w = large ? ipow(1.0 / z, ni) : ipow(z, ni);
    const Complex one{1.0};
    switch (form_) {
        case OperatorForm::HalleyDegenerate: {
            const Complex s = (w - one) * (w - one);
            const Complex d = large ? (n - 1.0) * w + (n + 1.0) : (n - 1.0) + (n + 1.0) * w;
            return (n * n - 1.0) * s / (d * d);
        }
        case OperatorForm::UpperDegenerate: {
            const double k = 2.0 * n * n - 3.0 * n + 1.0;
            const Complex s = (w - one) * (w - one);
            if (large) {
                const Complex d = (2.0 * n - 1.0) * w + 1.0;
                return -k * w * s / (d * d);
            }
            const Complex d = 2.0 * n - 1.0 + w;
            return -k * s / (w * d * d);
        }
        default: {
            const Complex s = (w - one) * (w - one);
            if (large) {
                const Complex d = dc_ * w + de_;
                return s * (n - 1.0) * (da_ * w + db_) / (2.0 * n * d * d);
            }
            const Complex d = dc_ + de_ * w;
            return s * (n - 1.0) * (da_ + db_ * w) / (2.0 * n * w * d * d);
        }
    }
}

SpherePoint eval(const FamilyParams& p, const SpherePoint& z) { return ChebyshevHalleyMap(p)(z); }

Complex eval_derivative(const FamilyParams& p, const Complex& z) {
    return ChebyshevHalleyMap(p).derivative(z);
}

SpherePoint reduced_map(const FamilyParams& p, const Complex& w) {
    const SpherePoint image = eval(p, SpherePoint{principal_root(w, p.n)});
    if (image.is_infinite()) return image;
    return SpherePoint{ipow(image.value(), p.n)};
}

int operator_degree(const FamilyParams& p) { return ChebyshevHalleyMap(p).degree(); }

}  // namespace chlab
