#include "chlab/polyroots.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "chlab/errors.hpp"

namespace chlab {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

struct NewtonTerms {
    Complex ratio;     // q(z) / q'(z)
    double residual;   // |q(z)|, possibly rescaled by |z|^-deg
    double bound;      // rounding bound for `residual`
};

// q/q' at z. For |z| > 1 evaluates the reversed polynomial in 1/z so nothing
// overflows; residual and bound are then scaled by |z|^-deg consistently.
NewtonTerms newton_terms(const std::vector<Complex>& c, const Complex& z) {
    const int d = static_cast<int>(c.size()) - 1;
    if (std::norm(z) <= 1.0) {
        Complex p = c[d], dp{};
        double b = std::abs(c[d]);
        const double az = std::abs(z);
        for (int k = d - 1; k >= 0; --k) {
            dp = dp * z + p;
            p = p * z + c[k];
            b = b * az + std::abs(c[k]);
        }
        return {p / dp, std::abs(p), b * kEps * (4 * d + 2)};
    }
    const Complex y = 1.0 / z;
    const double ay = std::abs(y);
    Complex r = c[0], dr{};
    double b = std::abs(c[0]);
    for (int k = 1; k <= d; ++k) {
        dr = dr * y + r;
        r = r * y + c[k];
        b = b * ay + std::abs(c[k]);
    }
    // q(z) = z^d r(y), q'(z) = z^(d-1) (d r(y) - y r'(y))
    return {z * r / (double(d) * r - y * dr), std::abs(r), b * kEps * (4 * d + 2)};
}

double log_residual(const NewtonTerms& t, const Complex& z, int d) {
    const double base = std::log(t.residual);
    return std::norm(z) > 1.0 ? base + d * std::log(std::abs(z)) : base;
}

bool residual_ok(const ComplexPolynomial& q, const Complex& r, double* residual) {
    const int d = q.degree();
    const double scale = std::max(1.0, std::abs(r));
    // |q(r)| / scale^d, evaluated without forming scale^d.
    const auto& c = q.coefficients();
    Complex acc{};
    if (scale > 1.0) {
        const Complex y = 1.0 / r;
        for (int k = 0; k <= d; ++k) acc = acc * y + c[k];
        // acc = q(r) / r^d and |r| = scale
    } else {
        for (int k = d; k >= 0; --k) acc = acc * r + c[k];
    }
    *residual = std::abs(acc);
    return *residual <= 1e-10 * q.max_coefficient();
}

}  // namespace

ComplexPolynomial::ComplexPolynomial(std::vector<Complex> coefficients) : coeffs_(std::move(coefficients)) {
    const double big = max_coefficient();
    while (coeffs_.size() > 1 && std::abs(coeffs_.back()) <= 1e-30 * big) coeffs_.pop_back();
    if (coeffs_.empty()) coeffs_.push_back({});
}

Complex ComplexPolynomial::operator()(const Complex& z) const noexcept {
    Complex acc{};
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
    return acc;
}

double ComplexPolynomial::max_coefficient() const noexcept {
    double m = 0.0;
    for (const Complex& c : coeffs_) m = std::max(m, std::abs(c));
    return m;
}

ComplexPolynomial operator_numerator(const FamilyParams& p) {
    const ChebyshevHalleyMap map(p);
    const int n = p.n;
    std::vector<Complex> c(static_cast<std::size_t>(2 * n + 2));
    // q0 == 0 means Q(z^n) carries a factor z^n; cancel one z against the leading z.
    const int shift = (map.q()[0] == Complex{}) ? 0 : 1;
    for (int k = 0; k < 3; ++k) c[static_cast<std::size_t>(k * n + shift)] = map.p()[k];
    return ComplexPolynomial(std::move(c));
}

ComplexPolynomial operator_denominator(const FamilyParams& p) {
    const ChebyshevHalleyMap map(p);
    const int n = p.n;
    std::vector<Complex> c(static_cast<std::size_t>(2 * n + 1));
    const int shift = (map.q()[0] == Complex{}) ? -1 : 0;
    for (int k = 0; k < 3; ++k) {
        const int idx = k * n + shift;
        if (idx >= 0) c[static_cast<std::size_t>(idx)] = map.q()[k];
    }
    return ComplexPolynomial(std::move(c));
}

ComplexPolynomial preimage_polynomial(const FamilyParams& p, const SpherePoint& w) {
    const ComplexPolynomial den = operator_denominator(p);
    if (w.is_infinite()) return den;
    const ComplexPolynomial num = operator_numerator(p);
    std::vector<Complex> c(std::max(num.coefficients().size(), den.coefficients().size()));
    for (std::size_t k = 0; k < num.coefficients().size(); ++k) c[k] += num[k];
    for (std::size_t k = 0; k < den.coefficients().size(); ++k) c[k] -= w.value() * den[k];
    return ComplexPolynomial(std::move(c));
}

std::vector<Complex> all_roots(const ComplexPolynomial& q, const RootSolverOptions& options) {
    const int d = q.degree();
    if (d < 1) throw std::invalid_argument("all_roots requires degree >= 1");
    std::vector<Complex> c = q.coefficients();
    const Complex lead = c.back();
    for (Complex& x : c) x /= lead;

    if (d == 1) return {-c[0]};

    double cauchy = 0.0;
    for (int k = 0; k < d; ++k) cauchy = std::max(cauchy, std::abs(c[k]));
    cauchy += 1.0;

    std::vector<Complex> z(static_cast<std::size_t>(d));
    for (int k = 0; k < d; ++k) {
        const double theta = 2.0 * std::numbers::pi * k / d + 0.4;
        z[k] = std::polar(cauchy, theta);
    }

    std::vector<bool> done(static_cast<std::size_t>(d), false);
    int converged = 0;
    for (int sweep = 0; sweep < options.max_sweeps && converged < d; ++sweep) {
        for (int i = 0; i < d; ++i) {
            if (done[i]) continue;
            const NewtonTerms t = newton_terms(c, z[i]);
            if (t.residual <= t.bound) {
                done[i] = true;
                ++converged;
                continue;
            }
            Complex s{};
            for (int j = 0; j < d; ++j)
                if (j != i) s += 1.0 / (z[i] - z[j]);
            const Complex step = t.ratio / (1.0 - t.ratio * s);
            if (!is_finite(step)) continue;
            z[i] -= step;
            if (std::abs(step) <= kEps * std::abs(z[i])) {
                done[i] = true;
                ++converged;
            }
        }
    }

    // Newton polish; keep a step only if it lowers the residual.
    for (Complex& r : z) {
        for (int it = 0; it < 3; ++it) {
            const NewtonTerms t = newton_terms(c, r);
            const Complex cand = r - t.ratio;
            if (!is_finite(cand)) break;
            if (log_residual(newton_terms(c, cand), cand, d) < log_residual(t, r, d))
                r = cand;
            else
                break;
        }
    }

    std::vector<double> residuals(static_cast<std::size_t>(d));
    bool ok = true;
    for (int k = 0; k < d; ++k) ok = residual_ok(q, z[k], &residuals[k]) && ok;
    if (!ok) throw NoConvergence("Aberth-Ehrlich iteration did not converge", z, residuals);
    return z;
}

std::vector<Complex> roots_near(const std::vector<Complex>& roots, const Complex& center, double radius) {
    std::vector<Complex> out;
    for (const Complex& r : roots)
        if (std::abs(r - center) < radius) out.push_back(r);
    return out;
}

}  // namespace chlab
