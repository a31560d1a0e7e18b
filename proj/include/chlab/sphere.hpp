#pragma once

#include <cmath>
#include <complex>
#include <vector>

namespace chlab {

using Complex = std::complex<double>;

inline bool is_finite(const Complex& z) noexcept {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

/// A point of the Riemann sphere: either a finite complex value or infinity.
/// Non-finite payloads are promoted to infinity on construction.
class SpherePoint {
public:
    constexpr SpherePoint() noexcept = default;
    SpherePoint(const Complex& z) noexcept  // NOLINT(google-explicit-constructor)
        : z_(chlab::is_finite(z) ? z : Complex{}), infinite_(!chlab::is_finite(z)) {}
    SpherePoint(double x) noexcept : SpherePoint(Complex{x, 0.0}) {}  // NOLINT

    static constexpr SpherePoint infinity() noexcept {
        SpherePoint p;
        p.infinite_ = true;
        return p;
    }

    bool is_infinite() const noexcept { return infinite_; }
    bool is_finite() const noexcept { return !infinite_; }

    /// Finite payload; zero for the point at infinity.
    const Complex& value() const noexcept { return z_; }

    friend bool operator==(const SpherePoint& a, const SpherePoint& b) noexcept {
        if (a.infinite_ || b.infinite_) return a.infinite_ == b.infinite_;
        return a.z_ == b.z_;
    }

private:
    Complex z_{};
    bool infinite_ = false;
};

/// z^k by binary exponentiation (k >= 0). Overflow propagates as non-finite.
inline Complex ipow(Complex z, int k) noexcept {
    Complex result{1.0, 0.0};
    while (k > 0) {
        if (k & 1) result *= z;
        k >>= 1;
        if (k) z *= z;
    }
    return result;
}

/// All n solutions of z^n = w. The principal root (argument in (-pi/n, pi/n])
/// comes first, the rest follow counter-clockwise. For w = 0 returns n zeros.
std::vector<Complex> nth_roots(const Complex& w, int n);

/// Principal n-th root, argument in (-pi/n, pi/n].
Complex principal_root(const Complex& w, int n);

/// k-th n-th root of unity, exp(2*pi*i*k/n).
Complex unit_root(int k, int n);

/// Chordal metric on the sphere; 2 between antipodes.
double chordal_distance(const SpherePoint& a, const SpherePoint& b) noexcept;

}  // namespace chlab
