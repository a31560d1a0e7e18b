#include "chlab/sphere.hpp"

#include <numbers>
#include <stdexcept>

namespace chlab {

Complex principal_root(const Complex& w, int n) {
    if (n < 1) throw std::invalid_argument("nth root requires n >= 1");
    if (w == Complex{}) return {};
    if (n == 1) return w;
    return std::polar(std::pow(std::abs(w), 1.0 / n), std::arg(w) / n);
}

Complex unit_root(int k, int n) {
    k %= n;
    if (k < 0) k += n;
    if (k == 0) return {1.0, 0.0};
    // Exact values on the axes keep symmetric grids symmetric.
    if (4 * k == n) return {0.0, 1.0};
    if (2 * k == n) return {-1.0, 0.0};
    if (4 * k == 3 * n) return {0.0, -1.0};
    const double theta = 2.0 * std::numbers::pi * k / n;
    return {std::cos(theta), std::sin(theta)};
}

std::vector<Complex> nth_roots(const Complex& w, int n) {
    const Complex r = principal_root(w, n);
    std::vector<Complex> roots;
    roots.reserve(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) roots.push_back(k == 0 ? r : r * unit_root(k, n));
    return roots;
}

double chordal_distance(const SpherePoint& a, const SpherePoint& b) noexcept {
    if (a.is_infinite() && b.is_infinite()) return 0.0;
    if (a.is_infinite()) return 2.0 / std::hypot(1.0, std::abs(b.value()));
    if (b.is_infinite()) return 2.0 / std::hypot(1.0, std::abs(a.value()));
    Complex x = a.value();
    Complex y = b.value();
    if (x == y) return 0.0;
    // The metric is invariant under z -> 1/z; use it to keep large points in range.
    if (std::abs(x) > 1.0 && std::abs(y) > 1.0) {
        x = 1.0 / x;
        y = 1.0 / y;
    }
    return 2.0 * std::abs(x - y) / (std::hypot(1.0, std::abs(x)) * std::hypot(1.0, std::abs(y)));
}

}  // namespace chlab
