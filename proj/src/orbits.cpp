#include "chlab/orbits.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "chlab/errors.hpp"
#include "chlab/landmarks.hpp"

namespace chlab {

RootTable::RootTable(int n) : half_gap_(std::sin(std::numbers::pi / n)) {
    roots_.reserve(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) roots_.push_back(unit_root(k, n));
}

int RootTable::find(const Complex& w, double tol) const noexcept {
    const int n = size();
    if (tol < half_gap_) {
        // At most one root can be within tol; it is the one nearest in argument.
        const double turns = std::arg(w) * n / (2.0 * std::numbers::pi);
        int k = static_cast<int>(std::lround(turns)) % n;
        if (k < 0) k += n;
        return std::abs(w - roots_[static_cast<std::size_t>(k)]) < tol ? k : -1;
    }
    for (int k = 0; k < n; ++k)
        if (std::abs(w - roots_[static_cast<std::size_t>(k)]) < tol) return k;
    return -1;
}

OrbitEngine::OrbitEngine(const FamilyParams& p, const IterationBudget& budget)
    : map_(p), roots_(p.n), budget_(budget) {}

OrbitOutcome OrbitEngine::run(const SpherePoint& seed) const {
    SpherePoint x = seed;
    // Brent's cycle finding on the chordal metric.
    SpherePoint tortoise = seed;
    int power = 1;
    int lam = 1;
    for (int k = 0;; ++k) {
        if (x.is_finite()) {
            const int idx = roots_.find(x.value(), budget_.root_tolerance);
            if (idx >= 0) return ConvergedToRoot{idx, k};
        }
        if (k == budget_.max_iterations) break;
        const SpherePoint next = map_(x);
        if (next == x) return ConvergedToPoint{x, k + 1};
        x = next;
        if (budget_.cycle_detection) {
            if (chordal_distance(tortoise, x) < budget_.point_tolerance) {
                // Root check first: a converging root orbit is not a cycle.
                if (x.is_finite() && roots_.find(x.value(), budget_.root_tolerance) >= 0) continue;
                return resolve_cycle(x, lam, k + 1);
            }
            if (power == lam) {
                tortoise = x;
                power *= 2;
                lam = 0;
            }
            ++lam;
        }
    }
    return MaxIterations{x};
}

OrbitOutcome OrbitEngine::resolve_cycle(const SpherePoint& x, int lam, int iterations) const {
    int period = lam;
    for (int d = 1; d < lam; ++d) {
        if (lam % d != 0) continue;
        SpherePoint y = x;
        for (int j = 0; j < d; ++j) y = map_(y);
        if (chordal_distance(x, y) < budget_.point_tolerance) {
            period = d;
            break;
        }
    }
    if (period == 1) {
        // Linear convergence to infinity stops at large but finite iterates.
        if (chordal_distance(x, SpherePoint::infinity()) < 1e-6) return ConvergedToPoint{SpherePoint::infinity(), iterations};
        return ConvergedToPoint{x, iterations};
    }
    return CycleDetected{period, x, cycle_multiplier(x, period), iterations};
}

namespace {

// Chart around a point: identity near the unit disk, inversion elsewhere.
bool inverted_chart(const SpherePoint& x) { return x.is_infinite() || std::norm(x.value()) > 1.0; }

SpherePoint from_chart(const SpherePoint& base, const Complex& zeta) {
    if (!inverted_chart(base)) return SpherePoint{zeta};
    if (zeta == Complex{}) return SpherePoint::infinity();
    return SpherePoint{1.0 / zeta};
}

Complex to_chart(const SpherePoint& base, const SpherePoint& z) {
    if (!inverted_chart(base)) return z.is_infinite() ? Complex{INFINITY, 0.0} : z.value();
    if (z.is_infinite()) return {};
    return 1.0 / z.value();
}

}  // namespace

Complex OrbitEngine::cycle_multiplier(const SpherePoint& x, int period) const {
    std::vector<SpherePoint> cycle{x};
    for (int j = 1; j < period; ++j) cycle.push_back(map_(cycle.back()));

    // Each factor is the derivative of the map read in the charts of the point and
    // of its image. Near-periodic points far out on the sphere need the chart factors.
    const double h = 1e-6;
    Complex product{1.0};
    for (const SpherePoint& a : cycle) {
        const SpherePoint b = map_(a);
        Complex factor;
        const bool exact = a.is_finite() && b.is_finite() && a.value() != Complex{} && b.value() != Complex{};
        if (exact) {
            factor = map_.derivative(a.value());
            const Complex za = a.value(), zb = b.value();
            if (inverted_chart(a) && inverted_chart(b)) {
                factor *= za / zb;
                factor *= za / zb;
            } else if (inverted_chart(a)) {
                factor = -(factor * za) * za;
            } else if (inverted_chart(b)) {
                factor = -(factor / zb) / zb;
            }
        }
        if (!exact || !is_finite(factor)) {
            const Complex zeta = to_chart(a, a);
            const Complex plus = to_chart(b, map_(from_chart(a, zeta + h)));
            const Complex minus = to_chart(b, map_(from_chart(a, zeta - h)));
            factor = (plus - minus) / (2.0 * h);
        }
        product *= factor;
    }
    return product;
}

OrbitOutcome iterate_orbit(const FamilyParams& p, const SpherePoint& seed, const IterationBudget& budget) {
    return OrbitEngine(p, budget).run(seed);
}

OrbitOutcome critical_orbit_fate(const FamilyParams& p, const IterationBudget& budget) {
    return iterate_orbit(p, principal_free_critical(p), budget);
}

Complex root_error_map(const ChebyshevHalleyMap& map, const Complex& delta) {
    const int n = map.params().n;
    const auto& p = map.p();
    const auto& q = map.q();
    // (1+delta)^n - 1 = n delta + eps2, eps2 = C(n,2) delta^2 + eps3.
    Complex eps2{}, eps3{};
    Complex term = delta;  // C(n,1) delta / n
    for (int k = 2; k <= n; ++k) {
        term *= delta * (double(n - k + 1) / k);
        if (k == 2) term *= double(n);  // term = C(n,2) delta^2
        eps2 += term;
        if (k >= 3) eps3 += term;
    }
    const Complex eps = double(n) * delta + eps2;

    const Complex dp1 = p[1] + 2.0 * p[2];
    const Complex dq1 = q[1] + 2.0 * q[2];
    const Complex a = dp1 - dq1;
    const Complex b = p[2] - q[2];
    // Numerator of O(z) - 1 with its vanishing delta^0..delta^2 terms removed.
    const Complex num = a * eps3 + dp1 * delta * eps2 + b * (2.0 * n * delta * eps2 + eps2 * eps2) +
                        p[2] * delta * eps * eps;
    const Complex w = 1.0 + eps;
    const Complex den = q[0] + w * (q[1] + w * q[2]);
    return num / den;
}

OrderEstimate estimate_convergence_order(const FamilyParams& p, int root_index, double initial_offset) {
    validate(p);
    if (root_index < 0 || root_index >= p.n) throw std::invalid_argument("root index out of range");
    if (!(initial_offset > 0.0)) throw std::invalid_argument("initial offset must be positive");

    const Complex xi = unit_root(root_index, p.n);
    const OrbitOutcome fate =
        iterate_orbit(p, SpherePoint{xi * (1.0 + initial_offset)}, IterationBudget::parameter_plane());
    const auto* hit = std::get_if<ConvergedToRoot>(&fate);
    if (!hit || hit->root_index != root_index)
        throw BasinEscape("seed does not converge to the requested root");

    // O(xi z) = xi O(z), so |z_k - xi| = |delta_k| with delta_{k+1} = O(1+delta_k) - 1.
    const ChebyshevHalleyMap map(p);
    OrderEstimate est{};
    Complex delta{initial_offset, 0.0};
    for (int k = 0; k < 64; ++k) {
        const double e = std::abs(delta);
        if (!(e > 0.0) || !std::isfinite(e)) break;
        est.errors.push_back(e);
        if (e < kOrderErrorFloor) break;
        delta = root_error_map(map, delta);
    }

    const auto& e = est.errors;
    for (std::size_t k = 1; k + 1 < e.size(); ++k) {
        if (e[k] < kOrderErrorFloor) break;
        if (!(e[k + 1] < e[k] && e[k] < e[k - 1])) continue;
        est.exponents.push_back(std::log(e[k + 1] / e[k]) / std::log(e[k] / e[k - 1]));
    }
    if (est.exponents.empty())
        throw DomainError("no usable error triple; increase the initial offset");

    std::vector<double> sorted = est.exponents;
    std::sort(sorted.begin(), sorted.end());
    const std::size_t m = sorted.size();
    est.order = (m % 2) ? sorted[m / 2] : 0.5 * (sorted[m / 2 - 1] + sorted[m / 2]);
    return est;
}

const char* outcome_name(const OrbitOutcome& o) noexcept {
    switch (o.index()) {
        case 0: return "ConvergedToRoot";
        case 1: return "ConvergedToPoint";
        case 2: return "CycleDetected";
        default: return "MaxIterations";
    }
}

}  // namespace chlab
