#include "chlab/landmarks.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "chlab/errors.hpp"

namespace chlab {

namespace {

bool near(const Complex& a, const Complex& b) { return std::abs(a - b) <= kFormTolerance; }

void sort_by_argument(std::vector<SpherePoint>& pts) {
    std::stable_sort(pts.begin(), pts.end(), [](const SpherePoint& a, const SpherePoint& b) {
        return std::arg(a.value()) < std::arg(b.value());
    });
}

std::vector<SpherePoint> roots_sorted(const Complex& w, int n) {
    std::vector<SpherePoint> pts;
    for (const Complex& z : nth_roots(w, n)) pts.emplace_back(z);
    sort_by_argument(pts);
    return pts;
}

// z^n for the strange fixed points.
Complex strange_power(const FamilyParams& p) {
    const double n = p.n;
    const Complex a = p.alpha;
    const Complex den = 1.0 - 2.0 * a - 3.0 * n + 2.0 * a * n;
    if (den == Complex{})
        throw DegenerateParameter("alpha = (3n-1)/(2n-2): the strange fixed points merge with infinity");
    return (1.0 - 2.0 * a - n + 2.0 * a * n) / den;
}

// c^n for the free critical points.
Complex free_critical_power(const FamilyParams& p) {
    const double n = p.n;
    const Complex a = p.alpha;
    const Complex den =
        n * (2.0 * n - 1.0) - a * (4.0 * n - 1.0) * (n - 1.0) + 2.0 * a * a * (n - 1.0) * (n - 1.0);
    if (den == Complex{})
        throw DegenerateParameter("free critical point formula has a vanishing denominator");
    return a * (n - 1.0) * (n - 1.0) * (2.0 * a - 1.0) / den;
}

void require_free_criticals(OperatorForm form) {
    if (form == OperatorForm::HalleyDegenerate)
        throw DegenerateParameter(
            "alpha = 1/2: operator degenerates to degree n+1; the only critical points are the roots");
    if (form == OperatorForm::UpperDegenerate)
        throw DegenerateParameter(
            "alpha = (2n-1)/(2n-2): operator degenerates to degree 2n-1; no free critical points, "
            "{0, infinity} is a period-2 cycle");
}

}  // namespace

const char* to_string(StabilityClass s) noexcept {
    switch (s) {
        case StabilityClass::Superattracting: return "Superattracting";
        case StabilityClass::Attracting: return "Attracting";
        case StabilityClass::Indifferent: return "Indifferent";
        case StabilityClass::Repelling: return "Repelling";
    }
    return "?";
}

const char* to_string(FixedPointKind k) noexcept {
    switch (k) {
        case FixedPointKind::Root: return "Root";
        case FixedPointKind::Strange: return "Strange";
        case FixedPointKind::InfinityFixed: return "InfinityFixed";
    }
    return "?";
}

const char* to_string(CriticalKind k) noexcept {
    switch (k) {
        case CriticalKind::RootCritical: return "RootCritical";
        case CriticalKind::FreeCritical: return "FreeCritical";
        case CriticalKind::OriginCritical: return "OriginCritical";
        case CriticalKind::InfinityCritical: return "InfinityCritical";
    }
    return "?";
}

const char* to_string(BifurcationLabel l) noexcept {
    switch (l) {
        case BifurcationLabel::Chebyshev: return "Chebyshev";
        case BifurcationLabel::Halley: return "Halley";
        case BifurcationLabel::SuperHalley: return "SuperHalley";
        case BifurcationLabel::Order4: return "Order4";
        case BifurcationLabel::UpperDegenerate: return "UpperDegenerate";
        case BifurcationLabel::NewtonLike: return "NewtonLike";
        case BifurcationLabel::SuperattractingStrange: return "SuperattractingStrange";
        case BifurcationLabel::PrecriticalPlus: return "PrecriticalPlus";
        case BifurcationLabel::PrecriticalMinus: return "PrecriticalMinus";
    }
    return "?";
}

StabilityClass classify_stability(const Complex& multiplier) noexcept {
    const double m = std::abs(multiplier);
    if (m <= kStabilityTolerance) return StabilityClass::Superattracting;
    if (m < 1.0 - kStabilityTolerance) return StabilityClass::Attracting;
    if (m <= 1.0 + kStabilityTolerance) return StabilityClass::Indifferent;
    return StabilityClass::Repelling;
}

Complex strange_fixed_multiplier(const FamilyParams& p) {
    const double n = p.n;
    return (-2.0 - 2.0 * p.alpha * (n - 1.0) + 4.0 * n) / (n - 1.0);
}

Complex infinity_multiplier(const FamilyParams& p) {
    const double n = p.n;
    switch (classify_form(p)) {
        case OperatorForm::HalleyDegenerate: return {(n + 1.0) / (n - 1.0), 0.0};
        case OperatorForm::UpperDegenerate:
            throw DegenerateParameter("alpha = (2n-1)/(2n-2): infinity is not fixed, {0, infinity} is a 2-cycle");
        default: break;
    }
    const Complex beta = p.alpha * (n - 1.0);
    return 2.0 * n * (beta - n) / ((n - 1.0) * (2.0 * beta - 2.0 * n + 1.0));
}

std::vector<FixedPointInfo> fixed_points(const FamilyParams& p) {
    const OperatorForm form = classify_form(p);
    std::vector<FixedPointInfo> out;
    for (int k = 0; k < p.n; ++k)
        out.push_back({SpherePoint{unit_root(k, p.n)}, Complex{}, FixedPointKind::Root,
                       StabilityClass::Superattracting});

    const double n = p.n;
    switch (form) {
        case OperatorForm::HalleyDegenerate: {
            const Complex m{(n + 1.0) / (n - 1.0), 0.0};
            out.push_back({SpherePoint{Complex{}}, m, FixedPointKind::Strange, classify_stability(m)});
            out.push_back({SpherePoint::infinity(), m, FixedPointKind::InfinityFixed, classify_stability(m)});
            return out;
        }
        case OperatorForm::UpperDegenerate: {
            const Complex m{(2.0 * n - 1.0) / (n - 1.0), 0.0};
            for (const SpherePoint& z : roots_sorted(Complex{-1.0}, p.n))
                out.push_back({z, m, FixedPointKind::Strange, classify_stability(m)});
            return out;
        }
        default: break;
    }

    const Complex m = strange_fixed_multiplier(p);
    for (const SpherePoint& z : roots_sorted(strange_power(p), p.n))
        out.push_back({z, m, FixedPointKind::Strange, classify_stability(m)});
    const Complex mi = infinity_multiplier(p);
    out.push_back({SpherePoint::infinity(), mi, FixedPointKind::InfinityFixed, classify_stability(mi)});
    return out;
}

Complex order4_alpha(int n) { return {(2.0 * n - 1.0) / (3.0 * n - 3.0), 0.0}; }

int root_local_degree(const FamilyParams& p) {
    const OperatorForm form = classify_form(p);
    if (form == OperatorForm::Generic && near(p.alpha, order4_alpha(p.n))) return 4;
    return 3;
}

std::vector<SpherePoint> free_critical_points(const FamilyParams& p) {
    const OperatorForm form = classify_form(p);
    require_free_criticals(form);
    if (form == OperatorForm::NewtonLike) return std::vector<SpherePoint>(p.n, SpherePoint::infinity());
    return roots_sorted(free_critical_power(p), p.n);
}

SpherePoint principal_free_critical(const FamilyParams& p) {
    const OperatorForm form = classify_form(p);
    require_free_criticals(form);
    if (form == OperatorForm::NewtonLike) return SpherePoint::infinity();
    return SpherePoint{principal_root(free_critical_power(p), p.n)};
}

std::vector<CriticalPointInfo> critical_points(const FamilyParams& p) {
    const OperatorForm form = classify_form(p);
    const int root_mult = root_local_degree(p) - 1;
    std::vector<CriticalPointInfo> out;
    for (int k = 0; k < p.n; ++k)
        out.push_back({SpherePoint{unit_root(k, p.n)}, root_mult, CriticalKind::RootCritical});

    if (form == OperatorForm::HalleyDegenerate) return out;
    if (form == OperatorForm::UpperDegenerate) {
        if (p.n > 2) {
            out.push_back({SpherePoint{Complex{}}, p.n - 2, CriticalKind::OriginCritical});
            out.push_back({SpherePoint::infinity(), p.n - 2, CriticalKind::InfinityCritical});
        }
        return out;
    }
    if (p.n > 2) out.push_back({SpherePoint{Complex{}}, p.n - 2, CriticalKind::OriginCritical});
    if (form == OperatorForm::NewtonLike) {
        out.push_back({SpherePoint::infinity(), p.n, CriticalKind::FreeCritical});
        return out;
    }
    // At fourth order the free critical points are absorbed by the roots.
    if (root_mult == 3) return out;
    for (const SpherePoint& c : free_critical_points(p)) out.push_back({c, 1, CriticalKind::FreeCritical});
    return out;
}

std::pair<StabilityDisk, StabilityDisk> stability_disks(int n) {
    if (n < 2) throw std::invalid_argument("degree n must be >= 2");
    const double m = n;
    StabilityDisk infinity_disk{{(1.0 - 4.0 * m + 5.0 * m * m) / (2.0 * (m - 1.0) * (2.0 * m - 1.0)), 0.0},
                                m / (2.0 * (2.0 * m - 1.0)), DiskSubject::InfinityFixed};
    StabilityDisk strange_disk{{(2.0 * m - 1.0) / (m - 1.0), 0.0}, 0.5, DiskSubject::StrangeFixed};
    return {infinity_disk, strange_disk};
}

std::vector<BifurcationCatalogEntry> bifurcation_catalog(int n) {
    if (n < 2) throw std::invalid_argument("degree n must be >= 2");
    const double m = n;
    const double s = std::sqrt(2.0 * (m - 1.0));
    std::ostringstream cheb;
    cheb << "Chebyshev's method; the free critical points collapse onto z=0, which maps to the fixed point infinity";
    if (n > 2) cheb << " (z=0 is already critical with multiplicity " << n - 2 << ")";

    return {
        {{0.0, 0.0}, BifurcationLabel::Chebyshev, cheb.str()},
        {halley_alpha(), BifurcationLabel::Halley,
         "Halley's method; degenerate operator of degree n+1, strange fixed points collapse to 0 and infinity"},
        {{1.0, 0.0}, BifurcationLabel::SuperHalley, "super-Halley method; fourth order only for n=2"},
        {order4_alpha(n), BifurcationLabel::Order4,
         "(2n-1)/(3n-3): fourth-order convergence, free critical points coincide with the roots"},
        {upper_degenerate_alpha(n), BifurcationLabel::UpperDegenerate,
         "(2n-1)/(2n-2): degenerate operator of degree 2n-1, {0, infinity} is a period-2 cycle"},
        {newton_like_alpha(n), BifurcationLabel::NewtonLike,
         "n/(n-1): infinity is a superattracting fixed point holding the free critical points"},
        {{(2.0 * m - 1.0) / (m - 1.0), 0.0}, BifurcationLabel::SuperattractingStrange,
         "(2n-1)/(n-1): the strange fixed points are superattracting"},
        {{1.0 / (m - 1.0), s / (m - 1.0)}, BifurcationLabel::PrecriticalPlus,
         "(1+i*sqrt(2(n-1)))/(n-1): free critical points are preimages of z=0"},
        {{1.0 / (m - 1.0), -s / (m - 1.0)}, BifurcationLabel::PrecriticalMinus,
         "(1-i*sqrt(2(n-1)))/(n-1): free critical points are preimages of z=0"},
    };
}

}  // namespace chlab
