#include "chlab/connectivity.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

#include "chlab/errors.hpp"
#include "chlab/landmarks.hpp"
#include "chlab/parallel.hpp"
#include "chlab/polyroots.hpp"

namespace chlab {

Complex BasinGrid::pixel_center(int col, int row) const noexcept {
    const double dx = region.width / resolution;
    const double dy = region.height / resolution;
    return {region.x_min() + (col + 0.5) * dx, region.y_max() - (row + 0.5) * dy};
}

std::optional<std::pair<int, int>> BasinGrid::pixel_of(const Complex& z) const noexcept {
    const double fx = (z.real() - region.x_min()) / region.width * resolution;
    const double fy = (region.y_max() - z.imag()) / region.height * resolution;
    if (!(fx >= 0 && fx < resolution && fy >= 0 && fy < resolution)) return std::nullopt;
    return std::pair{static_cast<int>(fx), static_cast<int>(fy)};
}

int BasinGrid::label_at(const Complex& z) const noexcept {
    const auto px = pixel_of(z);
    return px ? labels[static_cast<std::size_t>(index(px->first, px->second))] : kNonConverged;
}

int BasinGrid::component_at(const Complex& z) const noexcept {
    const auto px = pixel_of(z);
    return px ? components[static_cast<std::size_t>(index(px->first, px->second))] : -1;
}

int BasinGrid::component_count() const noexcept {
    int count = 0;
    for (std::size_t i = 0; i < components.size(); ++i)
        if (components[i] == static_cast<int>(i)) ++count;
    return count;
}

bool BasinGrid::near_boundary(const Complex& z, int radius) const noexcept {
    const auto px = pixel_of(z);
    if (!px) return true;
    const auto [c0, r0] = *px;
    const int own = labels[static_cast<std::size_t>(index(c0, r0))];
    for (int r = r0 - radius; r <= r0 + radius; ++r)
        for (int c = c0 - radius; c <= c0 + radius; ++c) {
            if (r < 0 || c < 0 || r >= resolution || c >= resolution) return true;
            if (labels[static_cast<std::size_t>(index(c, r))] != own) return true;
        }
    return false;
}

bool BasinGrid::membership_unstable(const Complex& z, int component, int radius) const noexcept {
    const auto px = pixel_of(z);
    if (!px) return true;
    const auto [c0, r0] = *px;
    bool inside = false, outside = false;
    for (int r = r0 - radius; r <= r0 + radius; ++r)
        for (int c = c0 - radius; c <= c0 + radius; ++c) {
            if (r < 0 || c < 0 || r >= resolution || c >= resolution) return true;
            (components[static_cast<std::size_t>(index(c, r))] == component ? inside : outside) = true;
        }
    return inside && outside;
}

namespace {

int find_root(std::vector<int>& parent, int i) {
    while (parent[static_cast<std::size_t>(i)] != i) {
        auto& pi = parent[static_cast<std::size_t>(i)];
        pi = parent[static_cast<std::size_t>(pi)];
        i = pi;
    }
    return i;
}

void unite(std::vector<int>& parent, int a, int b) {
    a = find_root(parent, a);
    b = find_root(parent, b);
    if (a == b) return;
    // Smaller index wins so component ids are canonical.
    if (a < b) parent[static_cast<std::size_t>(b)] = a;
    else parent[static_cast<std::size_t>(a)] = b;
}

}  // namespace

BasinGrid label_basins(const FamilyParams& p, const Region& region, int resolution,
                       const IterationBudget& budget, int workers) {
    if (resolution < 64) throw std::invalid_argument("resolution must be at least 64");
    if (!(region.width > 0 && region.height > 0)) throw std::invalid_argument("empty region");
    validate(p);

    BasinGrid grid{region, resolution, {}, {}};
    const std::size_t count = static_cast<std::size_t>(resolution) * resolution;
    grid.labels.assign(count, kNonConverged);
    const OrbitEngine engine(p, budget);
    parallel_rows(resolution, workers, [&](int row) {
        for (int col = 0; col < resolution; ++col) {
            const OrbitOutcome o = engine.run(SpherePoint{grid.pixel_center(col, row)});
            if (const auto* hit = std::get_if<ConvergedToRoot>(&o))
                grid.labels[static_cast<std::size_t>(grid.index(col, row))] = hit->root_index;
        }
    });

    std::vector<int> parent(count);
    std::iota(parent.begin(), parent.end(), 0);
    for (int row = 0; row < resolution; ++row)
        for (int col = 0; col < resolution; ++col) {
            const int i = grid.index(col, row);
            const int label = grid.labels[static_cast<std::size_t>(i)];
            if (label == kNonConverged) continue;
            if (col + 1 < resolution && grid.labels[static_cast<std::size_t>(i + 1)] == label)
                unite(parent, i, i + 1);
            if (row + 1 < resolution && grid.labels[static_cast<std::size_t>(i + resolution)] == label)
                unite(parent, i, i + resolution);
        }
    grid.components.assign(count, -1);
    for (std::size_t i = 0; i < count; ++i)
        if (grid.labels[i] != kNonConverged) grid.components[i] = find_root(parent, static_cast<int>(i));
    return grid;
}

const char* to_string(Confidence c) noexcept {
    return c == Confidence::Resolved ? "Resolved" : "BoundaryAmbiguous";
}

CriterionPoints criterion_points(const FamilyParams& p) {
    CriterionPoints pts;
    pts.free_critical = free_critical_points(p);
    // Principal branch first.
    const SpherePoint c1 = principal_free_critical(p);
    std::stable_partition(pts.free_critical.begin(), pts.free_critical.end(),
                          [&](const SpherePoint& c) { return c == c1; });

    std::vector<Complex> sols = all_roots(preimage_polynomial(p, SpherePoint{1.0}));
    std::sort(sols.begin(), sols.end(),
              [](const Complex& a, const Complex& b) { return std::abs(a - 1.0) < std::abs(b - 1.0); });
    const std::size_t m = static_cast<std::size_t>(root_local_degree(p));
    if (sols.size() < m || std::abs(sols[m - 1] - 1.0) > kSelfClusterRadius)
        throw NoConvergence("self-preimage cluster at 1 not resolved", sols, {});
    pts.self_cluster.assign(sols.begin(), sols.begin() + static_cast<std::ptrdiff_t>(m));
    pts.extra_preimages.assign(sols.begin() + static_cast<std::ptrdiff_t>(m), sols.end());
    return pts;
}

Region criterion_region(const FamilyParams& p, const CriterionPoints& pts) {
    (void)p;
    double x0 = 1.0, x1 = 1.0, y0 = 0.0, y1 = 0.0;
    auto include = [&](const Complex& z) {
        x0 = std::min(x0, z.real());
        x1 = std::max(x1, z.real());
        y0 = std::min(y0, z.imag());
        y1 = std::max(y1, z.imag());
    };
    if (!pts.free_critical.empty() && pts.free_critical.front().is_finite())
        include(pts.free_critical.front().value());
    for (const Complex& w : pts.extra_preimages) include(w);
    const double side = std::max({x1 - x0, y1 - y0, 0.5}) * 1.4;
    return {{(x0 + x1) / 2, (y0 + y1) / 2}, side, side};
}

namespace {

struct Membership {
    bool critical = false;
    bool preimage = false;
    bool ambiguous = false;
};

Membership assess(const BasinGrid& grid, const CriterionPoints& pts) {
    Membership m;
    const int home = grid.component_at(1.0);
    if (home < 0) {
        m.ambiguous = true;
        return m;
    }
    bool deciding_critical_ambiguous = false;
    for (const SpherePoint& c : pts.free_critical) {
        if (c.is_infinite() || std::abs(c.value() - 1.0) <= kSelfClusterRadius) continue;
        if (!grid.pixel_of(c.value())) continue;
        const bool in = grid.component_at(c.value()) == home;
        if (grid.membership_unstable(c.value(), home)) deciding_critical_ambiguous = true;
        m.critical = m.critical || in;
    }
    // Preimages matter only once a critical point is inside.
    bool preimage_ambiguous = false;
    for (const Complex& w : pts.extra_preimages) {
        if (grid.component_at(w) == home) m.preimage = true;
        if (grid.membership_unstable(w, home)) preimage_ambiguous = true;
    }
    m.ambiguous = deciding_critical_ambiguous || (m.critical && preimage_ambiguous);
    return m;
}

}  // namespace

ConnectivityVerdict classify_julia(const FamilyParams& p, int base_resolution, int workers) {
    const OperatorForm form = classify_form(p);
    if (form == OperatorForm::HalleyDegenerate || form == OperatorForm::UpperDegenerate)
        throw DegenerateParameter(std::string("connectivity criterion needs free critical points; form ") +
                                  to_string(form));
    const CriterionPoints pts = criterion_points(p);
    const Region region = criterion_region(p, pts);
    const IterationBudget budget = IterationBudget::dynamical_plane();

    int resolution = base_resolution;
    Membership m;
    for (int doubling = 0;; ++doubling) {
        m = assess(label_basins(p, region, resolution, budget, workers), pts);
        if (!m.ambiguous || doubling == 3) break;
        resolution *= 2;
    }
    ConnectivityVerdict v{};
    v.critical_in_immediate_basin = m.critical;
    v.extra_preimage_in_immediate_basin = m.preimage;
    v.julia_connected = !(m.critical && !m.preimage);
    v.resolution_used = resolution;
    v.confidence = m.ambiguous ? Confidence::BoundaryAmbiguous : Confidence::Resolved;
    return v;
}

bool cat_set_membership(const FamilyParams& p, const IterationBudget& budget) {
    return !std::holds_alternative<ConvergedToRoot>(critical_orbit_fate(p, budget));
}

std::string verdict_header() { return "n,alpha_re,alpha_im,verdict,confidence,resolution"; }

std::string verdict_record(const FamilyParams& p, const ConnectivityVerdict& v) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g,%s,%s,%d", p.n, p.alpha.real(), p.alpha.imag(),
                  v.julia_connected ? "connected" : "disconnected", to_string(v.confidence), v.resolution_used);
    return buf;
}

}  // namespace chlab
