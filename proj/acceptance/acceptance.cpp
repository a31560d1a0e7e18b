// One line per acceptance criterion; exit status is the number of failures.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "chlab/connectivity.hpp"
#include "chlab/errors.hpp"
#include "chlab/landmarks.hpp"
#include "chlab/polyroots.hpp"
#include "chlab/render.hpp"

using namespace chlab;

namespace {

// Pinned tolerances.
constexpr double kBoundaryTol = 1e-8;
constexpr double kDiskMargin = 1e-2;
constexpr double kOrderTol = 0.2;
constexpr double kPrecriticalTol = 1e-8;
constexpr double kSymmetryTol = 1e-10;
constexpr double kSemiconjugacyTol = 1e-9;
constexpr double kCatFraction = 0.95;
constexpr double kCatShrink = 0.05;

struct Result {
    bool pass;
    std::string detail;
};

// Multiplier of infinity read off O'(z) ~ 1/lambda for large z.
Complex infinity_lambda(const FamilyParams& p) {
    return 1.0 / eval_derivative(p, std::polar(1e8, 0.3));
}

Complex strange_lambda(const FamilyParams& p) {
    for (const auto& f : fixed_points(p))
        if (f.kind == FixedPointKind::Strange) return eval_derivative(p, f.location.value());
    throw std::logic_error("no strange fixed point");
}

Result stability_disks_sweep() {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    double worst_boundary = 0;
    int bad_inside = 0, bad_outside = 0, samples = 0;
    for (int n : {2, 3, 10, 25, 100}) {
        const auto [inf_disk, strange_disk] = stability_disks(n);
        for (const StabilityDisk& d : {inf_disk, strange_disk}) {
            auto lambda = [&](Complex a) {
                const FamilyParams p{n, a};
                return d.subject == DiskSubject::InfinityFixed ? infinity_lambda(p) : strange_lambda(p);
            };
            for (int k = 0; k < 64; ++k) {
                const double theta = 2 * M_PI * (k + 0.5) / 64;
                worst_boundary = std::max(worst_boundary,
                                          std::abs(std::abs(lambda(d.center + std::polar(d.radius, theta))) - 1.0));
                const double r_in = (d.radius - kDiskMargin) * std::sqrt(unit(rng));
                if (!(std::abs(lambda(d.center + std::polar(r_in, 2 * M_PI * unit(rng)))) < 1.0)) ++bad_inside;
                const double r_out = d.radius + kDiskMargin + 2.0 * unit(rng);
                if (!(std::abs(lambda(d.center + std::polar(r_out, 2 * M_PI * unit(rng)))) > 1.0)) ++bad_outside;
                samples += 3;
            }
        }
    }
    char buf[160];
    std::snprintf(buf, sizeof buf, "%d samples, max ||lambda|-1| on boundary %.2e, interior misses %d, exterior misses %d",
                  samples, worst_boundary, bad_inside, bad_outside);
    return {worst_boundary < kBoundaryTol && bad_inside == 0 && bad_outside == 0, buf};
}

Result convergence_order() {
    std::string detail;
    bool ok = true;
    for (int n : {2, 3, 10}) {
        const std::vector<std::pair<Complex, double>> cases{{order4_alpha(n), 4.0}, {0.0, 3.0}, {0.5, 3.0}};
        for (const auto& [a, want] : cases) {
            const double got = estimate_convergence_order({n, a}, 0).order;
            ok = ok && std::abs(got - want) <= kOrderTol;
            char buf[64];
            std::snprintf(buf, sizeof buf, "%sn=%d a=%.4g:%.3f", detail.empty() ? "" : " ", n, a.real(), got);
            detail += buf;
        }
    }
    return {ok, detail};
}

Result connectivity_regression() {
    struct Case {
        int n;
        Complex alpha;
        bool connected;
    };
    const std::vector<Case> cases{{3, {0.2, 1.592}, false}, {3, {0, 2}, false},  {3, {0.2, 1.4}, false},
                                  {3, {0, 4}, false},       {25, {0.2, 1.4}, false}, {25, {0, 2}, false},
                                  {3, {5.0 / 6.0, 0}, true}, {3, {2.5, 0}, true},    {2, {2, 0}, true}};
    int good = 0;
    std::string misses;
    for (const Case& c : cases) {
        const ConnectivityVerdict v = classify_julia({c.n, c.alpha}, 512);
        if (v.julia_connected == c.connected && v.confidence == Confidence::Resolved) {
            ++good;
        } else {
            misses += " [" + verdict_record({c.n, c.alpha}, v) + "]";
        }
    }
    return {good == static_cast<int>(cases.size()),
            std::to_string(good) + "/" + std::to_string(cases.size()) + " verdicts match and Resolved" + misses};
}

Result degenerate_structure() {
    bool ok = true;
    std::string detail;
    const Complex target{0.37, -0.21};
    for (int n : {3, 5, 10}) {
        for (const auto& [a, want] : {std::pair{halley_alpha(), n + 1}, std::pair{upper_degenerate_alpha(n), 2 * n - 1}}) {
            const FamilyParams p{n, a};
            const auto sols = all_roots(preimage_polynomial(p, SpherePoint{target}));
            bool mapped = true;
            for (const Complex& z : sols) mapped = mapped && std::abs(eval(p, z).value() - target) < 1e-6;
            ok = ok && operator_degree(p) == want && static_cast<int>(sols.size()) == want && mapped;
        }
    }
    detail += "degrees n+1 and 2n-1 confirmed by preimage counts for n=3,5,10;";
    IterationBudget b = IterationBudget::parameter_plane();
    b.cycle_detection = true;
    for (int n : {2, 3, 5}) {
        const FamilyParams p{n, upper_degenerate_alpha(n)};
        const OrbitOutcome o = iterate_orbit(p, Complex{0.01, 0.01}, b);
        const auto* cyc = std::get_if<CycleDetected>(&o);
        const bool super_two_cycle = cyc && cyc->period == 2 && std::abs(cyc->multiplier_estimate) < 1e-6 &&
                                     (chordal_distance(cyc->representative, 0.0) < 1e-6 ||
                                      chordal_distance(cyc->representative, SpherePoint::infinity()) < 1e-6);
        const bool want = n > 2;
        ok = ok && super_two_cycle == want;
        detail += " n=" + std::to_string(n) + (super_two_cycle ? ":superattracting 2-cycle" : ":no superattracting 2-cycle");
    }
    return {ok, detail};
}

Result precritical() {
    bool ok = true;
    double worst = 0;
    for (int n : {3, 10, 25}) {
        for (double sign : {1.0, -1.0}) {
            const Complex a = Complex{1.0, sign * std::sqrt(2.0 * (n - 1))} / double(n - 1);
            const FamilyParams p{n, a};
            const SpherePoint c1 = principal_free_critical(p);
            const SpherePoint w1 = eval(p, c1);
            const SpherePoint w2 = eval(p, w1);
            worst = std::max(worst, std::abs(w1.value()));
            ok = ok && w1.is_finite() && std::abs(w1.value()) < kPrecriticalTol &&
                 chordal_distance(w2, SpherePoint::infinity()) < kPrecriticalTol;
        }
    }
    char buf[120];
    std::snprintf(buf, sizeof buf, "max |O(c1)| = %.2e, second iterates within %.0e of infinity", worst,
                  kPrecriticalTol);
    return {ok, buf};
}

Result preimage_multiplicity() {
    bool ok = true;
    std::string detail;
    for (int n : {2, 3}) {
        for (const auto& [a, want] : {std::pair{Complex{0.7, 0}, 3}, std::pair{order4_alpha(n), 4}}) {
            const FamilyParams p{n, a};
            const auto sols = all_roots(preimage_polynomial(p, SpherePoint{1.0}));
            const int cluster = static_cast<int>(roots_near(sols, 1.0, kSelfClusterRadius).size());
            ok = ok && cluster == want && static_cast<int>(sols.size()) == operator_degree(p);
            detail += " n=" + std::to_string(n) + " a=" + format_double(a.real()) + ":" + std::to_string(cluster) +
                      "/" + std::to_string(sols.size());
        }
    }
    return {ok, "cluster/total" + detail};
}

Result symmetry_suite() {
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> u(-2.5, 2.5);
    std::uniform_int_distribution<int> pick_n(2, 25);
    double worst = 0;
    int orbit_mismatch = 0;
    for (int t = 0; t < 1000; ++t) {
        const int n = pick_n(rng);
        const FamilyParams p{n, Complex{u(rng), u(rng)}};
        const Complex z{u(rng), u(rng)};
        const int k = t % n;
        const Complex xi = unit_root(k, n);
        const SpherePoint a = eval(p, xi * z), b = eval(p, z);
        if (a.is_finite() && b.is_finite())
            worst = std::max(worst, std::abs(a.value() - xi * b.value()) / std::max(1e-300, std::abs(b.value())));
        else if (a.is_finite() != b.is_finite())
            worst = 1;
        const OrbitOutcome oa = iterate_orbit(p, z, IterationBudget::dynamical_plane());
        const OrbitOutcome ob = iterate_orbit(p, xi * z, IterationBudget::dynamical_plane());
        if (oa.index() != ob.index()) {
            ++orbit_mismatch;
        } else if (const auto* ra = std::get_if<ConvergedToRoot>(&oa)) {
            const auto& rb = std::get<ConvergedToRoot>(ob);
            if (rb.root_index != (ra->root_index + k) % n || rb.iterations != ra->iterations) ++orbit_mismatch;
        }
    }
    char buf[120];
    std::snprintf(buf, sizeof buf, "1000 trials, max relative error %.2e, orbit mismatches %d", worst, orbit_mismatch);
    return {worst < kSymmetryTol && orbit_mismatch == 0, buf};
}

Result semiconjugacy() {
    std::mt19937_64 rng(123);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    std::uniform_int_distribution<int> pick_n(2, 25);
    double worst = 0;
    for (int t = 0; t < 1000; ++t) {
        const int n = pick_n(rng);
        const FamilyParams p{n, Complex{u(rng), u(rng)}};
        const Complex z{u(rng), u(rng)};
        const SpherePoint lhs = reduced_map(p, ipow(z, n));
        const SpherePoint o = eval(p, z);
        const Complex rhs = o.is_infinite() ? Complex{INFINITY, 0} : ipow(o.value(), n);
        const bool rhs_inf = !is_finite(rhs);
        if (lhs.is_infinite() || rhs_inf) {
            if (lhs.is_infinite() != rhs_inf) worst = 1;
            continue;
        }
        worst = std::max(worst, std::abs(lhs.value() - rhs) / std::abs(rhs));
    }
    char buf[100];
    std::snprintf(buf, sizeof buf, "1000 samples, max relative error %.2e", worst);
    return {worst < kSemiconjugacyTol, buf};
}

int border_black_regions(const PlaneImage& img) {
    const int w = img.spec.width, h = img.spec.height;
    std::vector<char> seen(static_cast<std::size_t>(w) * h, 0);
    auto black = [&](int c, int r) { return img.outcome(c, r).root_index == kNoRoot; };
    int regions = 0;
    for (int r = 0; r < h; ++r)
        for (int c = 0; c < w; ++c) {
            if (r > 0 && c > 0 && r < h - 1 && c < w - 1) continue;
            if (!black(c, r) || seen[static_cast<std::size_t>(r * w + c)]) continue;
            ++regions;
            std::vector<std::pair<int, int>> stack{{c, r}};
            seen[static_cast<std::size_t>(r * w + c)] = 1;
            while (!stack.empty()) {
                const auto [x, y] = stack.back();
                stack.pop_back();
                const int nb[4][2] = {{x + 1, y}, {x - 1, y}, {x, y + 1}, {x, y - 1}};
                for (const auto& q : nb) {
                    if (q[0] < 0 || q[1] < 0 || q[0] >= w || q[1] >= h) continue;
                    auto& s = seen[static_cast<std::size_t>(q[1] * w + q[0])];
                    if (!s && black(q[0], q[1])) {
                        s = 1;
                        stack.push_back({q[0], q[1]});
                    }
                }
            }
        }
    return regions;
}

Result renderer_determinism() {
    bool identical = true;
    std::string detail;
    int fingers = 0;
    for (const char* id : {"param-n2", "dynam-n3-a2.5"}) {
        PlaneSpec s = find_preset(id)->spec;
        s.width = s.height = 64;
        const PlaneImage ref = render(s, 1);
        const auto bytes = encode_ppm(ref);
        for (int workers : {1, 2, 4, 8}) identical = identical && encode_ppm(render(s, workers)) == bytes;
        char buf[64];
        std::snprintf(buf, sizeof buf, "%s fnv1a %016llx; ", id, static_cast<unsigned long long>(fnv1a(bytes)));
        detail += buf;
        if (std::string(id) == "dynam-n3-a2.5") fingers = border_black_regions(ref);
    }
    detail += "black regions on the frame: " + std::to_string(fingers);
    return {identical && fingers >= 3, detail};
}

Result cat_set_probe() {
    PlaneSpec grid = find_preset("param-n3")->spec;
    grid.width = grid.height = 200;
    const auto [inf_disk, strange_disk] = stability_disks(3);
    const IterationBudget b = IterationBudget::parameter_plane();
    int in_inf = 0, cat_inf = 0, in_str = 0, cat_str = 0;
    for (int r = 0; r < 200; ++r)
        for (int c = 0; c < 200; ++c) {
            const Complex a = grid.pixel_center(c, r);
            const bool inside_inf = std::abs(a - inf_disk.center) < inf_disk.radius * (1 - kCatShrink);
            const bool inside_str = std::abs(a - strange_disk.center) < strange_disk.radius * (1 - kCatShrink);
            if (!inside_inf && !inside_str) continue;
            bool cat = true;
            try {
                cat = cat_set_membership({3, a}, b);
            } catch (const DegenerateParameter&) {
            }
            if (inside_inf) ++in_inf, cat_inf += cat;
            if (inside_str) ++in_str, cat_str += cat;
        }
    const double f_inf = double(cat_inf) / in_inf, f_str = double(cat_str) / in_str;
    char buf[120];
    std::snprintf(buf, sizeof buf, "infinity disk %d/%d (%.3f), strange disk %d/%d (%.3f)", cat_inf, in_inf, f_inf,
                  cat_str, in_str, f_str);
    return {in_inf > 0 && in_str > 0 && f_inf >= kCatFraction && f_str >= kCatFraction, buf};
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Result()>>> criteria{
        {"stability-disk sweep", stability_disks_sweep},
        {"order of convergence", convergence_order},
        {"connectivity regression", connectivity_regression},
        {"degenerate structure", degenerate_structure},
        {"precritical parameters", precritical},
        {"preimage multiplicity", preimage_multiplicity},
        {"symmetry suite", symmetry_suite},
        {"semiconjugacy", semiconjugacy},
        {"renderer determinism", renderer_determinism},
        {"cat-set probe", cat_set_probe},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto start = std::chrono::steady_clock::now();
        Result r;
        try {
            r = criteria[i].second();
        } catch (const std::exception& e) {
            r = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("%s %2zu %-24s %s (%.1fs)\n", r.pass ? "PASS" : "FAIL", i + 1, criteria[i].first,
                    r.detail.c_str(), secs);
        std::fflush(stdout);
        failures += !r.pass;
    }
    return failures;
}
