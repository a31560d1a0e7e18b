#pragma once

#include <variant>
#include <vector>

#include "chlab/iteration_map.hpp"

namespace chlab {

struct IterationBudget {
    int max_iterations = 150;
    double root_tolerance = 1e-4;
    bool cycle_detection = false;
    double point_tolerance = 1e-8;

    static IterationBudget parameter_plane() { return {150, 1e-4, false, 1e-8}; }
    static IterationBudget dynamical_plane() { return {75, 1e-4, false, 1e-8}; }
};

struct ConvergedToRoot {
    int root_index;
    int iterations;
};

/// Fixed point other than a root (including infinity).
struct ConvergedToPoint {
    SpherePoint location;
    int iterations;
};

struct CycleDetected {
    int period;
    SpherePoint representative;
    Complex multiplier_estimate;
    int iterations;
};

struct MaxIterations {
    SpherePoint last;
};

using OrbitOutcome = std::variant<ConvergedToRoot, ConvergedToPoint, CycleDetected, MaxIterations>;

/// The n-th roots of unity with a fast "which root is within tol" query.
class RootTable {
public:
    explicit RootTable(int n);
    int size() const noexcept { return static_cast<int>(roots_.size()); }
    const Complex& operator[](int k) const { return roots_[static_cast<std::size_t>(k)]; }

    /// Index of the first root with |w - root| < tol, or -1.
    int find(const Complex& w, double tol) const noexcept;

private:
    std::vector<Complex> roots_;
    double half_gap_;
};

/// Iterates one operator; reusable across many seeds.
class OrbitEngine {
public:
    OrbitEngine(const FamilyParams& p, const IterationBudget& budget);

    OrbitOutcome run(const SpherePoint& seed) const;

    const ChebyshevHalleyMap& map() const noexcept { return map_; }
    const IterationBudget& budget() const noexcept { return budget_; }

private:
    OrbitOutcome resolve_cycle(const SpherePoint& x, int lam, int iterations) const;
    Complex cycle_multiplier(const SpherePoint& x, int period) const;

    ChebyshevHalleyMap map_;
    RootTable roots_;
    IterationBudget budget_;
};

/// Iterates from `seed`, checking |w - xi| < root_tolerance against every root
/// after each step (iteration 0 is the seed itself).
OrbitOutcome iterate_orbit(const FamilyParams& p, const SpherePoint& seed, const IterationBudget& budget);

/// Fate of the principal free critical point; by symmetry it decides the fate of all.
OrbitOutcome critical_orbit_fate(const FamilyParams& p, const IterationBudget& budget);

struct OrderEstimate {
    double order;
    std::vector<double> errors;     // e_k = |z_k - xi|
    std::vector<double> exponents;  // one per usable triple
};

/// Floor below which an error is not used as the middle of a triple.
inline constexpr double kOrderErrorFloor = 1e-13;

/// Median of log(e_{k+1}/e_k) / log(e_k/e_{k-1}) along the orbit of xi*(1+offset).
///
/// The errors are propagated through the exact recurrence for
/// delta = z/xi - 1, in which the terms that cancel at a superattracting root of
/// local degree >= 3 are removed analytically. Differences such as z_k - xi
/// would otherwise bottom out at rounding level before a single triple forms.
/// Throws BasinEscape if the seed does not converge to the requested root.
OrderEstimate estimate_convergence_order(const FamilyParams& p, int root_index, double initial_offset = 1e-2);

/// delta -> O(1 + delta) - 1 without cancellation; exposed for testing.
Complex root_error_map(const ChebyshevHalleyMap& map, const Complex& delta);

const char* outcome_name(const OrbitOutcome& o) noexcept;

}  // namespace chlab
