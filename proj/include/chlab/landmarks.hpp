#pragma once

#include <string>
#include <utility>
#include <vector>

#include "chlab/iteration_map.hpp"

namespace chlab {

enum class StabilityClass { Superattracting, Attracting, Indifferent, Repelling };
const char* to_string(StabilityClass s) noexcept;

/// Threshold on |multiplier| used for every stability decision.
inline constexpr double kStabilityTolerance = 1e-10;

StabilityClass classify_stability(const Complex& multiplier) noexcept;

enum class FixedPointKind { Root, Strange, InfinityFixed };
const char* to_string(FixedPointKind k) noexcept;

struct FixedPointInfo {
    SpherePoint location;
    Complex multiplier;  // at infinity: derivative in the chart 1/z
    FixedPointKind kind;
    StabilityClass stability;
};

enum class CriticalKind { RootCritical, FreeCritical, OriginCritical, InfinityCritical };
const char* to_string(CriticalKind k) noexcept;

struct CriticalPointInfo {
    SpherePoint location;
    int multiplicity;
    CriticalKind kind;
};

enum class DiskSubject { InfinityFixed, StrangeFixed };

/// Parameter disk on which the subject fixed point(s) attract.
struct StabilityDisk {
    Complex center;
    double radius;
    DiskSubject subject;
};

enum class BifurcationLabel {
    Chebyshev,
    Halley,
    SuperHalley,
    Order4,
    UpperDegenerate,
    NewtonLike,
    SuperattractingStrange,
    PrecriticalPlus,
    PrecriticalMinus,
};
const char* to_string(BifurcationLabel l) noexcept;

struct BifurcationCatalogEntry {
    Complex alpha;
    BifurcationLabel label;
    std::string description;
};

/// Roots of unity, the strange fixed points and infinity (or the degenerate
/// replacements for alpha = 1/2 and alpha = (2n-1)/(2n-2)). Strange fixed points
/// are ordered by argument ascending.
std::vector<FixedPointInfo> fixed_points(const FamilyParams& p);

/// Multiplier shared by the n strange fixed points (Generic / NewtonLike forms).
Complex strange_fixed_multiplier(const FamilyParams& p);

/// Multiplier of the fixed point at infinity (Generic / NewtonLike / Halley forms).
Complex infinity_multiplier(const FamilyParams& p);

/// Full critical set with multiplicities; they sum to 2*degree - 2.
std::vector<CriticalPointInfo> critical_points(const FamilyParams& p);

/// The n free critical points xi * c, ordered by argument ascending. For
/// NewtonLike they all sit at infinity. Throws DegenerateParameter for the
/// degenerate forms, which have no free critical points.
std::vector<SpherePoint> free_critical_points(const FamilyParams& p);

/// Free critical point on the principal branch (xi = 1).
SpherePoint principal_free_critical(const FamilyParams& p);

/// (2n-1)/(3n-3): the unique alpha with fourth-order convergence.
Complex order4_alpha(int n);

/// Local degree of the roots as superattracting fixed points: 4 at order4_alpha, else 3.
int root_local_degree(const FamilyParams& p);

/// Disks for infinity (first) and the strange fixed points (second).
std::pair<StabilityDisk, StabilityDisk> stability_disks(int n);

std::vector<BifurcationCatalogEntry> bifurcation_catalog(int n);

}  // namespace chlab
