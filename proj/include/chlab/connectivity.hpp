#pragma once

#include <optional>
#include <string>
#include <vector>

#include "chlab/orbits.hpp"

namespace chlab {

/// Axis-aligned rectangle given by its center and extents.
struct Region {
    Complex center;
    double width;
    double height;

    double x_min() const noexcept { return center.real() - width / 2; }
    double y_max() const noexcept { return center.imag() + height / 2; }
};

inline constexpr int kNonConverged = -1;

/// Per-pixel root labels of a square raster over `region`, with 4-connected
/// components of equal labels. Row 0 is the top edge.
struct BasinGrid {
    Region region;
    int resolution = 0;
    std::vector<int> labels;      // root index or kNonConverged
    std::vector<int> components;  // component id, -1 on non-converged pixels

    Complex pixel_center(int col, int row) const noexcept;
    /// Pixel (col, row) containing z, if inside the region.
    std::optional<std::pair<int, int>> pixel_of(const Complex& z) const noexcept;
    int index(int col, int row) const noexcept { return row * resolution + col; }
    int label_at(const Complex& z) const noexcept;
    int component_at(const Complex& z) const noexcept;
    int component_count() const noexcept;
    /// True if any pixel within `radius` pixels (Chebyshev distance) of z's pixel
    /// differs in label from it, or if the window leaves the grid.
    bool near_boundary(const Complex& z, int radius = 2) const noexcept;
    /// True if the window around z's pixel holds pixels both inside and outside
    /// `component`, or leaves the grid.
    bool membership_unstable(const Complex& z, int component, int radius = 2) const noexcept;
};

BasinGrid label_basins(const FamilyParams& p, const Region& region, int resolution,
                       const IterationBudget& budget, int workers = 0);

enum class Confidence { Resolved, BoundaryAmbiguous };
const char* to_string(Confidence c) noexcept;

struct ConnectivityVerdict {
    bool julia_connected;
    bool critical_in_immediate_basin;
    bool extra_preimage_in_immediate_basin;
    int resolution_used;
    Confidence confidence;
};

/// Points entering the criterion for the immediate basin of z = 1.
struct CriterionPoints {
    std::vector<SpherePoint> free_critical;  // all n, principal first
    std::vector<Complex> self_cluster;       // solutions of O(z) = 1 collapsing onto 1
    std::vector<Complex> extra_preimages;    // the other solutions of O(z) = 1
};

/// Distance from 1 within which the self-preimage cluster must fall.
inline constexpr double kSelfClusterRadius = 1e-3;

/// Solves O(z) = 1 and splits off the root_local_degree(p) solutions nearest to 1.
/// Throws NoConvergence if they do not all lie within kSelfClusterRadius.
CriterionPoints criterion_points(const FamilyParams& p);

/// Square region around 1, the principal free critical point and the extra
/// preimages, with a 20% margin on each side.
Region criterion_region(const FamilyParams& p, const CriterionPoints& pts);

/// Up to 3 doublings of base_resolution while a deciding point sits within two
/// pixels of a differently labelled pixel.
ConnectivityVerdict classify_julia(const FamilyParams& p, int base_resolution = 512, int workers = 0);

/// The free critical orbit does not reach a root within the budget.
bool cat_set_membership(const FamilyParams& p, const IterationBudget& budget);

/// "n,alpha_re,alpha_im,verdict,confidence,resolution"
std::string verdict_header();
std::string verdict_record(const FamilyParams& p, const ConnectivityVerdict& v);

}  // namespace chlab
