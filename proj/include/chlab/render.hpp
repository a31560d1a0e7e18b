#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "chlab/orbits.hpp"

namespace chlab {

enum class PlaneMode { ParameterPlane, DynamicalPlane };
const char* to_string(PlaneMode m) noexcept;

struct PlaneSpec {
    PlaneMode mode = PlaneMode::ParameterPlane;
    int n = 2;
    Complex fixed_alpha{};  // dynamical plane only
    double x_min = -1.4, x_max = 4.6;
    double y_min = -2.0, y_max = 2.0;
    int width = 1500, height = 1000;
    IterationBudget budget = IterationBudget::parameter_plane();

    /// Plane coordinate of the pixel center; row 0 is the top edge.
    Complex pixel_center(int col, int row) const noexcept;
    /// Pixel containing z, if inside the frame.
    std::optional<std::pair<int, int>> pixel_of(const Complex& z) const noexcept;
};

/// Throws std::invalid_argument on empty sizes, degenerate ranges or n < 2.
void validate(const PlaneSpec& spec);

struct PixelOutcome {
    int root_index;  // kNoRoot when the orbit did not reach a root
    int iterations;
};
inline constexpr int kNoRoot = -1;

using Rgb = std::array<std::uint8_t, 3>;

struct PaletteAnchor {
    double fraction;
    Rgb color;
};

struct Palette {
    std::vector<PaletteAnchor> anchors;
    Rgb non_converged{0, 0, 0};

    /// red, yellow, green, blue, purple, grey
    static Palette standard();
    /// Piecewise-linear in the fraction (clamped to [0,1]), rounded half up.
    Rgb color(double fraction) const noexcept;
    Rgb color(const PixelOutcome& o, int max_iterations) const noexcept;
};

struct PlaneImage {
    PlaneSpec spec;
    std::vector<PixelOutcome> outcomes;  // row-major, top row first
    std::vector<std::uint8_t> raster;    // RGB8, same order

    const PixelOutcome& outcome(int col, int row) const {
        return outcomes[static_cast<std::size_t>(row) * spec.width + col];
    }
    Rgb pixel(int col, int row) const;
    void set_pixel(int col, int row, const Rgb& c);
};

/// Fate of the principal free critical point for every alpha pixel. Alphas with
/// no free critical point are left unconverged (black).
PlaneImage render_parameter_plane(const PlaneSpec& spec, int workers = 0,
                                  const Palette& palette = Palette::standard());
PlaneImage render_dynamical_plane(const PlaneSpec& spec, int workers = 0,
                                  const Palette& palette = Palette::standard());
PlaneImage render(const PlaneSpec& spec, int workers = 0, const Palette& palette = Palette::standard());

/// Recomputes the raster from the outcomes.
void colorize(PlaneImage& img, const Palette& palette);

/// Filled disks of the given pixel radius; points outside the frame are skipped.
void draw_markers(PlaneImage& img, const std::vector<Complex>& points, const Rgb& color, int radius = 3);

/// Marker sets for a dynamical plane: free critical points, root 1, and the
/// solutions of O(z) = 1 other than the cluster at 1.
struct MarkerSet {
    std::vector<Complex> critical;
    std::vector<Complex> root;
    std::vector<Complex> preimages;
};
MarkerSet dynamical_markers(const FamilyParams& p);
/// Black critical points, blue root, white preimages.
void draw_standard_markers(PlaneImage& img, const MarkerSet& markers, int radius = 3);

enum class ImageFormat { PPM, PNG };
std::optional<ImageFormat> format_from_name(const std::string& name);

std::vector<std::uint8_t> encode_ppm(const PlaneImage& img);
std::vector<std::uint8_t> encode_png(const PlaneImage& img);
/// Throws IoError when the file cannot be written.
void write_image(const PlaneImage& img, const std::string& path, ImageFormat format);

/// `key = value` lines describing the spec.
std::string spec_sidecar(const PlaneSpec& spec, const std::string& figure_id = {});
void write_sidecar(const PlaneSpec& spec, const std::string& path, const std::string& figure_id = {});

/// Shortest decimal text that reads back to the same double.
std::string format_double(double x);
std::string format_complex(const Complex& z);

struct FigurePreset {
    std::string id;
    PlaneSpec spec;
    bool markers;
    std::string caption;
};
const std::vector<FigurePreset>& figure_presets();
const FigurePreset* find_preset(const std::string& id);

/// 64-bit FNV-1a over a byte buffer.
std::uint64_t fnv1a(const std::vector<std::uint8_t>& bytes) noexcept;

}  // namespace chlab
