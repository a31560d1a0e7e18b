#include "chlab/render.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include <zlib.h>

#include "chlab/connectivity.hpp"
#include "chlab/errors.hpp"
#include "chlab/landmarks.hpp"
#include "chlab/parallel.hpp"

namespace chlab {

const char* to_string(PlaneMode m) noexcept {
    return m == PlaneMode::ParameterPlane ? "parameter" : "dynamical";
}

// Offsets from the frame center are exact half-integers times the step, so
// mirrored pixels of a symmetric frame land on exactly mirrored points.
Complex PlaneSpec::pixel_center(int col, int row) const noexcept {
    const double dx = (x_max - x_min) / width;
    const double dy = (y_max - y_min) / height;
    const double cx = 0.5 * (x_min + x_max);
    const double cy = 0.5 * (y_min + y_max);
    return {cx + (col + 0.5 - 0.5 * width) * dx, cy + (0.5 * height - row - 0.5) * dy};
}

std::optional<std::pair<int, int>> PlaneSpec::pixel_of(const Complex& z) const noexcept {
    const double fx = (z.real() - x_min) / (x_max - x_min) * width;
    const double fy = (y_max - z.imag()) / (y_max - y_min) * height;
    if (!(fx >= 0 && fx < width && fy >= 0 && fy < height)) return std::nullopt;
    return std::pair{static_cast<int>(fx), static_cast<int>(fy)};
}

void validate(const PlaneSpec& spec) {
    if (spec.width < 1 || spec.height < 1) throw std::invalid_argument("image size must be positive");
    if (!(spec.x_max > spec.x_min) || !(spec.y_max > spec.y_min))
        throw std::invalid_argument("plane ranges must be non-degenerate");
    if (spec.n < 2) throw std::invalid_argument("n must be at least 2");
    if (spec.budget.max_iterations < 1) throw std::invalid_argument("max_iterations must be positive");
    if (spec.mode == PlaneMode::DynamicalPlane) validate(FamilyParams{spec.n, spec.fixed_alpha});
}

Palette Palette::standard() {
    return Palette{{{0.0, {255, 0, 0}},
                    {0.2, {255, 255, 0}},
                    {0.4, {0, 200, 0}},
                    {0.6, {0, 64, 255}},
                    {0.8, {160, 32, 240}},
                    {1.0, {128, 128, 128}}},
                   {0, 0, 0}};
}

Rgb Palette::color(double fraction) const noexcept {
    if (anchors.empty()) return non_converged;
    const double f = std::clamp(fraction, 0.0, 1.0);
    if (f <= anchors.front().fraction) return anchors.front().color;
    for (std::size_t k = 1; k < anchors.size(); ++k) {
        const PaletteAnchor& hi = anchors[k];
        if (f > hi.fraction) continue;
        const PaletteAnchor& lo = anchors[k - 1];
        const double t = (f - lo.fraction) / (hi.fraction - lo.fraction);
        Rgb out{};
        for (int c = 0; c < 3; ++c) {
            const double v = lo.color[c] + t * (double(hi.color[c]) - lo.color[c]);
            out[c] = static_cast<std::uint8_t>(std::clamp(std::floor(v + 0.5), 0.0, 255.0));
        }
        return out;
    }
    return anchors.back().color;
}

Rgb Palette::color(const PixelOutcome& o, int max_iterations) const noexcept {
    if (o.root_index == kNoRoot) return non_converged;
    return color(double(o.iterations) / max_iterations);
}

Rgb PlaneImage::pixel(int col, int row) const {
    const std::size_t i = 3 * (static_cast<std::size_t>(row) * spec.width + col);
    return {raster[i], raster[i + 1], raster[i + 2]};
}

void PlaneImage::set_pixel(int col, int row, const Rgb& c) {
    const std::size_t i = 3 * (static_cast<std::size_t>(row) * spec.width + col);
    raster[i] = c[0];
    raster[i + 1] = c[1];
    raster[i + 2] = c[2];
}

void colorize(PlaneImage& img, const Palette& palette) {
    img.raster.resize(3 * img.outcomes.size());
    for (std::size_t i = 0; i < img.outcomes.size(); ++i) {
        const Rgb c = palette.color(img.outcomes[i], img.spec.budget.max_iterations);
        std::copy(c.begin(), c.end(), img.raster.begin() + static_cast<std::ptrdiff_t>(3 * i));
    }
}

namespace {

PixelOutcome summarize(const OrbitOutcome& o) {
    if (const auto* hit = std::get_if<ConvergedToRoot>(&o)) return {hit->root_index, hit->iterations};
    return {kNoRoot, 0};
}

PlaneImage blank(const PlaneSpec& spec) {
    validate(spec);
    PlaneImage img{spec, {}, {}};
    img.outcomes.assign(static_cast<std::size_t>(spec.width) * spec.height, PixelOutcome{kNoRoot, 0});
    return img;
}

}  // namespace

PlaneImage render_parameter_plane(const PlaneSpec& spec, int workers, const Palette& palette) {
    if (spec.mode != PlaneMode::ParameterPlane) throw std::invalid_argument("spec is not a parameter plane");
    PlaneImage img = blank(spec);
    parallel_rows(spec.height, workers, [&](int row) {
        for (int col = 0; col < spec.width; ++col) {
            const FamilyParams p{spec.n, spec.pixel_center(col, row)};
            const OperatorForm form = classify_form(p);
            if (form == OperatorForm::HalleyDegenerate || form == OperatorForm::UpperDegenerate) continue;
            SpherePoint seed;
            try {
                seed = principal_free_critical(p);
            } catch (const DegenerateParameter&) {
                continue;
            }
            img.outcomes[static_cast<std::size_t>(row) * spec.width + col] =
                summarize(OrbitEngine(p, spec.budget).run(seed));
        }
    });
    colorize(img, palette);
    return img;
}

PlaneImage render_dynamical_plane(const PlaneSpec& spec, int workers, const Palette& palette) {
    if (spec.mode != PlaneMode::DynamicalPlane) throw std::invalid_argument("spec is not a dynamical plane");
    PlaneImage img = blank(spec);
    const OrbitEngine engine(FamilyParams{spec.n, spec.fixed_alpha}, spec.budget);
    parallel_rows(spec.height, workers, [&](int row) {
        for (int col = 0; col < spec.width; ++col)
            img.outcomes[static_cast<std::size_t>(row) * spec.width + col] =
                summarize(engine.run(SpherePoint{spec.pixel_center(col, row)}));
    });
    colorize(img, palette);
    return img;
}

PlaneImage render(const PlaneSpec& spec, int workers, const Palette& palette) {
    return spec.mode == PlaneMode::ParameterPlane ? render_parameter_plane(spec, workers, palette)
                                                  : render_dynamical_plane(spec, workers, palette);
}

void draw_markers(PlaneImage& img, const std::vector<Complex>& points, const Rgb& color, int radius) {
    for (const Complex& z : points) {
        const auto px = img.spec.pixel_of(z);
        if (!px) continue;
        const auto [c0, r0] = *px;
        for (int dr = -radius; dr <= radius; ++dr)
            for (int dc = -radius; dc <= radius; ++dc) {
                if (dr * dr + dc * dc > radius * radius) continue;
                const int c = c0 + dc, r = r0 + dr;
                if (c < 0 || r < 0 || c >= img.spec.width || r >= img.spec.height) continue;
                img.set_pixel(c, r, color);
            }
    }
}

MarkerSet dynamical_markers(const FamilyParams& p) {
    MarkerSet m;
    m.root.push_back(1.0);
    try {
        for (const SpherePoint& c : free_critical_points(p))
            if (c.is_finite()) m.critical.push_back(c.value());
        m.preimages = criterion_points(p).extra_preimages;
    } catch (const DegenerateParameter&) {
    }
    return m;
}

void draw_standard_markers(PlaneImage& img, const MarkerSet& markers, int radius) {
    draw_markers(img, markers.preimages, {255, 255, 255}, radius);
    draw_markers(img, markers.critical, {0, 0, 0}, radius);
    draw_markers(img, markers.root, {0, 0, 255}, radius);
}

std::optional<ImageFormat> format_from_name(const std::string& name) {
    std::string s = name;
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    if (s == "ppm") return ImageFormat::PPM;
    if (s == "png") return ImageFormat::PNG;
    return std::nullopt;
}

std::vector<std::uint8_t> encode_ppm(const PlaneImage& img) {
    const std::string header =
        "P6\n" + std::to_string(img.spec.width) + " " + std::to_string(img.spec.height) + "\n255\n";
    std::vector<std::uint8_t> out(header.begin(), header.end());
    out.insert(out.end(), img.raster.begin(), img.raster.end());
    return out;
}

namespace {

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
    for (int shift = 24; shift >= 0; shift -= 8) out.push_back(static_cast<std::uint8_t>(v >> shift));
}

void put_chunk(std::vector<std::uint8_t>& out, const char* type, const std::vector<std::uint8_t>& data) {
    put_u32(out, static_cast<std::uint32_t>(data.size()));
    const std::size_t start = out.size();
    out.insert(out.end(), type, type + 4);
    out.insert(out.end(), data.begin(), data.end());
    const uLong crc = crc32(0L, out.data() + start, static_cast<uInt>(out.size() - start));
    put_u32(out, static_cast<std::uint32_t>(crc));
}

}  // namespace

std::vector<std::uint8_t> encode_png(const PlaneImage& img) {
    const int w = img.spec.width, h = img.spec.height;
    std::vector<std::uint8_t> filtered;
    filtered.reserve(static_cast<std::size_t>(h) * (3 * w + 1));
    for (int row = 0; row < h; ++row) {
        filtered.push_back(0);
        const auto first = img.raster.begin() + static_cast<std::ptrdiff_t>(3) * row * w;
        filtered.insert(filtered.end(), first, first + 3 * w);
    }
    uLongf size = compressBound(static_cast<uLong>(filtered.size()));
    std::vector<std::uint8_t> idat(size);
    if (compress2(idat.data(), &size, filtered.data(), static_cast<uLong>(filtered.size()), 9) != Z_OK)
        throw IoError("deflate failed");
    idat.resize(size);

    std::vector<std::uint8_t> out{0x89, 'P', 'N', 'G', '\r', '\n', 0x1a, '\n'};
    std::vector<std::uint8_t> ihdr;
    put_u32(ihdr, static_cast<std::uint32_t>(w));
    put_u32(ihdr, static_cast<std::uint32_t>(h));
    ihdr.insert(ihdr.end(), {8, 2, 0, 0, 0});
    put_chunk(out, "IHDR", ihdr);
    put_chunk(out, "IDAT", idat);
    put_chunk(out, "IEND", {});
    return out;
}

namespace {

void write_bytes(const std::string& path, const std::string_view bytes) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw IoError("cannot open " + path + " for writing");
    f.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    f.flush();
    if (!f) throw IoError("write failed: " + path);
}

}  // namespace

void write_image(const PlaneImage& img, const std::string& path, ImageFormat format) {
    const std::vector<std::uint8_t> bytes = format == ImageFormat::PPM ? encode_ppm(img) : encode_png(img);
    write_bytes(path, {reinterpret_cast<const char*>(bytes.data()), bytes.size()});
}

std::string format_double(double x) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return {buf, res.ptr};
}

std::string format_complex(const Complex& z) {
    if (z.imag() == 0.0) return format_double(z.real());
    std::string im = format_double(std::abs(z.imag())) + "i";
    if (z.real() == 0.0) return (z.imag() < 0 ? "-" : "") + im;
    return format_double(z.real()) + (z.imag() < 0 ? "-" : "+") + im;
}

std::string spec_sidecar(const PlaneSpec& spec, const std::string& figure_id) {
    std::string s;
    auto line = [&](const char* key, const std::string& value) { s += std::string(key) + " = " + value + "\n"; };
    if (!figure_id.empty()) line("figure", figure_id);
    line("mode", to_string(spec.mode));
    line("n", std::to_string(spec.n));
    if (spec.mode == PlaneMode::DynamicalPlane) line("alpha", format_complex(spec.fixed_alpha));
    line("x_min", format_double(spec.x_min));
    line("x_max", format_double(spec.x_max));
    line("y_min", format_double(spec.y_min));
    line("y_max", format_double(spec.y_max));
    line("width", std::to_string(spec.width));
    line("height", std::to_string(spec.height));
    line("max_iterations", std::to_string(spec.budget.max_iterations));
    line("root_tolerance", format_double(spec.budget.root_tolerance));
    return s;
}

void write_sidecar(const PlaneSpec& spec, const std::string& path, const std::string& figure_id) {
    write_bytes(path, spec_sidecar(spec, figure_id));
}

namespace {

PlaneSpec parameter_spec(int n, double x0, double x1, double y0, double y1, int w, int h) {
    PlaneSpec s;
    s.mode = PlaneMode::ParameterPlane;
    s.n = n;
    s.x_min = x0, s.x_max = x1, s.y_min = y0, s.y_max = y1;
    s.width = w, s.height = h;
    s.budget = IterationBudget::parameter_plane();
    return s;
}

PlaneSpec dynamical_spec(int n, Complex alpha, double x0, double x1, double y0, double y1) {
    PlaneSpec s;
    s.mode = PlaneMode::DynamicalPlane;
    s.n = n;
    s.fixed_alpha = alpha;
    s.x_min = x0, s.x_max = x1, s.y_min = y0, s.y_max = y1;
    s.width = 1500, s.height = 1500;
    s.budget = IterationBudget::dynamical_plane();
    return s;
}

std::vector<FigurePreset> build_presets() {
    std::vector<FigurePreset> v;
    for (int n : {2, 3, 5, 10, 25, 100})
        v.push_back({"param-n" + std::to_string(n), parameter_spec(n, -1.4, 4.6, -2, 2, 1500, 1000), false,
                     "parameter plane, n=" + std::to_string(n)});
    for (int n : {10, 25, 100})
        v.push_back({"zoombif-n" + std::to_string(n), parameter_spec(n, -0.5, 0.7, -1, 1, 1200, 2000), false,
                     "parameter plane near alpha=0 and alpha=1/2, n=" + std::to_string(n)});
    v.push_back({"zoomsing-n10", parameter_spec(10, 1.0, 1.1, -0.05, 0.05, 1500, 1500), false,
                 "parameter plane near alpha=19/18, n=10"});
    v.push_back({"zoomsing-n25", parameter_spec(25, 0.95, 1.05, -0.05, 0.05, 1500, 1500), false,
                 "parameter plane near alpha=49/48, n=25"});

    v.push_back({"dynam-n3-a2.5", dynamical_spec(3, 2.5, -3, 3, -3, 3), false,
                 "superattracting strange fixed points, n=3"});
    v.push_back({"dynam-n10-a19_9", dynamical_spec(10, 19.0 / 9.0, 0, 2, -1, 1), false,
                 "superattracting strange fixed points, n=10"});
    v.push_back({"dynam-n3-a0.2+1.592i", dynamical_spec(3, {0.2, 1.592}, -1, 1.5, -1.25, 1.25), true,
                 "non simply connected immediate basins, n=3"});
    for (int n : {3, 25}) {
        const std::string tag = "disc-n" + std::to_string(n);
        v.push_back({tag + "-a0.2+1.4i", dynamical_spec(n, {0.2, 1.4}, -3, 3, -3, 3), false,
                     "disconnected Julia set"});
        v.push_back({tag + "-a2i", dynamical_spec(n, {0.0, 2.0}, -3, 3, -3, 3), false, "disconnected Julia set"});
    }
    for (int n : {3, 10, 25}) {
        const std::string tag = "dynam-n" + std::to_string(n) + "-";
        const double pre = std::sqrt(2.0 * (n - 1)) / (n - 1);
        v.push_back({tag + "order4", dynamical_spec(n, order4_alpha(n), -3, 3, -3, 3), false, "order 4 member"});
        v.push_back({tag + "halley", dynamical_spec(n, 0.5, -3, 3, -3, 3), false, "Halley"});
        v.push_back({tag + "chebyshev", dynamical_spec(n, 0.0, -3, 3, -3, 3), false, "Chebyshev"});
        v.push_back({tag + "superhalley", dynamical_spec(n, 1.0, -3, 3, -3, 3), false, "super-Halley"});
        v.push_back({tag + "precritical", dynamical_spec(n, {1.0 / (n - 1), pre}, -3, 3, -3, 3), false,
                     "critical points are preimages of 0"});
        v.push_back({tag + "a4i", dynamical_spec(n, {0.0, 4.0}, -3, 3, -3, 3), false, "disconnected Julia set"});
    }
    return v;
}

}  // namespace

const std::vector<FigurePreset>& figure_presets() {
    static const std::vector<FigurePreset> presets = build_presets();
    return presets;
}

const FigurePreset* find_preset(const std::string& id) {
    for (const FigurePreset& f : figure_presets())
        if (f.id == id) return &f;
    return nullptr;
}

std::uint64_t fnv1a(const std::vector<std::uint8_t>& bytes) noexcept {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (std::uint8_t b : bytes) {
        h ^= b;
        h *= 0x100000001b3ULL;
    }
    return h;
}

}  // namespace chlab
