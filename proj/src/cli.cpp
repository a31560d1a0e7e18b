#include "chlab/cli.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <istream>
#include <memory>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "chlab/connectivity.hpp"
#include "chlab/errors.hpp"
#include "chlab/landmarks.hpp"
#include "chlab/orbits.hpp"
#include "chlab/parallel.hpp"
#include "chlab/render.hpp"

namespace chlab {

namespace {

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
}

double parse_decimal(std::string_view s) {
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    double v = 0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || res.ec != std::errc{} || res.ptr != s.data() + s.size())
        throw std::invalid_argument("not a number: '" + std::string(s) + "'");
    return v;
}

double parse_real(std::string_view s) {
    const auto slash = s.find('/');
    if (slash == std::string_view::npos) return parse_decimal(s);
    const double den = parse_decimal(s.substr(slash + 1));
    if (den == 0.0) throw std::invalid_argument("zero denominator in '" + std::string(s) + "'");
    return parse_decimal(s.substr(0, slash)) / den;
}

double parse_unit_or_real(std::string_view s) {
    if (s.empty() || s == "+") return 1.0;
    if (s == "-") return -1.0;
    return parse_real(s);
}

}  // namespace

Complex parse_complex(std::string_view text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty()) throw std::invalid_argument("empty complex number");
    if (s.back() != 'i' && s.back() != 'j') return {parse_real(s), 0.0};
    s.pop_back();
    // Split at the last sign that is neither leading nor part of an exponent.
    std::size_t split = std::string::npos;
    for (std::size_t k = s.size(); k-- > 1;) {
        if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
            split = k;
            break;
        }
    }
    if (split == std::string::npos) return {0.0, parse_unit_or_real(s)};
    return {parse_real(std::string_view(s).substr(0, split)),
            parse_unit_or_real(std::string_view(s).substr(split))};
}

std::map<std::string, std::string> parse_config(std::istream& in) {
    std::map<std::string, std::string> out;
    std::string line;
    int number = 0;
    while (std::getline(in, line)) {
        ++number;
        const std::string t = trim(line);
        if (t.empty() || t.front() == '#') continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line " + std::to_string(number) + ": expected key = value");
        const std::string key = trim(std::string_view(t).substr(0, eq));
        if (key.empty()) throw std::invalid_argument("config line " + std::to_string(number) + ": empty key");
        out[key] = trim(std::string_view(t).substr(eq + 1));
    }
    return out;
}

namespace {

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

std::string fmt(const Complex& z) {
    char buf[80];
    std::snprintf(buf, sizeof buf, "%.12g%+.12gi", z.real(), z.imag());
    return buf;
}

std::string fmt(const SpherePoint& z) { return z.is_infinite() ? "inf" : fmt(z.value()); }

std::string csv_point(const SpherePoint& z) {
    if (z.is_infinite()) return "inf,inf";
    return format_double(z.value().real()) + "," + format_double(z.value().imag());
}

const char* form_note(OperatorForm form) {
    switch (form) {
        case OperatorForm::HalleyDegenerate:
            return "Halley case: the operator degenerates to a rational function of lower degree n+1";
        case OperatorForm::UpperDegenerate:
            return "the operator degenerates to a rational function of lower degree 2n-1; "
                   "{0, infinity} is a cycle of period 2, superattracting if n > 2";
        case OperatorForm::NewtonLike:
            return "alpha = n/(n-1): infinity is a superattracting fixed point absorbing the free critical points";
        default: return "";
    }
}

struct Common {
    int n = 3;
    std::string alpha = "0";
    Complex alpha_value() const { return parse_complex(alpha); }
};

void add_family(CLI::App* sub, Common& c) {
    sub->add_option("--n", c.n, "degree of z^n - 1")->check(CLI::Range(2, 100000))->capture_default_str();
    sub->add_option("--alpha", c.alpha, "parameter: a, bi, a+bi, p/q")->capture_default_str();
}

int cmd_landmarks(const FamilyParams& p, bool csv, std::ostream& out) {
    const OperatorForm form = classify_form(p);
    const std::vector<FixedPointInfo> fixed = fixed_points(p);
    const std::vector<CriticalPointInfo> critical = critical_points(p);
    const auto [inf_disk, strange_disk] = stability_disks(p.n);
    const int local = root_local_degree(p);

    if (csv) {
        out << "section,kind,re,im,multiplier_re,multiplier_im,stability,multiplicity\n";
        for (const auto& f : fixed)
            out << "fixed," << to_string(f.kind) << "," << csv_point(f.location) << ","
                << format_double(f.multiplier.real()) << "," << format_double(f.multiplier.imag()) << ","
                << to_string(f.stability) << ",\n";
        for (const auto& c : critical)
            out << "critical," << to_string(c.kind) << "," << csv_point(c.location) << ",,,," << c.multiplicity
                << "\n";
        for (const auto& d : {inf_disk, strange_disk})
            out << "disk," << (d.subject == DiskSubject::InfinityFixed ? "InfinityFixed" : "StrangeFixed") << ","
                << format_double(d.center.real()) << "," << format_double(d.center.imag()) << ","
                << format_double(d.radius) << ",,,\n";
        return kExitOk;
    }

    out << "n                 " << p.n << "\n";
    out << "alpha             " << fmt(p.alpha) << "\n";
    out << "form              " << to_string(form) << "\n";
    if (form != OperatorForm::Generic) out << "note              " << form_note(form) << "\n";
    out << "degree            " << operator_degree(p) << "\n";
    out << "root local degree " << local << (local == 4 ? "  (order of convergence 4)" : "") << "\n\n";

    out << "fixed points\n";
    out << "  " << std::left << std::setw(15) << "kind" << std::setw(36) << "location" << std::setw(16)
        << "|multiplier|" << "stability\n";
    for (const auto& f : fixed)
        out << "  " << std::setw(15) << to_string(f.kind) << std::setw(36) << fmt(f.location) << std::setw(16)
            << fmt(std::abs(f.multiplier)) << to_string(f.stability) << "\n";
    out << "\ncritical points\n";
    out << "  " << std::setw(17) << "kind" << std::setw(36) << "location" << "multiplicity\n";
    for (const auto& c : critical)
        out << "  " << std::setw(17) << to_string(c.kind) << std::setw(36) << fmt(c.location) << c.multiplicity
            << "\n";
    out << "\nstability disks (alpha plane)\n";
    out << "  infinity        center " << fmt(inf_disk.center.real()) << "  radius " << fmt(inf_disk.radius)
        << "  alpha inside: " << (std::abs(p.alpha - inf_disk.center) < inf_disk.radius ? "yes" : "no") << "\n";
    out << "  strange points  center " << fmt(strange_disk.center.real()) << "  radius "
        << fmt(strange_disk.radius)
        << "  alpha inside: " << (std::abs(p.alpha - strange_disk.center) < strange_disk.radius ? "yes" : "no")
        << "\n";
    return kExitOk;
}

int cmd_catalog(int n, bool csv, std::ostream& out) {
    const auto entries = bifurcation_catalog(n);
    if (csv) {
        out << "alpha_re,alpha_im,label,description\n";
        for (const auto& e : entries) {
            std::string d = e.description;
            if (d.find_first_of(",\"") != std::string::npos) {
                std::string quoted = "\"";
                for (char ch : d) quoted += ch == '"' ? std::string("\"\"") : std::string(1, ch);
                d = quoted + "\"";
            }
            out << format_double(e.alpha.real()) << "," << format_double(e.alpha.imag()) << ","
                << to_string(e.label) << "," << d << "\n";
        }
        return kExitOk;
    }
    for (const auto& e : entries)
        out << std::left << std::setw(24) << to_string(e.label) << std::setw(36) << fmt(e.alpha) << e.description
            << "\n";
    return kExitOk;
}

int cmd_classify(const FamilyParams& p, int resolution, int workers, bool csv, std::ostream& out) {
    const ConnectivityVerdict v = classify_julia(p, resolution, workers);
    if (csv) {
        out << verdict_header() << "\n" << verdict_record(p, v) << "\n";
        return kExitOk;
    }
    out << "julia_connected                   " << (v.julia_connected ? "true" : "false") << "\n";
    out << "critical_in_immediate_basin       " << (v.critical_in_immediate_basin ? "true" : "false") << "\n";
    out << "extra_preimage_in_immediate_basin " << (v.extra_preimage_in_immediate_basin ? "true" : "false")
        << "\n";
    out << "resolution_used                   " << v.resolution_used << "\n";
    out << "confidence                        " << to_string(v.confidence) << "\n";
    out << "verdict                           " << (v.julia_connected ? "connected" : "disconnected") << "\n";
    return kExitOk;
}

int cmd_order(const FamilyParams& p, int root, double offset, std::ostream& out) {
    const OrderEstimate e = estimate_convergence_order(p, root, offset);
    out << "order " << std::setprecision(6) << std::fixed << e.order << "\n";
    out << std::defaultfloat << std::setprecision(6);
    out << "errors";
    for (double x : e.errors) out << " " << x;
    out << "\nexponents";
    for (double x : e.exponents) out << " " << x;
    out << "\n";
    return kExitOk;
}

struct RenderOptions {
    std::string figure;
    std::string mode = "param";
    double x_min = -1.4, x_max = 4.6, y_min = -2, y_max = 2;
    int width = 1500, height = 1000;
    int iters = 0;
    double tolerance = 1e-4;
    std::string out;
    std::string format;
    bool markers = false;
    bool sidecar = true;
};

int cmd_render(const Common& c, const RenderOptions& o, const std::vector<std::string>& explicit_keys, int workers,
               std::ostream& out) {
    PlaneSpec spec;
    bool markers = o.markers;
    std::string id;
    auto given = [&](const std::string& key) {
        return std::find(explicit_keys.begin(), explicit_keys.end(), key) != explicit_keys.end();
    };
    if (!o.figure.empty()) {
        const FigurePreset* preset = find_preset(o.figure);
        if (!preset) throw std::invalid_argument("unknown figure id '" + o.figure + "'");
        spec = preset->spec;
        id = preset->id;
        markers = markers || preset->markers;
        // Explicit flags override the preset (e.g. a smaller size).
        if (given("width")) spec.width = o.width;
        if (given("height")) spec.height = o.height;
        if (given("iters")) spec.budget.max_iterations = o.iters;
    } else {
        if (o.mode == "param" || o.mode == "parameter") {
            spec.mode = PlaneMode::ParameterPlane;
            spec.budget = IterationBudget::parameter_plane();
        } else if (o.mode == "dynam" || o.mode == "dynamical") {
            spec.mode = PlaneMode::DynamicalPlane;
            spec.budget = IterationBudget::dynamical_plane();
            spec.fixed_alpha = c.alpha_value();
        } else {
            throw std::invalid_argument("mode must be param or dynam");
        }
        spec.n = c.n;
        spec.x_min = o.x_min, spec.x_max = o.x_max, spec.y_min = o.y_min, spec.y_max = o.y_max;
        spec.width = o.width, spec.height = o.height;
        if (o.iters > 0) spec.budget.max_iterations = o.iters;
    }
    spec.budget.root_tolerance = o.tolerance;

    std::string path = o.out.empty() ? (id.empty() ? std::string("render") : id) : o.out;
    ImageFormat format = ImageFormat::PNG;
    if (!o.format.empty()) {
        const auto f = format_from_name(o.format);
        if (!f) throw std::invalid_argument("format must be ppm or png");
        format = *f;
    } else if (path.size() > 4 && path.substr(path.size() - 4) == ".ppm") {
        format = ImageFormat::PPM;
    }
    const std::string ext = format == ImageFormat::PPM ? ".ppm" : ".png";
    if (path.size() < 4 || path.substr(path.size() - 4) != ext) path += ext;

    PlaneImage img = render(spec, workers);
    if (markers && spec.mode == PlaneMode::DynamicalPlane)
        draw_standard_markers(img, dynamical_markers({spec.n, spec.fixed_alpha}));
    write_image(img, path, format);
    out << "wrote " << path << " (" << spec.width << "x" << spec.height << ")\n";
    if (o.sidecar) {
        write_sidecar(spec, path + ".txt", id);
        out << "wrote " << path << ".txt\n";
    }
    return kExitOk;
}

struct SurveyOptions {
    double x_min = -1.4, x_max = 4.6, y_min = -2, y_max = 2;
    int cols = 60, rows = 40;
    int iters = 150;
    std::string out;
    bool classify = false;
    int resolution = 512;
};

int cmd_survey(int n, const SurveyOptions& o, int workers, std::ostream& out) {
    if (o.cols < 0 || o.rows < 0) throw std::invalid_argument("grid size must be non-negative");
    PlaneSpec grid;
    grid.n = n;
    grid.x_min = o.x_min, grid.x_max = o.x_max, grid.y_min = o.y_min, grid.y_max = o.y_max;
    grid.width = std::max(o.cols, 1), grid.height = std::max(o.rows, 1);
    IterationBudget budget = IterationBudget::parameter_plane();
    budget.max_iterations = o.iters;

    const std::size_t count = static_cast<std::size_t>(o.cols) * o.rows;
    std::vector<std::string> records(count);
    parallel_rows(o.rows, workers, [&](int row) {
        for (int col = 0; col < o.cols; ++col) {
            const FamilyParams p{n, grid.pixel_center(col, row)};
            std::string rec = format_double(p.alpha.real()) + "," + format_double(p.alpha.imag()) + ",";
            try {
                const OrbitOutcome fate = critical_orbit_fate(p, budget);
                const auto* hit = std::get_if<ConvergedToRoot>(&fate);
                rec += std::string(hit ? "false" : "true") + "," + outcome_name(fate) + "," +
                       std::to_string(hit ? hit->iterations : budget.max_iterations);
                if (o.classify) {
                    try {
                        const ConnectivityVerdict v = classify_julia(p, o.resolution, 1);
                        rec += std::string(",") + (v.julia_connected ? "connected" : "disconnected") + "," +
                               to_string(v.confidence);
                    } catch (const NoConvergence&) {
                        rec += ",unresolved,";
                    }
                }
            } catch (const DegenerateParameter&) {
                rec += "true,Degenerate," + std::to_string(budget.max_iterations);
                if (o.classify) rec += ",degenerate,";
            }
            records[static_cast<std::size_t>(row) * o.cols + col] = std::move(rec);
        }
    });

    std::ostringstream text;
    text << "alpha_re,alpha_im,cat_set,fate,iterations" << (o.classify ? ",verdict,confidence" : "") << "\n";
    for (const std::string& r : records) text << r << "\n";
    if (o.out.empty()) {
        out << text.str();
    } else {
        std::ofstream f(o.out, std::ios::trunc);
        if (!f) throw IoError("cannot open " + o.out + " for writing");
        f << text.str();
        if (!f) throw IoError("write failed: " + o.out);
        out << "wrote " << o.out << " (" << count << " samples)\n";
    }
    return kExitOk;
}

// Inserts `--key=value` pairs from a config file right after the subcommand so
// that later command-line flags win.
std::vector<std::string> expand_config(const std::vector<std::string>& args, const std::vector<std::string>& subs,
                                       std::vector<std::string>& config_keys) {
    std::vector<std::string> rest;
    std::string config_path;
    for (std::size_t i = 0; i < args.size(); ++i) {
        const std::string& a = args[i];
        if (a == "--config" && i + 1 < args.size()) {
            config_path = args[++i];
        } else if (a.rfind("--config=", 0) == 0) {
            config_path = a.substr(9);
        } else {
            rest.push_back(a);
        }
    }
    if (config_path.empty()) return rest;
    std::ifstream f(config_path);
    if (!f) throw IoError("cannot read config file " + config_path);
    const auto entries = parse_config(f);
    std::vector<std::string> injected;
    std::string sub_from_config;
    for (const auto& [k, v] : entries) {
        if (k == "command" || k == "subcommand") {
            sub_from_config = v;
            continue;
        }
        injected.push_back("--" + k + "=" + v);
        config_keys.push_back(k);
    }
    auto pos = std::find_if(rest.begin(), rest.end(),
                            [&](const std::string& a) { return std::find(subs.begin(), subs.end(), a) != subs.end(); });
    if (pos == rest.end()) {
        if (sub_from_config.empty()) throw std::invalid_argument("no subcommand given");
        rest.insert(rest.begin(), sub_from_config);
        pos = rest.begin();
    }
    rest.insert(pos + 1, injected.begin(), injected.end());
    return rest;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Chebyshev-Halley dynamics laboratory for z^n - 1", "chlab"};
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    app.require_subcommand(1);
    int workers = 0;
    app.add_option("--workers", workers, "worker threads (0 = all cores)")->capture_default_str();
    app.set_help_all_flag("--help-all");

    Common common;
    bool csv = false;

    auto* landmarks = app.add_subcommand("landmarks", "fixed points, critical points, multipliers, disks");
    add_family(landmarks, common);
    landmarks->add_flag("--csv", csv, "comma separated output");

    int catalog_n = 3;
    auto* catalog = app.add_subcommand("catalog", "bifurcation parameters for one n");
    catalog->add_option("--n", catalog_n)->check(CLI::Range(2, 100000))->capture_default_str();
    catalog->add_flag("--csv", csv);

    int resolution = 512;
    auto* classify = app.add_subcommand("classify", "Julia set connectivity from the immediate basin of 1");
    add_family(classify, common);
    classify->add_option("--resolution", resolution)->check(CLI::Range(64, 1 << 14))->capture_default_str();
    classify->add_flag("--csv", csv);

    RenderOptions ro;
    auto* rend = app.add_subcommand("render", "parameter or dynamical plane image");
    add_family(rend, common);
    rend->add_option("--figure", ro.figure, "preset id (see --list-figures)");
    bool list_figures = false;
    rend->add_flag("--list-figures", list_figures);
    rend->add_option("--mode", ro.mode, "param or dynam")->capture_default_str();
    rend->add_option("--x-min", ro.x_min)->capture_default_str();
    rend->add_option("--x-max", ro.x_max)->capture_default_str();
    rend->add_option("--y-min", ro.y_min)->capture_default_str();
    rend->add_option("--y-max", ro.y_max)->capture_default_str();
    rend->add_option("--width", ro.width)->check(CLI::Range(1, 1 << 15))->capture_default_str();
    rend->add_option("--height", ro.height)->check(CLI::Range(1, 1 << 15))->capture_default_str();
    rend->add_option("--iters", ro.iters, "0 = mode default")->check(CLI::Range(0, 1 << 20))->capture_default_str();
    rend->add_option("--tolerance", ro.tolerance)->capture_default_str();
    rend->add_option("--out", ro.out);
    rend->add_option("--format", ro.format, "ppm or png");
    rend->add_flag("--markers", ro.markers, "mark critical points, root 1 and its preimages");
    rend->add_flag("!--no-sidecar", ro.sidecar);

    int root = 0;
    double offset = 1e-2;
    auto* order = app.add_subcommand("order", "numerical order of convergence at a root");
    add_family(order, common);
    order->add_option("--root", root)->capture_default_str();
    order->add_option("--offset", offset)->capture_default_str();

    SurveyOptions so;
    auto* survey = app.add_subcommand("survey", "cat-set proxy (and verdicts) over a parameter grid");
    survey->add_option("--n", common.n)->check(CLI::Range(2, 100000))->capture_default_str();
    survey->add_option("--x-min", so.x_min)->capture_default_str();
    survey->add_option("--x-max", so.x_max)->capture_default_str();
    survey->add_option("--y-min", so.y_min)->capture_default_str();
    survey->add_option("--y-max", so.y_max)->capture_default_str();
    survey->add_option("--cols", so.cols)->check(CLI::Range(0, 1 << 15))->capture_default_str();
    survey->add_option("--rows", so.rows)->check(CLI::Range(0, 1 << 15))->capture_default_str();
    survey->add_option("--iters", so.iters)->check(CLI::Range(1, 1 << 20))->capture_default_str();
    survey->add_option("--out", so.out);
    survey->add_flag("--classify", so.classify, "also classify the Julia set per sample");
    survey->add_option("--resolution", so.resolution)->capture_default_str();

    std::vector<std::string> config_keys;
    try {
        std::vector<std::string> argv =
            expand_config(args, {"landmarks", "catalog", "classify", "render", "order", "survey"}, config_keys);
        std::vector<std::string> reversed(argv.rbegin(), argv.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const IoError& e) {
        err << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }

    CLI::App* sub = app.get_subcommands().front();
    err << "# " << sub->get_name() << "\n" << sub->config_to_str(true, false);
    if (workers != 0) err << "workers=" << workers << "\n";

    try {
        if (sub == landmarks) return cmd_landmarks({common.n, common.alpha_value()}, csv, out);
        if (sub == catalog) return cmd_catalog(catalog_n, csv, out);
        if (sub == classify) return cmd_classify({common.n, common.alpha_value()}, resolution, workers, csv, out);
        if (sub == order) return cmd_order({common.n, common.alpha_value()}, root, offset, out);
        if (sub == survey) return cmd_survey(common.n, so, workers, out);
        if (list_figures) {
            for (const FigurePreset& f : figure_presets()) out << std::left << std::setw(26) << f.id << f.caption << "\n";
            return kExitOk;
        }
        std::vector<std::string> explicit_keys = config_keys;
        for (const CLI::Option* opt : rend->get_options())
            if (opt->count() > 0) explicit_keys.push_back(opt->get_name(false, true).substr(2));
        return cmd_render(common, ro, explicit_keys, workers, out);
    } catch (const DegenerateParameter& e) {
        err << "degenerate parameter: " << e.what() << "\n";
        return kExitDegenerate;
    } catch (const NoConvergence& e) {
        err << "no convergence: " << e.what() << "\n";
        return kExitNoConvergence;
    } catch (const BasinEscape& e) {
        err << "no convergence: " << e.what() << "\n";
        return kExitNoConvergence;
    } catch (const IoError& e) {
        err << "i/o error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}

}  // namespace chlab
