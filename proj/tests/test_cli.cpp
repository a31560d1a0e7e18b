#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "chlab/cli.hpp"

using namespace chlab;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

bool has(const std::string& text, const std::string& needle) { return text.find(needle) != std::string::npos; }

std::filesystem::path temp(const std::string& name) { return std::filesystem::temp_directory_path() / name; }

}  // namespace

TEST_SUITE("cli") {
TEST_CASE("complex syntax") {
    CHECK(parse_complex("2.5") == Complex{2.5, 0});
    CHECK(parse_complex("0.2+1.592i") == Complex{0.2, 1.592});
    CHECK(parse_complex("0.2-1.4i") == Complex{0.2, -1.4});
    CHECK(parse_complex("4i") == Complex{0, 4});
    CHECK(parse_complex("-i") == Complex{0, -1});
    CHECK(parse_complex("1+i") == Complex{1, 1});
    CHECK(parse_complex("5/6") == Complex{5.0 / 6.0, 0});
    CHECK(parse_complex("1/2+3/4i") == Complex{0.5, 0.75});
    CHECK(parse_complex(" 1e-3 - 2e+1i ") == Complex{1e-3, -20});
    CHECK(parse_complex("+3") == Complex{3, 0});
    CHECK_THROWS_AS(parse_complex(""), std::invalid_argument);
    CHECK_THROWS_AS(parse_complex("abc"), std::invalid_argument);
    CHECK_THROWS_AS(parse_complex("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(parse_complex("1+2"), std::invalid_argument);
}

TEST_CASE("config file parsing") {
    std::istringstream in("# comment\n n = 3\nalpha=0.2+1.4i\n\n");
    const auto cfg = parse_config(in);
    CHECK(cfg.at("n") == "3");
    CHECK(cfg.at("alpha") == "0.2+1.4i");
    std::istringstream bad("just words\n");
    CHECK_THROWS_AS(parse_config(bad), std::invalid_argument);
}

TEST_CASE("landmarks") {
    const Run r = run({"landmarks", "--n", "3", "--alpha", "2.5"});
    CHECK(r.code == kExitOk);
    int superattracting_strange = 0;
    std::istringstream lines(r.out);
    for (std::string line; std::getline(lines, line);)
        if (has(line, "Strange") && has(line, "Superattracting")) ++superattracting_strange;
    CHECK(superattracting_strange == 3);
    CHECK(has(r.err, "alpha=2.5"));

    CHECK(has(run({"landmarks", "--n", "2", "--alpha", "1"}).out, "root local degree 4"));
    const Run h = run({"landmarks", "--n", "3", "--alpha", "0.5"});
    CHECK(h.code == kExitOk);
    CHECK(has(h.out, "HalleyDegenerate"));
    CHECK(has(h.out, "lower degree"));

    const Run csv = run({"landmarks", "--n", "3", "--alpha", "0.7", "--csv"});
    CHECK(csv.out.rfind("section,kind,re,im", 0) == 0);
}

TEST_CASE("degenerate parameter exit code") {
    const Run r = run({"landmarks", "--n", "3", "--alpha", "2"});
    CHECK(r.code == kExitDegenerate);
    CHECK(has(r.err, "degenerate"));
    CHECK(run({"classify", "--n", "3", "--alpha", "0.5"}).code == kExitDegenerate);
}

TEST_CASE("catalog") {
    const Run r = run({"catalog", "--n", "25", "--csv"});
    CHECK(r.code == kExitOk);
    CHECK(has(r.out, "0.6805555555555556,0,Order4"));
    CHECK(has(run({"catalog", "--n", "10", "--csv"}).out, "0.1111111111111111,0.4714045207910316,PrecriticalPlus"));
    CHECK_FALSE(has(run({"catalog", "--n", "2"}).out, "multiplicity"));
}

TEST_CASE("classify") {
    CHECK(has(run({"classify", "--n", "3", "--alpha", "0.2+1.592i"}).out, "disconnected"));
    CHECK(has(run({"classify", "--n", "3", "--alpha", "4i"}).out, "verdict                           disconnected"));
    const Run c = run({"classify", "--n", "3", "--alpha", "0.83333333", "--csv"});
    CHECK(has(c.out, ",connected,Resolved,512"));
}

TEST_CASE("order") {
    auto order_of = [](const std::string& n, const std::string& a) {
        const Run r = run({"order", "--n", n, "--alpha", a});
        REQUIRE(r.code == kExitOk);
        return std::stod(r.out.substr(r.out.find(' ') + 1));
    };
    CHECK(order_of("2", "1") == doctest::Approx(4).epsilon(0.05));
    CHECK(order_of("25", "0.5") == doctest::Approx(3).epsilon(0.066));
    CHECK(order_of("3", "5/6") == doctest::Approx(4).epsilon(0.05));
    CHECK(run({"order", "--n", "3", "--alpha", "2.5", "--offset", "0.6"}).code == kExitNoConvergence);
}

TEST_CASE("render writes image and sidecar") {
    const auto out = temp("chlab_cli_render");
    const Run r = run({"render", "--figure", "param-n2", "--width", "30", "--height", "20", "--out", out.string(),
                       "--format", "ppm"});
    REQUIRE(r.code == kExitOk);
    const auto img = temp("chlab_cli_render.ppm");
    CHECK(std::filesystem::file_size(img) == 13 + 30 * 20 * 3);  // "P6\n30 20\n255\n"
    std::ifstream side(img.string() + ".txt");
    std::string first;
    std::getline(side, first);
    CHECK(first == "figure = param-n2");
    std::filesystem::remove(img);
    std::filesystem::remove(img.string() + ".txt");
}

TEST_CASE("render dynamical plane with markers") {
    const auto out = temp("chlab_cli_dyn.png");
    const Run r = run({"render", "--mode", "dynam", "--n", "3", "--alpha", "0.2+1.592i", "--x-min", "-1", "--x-max",
                       "1.5", "--y-min", "-1.25", "--y-max", "1.25", "--width", "40", "--height", "40", "--markers",
                       "--out", out.string(), "--no-sidecar"});
    CHECK(r.code == kExitOk);
    CHECK(std::filesystem::exists(out));
    CHECK_FALSE(std::filesystem::exists(out.string() + ".txt"));
    std::filesystem::remove(out);
}

TEST_CASE("render I/O failure") {
    const Run r = run({"render", "--figure", "param-n2", "--width", "8", "--height", "8", "--out",
                       "/nonexistent-dir/img.png"});
    CHECK(r.code == kExitIo);
}

TEST_CASE("figure listing") {
    const Run r = run({"render", "--list-figures"});
    CHECK(has(r.out, "param-n100"));
    CHECK(has(r.out, "zoomsing-n25"));
}

TEST_CASE("survey") {
    SUBCASE("empty grid") {
        const Run r = run({"survey", "--n", "3", "--cols", "0", "--rows", "0"});
        CHECK(r.code == kExitOk);
        CHECK(r.out == "alpha_re,alpha_im,cat_set,fate,iterations\n");
    }
    SUBCASE("strange disk is all cat set") {
        const Run r = run({"survey", "--n", "3", "--x-min", "2.2", "--x-max", "2.8", "--y-min", "-0.3", "--y-max",
                           "0.3", "--cols", "6", "--rows", "6"});
        std::istringstream lines(r.out);
        std::string line;
        std::getline(lines, line);
        int rows = 0;
        while (std::getline(lines, line)) {
            ++rows;
            CHECK(has(line, ",true,"));
        }
        CHECK(rows == 36);
    }
    SUBCASE("near Halley on the real axis") {
        const Run r = run({"survey", "--n", "3", "--x-min", "0.45", "--x-max", "0.55", "--y-min", "-0.01", "--y-max",
                           "0.01", "--cols", "10", "--rows", "1"});
        std::istringstream lines(r.out);
        std::string line;
        std::getline(lines, line);
        while (std::getline(lines, line)) CHECK(has(line, ",false,"));
    }
    SUBCASE("to file with verdicts") {
        const auto path = temp("chlab_survey.csv");
        const Run r = run({"survey", "--n", "3", "--x-min", "0.1", "--x-max", "0.3", "--y-min", "1.3", "--y-max",
                           "1.5", "--cols", "1", "--rows", "1", "--classify", "--resolution", "256", "--out",
                           path.string()});
        CHECK(r.code == kExitOk);
        std::ifstream f(path);
        std::string header, rec;
        std::getline(f, header);
        std::getline(f, rec);
        CHECK(header == "alpha_re,alpha_im,cat_set,fate,iterations,verdict,confidence");
        CHECK(has(rec, "disconnected"));
        std::filesystem::remove(path);
    }
}

TEST_CASE("config file with command-line override") {
    const auto cfg = temp("chlab_cfg.txt");
    {
        std::ofstream f(cfg);
        f << "n = 3\nalpha = 0.5\n";
    }
    const Run r = run({"landmarks", "--config", cfg.string()});
    CHECK(r.code == kExitOk);
    CHECK(has(r.out, "HalleyDegenerate"));
    const Run o = run({"landmarks", "--config", cfg.string(), "--alpha", "2.5"});
    CHECK(has(o.out, "Generic"));
    CHECK(has(o.err, "alpha=2.5"));
    std::filesystem::remove(cfg);
}

TEST_CASE("usage errors") {
    CHECK(run({}).code == kExitUsage);
    CHECK(run({"landmarks", "--n", "1"}).code == kExitUsage);
    CHECK(run({"landmarks", "--alpha", "zz"}).code == kExitUsage);
    CHECK(run({"render", "--figure", "nope"}).code == kExitUsage);
}
}
