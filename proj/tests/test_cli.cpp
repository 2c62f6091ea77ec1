#include <gtest/gtest.h>

#include <json.hpp>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    const fs::path p = fs::path(::testing::TempDir()) / ("orbitlab_cli_" + name);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

int run(const std::string& kind, const fs::path& config, const fs::path& out, const std::string& extra = "") {
    const std::string cmd = std::string(ORBITLAB_CLI) + " " + kind + " --config '" + config.string() + "' --out '" +
                            out.string() + "' " + extra + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

fs::path write_config(const fs::path& dir, const std::string& text) {
    const fs::path p = dir / "config.json";
    std::ofstream(p, std::ios::binary) << text;
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

std::vector<std::vector<std::string>> read_csv(const fs::path& p) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(slurp(p));
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> cells;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        rows.push_back(cells);
    }
    return rows;
}

const fs::path configs = ORBITLAB_CONFIGS;

struct Shipped {
    const char* kind;
    const char* file;
    std::vector<std::string> outputs;
};

const std::vector<Shipped> shipped{
    {"alpha", "squaring_alpha.json", {"alpha.csv", "alpha_summary.json"}},
    {"alpha", "product_alpha.json", {"alpha.csv", "alpha_summary.json"}},
    {"recursion", "product_recursion.json", {"recursion.csv", "recursion_violations.csv", "recursion_summary.json"}},
    {"cocycle", "chebyshev_cocycle.json", {"cocycle.csv", "cocycle_summary.json"}},
    {"ratio", "ratio_theorem.json", {"ratio.csv", "ratio_density.csv", "ratio_summary.json"}},
    {"ratio", "ratio_control.json", {"ratio.csv", "ratio_density.csv", "ratio_summary.json"}},
    {"density", "multiples_density.json", {"density.csv", "density_summary.json"}},
    {"roth", "roth_origin.json", {"roth.csv", "roth_summary.json"}},
    {"orbit", "p2_orbit.json", {"orbit.csv", "orbit_summary.json"}},
};

} // namespace

TEST(Cli, ShippedConfigsRun) {
    for (const auto& s : shipped) {
        const auto out = scratch(std::string("shipped_") + s.file);
        ASSERT_EQ(run(s.kind, configs / s.file, out), 0) << s.file;
        for (const auto& f : s.outputs) EXPECT_TRUE(fs::exists(out / f)) << s.file << " missing " << f;
        const auto summary = nlohmann::json::parse(slurp(out / (std::string(s.kind) + "_summary.json")));
        EXPECT_EQ(summary["kind"], s.kind);
        EXPECT_TRUE(summary.contains("config"));
    }
}

TEST(Cli, AlphaColumnEndsNearTwo) {
    const auto out = scratch("alpha");
    ASSERT_EQ(run("alpha", configs / "squaring_alpha.json", out), 0);
    const auto rows = read_csv(out / "alpha.csv");
    ASSERT_GE(rows.size(), 2u);
    EXPECT_EQ(rows.front(), (std::vector<std::string>{"n", "h", "alpha_n"}));
    const double last = std::stod(rows.back().at(2));
    EXPECT_GE(last, 1.9);
    EXPECT_LE(last, 2.0);
    const std::string text = slurp(out / "alpha.csv");
    EXPECT_EQ(text.find('\r'), std::string::npos);
    EXPECT_EQ(text.back(), '\n');
}

TEST(Cli, DensityOfMultiplesOfThree) {
    const auto out = scratch("density");
    ASSERT_EQ(run("density", configs / "multiples_density.json", out), 0);
    const auto rows = read_csv(out / "density.csv");
    ASSERT_GE(rows.size(), 2u);
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const long d = std::stol(rows[i][0]);
        if ((d + 1) % 3 == 0) {
            EXPECT_EQ(rows[i][3], "1/3") << "d=" << d;
        }
    }
}

TEST(Cli, RatioSummaryLabelsTheoremAndControl) {
    const auto a = scratch("ratio_a"), b = scratch("ratio_b");
    ASSERT_EQ(run("ratio", configs / "ratio_theorem.json", a), 0);
    ASSERT_EQ(run("ratio", configs / "ratio_control.json", b), 0);
    const auto sa = nlohmann::json::parse(slurp(a / "ratio_summary.json"));
    const auto sb = nlohmann::json::parse(slurp(b / "ratio_summary.json"));
    EXPECT_TRUE(sa.dump().find("theorem instance") != std::string::npos);
    EXPECT_TRUE(sb.dump().find("negative control") != std::string::npos);
}

TEST(Cli, MalformedPolynomialIsParseErrorWithNoOutput) {
    const auto dir = scratch("malformed");
    const auto cfg = write_config(dir, R"({"map": "2*s^ - t | t^2", "start": [2, 1], "n_max": 5})");
    const auto out = dir / "out";
    EXPECT_EQ(run("alpha", cfg, out), 2);
    EXPECT_FALSE(fs::exists(out));
}

TEST(Cli, InvalidJsonAndUsageAreParseErrors) {
    const auto dir = scratch("badjson");
    EXPECT_EQ(run("alpha", write_config(dir, "{\"map\": "), dir / "out"), 2);
    EXPECT_EQ(run("alpha", dir / "missing.json", dir / "out"), 2);
    EXPECT_EQ(run("nonsense", configs / "squaring_alpha.json", dir / "out"), 2);
    EXPECT_FALSE(fs::exists(dir / "out"));
}

TEST(Cli, ValidationErrors) {
    const auto dir = scratch("validation");
    const auto out = dir / "out";
    // common factor
    EXPECT_EQ(run("alpha", write_config(dir, R"({"map": "s*t | s^2", "start": [2, 1]})"), out), 3);
    // start point of the wrong dimension
    EXPECT_EQ(run("alpha", write_config(dir, R"({"map": "s^2 | t^2", "start": [2, 1, 1]})"), out), 3);
    // unknown key
    EXPECT_EQ(run("alpha", write_config(dir, R"({"map": "s^2 | t^2", "start": [2, 1], "nmax": 4})"), out), 3);
    // negative threshold
    EXPECT_EQ(run("ratio", write_config(dir, R"({"map": "s^2 | t^2", "start": [2, 1], "theta": -1,
        "subschemes": [{"id": "o", "points": [{"point": [0, 1]}]}]})"),
                  out),
              3);
    EXPECT_FALSE(fs::exists(out));
}

TEST(Cli, BudgetErrors) {
    const auto dir = scratch("budget");
    const auto out = dir / "out";
    // iterate degree 2^11 over the cap
    EXPECT_EQ(run("cocycle", write_config(dir, R"({"map": "2*s^2 - t^2 | t^2",
        "cocycle": {"n_max": 11, "tail_window": 3, "points": [[1, 1]]}})"),
                  out),
              4);
    // the bit budget stops the orbit before the tail window is filled
    EXPECT_EQ(run("alpha", write_config(dir, R"({"map": "s^2 | t^2", "start": [2, 1], "n_max": 30,
        "bit_budget": 256, "tail_window": 10})"),
                  out),
              4);
    EXPECT_FALSE(fs::exists(out));
}

TEST(Cli, RepeatedRunsAreByteIdentical) {
    for (const auto& s : shipped) {
        const auto a = scratch(std::string("det_a_") + s.file), b = scratch(std::string("det_b_") + s.file);
        ASSERT_EQ(run(s.kind, configs / s.file, a, "--svg"), 0);
        ASSERT_EQ(run(s.kind, configs / s.file, b, "--svg"), 0);
        std::size_t files = 0;
        for (const auto& entry : fs::directory_iterator(a)) {
            ++files;
            EXPECT_EQ(slurp(entry.path()), slurp(b / entry.path().filename())) << entry.path();
        }
        EXPECT_GT(files, s.outputs.size() - 1);
    }
}
