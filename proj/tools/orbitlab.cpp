// orbitlab <kind> --config <path> [--out <dir>] [--svg]

#include "orbitlab/experiment.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

int main(int argc, char** argv) {
    CLI::App app{"Exact arithmetic-dynamics experiments: heights, arithmetic degrees, multiplicity cocycles, return-set densities"};
    std::string kind, config_path, out_dir;
    bool svg = false;
    app.add_option("kind", kind, "Experiment kind")
        ->required()
        ->check(CLI::IsMember({"orbit", "alpha", "recursion", "cocycle", "ratio", "density", "roth"}));
    app.add_option("--config", config_path, "JSON experiment config")->required();
    app.add_option("--out", out_dir, "Output directory (overrides the config's \"output\")");
    app.add_flag("--svg", svg, "Also write an SVG line chart");
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        // usage errors share the config-parse status
        return app.exit(e) == 0 ? 0 : 2;
    }

    using namespace orbitlab;
    try {
        std::ifstream in(config_path, std::ios::binary);
        if (!in) throw Error(ErrorKind::ParseError, "cannot read config " + config_path);
        std::ostringstream buf;
        buf << in.rdbuf();
        const ExperimentKind k = parse_kind(kind);
        const ExperimentConfig cfg = parse_config(buf.str(), k);
        const ExperimentOutput result = run_experiment(cfg, k, svg);
        const std::filesystem::path dir = out_dir.empty() ? std::filesystem::path(cfg.output) : std::filesystem::path(out_dir);
        result.write(dir);
        for (const auto& [name, _] : result.files) std::cout << (dir / name).string() << "\n";
        return 0;
    } catch (const Error& e) {
        std::cerr << "orbitlab: " << e.what() << "\n";
        return exit_code(e.kind());
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "orbitlab: " << e.what() << "\n";
        return 3;
    }
}
