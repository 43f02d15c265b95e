#include "hessweave/cli.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <string>

int main(int argc, char** argv) {
    CLI::App app{"hessweave: patchworked Hessian curves with many ovals"};
    app.require_subcommand(1);

    std::string mode = "literal", t_str, k_str, out_dir, input;
    int degree = 4, resolution = 512;
    unsigned long seed = 0;
    bool svg = false;

    auto add_common = [&](CLI::App* sc, bool needs_input) {
        if (needs_input) sc->add_option("input", input, "polynomial JSON path")->required();
        sc->add_option("--degree", degree, "construction degree parameter d");
        sc->add_option("--mode", mode, "layout mode")
            ->check(CLI::IsMember({"literal", "simplex"}));
        sc->add_option("--t", t_str, "rational t override, num/den");
        sc->add_option("--resolution", resolution, "grid resolution n per quadrant axis");
        sc->add_option("--window-k", k_str, "log2 window bound K, num/den");
        sc->add_option("--out", out_dir, "output directory");
        sc->add_option("--seed", seed, "seed for randomized property checks");
        sc->add_flag("--svg", svg, "emit SVG renders");
    };
    add_common(app.add_subcommand("hessian", "print the hessian of a polynomial JSON"), true);
    add_common(app.add_subcommand("construct", "build and emit the degree-d patchwork"), false);
    add_common(app.add_subcommand("verify", "run the full verification pipeline"), false);
    add_common(app.add_subcommand("count", "census of compact components of a curve"), true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : hessweave::kExitUsage;
    }

    hessweave::RunConfig cfg;
    cfg.command = app.get_subcommands().front()->get_name();
    cfg.input = input;
    cfg.degree = degree;
    cfg.mode = mode == "simplex" ? hessweave::LayoutMode::Simplex : hessweave::LayoutMode::Literal;
    cfg.resolution = resolution;
    cfg.out_dir = out_dir;
    cfg.seed = seed;
    cfg.svg = svg;
    try {
        if (!t_str.empty()) cfg.t_override = hessweave::parse_rational(t_str);
        if (!k_str.empty()) cfg.window_k = hessweave::parse_rational(k_str);
    } catch (const std::exception& e) {
        std::cerr << "bad rational flag: " << e.what() << "\n";
        return hessweave::kExitUsage;
    }
    if (cfg.resolution < 16) {
        std::cerr << "--resolution must be >= 16\n";
        return hessweave::kExitUsage;
    }
    return hessweave::run_command(cfg, std::cout, std::cerr);
}
