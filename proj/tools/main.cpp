#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "delayheom/commands.hpp"

int main(int argc, char** argv) {
    using namespace delayheom;

    CLI::App app{"Two-cavity delayed hierarchy simulator"};
    app.set_version_flag("--version", cli::kVersion);
    app.require_subcommand(1);

    std::string config_path;
    std::string out_path;
    auto* simulate = app.add_subcommand("simulate", "Run a configured model and write CSV plus <out>.meta.json");
    simulate->add_option("--config", config_path, "JSON config file")->required();
    simulate->add_option("--out", out_path, "CSV output path (overrides \"output\" in the config)");

    double tolerance = 5e-3;
    auto* compare = app.add_subcommand("compare", "Compare the single-excitation hierarchy with the wave-function oracle");
    compare->add_option("--config", config_path, "JSON config file")->required();
    compare->add_option("--tolerance", tolerance, "Max allowed deviation")->capture_default_str();

    qnm::SlabParams slab;
    auto* info = app.add_subcommand("qnm-info", "Print derived slab parameters as JSON");
    info->add_option("--L", slab.L, "Slab width (um)")->required();
    info->add_option("--eps-r", slab.eps_R, "Slab permittivity")->required();
    info->add_option("--eps-b", slab.eps_B, "Background permittivity")->capture_default_str();
    info->add_option("--R", slab.R, "Centre-to-centre separation (um)")->capture_default_str();
    info->add_option("--mode", slab.mode_index, "Mode index")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : cli::kExitConfig;
    }

    if (*simulate) {
        std::optional<std::string> out;
        if (!out_path.empty()) out = out_path;
        return cli::simulate_command(config_path, out, std::cout, std::cerr);
    }
    if (*compare) return cli::compare_command(config_path, tolerance, std::cout, std::cerr);
    return cli::qnm_info_command(slab, std::cout, std::cerr);
}
