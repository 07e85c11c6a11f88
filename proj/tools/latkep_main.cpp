#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "latkep/config_io.hpp"
#include "latkep/scenario.hpp"
#include "latkep/series_io.hpp"
#include "selftest.hpp"

namespace fs = std::filesystem;
using namespace latkep;

namespace {

void write_metadata(const RunBundle& bundle, const fs::path& path) {
    std::ostringstream os;
    os << print_config(bundle.cfg);
    os << "\n# resolved run metadata\n";
    for (const auto& [key, value] : bundle.metadata)
        os << "# " << key << " = " << value << "\n";
    std::ofstream out(path, std::ios::binary);
    out << os.str();
}

void write_bundle(const RunBundle& bundle, const fs::path& dir) {
    fs::create_directories(dir);
    const std::string base = bundle.cfg.name;
    if (bundle.cfg.outputs.series)
        write_series(bundle, (dir / (base + "_series.csv")).string());
    if (bundle.density_initial)
        write_density(*bundle.density_initial, (dir / (base + "_density_initial.txt")).string());
    if (bundle.density_final)
        write_density(*bundle.density_final, (dir / (base + "_density_final.txt")).string());
    write_metadata(bundle, dir / (base + "_config.txt"));
}

std::vector<double> parse_scales(const std::string& csv) {
    std::vector<double> scales;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            scales.push_back(std::stod(item));
        } catch (const std::exception&) {
            throw ValidationError("bad scale value '" + item + "'");
        }
    }
    return scales;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"lattice Kepler dynamics: semiclassical and split-operator quantum runs"};
    app.require_subcommand(1);

    std::string config_path, out_dir = ".", scales_csv;
    bool list_presets = false;

    auto* run_cmd = app.add_subcommand("run", "run a scenario from a config file");
    run_cmd->add_option("--config", config_path, "scenario config file")->required();
    run_cmd->add_option("--out", out_dir, "output directory (default: current)");

    auto* preset_cmd = app.add_subcommand("preset", "inspect the scenario presets");
    preset_cmd->add_flag("--list", list_presets, "list preset names");

    auto* sweep_cmd = app.add_subcommand("sweep", "continuum-limit sweep over lattice scales");
    sweep_cmd->add_option("--config", config_path, "base scenario config file")->required();
    sweep_cmd->add_option("--scales", scales_csv, "comma list of decreasing scale factors")->required();
    sweep_cmd->add_option("--out", out_dir, "output directory (default: current)");

    auto* selftest_cmd = app.add_subcommand("selftest", "run the built-in oracle suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (run_cmd->parsed()) {
            const ScenarioConfig cfg = parse_config_file(config_path);
            const RunBundle bundle = run_scenario(cfg);
            write_bundle(bundle, out_dir);
            std::cout << "scenario " << bundle.cfg.name << ": " << bundle.summary.quantity << " = "
                      << format_double(bundle.summary.value) << "\n";
            if (bundle.alpha_valid)
                std::cout << "fitted alpha = " << format_double(bundle.alpha) << "\n";
            std::cout << "outputs written to " << fs::absolute(out_dir).string() << "\n";
        } else if (preset_cmd->parsed()) {
            if (!list_presets)
                throw ValidationError("preset: nothing to do (use --list)");
            for (const auto& name : preset_names())
                std::cout << name << " - " << preset(name).description << "\n";
        } else if (sweep_cmd->parsed()) {
            const ScenarioConfig base = parse_config_file(config_path);
            const auto rows = continuum_sweep(base, parse_scales(scales_csv));
            fs::create_directories(out_dir);
            const std::string path = (fs::path(out_dir) / (base.name + "_sweep.csv")).string();
            write_summary(rows, path);
            for (const auto& row : rows)
                std::cout << row.scenario << " scale=" << format_double(row.scale) << " "
                          << row.quantity << " = " << format_double(row.value) << "\n";
            std::cout << "sweep written to " << path << "\n";
        } else if (selftest_cmd->parsed()) {
            return run_selftest() == 0 ? 0 : 1;
        }
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const NumericalGuardError& e) {
        std::cerr << "numerical guard: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
