// nf-aliaser: evaluate near-field imaging scenarios and their aliasing-free
// regions from a JSON config or a named preset.

#include <CLI11.hpp>

#include <iostream>
#include <string>
#include <vector>

#include "nfalias/nfalias.hpp"

namespace {

void report(const nfalias::RunResult& r) {
    for (const auto& p : r.products) std::cout << p.file << "  " << p.sha256 << '\n';
    std::cout << "manifest: " << r.manifest.string() << "  " << r.manifest_sha256 << '\n';
}

std::vector<double> parse_values(const std::string& list) {
    std::vector<double> out;
    std::size_t start = 0;
    while (start <= list.size()) {
        const std::size_t end = std::min(list.find(',', start), list.size());
        const std::string item = list.substr(start, end - start);
        try {
            std::size_t used = 0;
            out.push_back(std::stod(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw nfalias::ConfigError("--values: cannot parse '" + item + "' as a number");
        }
        start = end + 1;
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Near-field imaging and spatial aliasing analysis"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(nfalias::kToolName) + " " + nfalias::kToolVersion);

    std::string out_dir = "out";
    unsigned threads = 0;
    std::string config_path, preset_name, param, values;

    auto* run_cmd = app.add_subcommand("run", "Evaluate every product requested by a config");
    run_cmd->add_option("config", config_path, "Scenario JSON")->required();

    auto* preset_cmd = app.add_subcommand("preset", "Run a built-in scenario");
    preset_cmd->add_option("name", preset_name, "Preset name")
        ->required()
        ->check(CLI::IsMember(nfalias::presets::names()));
    bool print_only = false;
    preset_cmd->add_flag("--print", print_only, "Print the resolved preset config and exit");

    auto* sweep_cmd = app.add_subcommand("sweep", "Vary one parameter of a config and summarise the masks");
    sweep_cmd->add_option("config", config_path, "Scenario JSON")->required();
    sweep_cmd->add_option("--param", param, "spacing | length | range | dimensionality")->required();
    sweep_cmd->add_option("--values", values, "Comma-separated values")->required();

    for (auto* cmd : {run_cmd, preset_cmd, sweep_cmd}) {
        cmd->add_option("--out", out_dir, "Output directory")->capture_default_str();
        cmd->add_option("--threads", threads, "Worker threads (0 = all cores)")->capture_default_str();
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        const nfalias::RunOptions opts{out_dir, nfalias::Parallelism{threads}};
        if (*run_cmd) {
            report(nfalias::run(nfalias::load_config(config_path), opts));
        } else if (*preset_cmd) {
            const auto config = nfalias::presets::by_name(preset_name);
            if (print_only) {
                std::cout << nfalias::to_json(config).dump(2) << '\n';
                return 0;
            }
            report(nfalias::run(config, opts));
        } else if (*sweep_cmd) {
            auto config = nfalias::load_config(config_path);
            config.sweep = nfalias::SweepSpec{nfalias::parse_sweep_parameter(param), parse_values(values)};
            config.outputs = {nfalias::Product::sweep};
            nfalias::validate(config);
            report(nfalias::run(config, opts));
        }
    } catch (const nfalias::Error& e) {
        std::cerr << "error [" << e.category() << "]: " << e.what() << '\n';
        return e.exit_code();
    } catch (const std::exception& e) {
        std::cerr << "error [internal]: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
