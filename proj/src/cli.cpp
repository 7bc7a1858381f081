#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qbath/run.hpp"
#include "qbath/version.hpp"

namespace qbath {

namespace {

std::vector<double> parse_values(const std::string& list) {
    std::vector<double> out;
    std::string cur;
    auto flush = [&] {
        std::size_t b = cur.find_first_not_of(" \t");
        if (b == std::string::npos) { cur.clear(); return; }
        std::size_t e = cur.find_last_not_of(" \t");
        const std::string tok = cur.substr(b, e - b + 1);
        try {
            std::size_t pos = 0;
            out.push_back(std::stod(tok, &pos));
            if (pos != tok.size())
                throw ConfigError("values: not a number '" + tok + "'");
        } catch (const ConfigError&) {
            throw;
        } catch (const std::exception&) {
            throw ConfigError("values: not a number '" + tok + "'");
        }
        cur.clear();
    };
    for (char ch : list) {
        if (ch == ',') flush();
        else cur += ch;
    }
    flush();
    if (out.empty())
        throw ConfigError("values: list is empty");
    return out;
}

} // namespace

int cli_main(int argc, const char* const* argv) {
    CLI::App app{"Entanglement dynamics of a two-level atom in a Lorentzian reservoir"};
    app.set_version_flag("--version", std::string(version));
    app.require_subcommand(1);

    std::string config_path, out_dir, method, axis, values, which;

    CLI::App* simulate = app.add_subcommand("simulate", "Run one scenario from a config file");
    simulate->add_option("--config", config_path, "Scenario config (INI)")->required();
    simulate->add_option("--out", out_dir, "Output directory override");
    simulate->add_option("--method", method, "discrete | analytic | both");

    CLI::App* sweep = app.add_subcommand("sweep", "Run a parameter sweep");
    sweep->add_option("--config", config_path, "Base scenario config (INI)")->required();
    sweep->add_option("--axis", axis, "Physical or bath key to sweep")->required();
    sweep->add_option("--values", values, "Comma-separated value list")->required();
    sweep->add_option("--out", out_dir, "Output directory override");

    CLI::App* figures = app.add_subcommand("figures", "Emit plot-ready reference figure data");
    figures->add_option("--which", which, "fig1 | fig2 | fig3 | fig4")->required();
    figures->add_option("--out", out_dir, "Output directory (default: out)");

    try {
        app.parse(argc, const_cast<char**>(argv));
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (simulate->parsed() || sweep->parsed()) {
            ScenarioConfig cfg = load_config(config_path);
            if (!out_dir.empty()) cfg.directory = out_dir;
            if (!method.empty()) {
                if (method == "discrete") cfg.method = Method::discrete;
                else if (method == "analytic") cfg.method = Method::analytic;
                else if (method == "both") cfg.method = Method::both;
                else throw ConfigError("method: must be discrete, analytic or both");
            }
            if (simulate->parsed()) {
                run_scenario(cfg);
            } else {
                run_sweep(cfg, axis, parse_values(values));
            }
        } else if (figures->parsed()) {
            emit_figure_data(which, out_dir.empty() ? "out" : out_dir);
        }
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const NumericalError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

} // namespace qbath
