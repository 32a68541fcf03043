// Command-line driver: stirap <dark-state|evolve|sweep-decay|sweep-atoms> [options]

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "stirap/config.hpp"
#include "stirap/version.hpp"

namespace {

struct CommonFlags {
    std::string config_path;
    stirap::ConfigOverrides overrides;
    bool plot = false;
    bool no_timing = false;
};

void add_common(CLI::App* cmd, CommonFlags& f) {
    cmd->add_option("--config", f.config_path, "JSON run configuration")->check(CLI::ExistingFile);
    cmd->add_option_function<std::string>("--out", [&f](const std::string& v) { f.overrides.out_dir = v; },
                                          "Output directory (default: out)");
    cmd->add_flag("--plot", f.plot, "Render SVG plots from the CSV outputs");
    cmd->add_option_function<int>("--workers", [&f](int v) { f.overrides.workers = v; }, "Sweep worker threads");
    cmd->add_option_function<double>("--t-start", [&f](double v) { f.overrides.t_start = v; }, "Start time (units of tau)");
    cmd->add_option_function<double>("--t-end", [&f](double v) { f.overrides.t_end = v; }, "End time (units of tau)");
    cmd->add_option_function<double>("--tol-abs", [&f](double v) { f.overrides.abs_tol = v; }, "Absolute tolerance");
    cmd->add_option_function<double>("--tol-rel", [&f](double v) { f.overrides.rel_tol = v; }, "Relative tolerance");
    cmd->add_flag("--no-timing", f.no_timing, "Omit wall-clock columns so sweep outputs are byte-reproducible");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Atom-BEC entanglement by adiabatic passage: closed/open dynamics and parameter sweeps"};
    app.set_version_flag("--version", stirap::kVersion);
    app.require_subcommand(1);

    CommonFlags flags;

    auto* dark = app.add_subcommand("dark-state", "Print and store the dark state at one time");
    add_common(dark, flags);
    dark->add_option_function<double>("--at-time", [&flags](double v) { flags.overrides.at_time = v; },
                                      "Evaluation time (units of tau)");

    auto* evolve = app.add_subcommand("evolve", "Propagate from |phi1> and write the trajectory");
    add_common(evolve, flags);
    bool closed = false, open = false;
    auto* closed_flag = evolve->add_flag("--closed", closed, "Schrödinger evolution");
    auto* open_flag = evolve->add_flag("--open", open, "Lindblad evolution");
    closed_flag->excludes(open_flag);
    open_flag->excludes(closed_flag);

    auto* decay = app.add_subcommand("sweep-decay", "Fidelity over the (gamma, kappa) grid");
    add_common(decay, flags);
    auto* atoms = app.add_subcommand("sweep-atoms", "Fidelity over condensate atom number");
    add_common(atoms, flags);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return stirap::kExitConfig;
    }

    stirap::Scenario scenario = stirap::Scenario::evolve_closed;
    if (dark->parsed()) scenario = stirap::Scenario::dark_state;
    else if (evolve->parsed()) {
        if (!closed && !open) {
            std::cerr << "error: evolve requires --closed or --open\n";
            return stirap::kExitConfig;
        }
        scenario = open ? stirap::Scenario::evolve_open : stirap::Scenario::evolve_closed;
    } else if (decay->parsed()) scenario = stirap::Scenario::sweep_decay;
    else if (atoms->parsed()) scenario = stirap::Scenario::sweep_atoms;

    if (flags.plot) flags.overrides.plot = true;
    if (flags.no_timing) flags.overrides.timing = false;

    std::string text;
    if (!flags.config_path.empty()) {
        std::ifstream in(flags.config_path);
        if (!in) {
            std::cerr << "error: cannot read " << flags.config_path << '\n';
            return stirap::kExitConfig;
        }
        std::ostringstream buf;
        buf << in.rdbuf();
        text = buf.str();
    }

    stirap::RunConfig cfg;
    try {
        cfg = stirap::parse_config(text, scenario, flags.overrides);
    } catch (const stirap::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return stirap::kExitConfig;
    }
    return stirap::run(cfg, std::cout, std::cerr);
}
