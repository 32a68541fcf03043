#include "stirap/config.hpp"

#include <cmath>
#include <sstream>

#include "stirap/io.hpp"
#include "stirap/sweeps.hpp"
#include "stirap/version.hpp"

namespace stirap {
namespace {

using nlohmann::json;

void reject_unknown(const json& j, std::initializer_list<const char*> known, const std::string& where) {
    if (!j.is_object()) throw ConfigError(where + ": expected an object");
    for (const auto& [key, value] : j.items()) {
        bool found = false;
        for (const char* k : known) found = found || key == k;
        if (!found) throw ConfigError(where + ": unknown key '" + key + "'");
    }
}

std::pair<int, int> line_column(std::string_view text, std::size_t byte) {
    int line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

std::vector<GaussianLobe> parse_lobes(const json& j, const std::string& where) {
    if (!j.is_array()) throw ConfigError(where + ": expected an array of lobes");
    std::vector<GaussianLobe> out;
    for (const auto& item : j) {
        reject_unknown(item, {"amplitude", "center", "width"}, where);
        GaussianLobe lobe;
        lobe.amplitude = item.value("amplitude", 0.0);
        lobe.center = item.value("center", 0.0);
        lobe.width = item.value("width", 1.0);
        out.push_back(lobe);
    }
    return out;
}

ScheduleSpec parse_schedule(const json& j) {
    ScheduleSpec spec;
    if (j.is_string()) {
        if (j.get<std::string>() != "default") throw ConfigError("schedule: expected \"default\" or a lobe object");
        return spec;
    }
    reject_unknown(j, {"type", "omega_A", "omega_B"}, "schedule");
    const std::string type = j.value("type", j.contains("omega_A") || j.contains("omega_B") ? "lobes" : "default");
    if (type == "default") {
        if (j.contains("omega_A") || j.contains("omega_B")) throw ConfigError("schedule: default schedule takes no lobes");
        return spec;
    }
    if (type != "lobes") throw ConfigError("schedule: unknown type '" + type + "'");
    spec.use_default = false;
    if (j.contains("omega_A")) spec.lobes_A = parse_lobes(j.at("omega_A"), "schedule.omega_A");
    if (j.contains("omega_B")) spec.lobes_B = parse_lobes(j.at("omega_B"), "schedule.omega_B");
    return spec;
}

json lobes_json(const std::vector<GaussianLobe>& lobes) {
    json out = json::array();
    for (const auto& l : lobes) out.push_back({{"amplitude", l.amplitude}, {"center", l.center}, {"width", l.width}});
    return out;
}

void require_grid(const std::vector<double>& values, const char* name) {
    if (values.empty()) throw ConfigError(std::string("sweep.") + name + ": at least one value required");
    for (double v : values)
        if (!std::isfinite(v) || v < 0.0) throw ParamError(std::string("sweep.") + name, "values ≥ 0");
}

}  // namespace

std::string to_string(Scenario s) {
    switch (s) {
        case Scenario::dark_state: return "dark-state";
        case Scenario::evolve_closed: return "evolve-closed";
        case Scenario::evolve_open: return "evolve-open";
        case Scenario::sweep_decay: return "sweep-decay";
        case Scenario::sweep_atoms: return "sweep-atoms";
    }
    return "?";
}

Scenario scenario_from_string(const std::string& name) {
    for (Scenario s : {Scenario::dark_state, Scenario::evolve_closed, Scenario::evolve_open, Scenario::sweep_decay,
                       Scenario::sweep_atoms})
        if (to_string(s) == name) return s;
    throw ConfigError("unknown scenario '" + name + "'");
}

PulseSchedule ScheduleSpec::build(const SystemParams& p) const {
    return use_default ? default_schedule(p) : lobe_schedule(lobes_A, lobes_B);
}

RunConfig parse_config(std::string_view text, Scenario scenario, const ConfigOverrides& ov) {
    json doc = json::object();
    if (text.find_first_not_of(" \t\r\n") != std::string_view::npos) {
        try {
            doc = json::parse(text.begin(), text.end());
        } catch (const json::parse_error& e) {
            const auto [line, col] = line_column(text, e.byte);
            std::ostringstream msg;
            msg << "config syntax error at line " << line << ", column " << col << ": " << e.what();
            throw ConfigSyntaxError(msg.str(), line, col);
        }
    }
    reject_unknown(doc, {"scenario", "omega0_hz", "params", "schedule", "integrator", "sweep", "dark_state", "output"},
                   "config");

    RunConfig cfg;
    cfg.scenario = scenario;
    if (doc.contains("scenario")) {
        if (!doc["scenario"].is_string()) throw ConfigError("config: scenario must be a string");
        const Scenario named = scenario_from_string(doc["scenario"].get<std::string>());
        if (named != scenario)
            throw ConfigError("config: scenario '" + to_string(named) + "' does not match command '" + to_string(scenario) + "'");
    }

    cfg.params = scenario == Scenario::sweep_atoms ? atom_sweep_base() : SystemParams::reference();
    if (doc.contains("params")) merge_json(cfg.params, doc["params"]);
    if (doc.contains("schedule")) cfg.schedule = parse_schedule(doc["schedule"]);
    if (doc.contains("integrator")) merge_json(cfg.integrator, doc["integrator"]);
    if (doc.contains("omega0_hz")) {
        if (!doc["omega0_hz"].is_number() || !(doc["omega0_hz"].get<double>() > 0.0))
            throw ParamError("omega0_hz", "> 0");
        cfg.omega0_hz = doc["omega0_hz"].get<double>();
    }

    try {
        if (doc.contains("dark_state")) {
            reject_unknown(doc["dark_state"], {"at_time"}, "dark_state");
            if (doc["dark_state"].contains("at_time")) cfg.at_time = doc["dark_state"]["at_time"].get<double>();
        } else {
            cfg.at_time = 0.5 * cfg.params.t0;
        }
        if (doc.contains("output")) {
            const json& o = doc["output"];
            reject_unknown(o, {"dir", "plot", "timing"}, "output");
            cfg.out_dir = o.value("dir", cfg.out_dir);
            cfg.plot = o.value("plot", cfg.plot);
            cfg.timing = o.value("timing", cfg.timing);
        }
        if (doc.contains("sweep")) {
            const json& s = doc["sweep"];
            reject_unknown(s, {"gammas", "kappas", "Ns", "workers"}, "sweep");
            if (s.contains("gammas")) cfg.gammas = s["gammas"].get<std::vector<double>>();
            if (s.contains("kappas")) cfg.kappas = s["kappas"].get<std::vector<double>>();
            if (s.contains("Ns")) {
                for (const auto& n : s["Ns"]) {
                    if (!n.is_number_integer() || n.get<std::int64_t>() < 1) throw ParamError("sweep.Ns", "integers ≥ 1");
                    cfg.Ns.push_back(n.get<std::int64_t>());
                }
                if (cfg.Ns.empty()) throw ConfigError("sweep.Ns: at least one value required");
            }
            cfg.workers = s.value("workers", cfg.workers);
        }
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }

    if (ov.at_time) cfg.at_time = *ov.at_time;
    if (ov.out_dir) cfg.out_dir = *ov.out_dir;
    if (ov.plot) cfg.plot = *ov.plot;
    if (ov.workers) cfg.workers = *ov.workers;
    if (ov.t_start) cfg.integrator.t_start = *ov.t_start;
    if (ov.t_end) cfg.integrator.t_end = *ov.t_end;
    if (ov.abs_tol) cfg.integrator.abs_tol = *ov.abs_tol;
    if (ov.rel_tol) cfg.integrator.rel_tol = *ov.rel_tol;
    if (ov.timing) cfg.timing = *ov.timing;

    if (!doc.contains("sweep") || !doc["sweep"].contains("gammas")) cfg.gammas = default_gamma_grid(cfg.params);
    if (!doc.contains("sweep") || !doc["sweep"].contains("kappas")) cfg.kappas = default_kappa_grid(cfg.params);
    if (cfg.Ns.empty()) cfg.Ns = default_atom_grid();

    // Semantic validation before any computation.
    cfg.params.validate();
    cfg.integrator.validate(cfg.params);
    if (!cfg.schedule.use_default) lobe_schedule(cfg.schedule.lobes_A, cfg.schedule.lobes_B);
    if (!std::isfinite(cfg.at_time)) throw ParamError("at_time", "finite");
    if (cfg.workers < 1) throw ParamError("workers", "≥ 1");
    if (cfg.out_dir.empty()) throw ParamError("output.dir", "non-empty");
    require_grid(cfg.gammas, "gammas");
    require_grid(cfg.kappas, "kappas");
    return cfg;
}

json resolved_json(const RunConfig& cfg) {
    json schedule = cfg.schedule.use_default
                        ? json{{"type", "default"}}
                        : json{{"type", "lobes"}, {"omega_A", lobes_json(cfg.schedule.lobes_A)}, {"omega_B", lobes_json(cfg.schedule.lobes_B)}};
    json doc{
        {"version", kVersion},
        {"scenario", to_string(cfg.scenario)},
        {"params", to_json(cfg.params)},
        {"schedule", schedule},
        {"integrator", to_json(cfg.integrator)},
        {"output", {{"dir", cfg.out_dir}, {"plot", cfg.plot}, {"timing", cfg.timing}}},
    };
    if (cfg.omega0_hz) doc["omega0_hz"] = *cfg.omega0_hz;
    switch (cfg.scenario) {
        case Scenario::dark_state: doc["dark_state"] = {{"at_time", cfg.at_time}}; break;
        case Scenario::sweep_decay:
            doc["sweep"] = {{"gammas", cfg.gammas}, {"kappas", cfg.kappas}, {"workers", cfg.workers}};
            break;
        case Scenario::sweep_atoms: doc["sweep"] = {{"Ns", cfg.Ns}, {"workers", cfg.workers}}; break;
        default: break;
    }
    return doc;
}

}  // namespace stirap
