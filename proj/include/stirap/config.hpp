#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "stirap/dynamics.hpp"
#include "stirap/errors.hpp"
#include "stirap/model.hpp"

namespace stirap {

enum class Scenario { dark_state, evolve_closed, evolve_open, sweep_decay, sweep_atoms };

std::string to_string(Scenario s);
Scenario scenario_from_string(const std::string& name);

/// Either the default pulse pair or user-supplied Gaussian lobes.
struct ScheduleSpec {
    bool use_default = true;
    std::vector<GaussianLobe> lobes_A;
    std::vector<GaussianLobe> lobes_B;

    PulseSchedule build(const SystemParams& p) const;
};

/// Fully resolved description of one CLI invocation.
struct RunConfig {
    Scenario scenario = Scenario::evolve_closed;
    SystemParams params;
    ScheduleSpec schedule;
    IntegratorConfig integrator;
    double at_time = 10.0;
    std::vector<double> gammas;
    std::vector<double> kappas;
    std::vector<std::int64_t> Ns;
    int workers = 1;
    std::string out_dir = "out";
    bool plot = false;
    bool timing = true;
    std::optional<double> omega0_hz;
};

/// Command-line values that take precedence over the document.
struct ConfigOverrides {
    std::optional<double> at_time;
    std::optional<std::string> out_dir;
    std::optional<bool> plot;
    std::optional<int> workers;
    std::optional<double> t_start;
    std::optional<double> t_end;
    std::optional<double> abs_tol;
    std::optional<double> rel_tol;
    std::optional<bool> timing;
};

/// Malformed JSON; line and column are 1-based.
class ConfigSyntaxError : public ConfigError {
public:
    ConfigSyntaxError(const std::string& what, int line, int column)
        : ConfigError(what), line_(line), column_(column) {}
    int line() const noexcept { return line_; }
    int column() const noexcept { return column_; }

private:
    int line_;
    int column_;
};

/// Parses a JSON run document (blank text means "all defaults"), fills
/// defaults for `scenario`, applies overrides and validates everything.
/// Throws ConfigSyntaxError, ConfigError or ParamError.
RunConfig parse_config(std::string_view text, Scenario scenario, const ConfigOverrides& overrides = {});

/// The resolved configuration plus tool version, as written next to outputs.
nlohmann::json resolved_json(const RunConfig& cfg);

/// Exit statuses of run().
inline constexpr int kExitOk = 0;
inline constexpr int kExitNumerical = 1;
inline constexpr int kExitConfig = 2;

/// Executes the scenario and writes its artifacts under cfg.out_dir. On
/// failure every file written so far is removed.
int run(const RunConfig& cfg, std::ostream& log, std::ostream& err);

}  // namespace stirap
