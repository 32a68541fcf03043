#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "stirap/dynamics.hpp"
#include "stirap/model.hpp"

namespace stirap {

using ScheduleFactory = std::function<PulseSchedule(const SystemParams&)>;

/// One swept parameter. Recognized names: gamma, kappa (sets cavity and fiber
/// decay together), kappa_cav, kappa_fib, N, g (sets gA and gB), gA, gB, nu,
/// tau, t0.
struct SweepAxis {
    std::string name;
    std::vector<double> values;
};

/// Cartesian grid over `axes` (first axis slowest). Each point runs
/// evolve_lindblad from |phi1><phi1| with the schedule produced by `schedule`
/// for that point's parameters.
struct SweepSpec {
    std::vector<SweepAxis> axes;
    SystemParams base;
    ScheduleFactory schedule = default_schedule;
    IntegratorConfig integrator;

    void validate() const;
    std::size_t size() const;
    /// Axis values of grid point `index` in axis order.
    std::vector<double> point(std::size_t index) const;
};

struct SweepRow {
    std::size_t index = 0;
    std::vector<double> parameters;
    SystemParams resolved;
    double fidelity = 0.0;
    double P1 = 0.0;
    double P11 = 0.0;
    double P12 = 0.0;
    double max_Pe = 0.0;
    double wall_ms = 0.0;
    std::optional<double> mu;
    std::string status = "ok";

    bool ok() const { return status == "ok"; }
};

struct SweepResult {
    std::vector<std::string> axis_names;
    std::vector<SweepRow> rows;
    SystemParams base;
    IntegratorConfig integrator;
    std::string schedule_description;
    int workers = 1;

    std::size_t failed_rows() const;
};

/// Applies one axis value to a parameter set; throws ConfigError for unknown names.
void apply_axis_value(SystemParams& p, const std::string& name, double value);

/// Evaluates every grid point on `workers` threads. Rows come back in grid
/// order with identical numbers for any worker count; a failing point only
/// marks its own row.
SweepResult run_parallel(const SweepSpec& spec, int workers);

/// Decay grid: gamma (outer) x kappa (inner), kappa applied to all six photon modes.
SweepResult sweep_decay(const std::vector<double>& gammas, const std::vector<double>& kappas,
                        const SystemParams& base, const IntegratorConfig& integrator = {}, int workers = 1);

/// Scan over condensate size with the overlap factor and the
/// compensated drive switched on.
SweepResult sweep_atom_number(const std::vector<std::int64_t>& Ns, const SystemParams& base,
                              const IntegratorConfig& integrator = {}, int workers = 1);

/// gamma in {0, 0.2, ..., 1.0} * gA.
std::vector<double> default_gamma_grid(const SystemParams& p);
/// kappa in {0, 0.1, ..., 1.0} * gA.
std::vector<double> default_kappa_grid(const SystemParams& p);
/// 8 log-spaced condensate sizes from 2,500 to 200,000.
std::vector<std::int64_t> default_atom_grid();

/// Reference parameters with gamma = kappa = 0.4 g, overlap and compensation on.
SystemParams atom_sweep_base();

/// Places along the kappa axis where fidelity rises by more than `tol` at fixed gamma.
std::vector<std::string> monotonicity_warnings(const SweepResult& result, double tol = 1e-4);

}  // namespace stirap
