#include "stirap/sweeps.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <limits>
#include <sstream>
#include <thread>

#include "stirap/basis.hpp"
#include "stirap/errors.hpp"

namespace stirap {
namespace {

bool is_rate_axis(const std::string& name) {
    return name == "gamma" || name == "kappa" || name == "kappa_cav" || name == "kappa_fib" || name == "g" ||
           name == "gA" || name == "gB" || name == "nu";
}

SweepRow evaluate(const SweepSpec& spec, std::size_t index) {
    SweepRow row;
    row.index = index;
    row.parameters = spec.point(index);
    row.resolved = spec.base;
    const auto start = std::chrono::steady_clock::now();
    try {
        for (std::size_t a = 0; a < spec.axes.size(); ++a)
            apply_axis_value(row.resolved, spec.axes[a].name, row.parameters[a]);
        row.resolved.validate();
        if (row.resolved.apply_overlap) row.mu = overlap_mu(row.resolved.N);

        IntegratorConfig cfg = spec.integrator;
        cfg.record_states = false;
        const PulseSchedule schedule = spec.schedule(row.resolved);
        const Trajectory tr =
            evolve_lindblad(row.resolved, schedule, cfg, DensityMatrix::pure(StateVector::basis(phi::p1)));
        const auto& last = tr.populations.back();
        row.fidelity = tr.fidelity.back();
        row.P1 = last[phi::p1];
        row.P11 = last[phi::p11];
        row.P12 = last[phi::p12];
        row.max_Pe = tr.max_error_probability();
    } catch (const std::exception& e) {
        const double nan = std::numeric_limits<double>::quiet_NaN();
        row.fidelity = row.P1 = row.P11 = row.P12 = row.max_Pe = nan;
        row.status = e.what();
    } catch (...) {
        const double nan = std::numeric_limits<double>::quiet_NaN();
        row.fidelity = row.P1 = row.P11 = row.P12 = row.max_Pe = nan;
        row.status = "unknown failure";
    }
    row.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return row;
}

std::vector<double> scaled(const SystemParams& p, std::initializer_list<double> fractions) {
    std::vector<double> out;
    for (double f : fractions) out.push_back(f * p.gA);
    return out;
}

}  // namespace

void SweepSpec::validate() const {
    if (axes.empty()) throw ConfigError("sweep: at least one axis required");
    for (const auto& axis : axes) {
        if (axis.values.empty()) throw ConfigError("sweep: axis '" + axis.name + "' has no values");
        SystemParams probe = base;
        for (double v : axis.values) {
            if (!std::isfinite(v)) throw ConfigError("sweep: axis '" + axis.name + "' has a non-finite value");
            if (is_rate_axis(axis.name) && v < 0.0)
                throw ConfigError("sweep: axis '" + axis.name + "' values must be ≥ 0");
            apply_axis_value(probe, axis.name, v);
        }
    }
    if (!schedule) throw ConfigError("sweep: schedule factory is empty");
}

std::size_t SweepSpec::size() const {
    std::size_t n = 1;
    for (const auto& axis : axes) n *= axis.values.size();
    return axes.empty() ? 0 : n;
}

std::vector<double> SweepSpec::point(std::size_t index) const {
    std::vector<double> out(axes.size());
    for (std::size_t a = axes.size(); a-- > 0;) {
        const std::size_t n = axes[a].values.size();
        out[a] = axes[a].values[index % n];
        index /= n;
    }
    return out;
}

std::size_t SweepResult::failed_rows() const {
    return static_cast<std::size_t>(std::count_if(rows.begin(), rows.end(), [](const SweepRow& r) { return !r.ok(); }));
}

void apply_axis_value(SystemParams& p, const std::string& name, double value) {
    if (name == "gamma") p.gamma = value;
    else if (name == "kappa") p.kappa_cav = p.kappa_fib = value;
    else if (name == "kappa_cav") p.kappa_cav = value;
    else if (name == "kappa_fib") p.kappa_fib = value;
    else if (name == "g") p.gA = p.gB = value;
    else if (name == "gA") p.gA = value;
    else if (name == "gB") p.gB = value;
    else if (name == "nu") p.nu = value;
    else if (name == "tau") p.tau = value;
    else if (name == "t0") p.t0 = value;
    else if (name == "N") {
        if (!(value >= 1.0) || value != std::floor(value) || value > 9.0e15)
            throw ConfigError("sweep: N values must be positive integers");
        p.N = static_cast<std::int64_t>(value);
    } else {
        throw ConfigError("sweep: unknown axis '" + name + "'");
    }
}

SweepResult run_parallel(const SweepSpec& spec, int workers) {
    if (workers < 1) throw ConfigError("sweep: workers must be ≥ 1");
    spec.validate();

    SweepResult result;
    for (const auto& axis : spec.axes) result.axis_names.push_back(axis.name);
    result.base = spec.base;
    result.integrator = spec.integrator;
    try {
        result.schedule_description = spec.schedule(spec.base).description;
    } catch (const std::exception& e) {
        result.schedule_description = std::string("unavailable for base parameters: ") + e.what();
    }
    result.workers = workers;

    const std::size_t n = spec.size();
    result.rows.resize(n);
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) result.rows[i] = evaluate(spec, i);
    };

    const auto threads = std::min<std::size_t>(static_cast<std::size_t>(workers), n);
    if (threads <= 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (std::size_t i = 0; i < threads; ++i) pool.emplace_back(work);
    }
    return result;
}

SweepResult sweep_decay(const std::vector<double>& gammas, const std::vector<double>& kappas,
                        const SystemParams& base, const IntegratorConfig& integrator, int workers) {
    SweepSpec spec;
    spec.axes = {{"gamma", gammas}, {"kappa", kappas}};
    spec.base = base;
    spec.integrator = integrator;
    return run_parallel(spec, workers);
}

SweepResult sweep_atom_number(const std::vector<std::int64_t>& Ns, const SystemParams& base,
                              const IntegratorConfig& integrator, int workers) {
    SweepSpec spec;
    std::vector<double> values(Ns.begin(), Ns.end());
    spec.axes = {{"N", std::move(values)}};
    spec.base = base;
    spec.base.apply_overlap = true;
    spec.base.compensate_drive = true;
    spec.integrator = integrator;
    // The base N is only a placeholder; each row validates its own N.
    if (!Ns.empty()) spec.base.N = std::max<std::int64_t>(1, Ns.front());
    return run_parallel(spec, workers);
}

std::vector<double> default_gamma_grid(const SystemParams& p) {
    return scaled(p, {0.0, 0.2, 0.4, 0.6, 0.8, 1.0});
}

std::vector<double> default_kappa_grid(const SystemParams& p) {
    return scaled(p, {0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0});
}

std::vector<std::int64_t> default_atom_grid() {
    constexpr int n = 8;
    const double lo = std::log(2500.0), hi = std::log(200000.0);
    std::vector<std::int64_t> out;
    for (int i = 0; i < n; ++i)
        out.push_back(static_cast<std::int64_t>(std::llround(std::exp(lo + (hi - lo) * i / (n - 1)))));
    return out;
}

SystemParams atom_sweep_base() {
    SystemParams p = SystemParams::reference();
    p.gamma = p.kappa_cav = p.kappa_fib = 0.4 * p.gA;
    p.apply_overlap = true;
    p.compensate_drive = true;
    return p;
}

std::vector<std::string> monotonicity_warnings(const SweepResult& result, double tol) {
    std::vector<std::string> out;
    const auto g = std::find(result.axis_names.begin(), result.axis_names.end(), "gamma");
    const auto k = std::find(result.axis_names.begin(), result.axis_names.end(), "kappa");
    if (g == result.axis_names.end() || k == result.axis_names.end()) return out;
    const auto gi = static_cast<std::size_t>(g - result.axis_names.begin());
    const auto ki = static_cast<std::size_t>(k - result.axis_names.begin());

    for (std::size_t i = 0; i < result.rows.size(); ++i) {
        const SweepRow& a = result.rows[i];
        if (!a.ok()) continue;
        // nearest row at the same gamma with a larger kappa
        const SweepRow* b = nullptr;
        for (const auto& r : result.rows) {
            if (!r.ok() || r.parameters[gi] != a.parameters[gi] || r.parameters[ki] <= a.parameters[ki]) continue;
            if (!b || r.parameters[ki] < b->parameters[ki]) b = &r;
        }
        if (b && b->fidelity > a.fidelity + tol) {
            std::ostringstream msg;
            msg << "fidelity rises along kappa at gamma = " << a.parameters[gi] << ": F(kappa=" << a.parameters[ki]
                << ") = " << a.fidelity << " < F(kappa=" << b->parameters[ki] << ") = " << b->fidelity;
            out.push_back(msg.str());
        }
    }
    return out;
}

}  // namespace stirap
