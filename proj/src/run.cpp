#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include "stirap/basis.hpp"
#include "stirap/config.hpp"
#include "stirap/io.hpp"
#include "stirap/svg.hpp"
#include "stirap/sweeps.hpp"

namespace stirap {
namespace {

namespace fs = std::filesystem;

// Records every file written so a failed run can remove them.
class OutputSet {
public:
    explicit OutputSet(fs::path dir) : dir_(std::move(dir)) {}

    fs::path path(const std::string& name) const { return dir_ / name; }

    void write(const std::string& name, const std::string& content) {
        const fs::path p = path(name);
        std::ofstream f(p, std::ios::binary);
        if (!f) throw ConfigError("cannot write " + p.string());
        written_.push_back(p);
        f << content;
        if (!f) throw ConfigError("failed writing " + p.string());
    }

    void write_plot(const std::string& name, const svg::LinePlot& plot) { write(name, svg::render(plot)); }

    void remove_all() noexcept {
        std::error_code ec;
        for (const auto& p : written_) fs::remove(p, ec);
        written_.clear();
    }

    const std::vector<fs::path>& written() const { return written_; }

private:
    fs::path dir_;
    std::vector<fs::path> written_;
};

std::string g_label(double value, double g) {
    std::ostringstream s;
    s << "γ = " << std::round(value / g * 100.0) / 100.0 << "g";
    return s.str();
}

svg::LinePlot titled(std::string title, std::string x_label, std::string y_label) {
    svg::LinePlot p;
    p.title = std::move(title);
    p.x_label = std::move(x_label);
    p.y_label = std::move(y_label);
    return p;
}

void plot_trajectory(OutputSet& out, const std::string& csv_name, const std::string& title_suffix) {
    const CsvTable t = read_csv_file(out.path(csv_name).string());
    const auto times = t.numbers("t");

    svg::LinePlot main = titled("Populations" + title_suffix, "t (1/Ω₀)", "population");
    for (const char* c : {"P1", "P11", "P12"}) main.series.push_back({c, times, t.numbers(c)});
    main.y_range = std::make_pair(0.0, 1.0);
    out.write_plot("populations.svg", main);

    svg::LinePlot inter = titled("Intermediate populations" + title_suffix, "t (1/Ω₀)", "population");
    for (int i = 2; i <= 10; ++i) {
        const std::string c = "P" + std::to_string(i);
        inter.series.push_back({c, times, t.numbers(c)});
    }
    out.write_plot("intermediate_populations.svg", inter);

    svg::LinePlot pe = titled("Error probability" + title_suffix, "t (1/Ω₀)", "P_e");
    pe.series.push_back({"P_e", times, t.numbers("Pe")});
    out.write_plot("error_probability.svg", pe);
}

void plot_decay_sweep(OutputSet& out, const std::string& csv_name, double g) {
    const CsvTable t = read_csv_file(out.path(csv_name).string());
    const auto gammas = t.numbers("gamma");
    const auto kappas = t.numbers("kappa");
    const auto fid = t.numbers("F");
    std::map<double, svg::Series> curves;
    for (std::size_t i = 0; i < gammas.size(); ++i) {
        auto& s = curves[gammas[i]];
        if (s.name.empty()) s.name = g_label(gammas[i], g);
        s.x.push_back(kappas[i] / g);
        s.y.push_back(fid[i]);
    }
    svg::LinePlot plot = titled("Fidelity vs cavity/fiber decay", "κ / g", "F");
    for (auto& [gamma, series] : curves) plot.series.push_back(std::move(series));
    out.write_plot("fidelity_vs_kappa.svg", plot);
}

void plot_atom_sweep(OutputSet& out, const std::string& csv_name) {
    const CsvTable t = read_csv_file(out.path(csv_name).string());
    svg::LinePlot plot = titled("Fidelity vs condensate atom number", "N", "F");
    plot.log_x = true;
    plot.series.push_back({"F", t.numbers("N"), t.numbers("F")});
    out.write_plot("fidelity_vs_N.svg", plot);
}

void run_dark_state(const RunConfig& cfg, OutputSet& out, std::ostream& log) {
    const PulseSchedule s = cfg.schedule.build(cfg.params);
    const DarkState d = dark_state(cfg.at_time, cfg.params, s);
    const Matrix h = hamiltonian(cfg.at_time, cfg.params, s);

    std::ostringstream csv;
    csv << "label,amplitude\n";
    for (int i = 0; i < kDim; ++i) csv << label_name(i) << ',' << format_number(d.amplitudes[i].real()) << '\n';
    out.write("dark_state.csv", csv.str());

    log << "dark state at t = " << cfg.at_time << "  Omega_A = " << s.omega_A(cfg.at_time)
        << "  Omega_B = " << s.omega_B(cfg.at_time) << "  K = " << d.normalization << '\n';
    for (int i = 0; i < kDim; ++i)
        if (d.amplitudes[i] != Complex{}) log << "  " << label_name(i) << "  " << d.amplitudes[i].real() << '\n';
    log << "  |H D| = " << (h * d.amplitudes.amplitudes()).norm() << '\n';
}

void run_evolve(const RunConfig& cfg, OutputSet& out, std::ostream& log) {
    const PulseSchedule s = cfg.schedule.build(cfg.params);
    IntegratorConfig ic = cfg.integrator;
    ic.record_states = false;
    const StateVector psi0 = StateVector::basis(phi::p1);
    const bool closed = cfg.scenario == Scenario::evolve_closed;
    const Trajectory tr = closed ? evolve_schrodinger(cfg.params, s, ic, psi0)
                                 : evolve_lindblad(cfg.params, s, ic, DensityMatrix::pure(psi0));
    out.write("trajectory.csv", trajectory_csv(tr));
    if (cfg.plot) plot_trajectory(out, "trajectory.csv", closed ? " (closed)" : " (open)");

    const auto& last = tr.populations.back();
    log << (closed ? "closed" : "open") << " evolution, " << tr.size() << " samples, " << tr.accepted_steps
        << " steps\n  final P1 = " << last[phi::p1] << "  P11 = " << last[phi::p11] << "  P12 = " << last[phi::p12]
        << "\n  final F = " << tr.fidelity.back() << "  Pe = " << tr.error_probability.back()
        << "  max Pe = " << tr.max_error_probability() << '\n';
}

void report_rows(const SweepResult& r, std::ostream& log) {
    log << r.rows.size() << " grid points, " << r.failed_rows() << " failed\n";
    for (const auto& row : r.rows)
        if (!row.ok()) log << "  row " << row.index << ": " << row.status << '\n';
}

void run_sweep_decay(const RunConfig& cfg, OutputSet& out, std::ostream& log, std::ostream& err) {
    SweepSpec spec;
    spec.axes = {{"gamma", cfg.gammas}, {"kappa", cfg.kappas}};
    spec.base = cfg.params;
    spec.integrator = cfg.integrator;
    const ScheduleSpec sched = cfg.schedule;
    spec.schedule = [sched](const SystemParams& p) { return sched.build(p); };
    const SweepResult r = run_parallel(spec, cfg.workers);

    const SweepCsvOptions opt{cfg.timing};
    out.write("sweep_decay.csv", sweep_csv(r, opt));
    out.write("sweep_decay.json", to_json(r, opt).dump(2) + "\n");
    if (cfg.plot) plot_decay_sweep(out, "sweep_decay.csv", cfg.params.gA);
    report_rows(r, log);
    for (const auto& w : monotonicity_warnings(r)) err << "warning: " << w << '\n';
}

void run_sweep_atoms(const RunConfig& cfg, OutputSet& out, std::ostream& log) {
    SweepSpec spec;
    spec.axes = {{"N", std::vector<double>(cfg.Ns.begin(), cfg.Ns.end())}};
    spec.base = cfg.params;
    spec.base.apply_overlap = true;
    spec.base.compensate_drive = true;
    spec.base.N = cfg.Ns.front();
    spec.integrator = cfg.integrator;
    const ScheduleSpec sched = cfg.schedule;
    spec.schedule = [sched](const SystemParams& p) { return sched.build(p); };
    const SweepResult r = run_parallel(spec, cfg.workers);

    const SweepCsvOptions opt{cfg.timing};
    out.write("sweep_atoms.csv", sweep_csv(r, opt));
    out.write("sweep_atoms.json", to_json(r, opt).dump(2) + "\n");
    if (cfg.plot) plot_atom_sweep(out, "sweep_atoms.csv");
    report_rows(r, log);
}

}  // namespace

int run(const RunConfig& cfg, std::ostream& log, std::ostream& err) {
    std::error_code ec;
    fs::create_directories(cfg.out_dir, ec);
    if (ec) {
        err << "error: cannot create output directory " << cfg.out_dir << ": " << ec.message() << '\n';
        return kExitConfig;
    }
    OutputSet out(cfg.out_dir);
    try {
        switch (cfg.scenario) {
            case Scenario::dark_state: run_dark_state(cfg, out, log); break;
            case Scenario::evolve_closed:
            case Scenario::evolve_open: run_evolve(cfg, out, log); break;
            case Scenario::sweep_decay: run_sweep_decay(cfg, out, log, err); break;
            case Scenario::sweep_atoms: run_sweep_atoms(cfg, out, log); break;
        }
        out.write("config.resolved.json", resolved_json(cfg).dump(2) + "\n");
        return kExitOk;
    } catch (const ParamError& e) {
        out.remove_all();
        err << "error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const ConfigError& e) {
        out.remove_all();
        err << "error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        out.remove_all();
        err << "numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    }
}

}  // namespace stirap
