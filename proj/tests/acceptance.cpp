// Acceptance suite: one [PASS]/[FAIL] line per criterion. Exit status 1 if any fail.
//
//   stirap_acceptance [--out DIR] [--only N]...

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <span>
#include <thread>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "stirap/basis.hpp"
#include "stirap/config.hpp"
#include "stirap/dynamics.hpp"
#include "stirap/io.hpp"
#include "stirap/model.hpp"
#include "stirap/ode.hpp"
#include "stirap/sweeps.hpp"

using namespace stirap;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

int failures = 0;

void report(int id, const std::string& name, bool ok, const std::string& detail) {
    std::printf("[%s] %d %s: %s\n", ok ? "PASS" : "FAIL", id, name.c_str(), detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
}

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream s;
    s << f.rdbuf();
    return s.str();
}

// The worker count is recorded as metadata; everything else must match.
nlohmann::json json_without_workers(const fs::path& p) {
    auto j = nlohmann::json::parse(slurp(p));
    j.erase("workers");
    return j;
}

double op_norm(const Matrix& m) { return Eigen::JacobiSVD<Matrix>(m).singularValues()(0); }

const StateVector phi1 = StateVector::basis(phi::p1);

// Shared runs, computed once.
struct Runs {
    SystemParams defaults = SystemParams::reference();
    Trajectory closed;
    Trajectory open_lossless;
    Trajectory open_lossy;
    double closed_s = 0, open_lossless_s = 0, open_lossy_s = 0;
};

void criterion_nullity() {
    const auto t0 = Clock::now();
    std::mt19937_64 rng(20240517);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double worst = 0.0;
    for (int draw = 0; draw < 1000; ++draw) {
        SystemParams p;
        p.gA = 20.0 * u(rng);
        p.gB = 20.0 * u(rng);
        p.nu = 1000.0 * u(rng);
        p.N = 1 + static_cast<std::int64_t>(2e5 * u(rng));
        p.tau = 0.5 + 2.0 * u(rng);
        p.t0 = 40.0 * u(rng);
        p.apply_overlap = u(rng) < 0.5;
        p.compensate_drive = u(rng) < 0.5;
        const double t = -50.0 + 120.0 * u(rng);
        const PulseSchedule s = default_schedule(p);
        const Matrix h = hamiltonian(t, p, s);
        const Vector d = dark_state(t, p, s).amplitudes.amplitudes();
        worst = std::max(worst, (h * d).norm() / std::max(1.0, op_norm(h)));
    }
    const double secs = seconds_since(t0);
    report(1, "dark-state nullity", worst <= 1e-10 && secs < 1.0,
           fmt("max |H D| / max(1,|H|) = %.3g over 1000 draws (tol 1e-10), %.2f s (limit 1 s)", worst, secs));
}

void criterion_closed(const Runs& r) {
    const auto& last = r.closed.populations.back();
    double inter = 0.0;
    for (const auto& pop : r.closed.populations)
        for (int i = phi::p2; i <= phi::p10; ++i) inter = std::max(inter, pop[static_cast<std::size_t>(i)]);
    const double pe = r.closed.error_probability.back();
    bool ok = r.closed_s <= 30.0 && inter <= 0.02 && pe <= 0.02;
    for (int i : {phi::p1, phi::p11, phi::p12}) ok = ok && std::abs(last[static_cast<std::size_t>(i)] - 1.0 / 3.0) <= 0.01;
    report(2, "closed-system transfer", ok,
           fmt("P1 = %.6f, P11 = %.6f, P12 = %.6f (1/3 +- 0.01); max P2..P10 = %.3g (<= 0.02); final Pe = %.3g "
               "(<= 0.02); %.2f s (limit 30 s)",
               last[phi::p1], last[phi::p11], last[phi::p12], inter, pe, r.closed_s));
}

void criterion_lossless(const Runs& r) {
    double worst = 0.0;
    for (std::size_t k = 0; k < r.closed.size(); ++k)
        worst = std::max(worst, std::abs(r.closed.fidelity[k] - r.open_lossless.fidelity[k]));
    const bool same_grid = r.closed.size() == r.open_lossless.size();
    report(3, "zero-dissipation equivalence", same_grid && worst <= 1e-6 && r.open_lossless_s <= 120.0,
           fmt("max |F_open - F_closed| = %.3g over %zu samples (tol 1e-6), %.2f s (limit 120 s)", worst,
               r.open_lossless.size(), r.open_lossless_s));
}

void criterion_lossy(const Runs& r) {
    const double f = r.open_lossy.fidelity.back();
    report(4, "fidelity at gamma = kappa = 0.4 g", f >= 0.97 && r.open_lossy_s <= 120.0,
           fmt("F = %.6f (>= 0.97), %.2f s (limit 120 s)", f, r.open_lossy_s));
}

struct DecayRun {
    fs::path dir;
    double seconds = 0.0;
    int exit = -1;
};

DecayRun run_decay_grid(const fs::path& dir, int workers) {
    ConfigOverrides o;
    o.out_dir = dir.string();
    o.plot = true;
    o.workers = workers;
    o.timing = false;
    fs::remove_all(dir);
    const RunConfig cfg = parse_config("", Scenario::sweep_decay, o);
    std::ostringstream log, err;
    const auto t0 = Clock::now();
    DecayRun d{dir, 0.0, run(cfg, log, err)};
    d.seconds = seconds_since(t0);
    if (d.exit != kExitOk) std::fprintf(stderr, "sweep-decay failed: %s\n", err.str().c_str());
    return d;
}

void criterion_decay_grid(const DecayRun& one, const DecayRun& eight) {
    bool ok = one.exit == kExitOk;
    std::string detail = "run failed";
    if (ok) {
        const CsvTable t = read_csv_file((one.dir / "sweep_decay.csv").string());
        const auto g = t.numbers("gamma"), k = t.numbers("kappa"), f = t.numbers("F");
        ok = t.rows.size() == 66;
        // rows are gamma-major: row = 11 * i_gamma + i_kappa
        double worst = -1.0;
        for (std::size_t i = 1; ok && i < 6; ++i)
            for (std::size_t j = 0; j < 11; ++j) worst = std::max(worst, f[11 * i + j] - f[11 * (i - 1) + j]);
        const double f00 = f.empty() ? 0.0 : f[0];
        const std::string svg = slurp(one.dir / "fidelity_vs_kappa.svg");
        std::size_t curves = 0;
        for (std::size_t pos = 0; (pos = svg.find("<polyline", pos)) != std::string::npos; ++pos) ++curves;
        ok = ok && worst <= 1e-4 && f00 >= 0.99 && curves == 6 && one.seconds <= 600.0 && g[0] == 0.0 && k[0] == 0.0;
        detail = fmt("%zu rows; max F(gamma_i+1) - F(gamma_i) = %.3g (<= 1e-4); F(0,0) = %.6f (>= 0.99); %zu curves "
                     "plotted; 1 worker %.1f s (limit 600 s); 8 workers %.1f s, speedup %.2fx on %u cores "
                     "(informational)",
                     t.rows.size(), worst, f00, curves, one.seconds, eight.seconds, one.seconds / eight.seconds,
                     std::thread::hardware_concurrency());
    }
    report(5, "decay grid shape", ok, detail);
}

void criterion_atom_number() {
    const auto t0 = Clock::now();
    const SweepResult r = sweep_atom_number(default_atom_grid(), atom_sweep_base(), IntegratorConfig{}, 1);
    double lo = 1.0, hi = 0.0;
    for (const auto& row : r.rows) {
        lo = std::min(lo, row.fidelity);
        hi = std::max(hi, row.fidelity);
    }
    const double mu = overlap_mu(10000);
    const bool ok = r.failed_rows() == 0 && hi - lo <= 0.05 && std::abs(mu - 0.67957) <= 1e-5;
    report(6, "atom-number robustness", ok,
           fmt("F in [%.6f, %.6f] over N = 2500..200000, spread %.4f (<= 0.05); mu(1e4) = %.6f (0.67957 +- 1e-5); "
               "%.1f s",
               lo, hi, hi - lo, mu, seconds_since(t0)));
}

void criterion_conservation(const Runs& r) {
    double norm = 0.0, exc = 0.0, trace = 0.0, lam = 0.0;
    for (std::size_t k = 0; k < r.closed.size(); ++k) {
        norm = std::max(norm, std::abs(r.closed.norm_or_trace[k] - 1.0));
        exc = std::max(exc, std::abs(r.closed.excitation[k] - 1.0));
    }
    for (const Trajectory* t : {&r.open_lossless, &r.open_lossy})
        for (std::size_t k = 0; k < t->size(); ++k) {
            trace = std::max(trace, std::abs(t->norm_or_trace[k] - 1.0));
            lam = std::min(lam, t->min_eigenvalue[k]);
        }
    report(7, "conservation", norm <= 1e-8 && exc <= 1e-8 && trace <= 1e-8 && lam >= -1e-8,
           fmt("closed: norm drift %.3g, excitation drift %.3g; open: trace drift %.3g, min eigenvalue %.3g "
               "(all within 1e-8)",
               norm, exc, trace, lam));
}

// Classical RK4 on the default closed run, carried in extended precision so
// the step-halving ratio is not swamped by double rounding.
void criterion_order(const Runs& r) {
    using LC = std::complex<long double>;
    using LV = Eigen::Matrix<LC, kDim, 1>;
    const SystemParams& p = r.defaults;
    const PulseSchedule s = default_schedule(p);
    auto rhs = [&](double t, const LV& y, LV& dy) {
        dy.setZero();
        for (const Coupling& c : couplings(t, p, s)) {
            const long double v = c.value;
            dy(c.row) += v * y(c.col);
            dy(c.col) += v * y(c.row);
        }
        dy *= LC(0, -1);
    };
    std::vector<double> samples;
    for (int k = 0; k <= 100; ++k) samples.push_back(-50.0 + 1.2 * k);
    auto terminal = [&](double h) {
        LV y = LV::Zero();
        y(phi::p1) = 1;
        ode::rk4(rhs, y, std::span<const double>(samples), h, [](auto&&...) {}, [](LV&) {});
        return y;
    };
    const auto t0 = Clock::now();
    const double h = 3e-3;
    const LV coarse = terminal(h), fine = terminal(h / 2), ref = terminal(h / 4);
    const long double e1 = (coarse - ref).norm(), e2 = (fine - ref).norm();
    const double ratio = static_cast<double>(e1 / e2);
    report(8, "integrator order", ratio >= 12.0,
           fmt("RK4 terminal error %.3Le at h = %.1e, %.3Le at h/2 (reference h/4), ratio %.2f (>= 12), %.1f s", e1, h,
               e2, ratio, seconds_since(t0)));
}

void criterion_determinism(const fs::path& out, const DecayRun& one, const DecayRun& eight) {
    std::vector<fs::path> dirs = {out / "c9_a", out / "c9_b"};
    bool ok = true;
    for (const auto& d : dirs) {
        fs::remove_all(d);
        ConfigOverrides o;
        o.out_dir = d.string();
        std::ostringstream log, err;
        ok = ok && run(parse_config("", Scenario::evolve_closed, o), log, err) == kExitOk;
    }
    const bool traj = ok && slurp(dirs[0] / "trajectory.csv") == slurp(dirs[1] / "trajectory.csv");
    const bool sweep = one.exit == kExitOk && eight.exit == kExitOk &&
                       slurp(one.dir / "sweep_decay.csv") == slurp(eight.dir / "sweep_decay.csv") &&
                       json_without_workers(one.dir / "sweep_decay.json") ==
                           json_without_workers(eight.dir / "sweep_decay.json");
    report(9, "determinism", traj && sweep,
           fmt("repeated trajectory.csv %s; sweep_decay.csv (and .json apart from the worker count) with 1 vs 8 workers %s",
               traj ? "byte-identical" : "DIFFER", sweep ? "byte-identical" : "DIFFER"));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"acceptance suite"};
    std::string out = "acceptance_out";
    std::vector<int> only;
    app.add_option("--out", out, "Scratch directory for run artifacts");
    app.add_option("--only", only, "Run only these criteria");
    CLI11_PARSE(app, argc, argv);
    auto want = [&](int id) { return only.empty() || std::find(only.begin(), only.end(), id) != only.end(); };
    fs::create_directories(out);

    Runs r;
    IntegratorConfig ic;
    ic.record_states = false;
    const PulseSchedule s = default_schedule(r.defaults);
    if (want(2) || want(3) || want(7)) {
        auto t0 = Clock::now();
        r.closed = evolve_schrodinger(r.defaults, s, ic, phi1);
        r.closed_s = seconds_since(t0);
    }
    if (want(3) || want(7)) {
        auto t0 = Clock::now();
        r.open_lossless = evolve_lindblad(r.defaults, s, ic, DensityMatrix::pure(phi1));
        r.open_lossless_s = seconds_since(t0);
    }
    if (want(4) || want(7)) {
        SystemParams lossy = r.defaults;
        lossy.gamma = lossy.kappa_cav = lossy.kappa_fib = 0.4 * lossy.gA;
        auto t0 = Clock::now();
        r.open_lossy = evolve_lindblad(lossy, default_schedule(lossy), ic, DensityMatrix::pure(phi1));
        r.open_lossy_s = seconds_since(t0);
    }
    DecayRun one, eight;
    if (want(5) || want(9)) {
        one = run_decay_grid(fs::path(out) / "c5_w1", 1);
        eight = run_decay_grid(fs::path(out) / "c5_w8", 8);
    }

    if (want(1)) criterion_nullity();
    if (want(2)) criterion_closed(r);
    if (want(3)) criterion_lossless(r);
    if (want(4)) criterion_lossy(r);
    if (want(5)) criterion_decay_grid(one, eight);
    if (want(6)) criterion_atom_number();
    if (want(7)) criterion_conservation(r);
    if (want(8)) criterion_order(r);
    if (want(9)) criterion_determinism(out, one, eight);

    std::printf("%d criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
