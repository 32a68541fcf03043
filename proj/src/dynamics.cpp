#include "stirap/dynamics.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "stirap/basis.hpp"
#include "stirap/errors.hpp"
#include "stirap/ode.hpp"

namespace stirap {
namespace {

constexpr Complex kI{0.0, 1.0};

// Nonzero entries of one jump operator: L = sum_k value_k |row_k><col_k|.
struct JumpEntry {
    int row;
    int col;
    Complex value;
};
using Jump = std::vector<JumpEntry>;

struct Dissipator {
    std::vector<Jump> jumps;
    Matrix gamma = Matrix::Zero();  // sum_c L_c^dag L_c
    bool gamma_diagonal = true;
};

Dissipator build_dissipator(const SystemParams& p) {
    Dissipator d;
    for (const auto& op : collapse_operators(p)) {
        Jump jump;
        for (int col = 0; col < kDim; ++col)
            for (int row = 0; row < kDim; ++row)
                if (op.matrix(row, col) != Complex{}) jump.push_back({row, col, op.matrix(row, col)});
        if (jump.empty()) continue;
        d.gamma += op.matrix.adjoint() * op.matrix;
        d.jumps.push_back(std::move(jump));
    }
    Matrix off = d.gamma;
    off.diagonal().setZero();
    d.gamma_diagonal = off.cwiseAbs().maxCoeff() == 0.0;
    return d;
}

// out = H psi using the coupling list.
void apply_hamiltonian(const CouplingList& h, const Vector& psi, Vector& out) {
    out.setZero();
    for (const auto& c : h) {
        out(c.row) += c.value * psi(c.col);
        out(c.col) += c.value * psi(c.row);
    }
}

class SchrodingerRhs {
public:
    SchrodingerRhs(const SystemParams& p, const PulseSchedule& s) : p_(p), s_(s) {}

    void operator()(double t, const Vector& psi, Vector& dpsi) const {
        apply_hamiltonian(couplings(t, p_, s_), psi, dpsi);
        dpsi *= -kI;
    }

private:
    const SystemParams& p_;
    const PulseSchedule& s_;
};

class LindbladRhs {
public:
    LindbladRhs(const SystemParams& p, const PulseSchedule& s) : p_(p), s_(s), d_(build_dissipator(p)) {}

    // With K = H - (i/2) Gamma and rho Hermitian, rho K^dag = (K rho)^dag, so
    // -i[H, rho] - 1/2 {Gamma, rho} = -i (X - X^dag) with X = K rho.
    void operator()(double t, const Matrix& rho, Matrix& drho) const {
        Matrix x = Matrix::Zero();
        for (const auto& c : couplings(t, p_, s_)) {
            x.row(c.row) += c.value * rho.row(c.col);
            x.row(c.col) += c.value * rho.row(c.row);
        }
        if (d_.gamma_diagonal) {
            for (int i = 0; i < kDim; ++i)
                if (d_.gamma(i, i) != Complex{}) x.row(i) += (-0.5 * kI * d_.gamma(i, i)) * rho.row(i);
        } else {
            x.noalias() += (-0.5 * kI) * (d_.gamma * rho);
        }
        drho = -kI * (x - x.adjoint());
        for (const auto& jump : d_.jumps)
            for (const auto& a : jump)
                for (const auto& b : jump) drho(a.row, b.row) += a.value * std::conj(b.value) * rho(a.col, b.col);
    }

private:
    const SystemParams& p_;
    const PulseSchedule& s_;
    Dissipator d_;
};

void validate_inputs(const SystemParams& p, const PulseSchedule& s, const IntegratorConfig& cfg) {
    p.validate();
    cfg.validate(p);
    if (!s.omega_A || !s.omega_B) throw ConfigError("pulse schedule has an empty envelope function");
}

template <class State>
Trajectory make_trajectory(const IntegratorConfig& cfg, bool mixed, std::size_t n) {
    Trajectory tr;
    tr.mixed = mixed;
    tr.times.reserve(n);
    if (cfg.record_states) {
        if (mixed) tr.density_matrices.reserve(n);
        else tr.states.reserve(n);
    }
    tr.populations.reserve(n);
    tr.error_probability.reserve(n);
    tr.fidelity.reserve(n);
    tr.norm_or_trace.reserve(n);
    tr.excitation.reserve(n);
    return tr;
}

double dark_overlap_error(const Vector& psi_or_null, const Matrix* rho, const SystemParams& p,
                          const PulseSchedule& s, double t) {
    try {
        const Vector d = dark_state(t, p, s).amplitudes.amplitudes();
        if (rho) return 1.0 - (d.adjoint() * (*rho) * d)(0, 0).real();
        return 1.0 - std::norm(d.dot(psi_or_null));
    } catch (const DomainError&) {
        return std::numeric_limits<double>::quiet_NaN();
    }
}

template <class Rhs, class State, class Observe, class Post>
ode::StepStats integrate(const IntegratorConfig& cfg, Rhs& rhs, State& y, const std::vector<double>& samples,
                         Observe&& observe, Post&& post) {
    if (cfg.method == IntegrationMethod::rk4) return ode::rk4(rhs, y, std::span<const double>(samples), cfg.max_step, observe, post);
    ode::AdaptiveOptions opt;
    opt.abs_tol = cfg.abs_tol;
    opt.rel_tol = cfg.rel_tol;
    opt.max_step = cfg.max_step;
    opt.initial_step = std::min(1e-4, cfg.max_step);
    return ode::dormand_prince(rhs, y, std::span<const double>(samples), opt, observe, post);
}

}  // namespace

std::string to_string(IntegrationMethod m) {
    return m == IntegrationMethod::rk4 ? "rk4" : "dopri5";
}

IntegrationMethod integration_method_from_string(const std::string& name) {
    if (name == "dopri5" || name == "dormand_prince") return IntegrationMethod::dormand_prince;
    if (name == "rk4") return IntegrationMethod::rk4;
    throw ConfigError("unknown integration method '" + name + "' (expected dopri5 or rk4)");
}

void IntegratorConfig::validate(const SystemParams& p) const {
    auto fail = [](const std::string& msg) { throw ConfigError(msg); };
    if (!std::isfinite(t_start) || !std::isfinite(t_end) || !(t_start < t_end)) fail("integrator: t_start < t_end required");
    if (!(abs_tol > 0.0) || !std::isfinite(abs_tol)) fail("integrator: abs_tol > 0 required");
    if (!(rel_tol > 0.0) || !std::isfinite(rel_tol)) fail("integrator: rel_tol > 0 required");
    if (!(sample_interval > 0.0) || !std::isfinite(sample_interval)) fail("integrator: sample_interval > 0 required");
    if (!(max_step > 0.0) || !std::isfinite(max_step)) fail("integrator: max_step > 0 required");
    if (p.nu > 0.0) {
        const double limit = 2.0 * std::numbers::pi / p.nu / 10.0;
        if (max_step > limit) {
            std::ostringstream msg;
            msg << "integrator: max_step " << max_step << " must be ≤ (2π/ν)/10 = " << limit;
            fail(msg.str());
        }
    }
}

std::vector<double> IntegratorConfig::sample_times() const {
    const double span = t_end - t_start;
    const auto n = static_cast<long>(std::floor(span / sample_interval + 1e-9));
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(n) + 2);
    for (long k = 0; k <= n; ++k) out.push_back(t_start + static_cast<double>(k) * sample_interval);
    const double tol = 1e-9 * std::max(1.0, std::abs(t_end));
    if (t_end - out.back() > tol) out.push_back(t_end);
    else out.back() = t_end;
    return out;
}

double Trajectory::max_error_probability() const {
    double m = 0.0;
    for (double pe : error_probability)
        if (std::isfinite(pe)) m = std::max(m, pe);
    return m;
}

Trajectory evolve_schrodinger(const SystemParams& p, const PulseSchedule& s, const IntegratorConfig& cfg,
                              const StateVector& psi0) {
    validate_inputs(p, s, cfg);
    if (!psi0.is_normalized()) throw ConfigError("initial state vector is not normalized");

    const auto samples = cfg.sample_times();
    const StateVector target = target_state();
    const RealMatrix ne = excitation_operator();
    Trajectory tr = make_trajectory<Vector>(cfg, false, samples.size());

    auto observe = [&](std::size_t, double t, const Vector& psi) {
        tr.times.push_back(t);
        Populations pop{};
        double norm2 = 0.0, exc = 0.0;
        for (int i = 0; i < kDim; ++i) {
            pop[static_cast<std::size_t>(i)] = std::norm(psi(i));
            norm2 += pop[static_cast<std::size_t>(i)];
            exc += ne(i, i) * pop[static_cast<std::size_t>(i)];
        }
        tr.populations.push_back(pop);
        tr.norm_or_trace.push_back(norm2);
        tr.excitation.push_back(exc);
        tr.fidelity.push_back(std::norm(target.amplitudes().dot(psi)));
        tr.error_probability.push_back(dark_overlap_error(psi, nullptr, p, s, t));
        if (cfg.record_states) tr.states.emplace_back(psi);
    };

    Vector y = psi0.amplitudes();
    SchrodingerRhs rhs(p, s);
    const auto stats = integrate(cfg, rhs, y, samples, observe, [](Vector&) {});
    tr.accepted_steps = stats.accepted;
    tr.rejected_steps = stats.rejected;
    return tr;
}

Trajectory evolve_lindblad(const SystemParams& p, const PulseSchedule& s, const IntegratorConfig& cfg,
                           const DensityMatrix& rho0) {
    validate_inputs(p, s, cfg);
    rho0.validate();

    const auto samples = cfg.sample_times();
    const StateVector target = target_state();
    const RealMatrix ne = excitation_operator();
    Trajectory tr = make_trajectory<Matrix>(cfg, true, samples.size());
    tr.min_eigenvalue.reserve(samples.size());

    auto observe = [&](std::size_t, double t, const Matrix& rho) {
        tr.times.push_back(t);
        Populations pop{};
        double exc = 0.0;
        for (int i = 0; i < kDim; ++i) {
            pop[static_cast<std::size_t>(i)] = rho(i, i).real();
            exc += ne(i, i) * pop[static_cast<std::size_t>(i)];
        }
        tr.populations.push_back(pop);
        tr.norm_or_trace.push_back(rho.trace().real());
        tr.excitation.push_back(exc);
        tr.fidelity.push_back((target.amplitudes().adjoint() * rho * target.amplitudes())(0, 0).real());
        tr.error_probability.push_back(dark_overlap_error(Vector::Zero(), &rho, p, s, t));

        Eigen::SelfAdjointEigenSolver<Matrix> eig(rho, Eigen::EigenvaluesOnly);
        const double lam = eig.eigenvalues().minCoeff();
        tr.min_eigenvalue.push_back(lam);
        if (lam < -1e-6) {
            std::ostringstream msg;
            msg << "density matrix lost positivity (min eigenvalue " << lam << ") at t = " << t;
            throw NumericalHealthError(msg.str(), t);
        }
        if (cfg.record_states) tr.density_matrices.emplace_back(rho);
    };
    auto symmetrize = [](Matrix& rho) { rho = 0.5 * (rho + rho.adjoint()).eval(); };

    Matrix y = rho0.elements();
    LindbladRhs rhs(p, s);
    const auto stats = integrate(cfg, rhs, y, samples, observe, symmetrize);
    tr.accepted_steps = stats.accepted;
    tr.rejected_steps = stats.rejected;
    return tr;
}

double error_probability(const StateVector& psi, const SystemParams& p, const PulseSchedule& s, double t) {
    if (!psi.is_normalized()) throw ConfigError("error_probability requires a normalized state");
    const Vector d = dark_state(t, p, s).amplitudes.amplitudes();
    return std::clamp(1.0 - std::norm(d.dot(psi.amplitudes())), 0.0, 1.0);
}

double error_probability(const DensityMatrix& rho, const SystemParams& p, const PulseSchedule& s, double t) {
    const Vector d = dark_state(t, p, s).amplitudes.amplitudes();
    return std::clamp(1.0 - (d.adjoint() * rho.elements() * d)(0, 0).real(), 0.0, 1.0);
}

double fidelity(const StateVector& psi, const StateVector& target) {
    return std::norm(target.amplitudes().dot(psi.amplitudes()));
}

double fidelity(const DensityMatrix& rho, const StateVector& target) {
    return (target.amplitudes().adjoint() * rho.elements() * target.amplitudes())(0, 0).real();
}

}  // namespace stirap
