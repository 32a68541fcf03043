#include "stirap/model.hpp"

#include <cmath>
#include <sstream>

#include "stirap/basis.hpp"
#include "stirap/errors.hpp"

namespace stirap {
namespace {

// Envelope exponent is -(t - c)^2 / (200 tau^2): a Gaussian of width 10 tau.
double envelope(double t, double center, double tau) {
    const double x = t - center;
    return std::exp(-x * x / (200.0 * tau * tau));
}

void require(bool ok, const char* field, const char* constraint) {
    if (!ok) throw ParamError(field, constraint);
}

bool finite_nonneg(double x) { return std::isfinite(x) && x >= 0.0; }

double second_lobe_amplitude(const SystemParams& p) {
    if (p.compensate_drive && p.gA > 0.0) return p.gB_eff() / (2.0 * p.gA) * p.omega0;
    return 0.5 * p.omega0;
}

}  // namespace

void SystemParams::validate() const {
    require(std::isfinite(omega0) && omega0 > 0.0, "omega0", "> 0");
    require(finite_nonneg(gA), "gA", "≥ 0");
    require(finite_nonneg(gB), "gB", "≥ 0");
    require(finite_nonneg(nu), "nu", "≥ 0");
    require(N >= 1, "N", "≥ 1");
    require(std::isfinite(tau) && tau > 0.0, "tau", "> 0");
    require(std::isfinite(t0), "t0", "finite");
    require(finite_nonneg(kappa_cav), "kappa_cav", "≥ 0");
    require(finite_nonneg(kappa_fib), "kappa_fib", "≥ 0");
    require(finite_nonneg(gamma), "gamma", "≥ 0");
    for (double w : branching_A) require(finite_nonneg(w), "branching_A", "entries ≥ 0");
    require(std::abs(branching_A[0] + branching_A[1] + branching_A[2] - 1.0) <= 1e-12, "branching_A", "sums to 1");
    for (const auto& pair : branching_B) {
        require(finite_nonneg(pair[0]) && finite_nonneg(pair[1]), "branching_B", "entries ≥ 0");
        require(std::abs(pair[0] + pair[1] - 1.0) <= 1e-12, "branching_B", "pairs sum to 1");
    }
    if (apply_overlap) overlap_mu(N);
}

double SystemParams::gB_eff() const { return apply_overlap ? overlap_mu(N) * gB : gB; }

double GaussianLobe::operator()(double t) const {
    const double x = (t - center) / width;
    return amplitude * std::exp(-0.5 * x * x);
}

double pulse_omega_A(double t, const SystemParams& p) { return p.omega0 * envelope(t, p.t0, p.tau); }

double pulse_omega_B(double t, const SystemParams& p) {
    return p.omega0 * envelope(t, 0.0, p.tau) + second_lobe_amplitude(p) * envelope(t, p.t0, p.tau);
}

PulseSchedule default_schedule(const SystemParams& p) {
    std::ostringstream desc;
    desc << "default: Omega_A = Omega0 exp[-(t-t0)^2/200tau^2], Omega_B = Omega0 exp[-t^2/200tau^2] + "
         << second_lobe_amplitude(p) << " exp[-(t-t0)^2/200tau^2]";
    return PulseSchedule{
        [p](double t) { return pulse_omega_A(t, p); },
        [p](double t) { return pulse_omega_B(t, p); },
        desc.str(),
    };
}

PulseSchedule lobe_schedule(std::vector<GaussianLobe> lobes_A, std::vector<GaussianLobe> lobes_B) {
    for (const auto* lobes : {&lobes_A, &lobes_B})
        for (const auto& lobe : *lobes) {
            require(std::isfinite(lobe.amplitude) && lobe.amplitude >= 0.0, "schedule.amplitude", "≥ 0");
            require(std::isfinite(lobe.center), "schedule.center", "finite");
            require(std::isfinite(lobe.width) && lobe.width > 0.0, "schedule.width", "> 0");
        }
    auto sum = [](const std::vector<GaussianLobe>& lobes) {
        return [lobes](double t) {
            double acc = 0.0;
            for (const auto& lobe : lobes) acc += lobe(t);
            return acc;
        };
    };
    std::ostringstream desc;
    desc << "gaussian lobes (" << lobes_A.size() << " on A, " << lobes_B.size() << " on B)";
    return PulseSchedule{sum(lobes_A), sum(lobes_B), desc.str()};
}

double overlap_mu(std::int64_t N) {
    if (N < 1) throw DomainError("overlap_mu requires N >= 1");
    const double mu = std::sqrt(0.5) * (1.0 - 0.0017 * std::pow(static_cast<double>(N), 0.34));
    if (!(mu > 0.0)) {
        std::ostringstream msg;
        msg << "overlap factor mu(" << N << ") = " << mu << " is not positive; protocol invalid";
        throw DomainError(msg.str());
    }
    return mu;
}

CouplingList couplings(double t, const SystemParams& p, const PulseSchedule& s) {
    using namespace phi;
    const double omA = s.omega_A(t);
    const double omB = s.omega_B(t);
    const double sqrtN = std::sqrt(static_cast<double>(p.N));
    const double gBN = sqrtN * p.gB_eff();
    const double omBN = sqrtN * omB;
    return CouplingList{{
        {p2, p1, omA},
        {p2, p3, p.gA},
        {p2, p4, p.gA},
        {p5, p3, p.nu},
        {p5, p7, p.nu},
        {p6, p4, p.nu},
        {p6, p8, p.nu},
        {p9, p7, gBN},
        {p10, p8, gBN},
        {p9, p11, omBN},
        {p10, p12, omBN},
    }};
}

Matrix hamiltonian(double t, const SystemParams& p, const PulseSchedule& s) {
    Matrix h = Matrix::Zero();
    for (const auto& c : couplings(t, p, s)) {
        h(c.row, c.col) = c.value;
        h(c.col, c.row) = c.value;
    }
    return h;
}

DarkState dark_state(double t, const SystemParams& p, const PulseSchedule& s) {
    using namespace phi;
    const double omA = s.omega_A(t);
    const double omB = s.omega_B(t);
    const double gB = p.gB_eff();

    const double c1 = 2.0 * p.gA * omB;
    const double c_cav = omA * omB;
    const double c_pair = gB * omA;
    const double inv_k2 = c1 * c1 + 4.0 * c_cav * c_cav + 2.0 * c_pair * c_pair;
    if (!(inv_k2 > 0.0) || !std::isfinite(inv_k2)) {
        std::ostringstream msg;
        msg << "dark state undefined at t = " << t << ": all coupling coefficients vanish";
        throw DomainError(msg.str());
    }
    const double k = 1.0 / std::sqrt(inv_k2);

    Vector v = Vector::Zero();
    v(p1) = k * c1;
    v(p3) = -k * c_cav;
    v(p4) = -k * c_cav;
    v(p7) = k * c_cav;
    v(p8) = k * c_cav;
    v(p11) = -k * c_pair;
    v(p12) = -k * c_pair;
    return DarkState{StateVector(v), k};
}

StateVector target_state() {
    using namespace phi;
    const double a = 1.0 / std::sqrt(3.0);
    Vector v = Vector::Zero();
    v(p1) = a;
    v(p11) = -a;
    v(p12) = -a;
    return StateVector(v);
}

std::vector<CollapseOp> collapse_operators(const SystemParams& p) {
    using namespace phi;
    struct Channel {
        const char* label;
        int source;
        int destination;
        double rate;
    };
    const std::array<Channel, 13> channels = {{
        {"cavity_A_L", p4, p14, p.kappa_cav},
        {"cavity_A_R", p3, p13, p.kappa_cav},
        {"cavity_B_L", p8, p14, p.kappa_cav},
        {"cavity_B_R", p7, p13, p.kappa_cav},
        {"fiber_L", p6, p14, p.kappa_fib},
        {"fiber_R", p5, p13, p.kappa_fib},
        {"atomA_e0_to_ga", p2, p1, p.gamma * p.branching_A[0]},
        {"atomA_e0_to_gL", p2, p13, p.gamma * p.branching_A[1]},
        {"atomA_e0_to_gR", p2, p14, p.gamma * p.branching_A[2]},
        {"bec_EL_to_GL", p10, p12, p.gamma * p.branching_B[0][0]},
        {"bec_EL_to_G0", p10, p14, p.gamma * p.branching_B[0][1]},
        {"bec_ER_to_GR", p9, p11, p.gamma * p.branching_B[1][0]},
        {"bec_ER_to_G0", p9, p13, p.gamma * p.branching_B[1][1]},
    }};
    std::vector<CollapseOp> ops;
    ops.reserve(channels.size());
    for (const auto& ch : channels) {
        CollapseOp op;
        op.channel_label = ch.label;
        op.source = ch.source;
        op.destination = ch.destination;
        op.amplitude = std::sqrt(ch.rate);
        op.matrix = Matrix::Zero();
        op.matrix(ch.destination, ch.source) = op.amplitude;
        ops.push_back(std::move(op));
    }
    return ops;
}

}  // namespace stirap
