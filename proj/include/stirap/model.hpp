#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "stirap/types.hpp"

namespace stirap {

/// Physical rates and counts, all in units of the pulse scale Omega0 (rates)
/// and tau = 1/Omega0 (times).
struct SystemParams {
    double omega0 = 1.0;
    double gA = 5.0;
    double gB = 5.0;
    double nu = 500.0;
    std::int64_t N = 10000;
    double tau = 1.0;
    double t0 = 20.0;
    double kappa_cav = 0.0;
    double kappa_fib = 0.0;
    double gamma = 0.0;
    /// e0 -> {g_a, g_L, g_R}
    std::array<double, 3> branching_A{1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};
    /// For E_L then E_R: weights of E_k -> {G_k, G_0}.
    std::array<std::array<double, 2>, 2> branching_B{{{0.5, 0.5}, {0.5, 0.5}}};
    bool apply_overlap = false;
    bool compensate_drive = true;

    /// g = 5, nu = 100 g, N = 1e4, tau = 1, t0 = 20 tau, no dissipation.
    static SystemParams reference() { return {}; }

    /// Throws ParamError naming the first violated invariant.
    void validate() const;

    /// mu(N) * gB when the overlap factor is applied, gB otherwise.
    double gB_eff() const;
};

/// Rabi-frequency envelopes for the two classical drives.
struct PulseSchedule {
    std::function<double(double)> omega_A;
    std::function<double(double)> omega_B;
    std::string description;
};

/// A Gaussian lobe amplitude * exp(-(t - center)^2 / (2 width^2)).
struct GaussianLobe {
    double amplitude = 0.0;
    double center = 0.0;
    double width = 1.0;

    double operator()(double t) const;
};

double pulse_omega_A(double t, const SystemParams& p);
double pulse_omega_B(double t, const SystemParams& p);

/// Counterintuitive two-pulse sequence built from pulse_omega_A/B.
PulseSchedule default_schedule(const SystemParams& p);

/// Sum-of-Gaussians envelopes; an empty list gives a drive that is identically zero.
PulseSchedule lobe_schedule(std::vector<GaussianLobe> lobes_A, std::vector<GaussianLobe> lobes_B);

/// BEC/cavity mode overlap sqrt(0.5) * (1 - 0.0017 N^0.34). Throws DomainError when it is not positive.
double overlap_mu(std::int64_t N);

/// One real symmetric matrix element <row|H|col> = <col|H|row>.
struct Coupling {
    int row;
    int col;
    double value;
};

inline constexpr int kCouplingCount = 11;
using CouplingList = std::array<Coupling, kCouplingCount>;

/// Nonzero upper-triangle elements of H(t). Every matrix element of the
/// Hamiltonian is real in this basis.
CouplingList couplings(double t, const SystemParams& p, const PulseSchedule& s);

/// Dense H(t) = H_atom-cavity + H_cavity-fiber over the 14-state basis.
Matrix hamiltonian(double t, const SystemParams& p, const PulseSchedule& s);

struct DarkState {
    StateVector amplitudes;
    /// K such that amplitudes = K * (unnormalized coefficients).
    double normalization = 0.0;
};

/// Zero-energy eigenstate connected to phi1:
///   K [2 gA OmB phi1 - OmA OmB (phi3 + phi4 - phi7 - phi8) - gB OmA (phi11 + phi12)],
///   K^-2 = 4 gA^2 OmB^2 + 4 OmA^2 OmB^2 + 2 gB^2 OmA^2   (gB -> gB_eff).
/// Throws DomainError when every coefficient vanishes.
DarkState dark_state(double t, const SystemParams& p, const PulseSchedule& s);

/// (|g_a,G_0> - |g_L,G_R> - |g_R,G_L>) / sqrt(3) with all modes empty.
StateVector target_state();

/// Lindblad jump operator. Every entry of `matrix` is zero except one per
/// populated column.
struct CollapseOp {
    Matrix matrix;
    std::string channel_label;
    int source = 0;           ///< basis index annihilated by the jump
    int destination = 0;      ///< basis index it lands in
    double amplitude = 0.0;   ///< sqrt(rate)
};

/// 4 cavity + 2 fiber photon-loss channels, 3 atom-A and 4 BEC spontaneous
/// emission channels, always in this order (13 operators; zero rates give zero matrices).
std::vector<CollapseOp> collapse_operators(const SystemParams& p);

}  // namespace stirap
