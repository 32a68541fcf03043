#pragma once

#include <array>
#include <string>
#include <vector>

#include "stirap/model.hpp"
#include "stirap/types.hpp"

namespace stirap {

enum class IntegrationMethod { dormand_prince, rk4 };

std::string to_string(IntegrationMethod m);
/// Accepts "dopri5" / "dormand_prince" and "rk4"; throws ConfigError otherwise.
IntegrationMethod integration_method_from_string(const std::string& name);

struct IntegratorConfig {
    double t_start = -50.0;
    double t_end = 70.0;
    // Density-matrix runs need 1e-12 to keep eigenvalues above -1e-8; the step
    // count is set by stability, not accuracy, so this costs almost nothing.
    double abs_tol = 1e-12;
    double rel_tol = 1e-10;
    /// Upper bound on the adaptive step; the fixed step for rk4.
    double max_step = 1e-3;
    double sample_interval = 0.1;
    IntegrationMethod method = IntegrationMethod::dormand_prince;
    /// Keep full state snapshots in the trajectory (observables are always kept).
    bool record_states = true;

    /// Throws ConfigError. Requires max_step <= (2 pi / nu) / 10 when nu > 0.
    void validate(const SystemParams& p) const;

    /// t_start, t_start + dt, ..., always ending exactly at t_end.
    std::vector<double> sample_times() const;
};

using Populations = std::array<double, kDim>;

struct Trajectory {
    bool mixed = false;
    std::vector<double> times;
    std::vector<StateVector> states;            ///< closed runs with record_states
    std::vector<DensityMatrix> density_matrices;  ///< open runs with record_states
    std::vector<Populations> populations;
    std::vector<double> error_probability;  ///< NaN where the dark state is undefined
    std::vector<double> fidelity;
    std::vector<double> norm_or_trace;      ///< ||psi||^2 or Re tr(rho)
    std::vector<double> excitation;         ///< <N_e>
    std::vector<double> min_eigenvalue;     ///< open runs only

    long accepted_steps = 0;
    long rejected_steps = 0;

    std::size_t size() const { return times.size(); }
    double max_error_probability() const;
};

/// i dpsi/dt = H(t) psi.
Trajectory evolve_schrodinger(const SystemParams& p, const PulseSchedule& s, const IntegratorConfig& cfg,
                              const StateVector& psi0);

/// drho/dt = -i[H, rho] + sum_c (L_c rho L_c^dag - 1/2 {L_c^dag L_c, rho}).
Trajectory evolve_lindblad(const SystemParams& p, const PulseSchedule& s, const IntegratorConfig& cfg,
                           const DensityMatrix& rho0);

/// 1 - |<D(t)|psi>|^2. Throws DomainError where the dark state is undefined.
double error_probability(const StateVector& psi, const SystemParams& p, const PulseSchedule& s, double t);
/// 1 - <D(t)|rho|D(t)>.
double error_probability(const DensityMatrix& rho, const SystemParams& p, const PulseSchedule& s, double t);

double fidelity(const StateVector& psi, const StateVector& target);
double fidelity(const DensityMatrix& rho, const StateVector& target);

}  // namespace stirap
