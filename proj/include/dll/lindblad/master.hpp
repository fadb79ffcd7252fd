#pragma once

#include <Eigen/Dense>
#include <span>
#include <vector>

#include "dll/core/params.hpp"

namespace dll::lindblad {

using Matrix4c = Eigen::Matrix4cd;

/// Density matrix on the 4-dimensional space qubit {g,e} x cavity {0,1},
/// basis ordered (g0, g1, e0, e1).
struct DensityMatrix {
    Matrix4c rho = Matrix4c::Zero();

    double trace_error() const;        ///< |Tr rho - 1|
    double hermiticity_error() const;  ///< max |rho - rho^dagger|
    double min_eigenvalue() const;
};

struct Collapse {
    Matrix4c op;
    double rate = 0.0;  ///< s^-1; the dissipator is rate * (L rho L^+ - {L^+L, rho}/2)
};
using CollapseSet = std::vector<Collapse>;

/// One cavity photon with the qubit at thermal population n_th:
/// rho(0) = [(1-n_th)|g><g| + n_th|e><e|] (x) |1><1|.
DensityMatrix initial_state(double n_th);

/// The protocol's dissipative channels: cavity decay (kappa0, c), qubit
/// relaxation (gamma, sigma-), thermal excitation (gamma n_th, sigma+),
/// pure dephasing (gamma_phi/2, sigma_z), forward dressed dephasing
/// (kappa_dd, c sigma+) and, unless include_reverse is false, the reverse
/// transfer (kappa_dd, c^+ sigma-) at the same rate. All entries are kept
/// even when a rate is zero.
CollapseSet build_collapse_set(const DeviceParams& params, double kappa_dd, bool include_reverse);

struct EvolveOptions {
    double dt_override = 0.0;        ///< fixed RK4 step; 0 = automatic rule
    double drift_tolerance = 1e-6;   ///< trace drift that aborts the run
    Matrix4c hamiltonian = Matrix4c::Zero();  ///< zero in the protocol model
};

/// Integrates d rho/dt = -i[H, rho] + sum_i rate_i (L_i rho L_i^+
/// - {L_i^+ L_i, rho}/2) with fixed-step RK4, step
/// dt = min(1/(100 max rate), t_span/1000), and returns rho at each
/// requested time. The trace is never renormalized; drift beyond
/// drift_tolerance raises NumericalError suggesting a smaller step.
std::vector<DensityMatrix> evolve(const DensityMatrix& rho0, const CollapseSet& collapse,
                                  std::span<const double> times, const EvolveOptions& opts = {});

/// Tr[|e><e| rho]: sum of the (e0,e0) and (e1,e1) populations.
double excited_population(const DensityMatrix& rho);

/// Sum of the (g1,g1) and (e1,e1) populations.
double photon_population(const DensityMatrix& rho);

/// Least-squares kappa_dd for an observed excited-population trace, bounded
/// golden-section search over [0, 1000] s^-1. Throws NumericalError when the
/// bracket fails to shrink within the iteration budget.
double fit_kappa_dd_to_trace(std::span<const double> observed, std::span<const double> times,
                             const DeviceParams& params, bool include_reverse = true);

}  // namespace dll::lindblad
