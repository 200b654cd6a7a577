// Time evolution of density matrices: exact semigroup, RK4 cross-check,
// per-generator channels, rotate–evolve–rotate and Trotter products.
#pragma once

#include "fmo/decomposition.hpp"

#include <vector>

namespace fmo {

/// Throws std::invalid_argument unless rho is Hermitian, unit trace and
/// has no eigenvalue below −tol_eig.
void validate_density(const ComplexMatrix& rho, double tol = 1e-10, double tol_eig = 1e-8);

ComplexMatrix ground_state(int dim = 8);
ComplexMatrix site_state(int site, int dim = 8);

/// unvec(expm(tL) vec ρ0). Throws std::domain_error if the result violates
/// the density-matrix invariants by more than 1e−6.
ComplexMatrix evolve_exact(const Superoperator& generator, const ComplexMatrix& rho0, double t);

/// Classical fixed-step fourth-order Runge–Kutta on dρ/dt = L(ρ).
ComplexMatrix evolve_rk4(const LindbladModel& model, const ComplexMatrix& rho0, double t, int steps);

/// Generator of the single-jump semigroup λ·D[Σ_i a_i F_i].
Superoperator generator_superoperator(const RankOneGenerator& g, const OperatorBasis& basis);
/// exp(t · generator_superoperator(g)).
Superoperator generator_channel(const RankOneGenerator& g, const OperatorBasis& basis, double t);

/// W ρ W† → canonical-frame channel exp(tλ D[Σ ã_i F_i]) → W† · W.
ComplexMatrix simulate_conjugated(const RankOneGenerator& g, const OperatorBasis& basis, const ComplexMatrix& rho0,
                                  double t);

enum class Splitting { first_order, strang };

/// Product formula over `components` (generators, not channels) with n
/// steps. First order applies component 0 first within each step.
ComplexMatrix trotter_evolve(const std::vector<Superoperator>& components, const ComplexMatrix& rho0, double t, int n,
                             Splitting splitting = Splitting::first_order);

/// Hamiltonian part first (when non-zero), then one generator per rank-1
/// term in the given (descending-weight) order.
std::vector<Superoperator> trotter_components(const ComplexMatrix& hamiltonian,
                                              const std::vector<RankOneGenerator>& generators,
                                              const OperatorBasis& basis);

struct CptpReport {
  double min_choi_eigenvalue = 0.0;
  double max_trace_deviation = 0.0;
};

/// Choi matrix Σ_ij |i⟩⟨j| ⊗ T(|i⟩⟨j|) (unnormalised) and the trace
/// deviations |Tr T(|i⟩⟨j|) − δ_ij| over all matrix units.
ComplexMatrix choi_matrix(const Superoperator& channel);
CptpReport cptp_check(const Superoperator& channel);

struct Trajectory {
  std::vector<double> times;
  std::vector<std::vector<double>> populations;  // ground, site 1..d−1
  std::vector<std::vector<double>> coherences;   // |ρ_{site j, ground}|, j = 1..d−1
};

void append_row(Trajectory& traj, double t, const ComplexMatrix& rho);

/// Evolves with evolve_exact at each time; times must be ascending.
Trajectory trajectory(const Superoperator& generator, const ComplexMatrix& rho0, const std::vector<double>& times);

}  // namespace fmo
