// Lindblad models, their GKS form and the Liouvillian superoperator.
#pragma once

#include "fmo/basis.hpp"

#include <span>
#include <vector>

namespace fmo {

enum class Process { dissipative, dephasing, custom };

/// One dissipator term rate·(LρL† − ½{L†L, ρ}).
struct JumpTerm {
  double rate = 0.0;
  ComplexMatrix jump;
};

/// dρ/dt = i[ρ, H] + Σ_m rate_m (L_m ρ L_m† − ½{L_m†L_m, ρ}).
struct LindbladModel {
  ComplexMatrix hamiltonian;
  std::vector<JumpTerm> terms;
  Process process = Process::custom;

  int dim() const { return static_cast<int>(hamiltonian.rows()); }
};

/// Effective Hamiltonian plus the GKS matrix A over a fixed operator basis.
struct GksForm {
  ComplexMatrix hamiltonian;
  ComplexMatrix gks;  // (d²−1)×(d²−1), Hermitian PSD for Markovian generators
};

/// 64×64 matrix acting on column-stacked vec(ρ).
using Superoperator = ComplexMatrix;

/// Throws std::invalid_argument on a non-Hermitian H, negative or
/// non-finite rate, or dimension mismatch.
void validate(const LindbladModel& model);

/// Σ_j Γ_j(−σ+σ−ρ − ρσ+σ− + 2σ−ρσ+) written as terms (2Γ_j, σ−_j);
/// zero rates contribute no term.
LindbladModel fmo_dissipative(std::span<const double> rates);
/// Σ_j γ_j(−Pρ − ρP + 2PρP), P = σ+_jσ−_j, written as terms (2γ_j, P_j).
LindbladModel fmo_dephasing(std::span<const double> rates);
/// Concatenates the terms of two models and adds their Hamiltonians.
LindbladModel combine(const LindbladModel& a, const LindbladModel& b);

/// Expands each jump over the traceless basis, folding trace parts into
/// the effective Hamiltonian.
GksForm to_gks(const LindbladModel& model, const OperatorBasis& basis);

/// Diagonalises A; every eigenvalue above `cutoff` becomes one jump
/// Σ_i (v_k)_i F_i with rate w_k. Throws std::domain_error when A has an
/// eigenvalue below −1e−8.
LindbladModel gks_to_lindblad(const GksForm& form, const OperatorBasis& basis, double cutoff = 1e-12);

Superoperator liouvillian(const LindbladModel& model);
/// Built from A directly: Σ_lk A_lk (F_l ρ F_k† − ½{F_k†F_l, ρ}). Does not
/// require A to be positive.
Superoperator liouvillian(const GksForm& form, const OperatorBasis& basis);
/// Single-jump Liouvillian rate·D[jump] without Hamiltonian.
Superoperator dissipator(const ComplexMatrix& jump, double rate);
/// Superoperator of ρ ↦ i[ρ, H].
Superoperator hamiltonian_part(const ComplexMatrix& h);

/// L(ρ) evaluated on matrices rather than through the superoperator.
ComplexMatrix apply_generator(const LindbladModel& model, const ComplexMatrix& rho);

}  // namespace fmo
