// Rank-1 decomposition of a GKS matrix and unitary-conjugation
// canonicalisation of each rank-1 generator.
#pragma once

#include "fmo/lindblad.hpp"

#include <vector>

namespace fmo {

struct EigenPair {
  double weight = 0.0;  // λ_k
  ComplexVector vector; // a_k, unit norm
};

/// A = Σ_k λ_k a_k a_k† over eigenvalues above `cutoff`, λ descending.
/// Each a_k is phased so its last non-negligible component is real
/// positive; for a σ−-type vector this puts −i/√2 on the σ_x slot and 1/√2
/// on the σ_y slot. Throws std::domain_error below −1e−8.
std::vector<EigenPair> spectral_decompose(const ComplexMatrix& gks, double cutoff = 1e-12);

/// e^{iψ} a = cos θ · aR + i sin θ · aI with aR ⟂ aI real unit vectors.
struct CanonicalVector {
  double psi = 0.0;    // [0, π)
  double theta = 0.0;  // [0, π/4]
  RealVector real_part;
  RealVector imag_part;  // zero vector when θ = 0
};

CanonicalVector canonicalize(const ComplexVector& a);

/// Frame unitary W and the canonical images of (aR, aI).
struct Conjugator {
  ComplexMatrix frame;       // W, maps the generator into its canonical frame
  RealVector target_real;    // ãR, supported on the diagonal family
  RealVector target_imag;    // ãI
  RealVector diagonal_real;  // spectrum of Σ aR_i F_i in the order placed on the diagonal
  bool f1_target = false;    // ãR = e_1 and ãI = ±e_36
};

/// Stage 1 diagonalises Σ aR_i F_i. Stage 2 diagonalises the projection of
/// Σ aI_i F_i inside each degenerate eigenspace of stage 1. When the stage-1
/// spectrum is that of F_1 the eigenvectors are ordered (+, −, 0, …) so the
/// diagonal image is exactly F_1; otherwise they stay descending.
/// ãR and ãI are read off the conjugated matrices, not from G_W.
Conjugator find_conjugator(const RealVector& real_part, const RealVector& imag_part, const OperatorBasis& basis);

/// Opaque angle vectors of a universal-set element, carried as metadata.
struct CanonicalParams {
  double theta = 0.0;
  std::vector<double> alpha_real;  // empty when not supplied
  std::vector<double> alpha_imag;
};

struct RankOneGenerator {
  double weight = 0.0;
  ComplexVector a;
  double psi = 0.0;
  double theta = 0.0;
  RealVector real_part;
  RealVector imag_part;
  ComplexMatrix frame;       // W: ã = G_W a up to phase
  ComplexMatrix conjugator;  // U = W†, so a a† = G_U (ã ã†) G_Uᵀ
  RealMatrix rotation;       // G_U = adjoint_rep(U)
  RealVector target_real;
  RealVector target_imag;
  ComplexVector target;      // ã = cos θ ãR + i sin θ ãI
  RealVector diagonal_real;
  bool f1_target = false;
  CanonicalParams params;

  // Residuals of the identities the construction must satisfy.
  double phase_residual = 0.0;        // ‖e^{iψ}a − (cos θ aR + i sin θ aI)‖
  double rotation_residual = 0.0;     // max(‖G_W aR − ãR‖, ‖G_W aI − ãI‖)
  double conjugation_residual = 0.0;  // ‖a a† − G_U ã ã† G_Uᵀ‖_F

  /// Jump operator Σ_i a_i F_i and its canonical-frame counterpart.
  ComplexMatrix jump(const OperatorBasis& basis) const { return basis.expand(a); }
  ComplexMatrix canonical_jump(const OperatorBasis& basis) const { return basis.expand(target); }
};

/// Runs canonicalize and find_conjugator and checks the conjugation
/// identity; throws std::logic_error if any residual exceeds 1e−8.
RankOneGenerator conjugated_form(double weight, const ComplexVector& a, const OperatorBasis& basis);

/// spectral_decompose followed by conjugated_form for every eigenpair.
std::vector<RankOneGenerator> decompose(const GksForm& form, const OperatorBasis& basis);

}  // namespace fmo
