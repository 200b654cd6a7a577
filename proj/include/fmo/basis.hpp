// Orthonormal traceless Hermitian operator basis and the maps built on it.
#pragma once

#include "fmo/linalg.hpp"

#include <vector>

namespace fmo {

/// The d²−1 traceless Hermitian matrices F_1..F_{d²−1}, orthonormal under
/// Tr(F_i F_j) = δ_ij. C++ index i holds F_{i+1}.
///
/// Layout for d = 8 (Hilbert index 0 is the electronic ground state,
/// indices 1..7 are sites 1..7):
///   [0, d−1)              diagonal family d^l, l = 1..d−1
///   [d−1, d−1+P)          symmetric σ_x^{j,k}, pairs j<k in lexicographic order
///   [d−1+P, d²−1)         antisymmetric σ_y^{j,k}, same pair order
/// where P = d(d−1)/2. With this layout (F_{j+7} − iF_{j+35})/√2 = |j⟩⟨0|.
class OperatorBasis {
 public:
  explicit OperatorBasis(int dim = 8);

  int dim() const { return dim_; }
  int size() const { return static_cast<int>(elements_.size()); }
  const ComplexMatrix& operator[](int i) const { return elements_.at(static_cast<std::size_t>(i)); }

  /// 0-based position of d^l, l = 1..d−1.
  int diagonal_index(int l) const;
  /// 0-based positions of σ_x^{j,k} and σ_y^{j,k} for Hilbert indices j < k.
  int symmetric_index(int j, int k) const;
  int antisymmetric_index(int j, int k) const;

  /// Σ_i c_i F_i.
  ComplexMatrix expand(const ComplexVector& coeffs) const;
  /// c_i = Tr(F_i X); the traceless part of X is Σ_i c_i F_i.
  ComplexVector coefficients(const ComplexMatrix& x) const;

 private:
  int pair_offset(int j, int k) const;

  int dim_;
  std::vector<ComplexMatrix> elements_;
};

/// |site⟩⟨0| and |0⟩⟨site| in an 8-level single-excitation space.
ComplexMatrix sigma_plus(int site, int dim = 8);
ComplexMatrix sigma_minus(int site, int dim = 8);
/// |site⟩⟨site|.
ComplexMatrix site_projector(int site, int dim = 8);

/// Coherence vector v_i = −i Tr(F_i X), so that f(iF_j) = e_j.
/// Throws if |Tr X| > 1e−10.
ComplexVector f_map(const ComplexMatrix& x, const OperatorBasis& basis);
/// i Σ_i v_i F_i.
ComplexMatrix f_inv(const ComplexVector& v, const OperatorBasis& basis);

/// Real orthogonal G_U with (G_U)_{ij} = Tr(F_i U F_j U†), the rotation
/// induced on coherence vectors by X ↦ U X U†.
RealMatrix adjoint_rep(const ComplexMatrix& u, const OperatorBasis& basis);

}  // namespace fmo
