#include "fmo/linalg.hpp"

#include <algorithm>
#include <numeric>
#include <vector>

namespace fmo {

ComplexMatrix canonical_subspace_basis(const ComplexMatrix& v) {
  const Eigen::Index n = v.rows();
  const Eigen::Index m = v.cols();
  ComplexMatrix out(n, m);
  Eigen::Index found = 0;
  for (Eigen::Index i = 0; i < n && found < m; ++i) {
    ComplexVector w = v * v.row(i).adjoint();  // P e_i with P = V V†
    for (int pass = 0; pass < 2; ++pass)
      for (Eigen::Index j = 0; j < found; ++j) w -= out.col(j) * out.col(j).dot(w);
    const double len = w.norm();
    if (len > 1e-3) out.col(found++) = w / len;
  }
  if (found != m) throw std::runtime_error("canonical_subspace_basis: projection lost rank");
  return out;
}

void fix_phase_first_positive(ComplexMatrix& v, double threshold) {
  for (Eigen::Index c = 0; c < v.cols(); ++c) {
    for (Eigen::Index r = 0; r < v.rows(); ++r) {
      if (std::abs(v(r, c)) > threshold) {
        v.col(c) *= std::conj(v(r, c)) / std::abs(v(r, c));
        v(r, c) = std::abs(v(r, c));
        break;
      }
    }
  }
}

void fix_phase_last_positive(ComplexMatrix& v, double threshold) {
  for (Eigen::Index c = 0; c < v.cols(); ++c) {
    for (Eigen::Index r = v.rows() - 1; r >= 0; --r) {
      if (std::abs(v(r, c)) > threshold) {
        v.col(c) *= std::conj(v(r, c)) / std::abs(v(r, c));
        v(r, c) = std::abs(v(r, c));
        break;
      }
    }
  }
}

HermitianEigen eigh_hermitian(const ComplexMatrix& x, double cluster_gap) {
  if (x.rows() != x.cols()) throw std::invalid_argument("eigh_hermitian: matrix is not square");
  if (!x.allFinite()) throw std::invalid_argument("eigh_hermitian: non-finite entries");
  const double scale = std::max(1.0, x.norm());
  if (hermiticity_defect(x) > 1e-10 * scale)
    throw std::invalid_argument("eigh_hermitian: matrix is not Hermitian");

  const ComplexMatrix h = (x + x.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h);
  if (es.info() != Eigen::Success) throw std::runtime_error("eigh_hermitian: solver did not converge");

  const Eigen::Index n = h.rows();
  HermitianEigen out;
  out.values = es.eigenvalues().reverse();
  out.vectors = es.eigenvectors().rowwise().reverse();

  const double gap = cluster_gap * scale;
  Eigen::Index start = 0;
  while (start < n) {
    Eigen::Index stop = start + 1;
    while (stop < n && out.values(stop - 1) - out.values(stop) < gap) ++stop;
    if (stop - start > 1) {
      const Eigen::Index len = stop - start;
      out.vectors.middleCols(start, len) = canonical_subspace_basis(out.vectors.middleCols(start, len));
    }
    start = stop;
  }
  fix_phase_first_positive(out.vectors);
  return out;
}

}  // namespace fmo
