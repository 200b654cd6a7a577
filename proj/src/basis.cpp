#include "fmo/basis.hpp"

#include <stdexcept>
#include <string>

namespace fmo {

OperatorBasis::OperatorBasis(int dim) : dim_(dim) {
  if (dim < 2) throw std::invalid_argument("OperatorBasis: dimension must be at least 2");
  const Eigen::Index d = dim;
  elements_.reserve(static_cast<std::size_t>(d * d - 1));

  for (Eigen::Index l = 1; l < d; ++l) {
    ComplexMatrix f = ComplexMatrix::Zero(d, d);
    const double norm = 1.0 / std::sqrt(static_cast<double>(l * (l + 1)));
    for (Eigen::Index j = 0; j < l; ++j) f(j, j) = norm;
    f(l, l) = -static_cast<double>(l) * norm;
    elements_.push_back(std::move(f));
  }

  const double s = 1.0 / std::sqrt(2.0);
  for (Eigen::Index j = 0; j < d; ++j) {
    for (Eigen::Index k = j + 1; k < d; ++k) {
      ComplexMatrix f = ComplexMatrix::Zero(d, d);
      f(j, k) = s;
      f(k, j) = s;
      elements_.push_back(std::move(f));
    }
  }
  for (Eigen::Index j = 0; j < d; ++j) {
    for (Eigen::Index k = j + 1; k < d; ++k) {
      ComplexMatrix f = ComplexMatrix::Zero(d, d);
      f(j, k) = -kI * s;
      f(k, j) = kI * s;
      elements_.push_back(std::move(f));
    }
  }
}

int OperatorBasis::diagonal_index(int l) const {
  if (l < 1 || l >= dim_) throw std::out_of_range("diagonal_index: l out of range");
  return l - 1;
}

int OperatorBasis::pair_offset(int j, int k) const {
  if (j < 0 || k >= dim_ || j >= k) throw std::out_of_range("pair index requires 0 <= j < k < dim");
  // pairs (0,1)..(0,d−1), (1,2).. in lexicographic order
  return j * dim_ - j * (j + 1) / 2 + (k - j - 1);
}

int OperatorBasis::symmetric_index(int j, int k) const { return dim_ - 1 + pair_offset(j, k); }

int OperatorBasis::antisymmetric_index(int j, int k) const {
  return dim_ - 1 + dim_ * (dim_ - 1) / 2 + pair_offset(j, k);
}

ComplexMatrix OperatorBasis::expand(const ComplexVector& coeffs) const {
  if (coeffs.size() != size()) throw std::invalid_argument("expand: coefficient length mismatch");
  ComplexMatrix out = ComplexMatrix::Zero(dim_, dim_);
  for (int i = 0; i < size(); ++i)
    if (coeffs(i) != Complex{0.0, 0.0}) out += coeffs(i) * elements_[static_cast<std::size_t>(i)];
  return out;
}

ComplexVector OperatorBasis::coefficients(const ComplexMatrix& x) const {
  if (x.rows() != dim_ || x.cols() != dim_) throw std::invalid_argument("coefficients: dimension mismatch");
  ComplexVector c(size());
  // F_i is Hermitian, so Tr(F_i X) = Σ conj(F_i)_{ab} X_{ab}.
  for (int i = 0; i < size(); ++i) c(i) = elements_[static_cast<std::size_t>(i)].cwiseProduct(x.transpose()).sum();
  return c;
}

namespace {

void check_site(int site, int dim) {
  if (site < 1 || site >= dim) throw std::out_of_range("site index " + std::to_string(site) + " out of range");
}

}  // namespace

ComplexMatrix sigma_plus(int site, int dim) {
  check_site(site, dim);
  ComplexMatrix m = ComplexMatrix::Zero(dim, dim);
  m(site, 0) = 1.0;
  return m;
}

ComplexMatrix sigma_minus(int site, int dim) { return sigma_plus(site, dim).adjoint(); }

ComplexMatrix site_projector(int site, int dim) {
  check_site(site, dim);
  ComplexMatrix m = ComplexMatrix::Zero(dim, dim);
  m(site, site) = 1.0;
  return m;
}

ComplexVector f_map(const ComplexMatrix& x, const OperatorBasis& basis) {
  if (std::abs(x.trace()) > 1e-10) throw std::invalid_argument("f_map: operator is not traceless");
  return -kI * basis.coefficients(x);
}

ComplexMatrix f_inv(const ComplexVector& v, const OperatorBasis& basis) { return kI * basis.expand(v); }

RealMatrix adjoint_rep(const ComplexMatrix& u, const OperatorBasis& basis) {
  if (u.rows() != basis.dim() || !is_unitary(u, 1e-10))
    throw std::invalid_argument("adjoint_rep: matrix is not unitary");
  const int n = basis.size();
  RealMatrix g(n, n);
  for (int j = 0; j < n; ++j) {
    const ComplexMatrix rotated = u * basis[j] * u.adjoint();
    g.col(j) = basis.coefficients(rotated).real();
  }
  return g;
}

}  // namespace fmo
