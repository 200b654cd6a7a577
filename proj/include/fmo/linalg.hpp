// Dense complex linear algebra shared by every other module.
//
// Matrices are plain Eigen types. Generic helpers are templates over
// Eigen::MatrixBase so they accept expressions, blocks and maps as well as
// owning matrices of either real or complex scalar type.
#pragma once

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>

namespace fmo {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

inline constexpr Complex kI{0.0, 1.0};

/// Column-stacking vectorisation: vec(A X B) = (B^T ⊗ A) vec(X).
template <typename Derived>
auto vec(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  return Eigen::Matrix<Scalar, Eigen::Dynamic, 1>(m.reshaped());
}

template <typename Derived>
auto unvec(const Eigen::MatrixBase<Derived>& v) {
  using Scalar = typename Derived::Scalar;
  const auto n = static_cast<Eigen::Index>(std::llround(std::sqrt(static_cast<double>(v.size()))));
  if (n * n != v.size()) throw std::invalid_argument("unvec: length is not a perfect square");
  return Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>(v.reshaped(n, n));
}

template <typename DerivedA, typename DerivedB>
auto kron(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
  using Scalar = typename Eigen::ScalarBinaryOpTraits<typename DerivedA::Scalar,
                                                      typename DerivedB::Scalar>::ReturnType;
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

/// Hilbert–Schmidt inner product Tr(A† B).
template <typename DerivedA, typename DerivedB>
auto hs_inner(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
  return (a.adjoint() * b).trace();
}

template <typename DerivedA, typename DerivedB>
auto commutator(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
  return (a * b - b * a).eval();
}

template <typename DerivedA, typename DerivedB>
auto anticommutator(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
  return (a * b + b * a).eval();
}

template <typename Derived>
bool all_finite(const Eigen::MatrixBase<Derived>& m) {
  return m.allFinite();
}

template <typename Derived>
double hermiticity_defect(const Eigen::MatrixBase<Derived>& m) {
  return (m - m.adjoint()).norm();
}

template <typename Derived>
bool is_hermitian(const Eigen::MatrixBase<Derived>& m, double tol = 1e-10) {
  return m.rows() == m.cols() && hermiticity_defect(m) <= tol;
}

template <typename Derived>
double unitarity_defect(const Eigen::MatrixBase<Derived>& m) {
  using Plain = Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  return (m.adjoint() * m - Plain::Identity(m.cols(), m.cols())).norm();
}

template <typename Derived>
bool is_unitary(const Eigen::MatrixBase<Derived>& m, double tol = 1e-10) {
  return m.rows() == m.cols() && unitarity_defect(m) <= tol;
}

/// Smallest eigenvalue of the Hermitian part of m.
template <typename Derived>
double min_eigenvalue(const Eigen::MatrixBase<Derived>& m) {
  using Plain = Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  const Plain h = (m + m.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<Plain> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

template <typename Derived>
bool is_psd(const Eigen::MatrixBase<Derived>& m, double tol = 1e-10) {
  return is_hermitian(m, tol) && min_eigenvalue(m) >= -tol;
}

/// ½‖ρ − σ‖₁ for Hermitian arguments.
template <typename DerivedA, typename DerivedB>
double trace_distance(const Eigen::MatrixBase<DerivedA>& rho, const Eigen::MatrixBase<DerivedB>& sigma) {
  const ComplexMatrix diff = (rho - sigma).template cast<Complex>();
  const ComplexMatrix h = (diff + diff.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h, Eigen::EigenvaluesOnly);
  return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

/// Largest singular value.
template <typename Derived>
double spectral_norm(const Eigen::MatrixBase<Derived>& m) {
  using Plain = Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Plain> svd(m);
  return svd.singularValues()(0);
}

namespace detail {

inline constexpr std::array<double, 4> kPade3{120.0, 60.0, 12.0, 1.0};
inline constexpr std::array<double, 6> kPade5{30240.0, 15120.0, 3360.0, 420.0, 30.0, 1.0};
inline constexpr std::array<double, 8> kPade7{17297280.0, 8648640.0, 1995840.0, 277200.0,
                                              25200.0,    1512.0,    56.0,      1.0};
inline constexpr std::array<double, 10> kPade9{17643225600.0, 8821612800.0, 2075673600.0, 302702400.0,
                                               30270240.0,    2162160.0,    110880.0,     3960.0,
                                               90.0,          1.0};
inline constexpr std::array<double, 14> kPade13{
    64764752532480000.0, 32382376266240000.0, 7771770303897600.0, 1187353796428800.0,
    129060195264000.0,   10559470521600.0,    670442572800.0,     33522128640.0,
    1323241920.0,        40840800.0,          960960.0,           16380.0,
    182.0,               1.0};

// Largest 1-norm for which the degree-m approximant meets unit roundoff.
inline constexpr double kTheta3 = 1.495585217958292e-2;
inline constexpr double kTheta5 = 2.539398330063230e-1;
inline constexpr double kTheta7 = 9.504178996162932e-1;
inline constexpr double kTheta9 = 2.097847961257068e0;
inline constexpr double kTheta13 = 5.371920351148152e0;

template <typename Plain, std::size_t N>
Plain pade_approximant(const Plain& a, const std::array<double, N>& b) {
  const Eigen::Index n = a.rows();
  const Plain id = Plain::Identity(n, n);
  const Plain a2 = a * a;
  Plain even = b[0] * id;
  Plain odd = b[1] * id;
  Plain power = id;
  for (std::size_t k = 2; k < N; k += 2) {
    power = power * a2;
    even += b[k] * power;
    if (k + 1 < N) odd += b[k + 1] * power;
  }
  const Plain u = a * odd;
  return (even - u).partialPivLu().solve(even + u);
}

}  // namespace detail

/// Matrix exponential by scaling and squaring with a diagonal Padé
/// approximant of degree 3, 5, 7, 9 or 13 chosen from the 1-norm.
template <typename Derived>
auto expm(const Eigen::MatrixBase<Derived>& x) {
  using Plain = Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  if (x.rows() != x.cols()) throw std::invalid_argument("expm: matrix is not square");
  if (!x.allFinite()) throw std::invalid_argument("expm: non-finite entries");
  Plain a = x;
  if (a.size() == 0) return a;
  const double norm1 = a.cwiseAbs().colwise().sum().maxCoeff();
  if (norm1 <= detail::kTheta3) return detail::pade_approximant(a, detail::kPade3);
  if (norm1 <= detail::kTheta5) return detail::pade_approximant(a, detail::kPade5);
  if (norm1 <= detail::kTheta7) return detail::pade_approximant(a, detail::kPade7);
  if (norm1 <= detail::kTheta9) return detail::pade_approximant(a, detail::kPade9);
  const int squarings = std::max(0, static_cast<int>(std::ceil(std::log2(norm1 / detail::kTheta13))));
  a /= std::ldexp(1.0, squarings);
  Plain r = detail::pade_approximant(a, detail::kPade13);
  for (int i = 0; i < squarings; ++i) r = (r * r).eval();
  return r;
}

/// Eigenpairs of a Hermitian matrix with deterministic conventions.
struct HermitianEigen {
  RealVector values;      // descending
  ComplexMatrix vectors;  // unitary, columns are eigenvectors
};

/// Eigenvalues come out descending. Inside a numerically degenerate cluster
/// (gap below `cluster_gap`) the basis is rebuilt from the projections of
/// e_0, e_1, … so it does not depend on the solver's arbitrary choice. Each
/// column is then phased so its first non-negligible component is real
/// positive.
HermitianEigen eigh_hermitian(const ComplexMatrix& x, double cluster_gap = 1e-9);

/// Projects e_0, e_1, … onto span(columns of v) and orthonormalises them
/// in order, stopping once v.cols() vectors are collected.
ComplexMatrix canonical_subspace_basis(const ComplexMatrix& v);

/// Multiplies each column by a phase so its first component with modulus
/// above `threshold` is real positive.
void fix_phase_first_positive(ComplexMatrix& v, double threshold = 1e-10);
/// Same, keyed on the last such component.
void fix_phase_last_positive(ComplexMatrix& v, double threshold = 1e-10);

}  // namespace fmo
