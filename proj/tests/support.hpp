// Seeded random matrices and models shared by the tests and the acceptance run.
#pragma once

#include "fmo/lindblad.hpp"

#include <random>

namespace fmo::testing {

using Rng = std::mt19937_64;

inline ComplexMatrix random_complex(Rng& rng, int rows, int cols) {
  std::normal_distribution<double> n;
  ComplexMatrix m(rows, cols);
  for (int c = 0; c < cols; ++c)
    for (int r = 0; r < rows; ++r) m(r, c) = Complex(n(rng), n(rng));
  return m;
}

inline ComplexMatrix random_hermitian(Rng& rng, int d = 8) {
  const ComplexMatrix g = random_complex(rng, d, d);
  return (g + g.adjoint()) / 2.0;
}

// Haar-distributed: QR of a Ginibre matrix with the R-diagonal phases removed.
inline ComplexMatrix random_unitary(Rng& rng, int d = 8) {
  const Eigen::HouseholderQR<ComplexMatrix> qr(random_complex(rng, d, d));
  ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(d, d);
  const ComplexMatrix r = qr.matrixQR();
  for (int i = 0; i < d; ++i) q.col(i) *= std::polar(1.0, std::arg(r(i, i)));
  return q;
}

inline ComplexMatrix random_special_unitary(Rng& rng, int d = 8) {
  ComplexMatrix u = random_unitary(rng, d);
  const Complex det = u.determinant();
  return u * std::polar(1.0, -std::arg(det) / d);
}

inline ComplexVector random_unit_vector(Rng& rng, int n = 63) {
  ComplexVector v = random_complex(rng, n, 1);
  return v / v.norm();
}

inline ComplexMatrix random_density(Rng& rng, int d = 8) {
  const ComplexMatrix g = random_complex(rng, d, d);
  const ComplexMatrix rho = g * g.adjoint();
  return rho / rho.trace();
}

/// Random H plus `jumps` general (non-traceless, non-normal) jump operators.
inline LindbladModel random_model(Rng& rng, int jumps = 3, int d = 8) {
  std::uniform_real_distribution<double> rate(0.05, 1.0);
  LindbladModel m{random_hermitian(rng, d), {}, Process::custom};
  for (int j = 0; j < jumps; ++j) m.terms.push_back({rate(rng), random_complex(rng, d, d) / std::sqrt(d)});
  return m;
}

}  // namespace fmo::testing
