#include "fmo/decomposition.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace fmo {

namespace {

constexpr double kClusterGap = 1e-9;
constexpr double kContractTol = 1e-8;

bool has_f1_spectrum(const RealVector& w) {
  const auto n = w.size();
  if (n < 2) return false;
  const double s = 1.0 / std::numbers::sqrt2;
  if (std::abs(w(0) - s) > kClusterGap || std::abs(w(n - 1) + s) > kClusterGap) return false;
  for (Eigen::Index i = 1; i + 1 < n; ++i)
    if (std::abs(w(i)) > kClusterGap) return false;
  return true;
}

}  // namespace

std::vector<EigenPair> spectral_decompose(const ComplexMatrix& gks, double cutoff) {
  const auto eig = eigh_hermitian(gks);
  if (eig.values.size() > 0 && eig.values.minCoeff() < -1e-8)
    throw std::domain_error("GKS matrix has a negative eigenvalue: not a valid Markovian generator");
  std::vector<EigenPair> pairs;
  for (Eigen::Index k = 0; k < eig.values.size(); ++k) {
    if (eig.values(k) <= cutoff) break;  // descending
    ComplexMatrix v = eig.vectors.col(k);
    fix_phase_last_positive(v);
    pairs.push_back({eig.values(k), v.col(0)});
  }
  return pairs;
}

CanonicalVector canonicalize(const ComplexVector& a) {
  const double len = a.norm();
  if (len == 0.0 || !std::isfinite(len)) throw std::invalid_argument("canonicalize: zero or non-finite vector");
  if (std::abs(len - 1.0) > 1e-10) throw std::invalid_argument("canonicalize: vector is not unit norm");

  // Σ a_i² fixes the phase that makes Re and Im orthogonal.
  const Complex square_sum = a.transpose() * a;
  double psi = 0.0;
  if (std::abs(square_sum) > 1e-12) psi = -std::arg(square_sum) / 2.0;

  auto split = [&](double phase) {
    const ComplexVector b = std::polar(1.0, phase) * a;
    return std::pair<RealVector, RealVector>{b.real(), b.imag()};
  };
  auto normalize_phase = [](double phase) {
    phase = std::fmod(phase, std::numbers::pi);
    if (phase < 0.0) phase += std::numbers::pi;
    if (phase >= std::numbers::pi) phase = 0.0;
    return phase + 0.0;  // no −0
  };

  psi = normalize_phase(psi);
  auto [re, im] = split(psi);
  if (im.norm() > re.norm() + 1e-15) {
    // Multiplying by −i swaps the roles of the two parts.
    psi = normalize_phase(psi - std::numbers::pi / 2.0);
    std::tie(re, im) = split(psi);
  }

  CanonicalVector out;
  out.psi = psi;
  out.theta = std::atan2(im.norm(), re.norm());
  out.real_part = re / re.norm();
  out.imag_part = im.norm() > 1e-14 ? RealVector(im / im.norm()) : RealVector::Zero(a.size());
  return out;
}

Conjugator find_conjugator(const RealVector& real_part, const RealVector& imag_part, const OperatorBasis& basis) {
  const int d = basis.dim();
  const ComplexMatrix hr = basis.expand(real_part.cast<Complex>());
  const ComplexMatrix hi = basis.expand(imag_part.cast<Complex>());

  // Stage 1: diagonalise the real part.
  const auto eig = eigh_hermitian(hr, kClusterGap);
  std::vector<Eigen::Index> order(static_cast<std::size_t>(d));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  const bool f1_spectrum = has_f1_spectrum(eig.values);
  if (f1_spectrum) {
    order = {0, d - 1};
    for (Eigen::Index i = 1; i + 1 < d; ++i) order.push_back(i);
  }
  ComplexMatrix v(d, d);
  RealVector w(d);
  for (Eigen::Index i = 0; i < d; ++i) {
    v.col(i) = eig.vectors.col(order[static_cast<std::size_t>(i)]);
    w(i) = eig.values(order[static_cast<std::size_t>(i)]);
  }
  const ComplexMatrix stage1 = v.adjoint();

  // Stage 2: inside each degenerate eigenspace, diagonalise the imaginary part.
  const ComplexMatrix hi1 = stage1 * hi * stage1.adjoint();
  ComplexMatrix stage2 = ComplexMatrix::Identity(d, d);
  std::vector<bool> assigned(static_cast<std::size_t>(d), false);
  for (Eigen::Index i = 0; i < d; ++i) {
    if (assigned[static_cast<std::size_t>(i)]) continue;
    std::vector<Eigen::Index> cluster;
    for (Eigen::Index j = i; j < d; ++j) {
      if (!assigned[static_cast<std::size_t>(j)] && std::abs(w(j) - w(i)) < kClusterGap) {
        cluster.push_back(j);
        assigned[static_cast<std::size_t>(j)] = true;
      }
    }
    if (cluster.size() < 2) continue;
    const auto m = static_cast<Eigen::Index>(cluster.size());
    ComplexMatrix block(m, m);
    for (Eigen::Index r = 0; r < m; ++r)
      for (Eigen::Index c = 0; c < m; ++c) block(r, c) = hi1(cluster[r], cluster[c]);
    const ComplexMatrix q = eigh_hermitian(block, kClusterGap).vectors.adjoint();
    for (Eigen::Index r = 0; r < m; ++r)
      for (Eigen::Index c = 0; c < m; ++c) stage2(cluster[r], cluster[c]) = q(r, c);
  }

  Conjugator out;
  out.frame = stage2 * stage1;
  const ComplexMatrix dr = out.frame * hr * out.frame.adjoint();
  const ComplexMatrix di = out.frame * hi * out.frame.adjoint();
  const ComplexMatrix diagonal = dr.diagonal().real().cast<Complex>().asDiagonal();
  out.target_real = basis.coefficients(diagonal).real();
  out.target_imag = basis.coefficients(di).real();
  out.diagonal_real = dr.diagonal().real();

  if (basis.size() > 35) {
    RealVector e1 = RealVector::Zero(basis.size());
    RealVector e36 = RealVector::Zero(basis.size());
    e1(0) = 1.0;
    e36(35) = 1.0;
    out.f1_target = (out.target_real - e1).norm() < 1e-9 &&
                    std::min((out.target_imag - e36).norm(), (out.target_imag + e36).norm()) < 1e-9;
  }
  return out;
}

RankOneGenerator conjugated_form(double weight, const ComplexVector& a, const OperatorBasis& basis) {
  if (!(weight > 0.0)) throw std::invalid_argument("conjugated_form: weight must be positive");
  if (a.size() != basis.size()) throw std::invalid_argument("conjugated_form: vector length mismatch");

  const auto canon = canonicalize(a);
  const auto conj = find_conjugator(canon.real_part, canon.imag_part, basis);

  RankOneGenerator g;
  g.weight = weight;
  g.a = a;
  g.psi = canon.psi;
  g.theta = canon.theta;
  g.real_part = canon.real_part;
  g.imag_part = canon.imag_part;
  g.frame = conj.frame;
  g.conjugator = conj.frame.adjoint();
  g.rotation = adjoint_rep(g.conjugator, basis);
  g.target_real = conj.target_real;
  g.target_imag = conj.target_imag;
  g.diagonal_real = conj.diagonal_real;
  g.f1_target = conj.f1_target;
  g.params.theta = canon.theta;

  const double c = std::cos(g.theta);
  const double s = std::sin(g.theta);
  g.target = c * g.target_real.cast<Complex>() + kI * s * g.target_imag.cast<Complex>();

  const ComplexVector rebuilt = c * g.real_part.cast<Complex>() + kI * s * g.imag_part.cast<Complex>();
  g.phase_residual = (std::polar(1.0, g.psi) * a - rebuilt).norm();

  const RealMatrix to_frame = g.rotation.transpose();  // G_W = G_U†
  g.rotation_residual = (to_frame * g.real_part - g.target_real).norm();
  if (s > 0.0) g.rotation_residual = std::max(g.rotation_residual, (to_frame * g.imag_part - g.target_imag).norm());

  const ComplexMatrix gu = g.rotation.cast<Complex>();
  g.conjugation_residual =
      (a * a.adjoint() - gu * (g.target * g.target.adjoint()) * gu.transpose()).norm();

  if (g.phase_residual > kContractTol || g.rotation_residual > kContractTol ||
      g.conjugation_residual > kContractTol)
    throw std::logic_error("conjugated_form: conjugation identity violated");
  return g;
}

std::vector<RankOneGenerator> decompose(const GksForm& form, const OperatorBasis& basis) {
  std::vector<RankOneGenerator> out;
  for (const auto& pair : spectral_decompose(form.gks)) out.push_back(conjugated_form(pair.weight, pair.vector, basis));
  return out;
}

}  // namespace fmo
