#include "fmo/channel.hpp"

#include <cmath>
#include <stdexcept>

namespace fmo {

void validate_density(const ComplexMatrix& rho, double tol, double tol_eig) {
  if (rho.rows() != rho.cols() || rho.rows() == 0) throw std::invalid_argument("density matrix must be square");
  if (!rho.allFinite()) throw std::invalid_argument("density matrix has non-finite entries");
  if (!is_hermitian(rho, tol)) throw std::invalid_argument("density matrix is not Hermitian");
  if (std::abs(rho.trace() - 1.0) > tol) throw std::invalid_argument("density matrix does not have unit trace");
  if (min_eigenvalue(rho) < -tol_eig) throw std::invalid_argument("density matrix has a negative eigenvalue");
}

ComplexMatrix ground_state(int dim) {
  ComplexMatrix rho = ComplexMatrix::Zero(dim, dim);
  rho(0, 0) = 1.0;
  return rho;
}

ComplexMatrix site_state(int site, int dim) { return site_projector(site, dim); }

ComplexMatrix evolve_exact(const Superoperator& generator, const ComplexMatrix& rho0, double t) {
  if (t < 0.0) throw std::invalid_argument("evolve_exact: negative time");
  if (generator.rows() != rho0.size()) throw std::invalid_argument("evolve_exact: dimension mismatch");
  const ComplexMatrix rho = unvec(ComplexVector(expm(t * generator) * vec(rho0)));
  try {
    validate_density(rho, 1e-6, 1e-6);
  } catch (const std::invalid_argument&) {
    throw std::domain_error("generator not Markovian or t too large for tolerance");
  }
  return rho;
}

ComplexMatrix evolve_rk4(const LindbladModel& model, const ComplexMatrix& rho0, double t, int steps) {
  if (steps < 1) throw std::invalid_argument("evolve_rk4: steps must be >= 1");
  if (t < 0.0) throw std::invalid_argument("evolve_rk4: negative time");
  validate(model);
  const double h = t / steps;
  ComplexMatrix rho = rho0;
  for (int s = 0; s < steps; ++s) {
    const ComplexMatrix k1 = apply_generator(model, rho);
    const ComplexMatrix k2 = apply_generator(model, rho + 0.5 * h * k1);
    const ComplexMatrix k3 = apply_generator(model, rho + 0.5 * h * k2);
    const ComplexMatrix k4 = apply_generator(model, rho + h * k3);
    rho += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return rho;
}

Superoperator generator_superoperator(const RankOneGenerator& g, const OperatorBasis& basis) {
  return dissipator(g.jump(basis), g.weight);
}

Superoperator generator_channel(const RankOneGenerator& g, const OperatorBasis& basis, double t) {
  return expm(t * generator_superoperator(g, basis));
}

ComplexMatrix simulate_conjugated(const RankOneGenerator& g, const OperatorBasis& basis, const ComplexMatrix& rho0,
                                  double t) {
  const ComplexMatrix& w = g.frame;
  const ComplexMatrix rotated = w * rho0 * w.adjoint();
  const Superoperator canonical = expm(t * dissipator(g.canonical_jump(basis), g.weight));
  const ComplexMatrix evolved = unvec(ComplexVector(canonical * vec(rotated)));
  return w.adjoint() * evolved * w;
}

ComplexMatrix trotter_evolve(const std::vector<Superoperator>& components, const ComplexMatrix& rho0, double t, int n,
                             Splitting splitting) {
  if (n < 1) throw std::invalid_argument("trotter_evolve: n must be >= 1");
  const auto dim2 = rho0.size();
  const double h = t / n;
  Superoperator step = Superoperator::Identity(dim2, dim2);
  if (splitting == Splitting::first_order) {
    for (const auto& c : components) step = (expm(h * c) * step).eval();
  } else if (!components.empty()) {
    const std::size_t last = components.size() - 1;
    for (std::size_t i = 0; i < last; ++i) step = (expm(0.5 * h * components[i]) * step).eval();
    step = (expm(h * components[last]) * step).eval();
    for (std::size_t i = last; i-- > 0;) step = (expm(0.5 * h * components[i]) * step).eval();
  }
  ComplexVector v = vec(rho0);
  for (int s = 0; s < n; ++s) v = step * v;
  return unvec(v);
}

std::vector<Superoperator> trotter_components(const ComplexMatrix& hamiltonian,
                                              const std::vector<RankOneGenerator>& generators,
                                              const OperatorBasis& basis) {
  std::vector<Superoperator> out;
  if (hamiltonian.norm() > 0.0) out.push_back(hamiltonian_part(hamiltonian));
  for (const auto& g : generators) out.push_back(generator_superoperator(g, basis));
  return out;
}

ComplexMatrix choi_matrix(const Superoperator& channel) {
  const auto d = static_cast<Eigen::Index>(std::llround(std::sqrt(static_cast<double>(channel.rows()))));
  if (d * d != channel.rows() || channel.cols() != channel.rows())
    throw std::invalid_argument("choi_matrix: channel is not d²×d²");
  ComplexMatrix choi(d * d, d * d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j)
      choi.block(i * d, j * d, d, d) = unvec(ComplexVector(channel.col(i + j * d)));
  return choi;
}

CptpReport cptp_check(const Superoperator& channel) {
  const ComplexMatrix choi = choi_matrix(channel);
  const auto d = static_cast<Eigen::Index>(std::llround(std::sqrt(static_cast<double>(channel.rows()))));
  CptpReport report;
  report.min_choi_eigenvalue = min_eigenvalue(choi);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) {
      const Complex tr = choi.block(i * d, j * d, d, d).trace();
      const double expected = i == j ? 1.0 : 0.0;
      report.max_trace_deviation = std::max(report.max_trace_deviation, std::abs(tr - expected));
    }
  }
  return report;
}

void append_row(Trajectory& traj, double t, const ComplexMatrix& rho) {
  const auto d = rho.rows();
  std::vector<double> pops(static_cast<std::size_t>(d));
  std::vector<double> cohs(static_cast<std::size_t>(d - 1));
  for (Eigen::Index i = 0; i < d; ++i) pops[static_cast<std::size_t>(i)] = rho(i, i).real();
  for (Eigen::Index j = 1; j < d; ++j) cohs[static_cast<std::size_t>(j - 1)] = std::abs(rho(j, 0));
  traj.times.push_back(t);
  traj.populations.push_back(std::move(pops));
  traj.coherences.push_back(std::move(cohs));
}

Trajectory trajectory(const Superoperator& generator, const ComplexMatrix& rho0, const std::vector<double>& times) {
  for (std::size_t i = 1; i < times.size(); ++i)
    if (times[i] < times[i - 1]) throw std::invalid_argument("trajectory: times must be ascending");
  Trajectory traj;
  for (double t : times) append_row(traj, t, evolve_exact(generator, rho0, t));
  return traj;
}

}  // namespace fmo
