#include "fmo/lindblad.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace fmo {

namespace {

constexpr int kSites = 7;
constexpr int kDim = kSites + 1;

void check_rates(std::span<const double> rates, const char* what) {
  if (rates.size() != static_cast<std::size_t>(kSites))
    throw std::invalid_argument(std::string(what) + ": expected 7 rates");
  for (std::size_t j = 0; j < rates.size(); ++j) {
    if (!std::isfinite(rates[j]) || rates[j] < 0.0)
      throw std::invalid_argument(std::string(what) + ": rate " + std::to_string(j + 1) +
                                  " must be finite and non-negative");
  }
}

}  // namespace

void validate(const LindbladModel& model) {
  const auto d = model.hamiltonian.rows();
  if (d < 2 || model.hamiltonian.cols() != d) throw std::invalid_argument("model: Hamiltonian must be square");
  if (!model.hamiltonian.allFinite() || !is_hermitian(model.hamiltonian, 1e-10))
    throw std::invalid_argument("model: Hamiltonian must be Hermitian");
  for (const auto& term : model.terms) {
    if (!std::isfinite(term.rate) || term.rate < 0.0)
      throw std::invalid_argument("model: rates must be finite and non-negative");
    if (term.jump.rows() != d || term.jump.cols() != d || !term.jump.allFinite())
      throw std::invalid_argument("model: jump operator has wrong shape or non-finite entries");
  }
}

LindbladModel fmo_dissipative(std::span<const double> rates) {
  check_rates(rates, "fmo_dissipative");
  LindbladModel model{ComplexMatrix::Zero(kDim, kDim), {}, Process::dissipative};
  for (int j = 1; j <= kSites; ++j)
    if (rates[j - 1] > 0.0) model.terms.push_back({2.0 * rates[j - 1], sigma_minus(j, kDim)});
  return model;
}

LindbladModel fmo_dephasing(std::span<const double> rates) {
  check_rates(rates, "fmo_dephasing");
  LindbladModel model{ComplexMatrix::Zero(kDim, kDim), {}, Process::dephasing};
  for (int j = 1; j <= kSites; ++j)
    if (rates[j - 1] > 0.0) model.terms.push_back({2.0 * rates[j - 1], site_projector(j, kDim)});
  return model;
}

LindbladModel combine(const LindbladModel& a, const LindbladModel& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("combine: dimension mismatch");
  LindbladModel out{a.hamiltonian + b.hamiltonian, a.terms, Process::custom};
  out.terms.insert(out.terms.end(), b.terms.begin(), b.terms.end());
  return out;
}

GksForm to_gks(const LindbladModel& model, const OperatorBasis& basis) {
  validate(model);
  if (model.dim() != basis.dim()) throw std::invalid_argument("to_gks: basis dimension mismatch");
  const int n = basis.size();
  const double d = basis.dim();
  GksForm form{model.hamiltonian, ComplexMatrix::Zero(n, n)};
  for (const auto& term : model.terms) {
    if (term.rate == 0.0) continue;
    const ComplexVector c = basis.coefficients(term.jump);
    form.gks += term.rate * c * c.adjoint();

    // L = L⁰ + αI: the cross terms are ½[K, ρ] with K = ᾱL⁰ − αL⁰†, which
    // equals −i[(i/2)K, ρ].
    const Complex alpha = term.jump.trace() / d;
    if (std::abs(alpha) == 0.0) continue;
    const ComplexMatrix traceless = term.jump - alpha * ComplexMatrix::Identity(basis.dim(), basis.dim());
    const ComplexMatrix k = std::conj(alpha) * traceless - alpha * traceless.adjoint();
    form.hamiltonian += 0.5 * term.rate * kI * k;
  }
  form.hamiltonian = (form.hamiltonian + form.hamiltonian.adjoint()) / 2.0;
  return form;
}

LindbladModel gks_to_lindblad(const GksForm& form, const OperatorBasis& basis, double cutoff) {
  const auto eig = eigh_hermitian(form.gks);
  if (eig.values.size() > 0 && eig.values.minCoeff() < -1e-8)
    throw std::domain_error("GKS matrix has a negative eigenvalue: not a valid Markovian generator");
  LindbladModel model{form.hamiltonian, {}, Process::custom};
  for (Eigen::Index k = 0; k < eig.values.size(); ++k) {
    if (eig.values(k) <= cutoff) continue;
    model.terms.push_back({eig.values(k), basis.expand(eig.vectors.col(k))});
  }
  return model;
}

Superoperator hamiltonian_part(const ComplexMatrix& h) {
  const auto d = h.rows();
  const ComplexMatrix id = ComplexMatrix::Identity(d, d);
  // i(ρH − Hρ)
  return kI * (kron(h.transpose(), id) - kron(id, h));
}

Superoperator dissipator(const ComplexMatrix& jump, double rate) {
  const auto d = jump.rows();
  const ComplexMatrix id = ComplexMatrix::Identity(d, d);
  const ComplexMatrix ldl = jump.adjoint() * jump;
  return rate * (kron(jump.conjugate(), jump) - 0.5 * kron(id, ldl) - 0.5 * kron(ldl.transpose(), id));
}

Superoperator liouvillian(const LindbladModel& model) {
  validate(model);
  Superoperator m = hamiltonian_part(model.hamiltonian);
  for (const auto& term : model.terms)
    if (term.rate != 0.0) m += dissipator(term.jump, term.rate);
  return m;
}

Superoperator liouvillian(const GksForm& form, const OperatorBasis& basis) {
  const auto d = basis.dim();
  const ComplexMatrix id = ComplexMatrix::Identity(d, d);
  Superoperator m = hamiltonian_part(form.hamiltonian);
  const int n = basis.size();
  for (int l = 0; l < n; ++l) {
    for (int k = 0; k < n; ++k) {
      const Complex a = form.gks(l, k);
      if (a == Complex{0.0, 0.0}) continue;
      const ComplexMatrix prod = basis[k].adjoint() * basis[l];
      m += a * (kron(basis[k].conjugate(), basis[l]) - 0.5 * kron(id, prod) - 0.5 * kron(prod.transpose(), id));
    }
  }
  return m;
}

ComplexMatrix apply_generator(const LindbladModel& model, const ComplexMatrix& rho) {
  ComplexMatrix out = kI * (rho * model.hamiltonian - model.hamiltonian * rho);
  for (const auto& term : model.terms) {
    const ComplexMatrix& l = term.jump;
    const ComplexMatrix ldl = l.adjoint() * l;
    out += term.rate * (l * rho * l.adjoint() - 0.5 * (ldl * rho + rho * ldl));
  }
  return out;
}

}  // namespace fmo
