#include "fmo/channel.hpp"
#include "support.hpp"

#include <doctest.h>

#include <array>
#include <cmath>
#include <numbers>

using namespace fmo;

namespace {

std::array<double, 7> all(double v) { return {v, v, v, v, v, v, v}; }
const std::array<double, 7> kRamp{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7};

ComplexMatrix coherent_with_ground(int site) {
  ComplexVector psi = ComplexVector::Zero(8);
  psi(0) = psi(site) = 1.0 / std::numbers::sqrt2;
  return psi * psi.adjoint();
}

}  // namespace

TEST_SUITE("channel") {
  TEST_CASE("density validation") {
    CHECK_NOTHROW(validate_density(ground_state()));
    CHECK_THROWS_AS(validate_density(2.0 * ground_state()), std::invalid_argument);
    ComplexMatrix neg = ComplexMatrix::Zero(8, 8);
    neg(0, 0) = 1.5;
    neg(1, 1) = -0.5;
    CHECK_THROWS_AS(validate_density(neg), std::invalid_argument);
  }

  TEST_CASE("exact evolution: time zero and analytic decay") {
    const Superoperator l = liouvillian(fmo_dissipative(kRamp));
    testing::Rng rng(51);
    const ComplexMatrix rho = testing::random_density(rng);
    CHECK((evolve_exact(l, rho, 0.0) - rho).norm() < 1e-15);
    for (int j = 1; j <= 7; ++j) {
      const double g = kRamp[static_cast<std::size_t>(j - 1)];
      for (double t : {0.5, 1.0, 2.0}) {
        const ComplexMatrix r = evolve_exact(l, site_state(j), t);
        CHECK(std::abs(r(j, j).real() - std::exp(-2.0 * g * t)) < 1e-12);
        CHECK(std::abs(r(0, 0).real() - (1.0 - std::exp(-2.0 * g * t))) < 1e-12);
      }
    }
    const Superoperator deph = liouvillian(fmo_dephasing(all(1.0)));
    for (int j = 1; j <= 7; ++j)
      for (double t : {0.5, 1.0, 2.0})
        CHECK(std::abs(std::abs(evolve_exact(deph, coherent_with_ground(j), t)(j, 0)) - 0.5 * std::exp(-t)) < 1e-12);
    CHECK_THROWS_AS(evolve_exact(l, rho, -1.0), std::invalid_argument);
  }

  TEST_CASE("semigroup law, positivity and dephasing fixed points") {
    testing::Rng rng(52);
    const LindbladModel m = testing::random_model(rng);
    const Superoperator l = liouvillian(m);
    const ComplexMatrix rho = testing::random_density(rng);
    const ComplexMatrix two_step = evolve_exact(l, evolve_exact(l, rho, 0.3), 0.4);
    CHECK(trace_distance(two_step, evolve_exact(l, rho, 0.7)) < 1e-10);
    for (double t : {0.1, 1.0, 5.0}) CHECK(min_eigenvalue(evolve_exact(l, rho, t)) > -1e-8);

    const ComplexMatrix diag = rho.diagonal().asDiagonal();
    const Superoperator deph = liouvillian(fmo_dephasing(kRamp));
    CHECK((evolve_exact(deph, diag, 3.0) - diag).norm() < 1e-11);
  }

  TEST_CASE("evolve_exact reports a non-Markovian generator") {
    const OperatorBasis b;
    GksForm bad{ComplexMatrix::Zero(8, 8), ComplexMatrix::Zero(63, 63)};
    bad.gks(7, 7) = bad.gks(35, 35) = -1.0;
    bad.gks(7, 35) = Complex(0, 1.0);
    bad.gks(35, 7) = Complex(0, -1.0);
    const ComplexMatrix mix = 0.5 * (ground_state() + site_state(1));
    CHECK_THROWS_AS(evolve_exact(liouvillian(bad, b), mix, 1.0), std::domain_error);
  }

  TEST_CASE("RK4 matches exact and converges at fourth order") {
    for (const auto& m : {fmo_dissipative(kRamp), fmo_dephasing(kRamp)}) {
      const ComplexMatrix rho0 = coherent_with_ground(2);
      CHECK((evolve_rk4(m, rho0, 0.0, 10) - rho0).norm() == 0.0);
      const ComplexMatrix exact = evolve_exact(liouvillian(m), rho0, 1.0);
      CHECK(trace_distance(evolve_rk4(m, rho0, 1.0, 1000), exact) < 1e-8);
    }
    testing::Rng rng(53);
    const LindbladModel m = testing::random_model(rng);
    const ComplexMatrix rho0 = testing::random_density(rng);
    const ComplexMatrix exact = evolve_exact(liouvillian(m), rho0, 1.0);
    const ComplexMatrix coarse = evolve_rk4(m, rho0, 1.0, 20);
    const double e1 = (coarse - exact).norm();
    const double e2 = (evolve_rk4(m, rho0, 1.0, 40) - exact).norm();
    CHECK(e1 / e2 >= 12.0);
    CHECK(e1 / e2 <= 20.0);
    CHECK(std::abs(coarse.trace() - 1.0) < 1e-10);
  }

  TEST_CASE("per-generator channel") {
    const OperatorBasis b;
    const auto gens = decompose(to_gks(fmo_dissipative(std::array<double, 7>{0.5, 0, 0, 0, 0, 0, 0}), b), b);
    REQUIRE(gens.size() == 1);
    CHECK((generator_channel(gens[0], b, 0.0) - Superoperator::Identity(64, 64)).norm() == 0.0);
    const Superoperator ch = generator_channel(gens[0], b, 1.0);
    const ComplexMatrix out = unvec(ComplexVector(ch * vec(site_state(1))));
    CHECK(std::abs(out(1, 1).real() - std::exp(-1.0)) < 1e-12);
    for (double t : {0.1, 1.0, 10.0}) CHECK(cptp_check(generator_channel(gens[0], b, t)).min_choi_eigenvalue > -1e-10);
  }

  TEST_CASE("rotate, evolve, rotate back") {
    const OperatorBasis b;
    const auto gens = decompose(to_gks(fmo_dissipative(kRamp), b), b);
    testing::Rng rng(54);
    const ComplexMatrix rho = testing::random_density(rng);
    CHECK((simulate_conjugated(gens[0], b, rho, 0.0) - rho).norm() < 1e-14);
    for (const auto& g : gens) {
      const ComplexMatrix direct = unvec(ComplexVector(generator_channel(g, b, 0.3) * vec(rho)));
      CHECK(trace_distance(simulate_conjugated(g, b, rho, 0.3), direct) < 1e-10);
    }
    // Identity conjugation is trivially covariant.
    const ComplexVector a = testing::random_unit_vector(rng);
    const ComplexVector same = adjoint_rep(ComplexMatrix::Identity(8, 8), b).cast<Complex>() * a;
    CHECK((same - a).norm() < 1e-15);
  }

  TEST_CASE("covariance under random unitaries") {
    const OperatorBasis b;
    testing::Rng rng(55);
    for (int s = 0; s < 5; ++s) {
      const ComplexVector a = testing::random_unit_vector(rng);
      const ComplexMatrix u = testing::random_unitary(rng);
      const ComplexMatrix rho = testing::random_density(rng);
      const ComplexVector at = adjoint_rep(u, b).cast<Complex>() * a;
      for (double t : {0.1, 1.0}) {
        const ComplexMatrix direct = evolve_exact(dissipator(b.expand(a), 1.0), rho, t);
        const ComplexMatrix rotated =
            u.adjoint() * evolve_exact(dissipator(b.expand(at), 1.0), u * rho * u.adjoint(), t) * u;
        CHECK(trace_distance(rotated, direct) < 1e-10);
      }
    }
  }

  TEST_CASE("Trotter products") {
    const OperatorBasis b;
    testing::Rng rng(56);
    const ComplexMatrix rho = testing::random_density(rng);

    const Superoperator single = liouvillian(fmo_dissipative(kRamp));
    for (int n : {1, 3, 17}) CHECK(trace_distance(trotter_evolve({single}, rho, 1.0, n), evolve_exact(single, rho, 1.0)) < 1e-12);

    // Dephasing split per site commutes: exact for any n.
    std::vector<Superoperator> per_site;
    for (int j = 1; j <= 7; ++j) per_site.push_back(dissipator(site_projector(j), 2.0 * kRamp[std::size_t(j - 1)]));
    const Superoperator deph = liouvillian(fmo_dephasing(kRamp));
    for (int n : {1, 4}) CHECK(trace_distance(trotter_evolve(per_site, rho, 1.0, n), evolve_exact(deph, rho, 1.0)) < 1e-11);

    // Non-commuting split: first order halves the error, Strang quarters it.
    LindbladModel m = combine(fmo_dissipative(all(0.5)), fmo_dephasing(all(0.3)));
    m.hamiltonian = testing::random_hermitian(rng) * 0.5;
    const GksForm form = to_gks(m, b);
    const auto comps = trotter_components(form.hamiltonian, decompose(form, b), b);
    CHECK(comps.size() == 15);
    const ComplexMatrix exact = evolve_exact(liouvillian(m), rho, 1.0);
    const double e64 = trace_distance(trotter_evolve(comps, rho, 1.0, 64), exact);
    const double e128 = trace_distance(trotter_evolve(comps, rho, 1.0, 128), exact);
    CHECK(e64 / e128 >= 1.7);
    CHECK(e64 / e128 <= 2.3);
    const double s16 = trace_distance(trotter_evolve(comps, rho, 1.0, 16, Splitting::strang), exact);
    const double s32 = trace_distance(trotter_evolve(comps, rho, 1.0, 32, Splitting::strang), exact);
    CHECK(s16 / s32 >= 3.4);
    CHECK(s16 / s32 <= 4.6);
    CHECK_THROWS_AS(trotter_evolve(comps, rho, 1.0, 0), std::invalid_argument);
  }

  TEST_CASE("CPTP detector") {
    const CptpReport id = cptp_check(Superoperator::Identity(64, 64));
    CHECK(std::abs(id.min_choi_eigenvalue) < 1e-14);
    CHECK(id.max_trace_deviation == 0.0);

    // Transpose map: vec(Xᵀ) is a permutation of vec(X).
    Superoperator transpose = Superoperator::Zero(64, 64);
    for (int i = 0; i < 8; ++i)
      for (int j = 0; j < 8; ++j) transpose(j + 8 * i, i + 8 * j) = 1.0;
    CHECK(cptp_check(transpose).min_choi_eigenvalue <= -0.5);

    for (const auto& m : {fmo_dissipative(kRamp), fmo_dephasing(kRamp)}) {
      for (double t : {0.1, 1.0, 10.0}) {
        const CptpReport r = cptp_check(expm((t * liouvillian(m)).eval()));
        CHECK(r.min_choi_eigenvalue >= -1e-10);
        CHECK(r.max_trace_deviation <= 1e-10);
      }
    }
  }

  TEST_CASE("trajectory rows") {
    const Superoperator l = liouvillian(fmo_dissipative(std::array<double, 7>{1, 0, 0, 0, 0, 0, 0}));
    const Trajectory zero = trajectory(l, site_state(1), {0.0});
    REQUIRE(zero.times.size() == 1);
    CHECK(zero.populations[0][1] == 1.0);
    CHECK(zero.populations[0][0] == 0.0);

    const Trajectory half = trajectory(l, site_state(1), {0.0, std::log(2.0) / 2.0, 1.0});
    CHECK(std::abs(half.populations[1][1] - 0.5) < 1e-12);
    for (const auto& row : half.populations) {
      double sum = 0.0;
      for (double p : row) sum += p;
      CHECK(std::abs(sum - 1.0) < 1e-8);
    }
    CHECK_THROWS_AS(trajectory(l, site_state(1), {1.0, 0.5}), std::invalid_argument);
  }
}
