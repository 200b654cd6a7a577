#include "cli.hpp"

#include "fmo/circuit.hpp"
#include "fmo/model_io.hpp"
#include "fmo/published.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <numeric>
#include <optional>
#include <ostream>

namespace fmo {

namespace {

constexpr double kIdentityTol = 1e-8;

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6e", x);
  return buf;
}

// Thrown for a bad --method or --target value.
struct InvalidChoice : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<double> time_grid(double t, int steps) {
  if (t == 0.0) return {0.0};
  std::vector<double> times(static_cast<std::size_t>(steps) + 1);
  for (int i = 0; i <= steps; ++i) times[static_cast<std::size_t>(i)] = t * i / steps;
  return times;
}

void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-")
    out << text;
  else
    write_file_atomic(path, text);
}

void check_time(double t, int steps) {
  if (!std::isfinite(t) || t < 0.0) throw ParseError("option '--t': must be a finite value ≥ 0");
  if (steps < 1) throw ParseError("option '--steps': must be ≥ 1");
}

int cmd_decompose(const std::string& model_path, const std::string& out_path, std::ostream& out) {
  const OperatorBasis basis;
  const ModelFile file = load_model(model_path);
  const GksForm form = file.gks(basis);
  const auto generators = decompose(form, basis);
  emit(out_path, decomposition_report(file, form, generators).dump(2) + "\n", out);
  return kExitOk;
}

int cmd_simulate(const std::string& model_path, double t, int steps, const std::string& method, int trotter_n,
                 const std::string& out_path, std::ostream& out, std::ostream& err) {
  if (method != "exact" && method != "rk4" && method != "trotter")
    throw InvalidChoice("unknown method '" + method + "' (expected exact, rk4 or trotter)");
  check_time(t, steps);
  if (trotter_n < 1) throw ParseError("option '--trotter-n': must be ≥ 1");

  const OperatorBasis basis;
  const ModelFile file = load_model(model_path);
  const GksForm form = file.gks(basis);
  const LindbladModel model = gks_to_lindblad(form, basis);
  const Superoperator generator = liouvillian(form, basis);
  const auto times = time_grid(t, steps);
  const Trajectory exact = trajectory(generator, file.initial_state, times);

  Trajectory result;
  if (method == "exact") {
    result = exact;
  } else if (method == "rk4") {
    // Sub-steps of at most 1e-3 per grid interval.
    ComplexMatrix rho = file.initial_state;
    append_row(result, times[0], rho);
    for (std::size_t i = 1; i < times.size(); ++i) {
      const double dt = times[i] - times[i - 1];
      rho = evolve_rk4(model, rho, dt, std::max(1, static_cast<int>(std::ceil(dt / 1e-3))));
      append_row(result, times[i], rho);
    }
  } else {
    const auto components = trotter_components(form.hamiltonian, decompose(form, basis), basis);
    for (double ti : times) append_row(result, ti, trotter_evolve(components, file.initial_state, ti, trotter_n));
  }

  if (method != "exact") {
    double worst = 0.0;
    for (std::size_t r = 0; r < times.size(); ++r) {
      for (std::size_t c = 0; c < exact.populations[r].size(); ++c)
        worst = std::max(worst, std::abs(exact.populations[r][c] - result.populations[r][c]));
      for (std::size_t c = 0; c < exact.coherences[r].size(); ++c)
        worst = std::max(worst, std::abs(exact.coherences[r][c] - result.coherences[r][c]));
    }
    err << method << (method == "trotter" ? "(n=" + std::to_string(trotter_n) + ")" : std::string())
        << " vs exact: max row discrepancy " << num(worst) << "\n";
  }
  emit(out_path, trajectory_csv(result), out);
  return kExitOk;
}

int cmd_verify(const std::string& model_path, double t, int steps, std::ostream& out) {
  check_time(t, steps);
  const OperatorBasis basis;
  const ModelFile file = load_model(model_path);
  const GksForm form = file.gks(basis);
  const auto generators = decompose(form, basis);

  bool ok = true;
  auto line = [&](const std::string& label, double value) {
    const bool pass = value <= kIdentityTol;
    ok = ok && pass;
    out << "  " << label << " = " << num(value) << (pass ? "" : "  EXCEEDS 1e-8") << "\n";
  };

  out << "generators: " << generators.size() << "\n";
  for (std::size_t k = 0; k < generators.size(); ++k) {
    const auto& g = generators[k];
    out << "generator " << k + 1 << ": lambda " << num(g.weight) << ", psi " << num(g.psi) << ", theta "
        << num(g.theta) << "\n";
    line("phase residual", g.phase_residual);
    line("rotation residual", g.rotation_residual);
    line("conjugation residual", g.conjugation_residual);
  }

  const Superoperator generator = liouvillian(form, basis);
  const double round_trip = spectral_norm(liouvillian(gks_to_lindblad(form, basis)) - generator);
  out << "liouvillian round trip:\n";
  line("operator-norm residual", round_trip);

  const ComplexMatrix exact = evolve_exact(generator, file.initial_state, t);
  const auto components = trotter_components(form.hamiltonian, generators, basis);
  const double e1 = trace_distance(trotter_evolve(components, file.initial_state, t, steps), exact);
  const double e2 = trace_distance(trotter_evolve(components, file.initial_state, t, 2 * steps), exact);
  out << "trotter (first order, t = " << t << "):\n";
  out << "  error(n=" << steps << ") = " << num(e1) << "\n";
  out << "  error(n=" << 2 * steps << ") = " << num(e2) << "\n";
  if (e1 > 1e-13 && e2 > 1e-13)
    out << "  measured order = " << num(std::log2(e1 / e2)) << "\n";
  else
    out << "  measured order = undefined (components commute to roundoff)\n";

  const Superoperator channel = expm((t * generator).eval());
  const CptpReport cptp = cptp_check(channel);
  out << "cptp (exp(tL), t = " << t << "):\n";
  out << "  min choi eigenvalue = " << num(cptp.min_choi_eigenvalue) << "\n";
  out << "  max trace deviation = " << num(cptp.max_trace_deviation) << "\n";
  ok = ok && cptp.min_choi_eigenvalue >= -1e-10 && cptp.max_trace_deviation <= 1e-10;

  out << (ok ? "verify: PASS\n" : "verify: FAIL\n");
  return ok ? kExitOk : kExitCheckFailed;
}

struct SynthTarget {
  std::optional<ComplexMatrix> matrix;  // what the circuit should equal
  std::optional<Circuit> circuit;       // preset transcription, emitted as is
  std::string reference;
};

SynthTarget resolve_target(const std::string& name, const std::string& model_path) {
  if (name == "eq16") return {published_dissipative_conjugator(), std::nullopt, "printed dissipative U"};
  if (name == "eq24") return {published_dephasing_conjugator(), std::nullopt, "printed dephasing U"};
  if (name == "identity") return {ComplexMatrix::Identity(8, 8), std::nullopt, "identity"};
  if (name == "fig1-drawn") return {published_dissipative_conjugator(), fig1_drawn(), "printed dissipative U"};
  if (name == "fig1-prose") return {published_dissipative_conjugator(), fig1_prose(), "printed dissipative U"};
  if (name == "fig2-drawn") return {published_dephasing_conjugator(), fig2_drawn(), "printed dephasing U"};
  if (name == "fig2-prose") return {published_dephasing_conjugator(), fig2_prose(), "printed dephasing U"};
  if (name.rfind("derived:", 0) == 0) {
    const std::string index = name.substr(8);
    if (index.empty() || index.find_first_not_of("0123456789") != std::string::npos)
      throw InvalidChoice("target '" + name + "': expected derived:<k> with k ≥ 1");
    const OperatorBasis basis;
    GksForm form;
    if (model_path.empty()) {
      const std::array<double, 7> rates{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7};
      form = to_gks(fmo_dissipative(rates), basis);
    } else {
      form = load_model(model_path).gks(basis);
    }
    const auto generators = decompose(form, basis);
    const auto k = std::stoul(index);
    if (k < 1 || k > generators.size())
      throw InvalidChoice("target '" + name + "': model has " + std::to_string(generators.size()) + " generators");
    return {generators[k - 1].conjugator, std::nullopt, "conjugator of generator " + index};
  }
  throw InvalidChoice("unknown target '" + name + "'");
}

int cmd_synth(const std::string& target_name, const std::string& model_path, const std::string& out_path,
              std::ostream& out, std::ostream& err) {
  const SynthTarget target = resolve_target(target_name, model_path);
  Circuit circuit;
  if (target.circuit) {
    circuit = *target.circuit;
  } else {
    const ComplexMatrix& u = *target.matrix;
    if (!is_unitary(u, 1e-10)) {
      Eigen::JacobiSVD<ComplexMatrix> svd(u);
      const double nearest = (svd.singularValues().array() - 1.0).matrix().norm();
      err << "synth: target " << target_name << " is not unitary (‖U†U − I‖ = " << num(unitarity_defect(u))
          << ", nearest unitary at Frobenius distance " << num(nearest) << ")\n";
      return kExitInvariant;
    }
    circuit = synthesize_two_level(u);
  }
  const double dist = verify_equiv(circuit, *target.matrix);
  const Circuit lowered = lower_to_cnot(circuit);
  std::string text = "// target " + target_name + "\n" + to_qasm(circuit);
  emit(out_path, text, out);
  err << "synth " << target_name << ": " << circuit.size() << " gates (" << lowered.size() << " after lowering, "
      << lowered.cnot_count() << " CNOT); distance to " << target.reference << " = " << num(dist) << "\n";
  return kExitOk;
}

int cmd_paper_check(std::ostream& out) {
  const OperatorBasis basis;
  const auto items = check_published_claims(basis);
  std::size_t mismatches = 0;
  for (const auto& c : items) {
    mismatches += c.match ? 0 : 1;
    out << (c.match ? "MATCH    " : "MISMATCH ") << c.id << ": " << c.description << "\n";
    out << "    claimed: " << c.claimed << "\n";
    out << "    derived: " << c.derived << "\n";
  }
  out << items.size() << " items, " << items.size() - mismatches << " MATCH, " << mismatches << " MISMATCH\n";
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Decompose, simulate and verify FMO Lindblad dynamics", "fmo-gks"};
  app.require_subcommand(1);

  std::string model_path, out_path, method = "exact", target;
  double t = 1.0;
  int steps = 100;
  int trotter_n = 256;

  auto* decompose_cmd = app.add_subcommand("decompose", "write the decomposition report as JSON");
  decompose_cmd->add_option("model", model_path, "model file")->required();
  decompose_cmd->add_option("--out", out_path, "report path (stdout if omitted)");

  auto* simulate_cmd = app.add_subcommand("simulate", "write a population/coherence trajectory as CSV");
  simulate_cmd->add_option("model", model_path, "model file")->required();
  simulate_cmd->add_option("--t", t, "final time");
  simulate_cmd->add_option("--steps", steps, "grid intervals");
  simulate_cmd->add_option("--method", method, "exact, rk4 or trotter");
  simulate_cmd->add_option("--trotter-n", trotter_n, "product-formula steps per grid point");
  simulate_cmd->add_option("--out", out_path, "CSV path (stdout if omitted)");

  int verify_steps = 64;
  auto* verify_cmd = app.add_subcommand("verify", "check identities, Trotter order and complete positivity");
  verify_cmd->add_option("model", model_path, "model file")->required();
  verify_cmd->add_option("--t", t, "evolution time");
  verify_cmd->add_option("--steps", verify_steps, "Trotter steps n (also runs 2n)");

  auto* synth_cmd = app.add_subcommand("synth", "emit a circuit for a target unitary");
  synth_cmd->add_option("--target", target, "eq16|eq24|fig1-drawn|fig1-prose|fig2-drawn|fig2-prose|derived:<k>|identity")
      ->required();
  synth_cmd->add_option("--model", model_path, "model for derived:<k> (default: dissipative preset)");
  synth_cmd->add_option("--out", out_path, "QASM path (stdout if omitted)");

  auto* check_cmd = app.add_subcommand("paper-check", "recompute the published values and compare");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitParse;
  }

  try {
    if (decompose_cmd->parsed()) return cmd_decompose(model_path, out_path, out);
    if (simulate_cmd->parsed()) return cmd_simulate(model_path, t, steps, method, trotter_n, out_path, out, err);
    if (verify_cmd->parsed()) return cmd_verify(model_path, t, verify_steps, out);
    if (synth_cmd->parsed()) return cmd_synth(target, model_path, out_path, out, err);
    if (check_cmd->parsed()) return cmd_paper_check(out);
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const InvalidChoice& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalidChoice;
  } catch (const std::domain_error& e) {
    err << "invariant failure: " << e.what() << "\n";
    return kExitInvariant;
  } catch (const std::logic_error& e) {
    err << "invariant failure: " << e.what() << "\n";
    return kExitInvariant;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitCheckFailed;
  }
  return kExitParse;
}

}  // namespace fmo
