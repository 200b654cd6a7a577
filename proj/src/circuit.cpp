#include "fmo/circuit.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <regex>
#include <sstream>
#include <stdexcept>

namespace fmo {

namespace {

constexpr int kStates = 1 << kQubits;

int bit(int state, int qubit) { return (state >> (kQubits - 1 - qubit)) & 1; }

std::string format_angle(double angle) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", angle);
  return buf;
}

const char* kind_name(GateKind kind) {
  switch (kind) {
    case GateKind::x: return "x";
    case GateKind::ry: return "ry";
    case GateKind::rz: return "rz";
    case GateKind::phase: return "p";
  }
  return "?";
}

}  // namespace

Gate::Gate(GateKind kind, int target, double angle, std::vector<Control> controls)
    : kind_(kind), target_(target), angle_(kind == GateKind::x ? 0.0 : angle), controls_(std::move(controls)) {
  if (target < 0 || target >= kQubits) throw std::invalid_argument("gate: target qubit out of range");
  if (!std::isfinite(angle_)) throw std::invalid_argument("gate: non-finite angle");
  std::vector<int> seen{target};
  for (const auto& c : controls_) {
    if (c.qubit < 0 || c.qubit >= kQubits) throw std::invalid_argument("gate: control qubit out of range");
    if (std::find(seen.begin(), seen.end(), c.qubit) != seen.end())
      throw std::invalid_argument("gate: qubits must be distinct");
    seen.push_back(c.qubit);
  }
}

Eigen::Matrix2cd Gate::local() const {
  Eigen::Matrix2cd m;
  const double h = angle_ / 2.0;
  switch (kind_) {
    case GateKind::x: m << 0.0, 1.0, 1.0, 0.0; break;
    case GateKind::ry: m << std::cos(h), -std::sin(h), std::sin(h), std::cos(h); break;
    case GateKind::rz: m << std::polar(1.0, -h), 0.0, 0.0, std::polar(1.0, h); break;
    case GateKind::phase: m << 1.0, 0.0, 0.0, std::polar(1.0, angle_); break;
  }
  return m;
}

ComplexMatrix Gate::matrix() const {
  const Eigen::Matrix2cd u = local();
  ComplexMatrix m = ComplexMatrix::Zero(kStates, kStates);
  const int mask = 1 << (kQubits - 1 - target_);
  for (int s = 0; s < kStates; ++s) {
    const bool fires = std::all_of(controls_.begin(), controls_.end(),
                                   [s](const Control& c) { return bit(s, c.qubit) == static_cast<int>(c.polarity); });
    if (!fires) {
      m(s, s) = 1.0;
      continue;
    }
    const int in = bit(s, target_);
    for (int out = 0; out < 2; ++out) m(out ? (s | mask) : (s & ~mask), s) = u(out, in);
  }
  return m;
}

Gate Gate::inverse() const { return Gate(kind_, target_, -angle_, controls_); }

Gate x_gate(int target) { return Gate(GateKind::x, target); }
Gate ry_gate(int target, double angle) { return Gate(GateKind::ry, target, angle); }
Gate rz_gate(int target, double angle) { return Gate(GateKind::rz, target, angle); }
Gate phase_gate(int target, double angle) { return Gate(GateKind::phase, target, angle); }
Gate cnot(int control, int target) { return Gate(GateKind::x, target, 0.0, {{control, true}}); }

std::size_t Circuit::cnot_count() const {
  return static_cast<std::size_t>(std::count_if(gates.begin(), gates.end(), [](const Gate& g) { return g.is_cnot(); }));
}

ComplexMatrix evaluate(const Circuit& c) {
  ComplexMatrix m = ComplexMatrix::Identity(kStates, kStates);
  for (const auto& g : c.gates) m = (g.matrix() * m).eval();
  return m;
}

double phase_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
  // ‖A − e^{iφ}B‖² = ‖A‖² + ‖B‖² − 2 Re(e^{iφ} Tr(A†B)) is smallest at
  // e^{iφ} = conj(Tr(A†B))/|Tr(A†B)|. The residual is formed explicitly since the
  // closed form cancels to sqrt(roundoff).
  const Complex z = hs_inner(a, b);
  const Complex phase = std::abs(z) > 0.0 ? std::conj(z) / std::abs(z) : Complex(1.0);
  return (a - phase * b).norm();
}

double verify_equiv(const Circuit& c, const ComplexMatrix& u) { return phase_distance(evaluate(c), u); }

namespace {

constexpr std::array<int, kStates> kGray{0, 1, 3, 2, 6, 7, 5, 4};

std::vector<Control> controls_except(int target, int state) {
  std::vector<Control> out;
  for (int q = 0; q < kQubits; ++q)
    if (q != target) out.push_back({q, bit(state, q) == 1});
  return out;
}

// v = RZ(β) RY(γ) RZ(δ) for v ∈ SU(2); gates appended in time order.
void append_zyz(Circuit& c, const Eigen::Matrix2cd& v, int target, const std::vector<Control>& controls) {
  constexpr double eps = 1e-14;
  const double gamma = 2.0 * std::atan2(std::abs(v(1, 0)), std::abs(v(0, 0)));
  const double sum = std::abs(v(0, 0)) > eps ? -2.0 * std::arg(v(0, 0)) : 0.0;
  const double diff = std::abs(v(1, 0)) > eps ? 2.0 * std::arg(v(1, 0)) : 0.0;
  const double beta = (sum + diff) / 2.0;
  const double delta = (sum - diff) / 2.0;
  if (std::abs(delta) > eps) c.gates.emplace_back(GateKind::rz, target, delta, controls);
  if (std::abs(gamma) > eps) c.gates.emplace_back(GateKind::ry, target, gamma, controls);
  if (std::abs(beta) > eps) c.gates.emplace_back(GateKind::rz, target, beta, controls);
}

// diag(e^{iφ_s}) up to global phase, as RZ gates with a cascade of controls.
void append_diagonal(Circuit& c, std::vector<double> phases) {
  constexpr double eps = 1e-14;
  for (int q = kQubits - 1; q >= 0; --q) {
    const int width = q;  // number of more-significant qubits acting as controls
    std::vector<double> next(phases.size() / 2);
    for (std::size_t prefix = 0; prefix < next.size(); ++prefix) {
      const double lo = phases[2 * prefix];
      const double hi = phases[2 * prefix + 1];
      next[prefix] = (lo + hi) / 2.0;
      if (std::abs(hi - lo) <= eps) continue;
      std::vector<Control> controls;
      for (int k = 0; k < width; ++k)
        controls.push_back({k, ((prefix >> (width - 1 - k)) & 1U) == 1U});
      c.gates.emplace_back(GateKind::rz, q, hi - lo, controls);
    }
    phases = std::move(next);
  }
}

}  // namespace

Circuit synthesize_two_level(const ComplexMatrix& u) {
  if (u.rows() != kStates || u.cols() != kStates) throw std::invalid_argument("synthesize_two_level: expected 8x8");
  if (!u.allFinite() || !is_unitary(u, 1e-10)) throw std::invalid_argument("synthesize_two_level: matrix is not unitary");

  ComplexMatrix v(kStates, kStates);
  for (int r = 0; r < kStates; ++r)
    for (int col = 0; col < kStates; ++col) v(r, col) = u(kGray[r], kGray[col]);

  struct TwoLevel {
    int lo, hi;
    Eigen::Matrix2cd g;
  };
  std::vector<TwoLevel> factors;
  for (int col = 0; col < kStates - 1; ++col) {
    for (int r = kStates - 1; r > col; --r) {
      const Complex a = v(r - 1, col);
      const Complex b = v(r, col);
      if (std::abs(b) < 1e-15) continue;
      const double n = std::hypot(std::abs(a), std::abs(b));
      Eigen::Matrix2cd g;
      g << std::conj(a) / n, std::conj(b) / n, -b / n, a / n;
      const Eigen::Matrix<Complex, 2, Eigen::Dynamic> rows = v.middleRows(r - 1, 2);
      v.middleRows(r - 1, 2) = g * rows;
      factors.push_back({kGray[r - 1], kGray[r], g});
    }
  }

  Circuit c;
  std::vector<double> phases(kStates);
  for (int r = 0; r < kStates; ++r) phases[kGray[r]] = std::arg(v(r, r));
  append_diagonal(c, phases);

  // u = G_1† ⋯ G_k† D, so G_k† acts first after D.
  for (auto it = factors.rbegin(); it != factors.rend(); ++it) {
    const int flipped = it->lo ^ it->hi;
    int target = 0;
    while (bit(flipped, target) == 0) ++target;
    Eigen::Matrix2cd local = it->g.adjoint();
    if (bit(it->lo, target) == 1) {
      Eigen::Matrix2cd x;
      x << 0.0, 1.0, 1.0, 0.0;
      local = x * local * x;
    }
    append_zyz(c, local, target, controls_except(target, it->lo));
  }
  return c;
}

namespace {

void lower(const Gate& g, std::vector<Gate>& out) {
  const auto& controls = g.controls();
  if (controls.empty() || g.is_cnot()) {
    out.push_back(g);
    return;
  }
  std::vector<int> negated;
  std::vector<Control> positive;
  for (const auto& c : controls) {
    if (!c.polarity) negated.push_back(c.qubit);
    positive.push_back({c.qubit, true});
  }
  for (int q : negated) out.push_back(x_gate(q));

  const int t = g.target();
  const double angle = g.angle();
  if (positive.size() == 1) {
    const int c = positive[0].qubit;
    switch (g.kind()) {
      case GateKind::x: out.push_back(cnot(c, t)); break;
      case GateKind::ry:
      case GateKind::rz:
        out.emplace_back(g.kind(), t, angle / 2.0);
        out.push_back(cnot(c, t));
        out.emplace_back(g.kind(), t, -angle / 2.0);
        out.push_back(cnot(c, t));
        break;
      case GateKind::phase:
        out.push_back(phase_gate(c, angle / 2.0));
        out.push_back(cnot(c, t));
        out.push_back(phase_gate(t, -angle / 2.0));
        out.push_back(cnot(c, t));
        out.push_back(phase_gate(t, angle / 2.0));
        break;
    }
  } else if (g.kind() == GateKind::x) {
    // X = RY(π/2) Z RY(−π/2) with Z = P(π).
    out.push_back(ry_gate(t, -std::numbers::pi / 2.0));
    lower(Gate(GateKind::phase, t, std::numbers::pi, positive), out);
    out.push_back(ry_gate(t, std::numbers::pi / 2.0));
  } else {
    // C²(W²) = C_{c1}(W) · CX(c1,c2) · C_{c2}(W†) · CX(c1,c2) · C_{c2}(W), time order reversed.
    const int c1 = positive[0].qubit;
    const int c2 = positive[1].qubit;
    lower(Gate(g.kind(), t, angle / 2.0, {{c2, true}}), out);
    out.push_back(cnot(c1, c2));
    lower(Gate(g.kind(), t, -angle / 2.0, {{c2, true}}), out);
    out.push_back(cnot(c1, c2));
    lower(Gate(g.kind(), t, angle / 2.0, {{c1, true}}), out);
  }

  for (int q : negated) out.push_back(x_gate(q));
}

}  // namespace

Circuit lower_to_cnot(const Circuit& c) {
  Circuit out;
  for (const auto& g : c.gates) lower(g, out.gates);
  return out;
}

Circuit fig1_drawn() {
  const double a = -std::numbers::pi / 2.0;
  return {{cnot(1, 0), cnot(1, 2), Gate(GateKind::ry, 2, a, {{0, true}, {1, true}}),
           Gate(GateKind::x, 2, 0.0, {{0, true}, {1, true}})}};
}

Circuit fig1_prose() {
  const double a = -std::numbers::pi / 2.0;
  return {{cnot(1, 0), cnot(1, 2), Gate(GateKind::ry, 2, a, {{0, false}, {1, false}}),
           Gate(GateKind::x, 2, 0.0, {{0, true}, {1, false}})}};
}

Circuit fig2_drawn() {
  const double a = -std::numbers::pi / 2.0;
  return {{Gate(GateKind::ry, 2, a, {{0, true}, {1, true}}), cnot(1, 2), cnot(1, 0),
           Gate(GateKind::x, 2, 0.0, {{0, true}, {1, true}})}};
}

Circuit fig2_prose() {
  const double a = -std::numbers::pi / 2.0;
  return {{Gate(GateKind::ry, 2, a, {{0, false}, {1, true}}), cnot(1, 2), cnot(1, 0),
           Gate(GateKind::x, 2, 0.0, {{0, true}, {1, false}})}};
}

std::string to_qasm(const Circuit& c) {
  std::ostringstream os;
  os << "// 3 qubits, q[0] most significant: index = 4*q[0] + 2*q[1] + q[2]\n";
  for (const auto& g : c.gates) {
    const bool has_angle = g.kind() != GateKind::x;
    const std::string angle = has_angle ? "(" + format_angle(g.angle()) + ")" : "";
    if (g.controls().empty()) {
      os << kind_name(g.kind()) << angle << " q[" << g.target() << "];\n";
    } else if (g.is_cnot()) {
      os << "cx q[" << g.controls()[0].qubit << "],q[" << g.target() << "];\n";
    } else {
      os << 'c' << kind_name(g.kind()) << angle << " ctrl(";
      for (const auto& ctl : g.controls()) os << (ctl.polarity ? '1' : '0');
      os << ") ";
      for (std::size_t i = 0; i < g.controls().size(); ++i)
        os << (i ? "," : "") << "q[" << g.controls()[i].qubit << "]";
      os << " -> q[" << g.target() << "];\n";
    }
  }
  return os.str();
}

namespace {

GateKind parse_kind(const std::string& name) {
  if (name == "x") return GateKind::x;
  if (name == "ry") return GateKind::ry;
  if (name == "rz") return GateKind::rz;
  return GateKind::phase;
}

double parse_angle(const std::string& text, bool required, int line) {
  if (text.empty()) {
    if (required) throw std::invalid_argument("qasm line " + std::to_string(line) + ": missing angle");
    return 0.0;
  }
  if (!required) throw std::invalid_argument("qasm line " + std::to_string(line) + ": x takes no angle");
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size()) throw std::invalid_argument("qasm line " + std::to_string(line) + ": bad angle '" + text + "'");
  return value;
}

}  // namespace

Circuit parse_qasm(std::string_view text) {
  static const std::regex single(R"(^(x|ry|rz|p)(?:\(([^)]*)\))?\s+q\[(\d+)\]\s*;$)");
  static const std::regex plain_cx(R"(^cx\s+q\[(\d+)\]\s*,\s*q\[(\d+)\]\s*;$)");
  static const std::regex controlled(
      R"(^c(x|ry|rz|p)(?:\(([^)]*)\))?\s+ctrl\(([01]+)\)\s+(q\[\d+\](?:\s*,\s*q\[\d+\])*)\s*->\s*q\[(\d+)\]\s*;$)");
  static const std::regex qubit_ref(R"(q\[(\d+)\])");

  Circuit c;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    if (const auto pos = raw.find("//"); pos != std::string::npos) raw.erase(pos);
    const auto first = raw.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto last = raw.find_last_not_of(" \t\r");
    const std::string line = raw.substr(first, last - first + 1);

    std::smatch m;
    try {
      if (std::regex_match(line, m, plain_cx)) {
        c.gates.push_back(cnot(std::stoi(m[1]), std::stoi(m[2])));
      } else if (std::regex_match(line, m, single)) {
        const GateKind kind = parse_kind(m[1]);
        c.gates.emplace_back(kind, std::stoi(m[3]), parse_angle(m[2], kind != GateKind::x, line_no));
      } else if (std::regex_match(line, m, controlled)) {
        const GateKind kind = parse_kind(m[1]);
        const double angle = parse_angle(m[2], kind != GateKind::x, line_no);
        const std::string bits = m[3];
        const std::string list = m[4];
        std::vector<Control> controls;
        for (auto it = std::sregex_iterator(list.begin(), list.end(), qubit_ref); it != std::sregex_iterator(); ++it)
          controls.push_back({std::stoi((*it)[1]), false});
        if (controls.size() != bits.size())
          throw std::invalid_argument("control bit count does not match control list");
        for (std::size_t i = 0; i < bits.size(); ++i) controls[i].polarity = bits[i] == '1';
        c.gates.emplace_back(kind, std::stoi(m[5]), angle, std::move(controls));
      } else {
        throw std::invalid_argument("unrecognised statement '" + line + "'");
      }
    } catch (const std::invalid_argument& e) {
      const std::string what = e.what();
      if (what.rfind("qasm line", 0) == 0) throw;
      throw std::invalid_argument("qasm line " + std::to_string(line_no) + ": " + what);
    } catch (const std::out_of_range&) {
      throw std::invalid_argument("qasm line " + std::to_string(line_no) + ": index out of range");
    }
  }
  return c;
}

}  // namespace fmo
