// Three-qubit circuit IR, evaluation, exact two-level synthesis and a
// QASM-style text format.
//
// Qubit 0 is q1 (most significant): basis index = 4·q1 + 2·q2 + q3, so
// |000⟩ is Hilbert index 0 (the ground state).
#pragma once

#include "fmo/linalg.hpp"

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace fmo {

inline constexpr int kQubits = 3;

enum class GateKind { x, ry, rz, phase };

struct Control {
  int qubit = 0;
  bool polarity = true;  // fires on |1⟩ when true, on |0⟩ when false

  friend bool operator==(const Control&, const Control&) = default;
};

/// Single-qubit gate on `target`, optionally controlled. A CNOT is an X with
/// one positive control. Validated on construction.
class Gate {
 public:
  Gate(GateKind kind, int target, double angle = 0.0, std::vector<Control> controls = {});

  GateKind kind() const { return kind_; }
  int target() const { return target_; }
  double angle() const { return angle_; }
  const std::vector<Control>& controls() const { return controls_; }

  bool is_cnot() const { return kind_ == GateKind::x && controls_.size() == 1 && controls_[0].polarity; }

  /// 2×2 action on the target.
  Eigen::Matrix2cd local() const;
  /// Full 8×8 matrix.
  ComplexMatrix matrix() const;
  Gate inverse() const;

  friend bool operator==(const Gate&, const Gate&) = default;

 private:
  GateKind kind_;
  int target_;
  double angle_;
  std::vector<Control> controls_;
};

Gate x_gate(int target);
Gate ry_gate(int target, double angle);
Gate rz_gate(int target, double angle);
Gate phase_gate(int target, double angle);
Gate cnot(int control, int target);

/// Ordered gate list; the first gate acts first.
struct Circuit {
  std::vector<Gate> gates;

  std::size_t size() const { return gates.size(); }
  std::size_t cnot_count() const;
};

/// M_last ⋯ M_first.
ComplexMatrix evaluate(const Circuit& c);

/// min_φ ‖evaluate(c) − e^{iφ}U‖_F.
double phase_distance(const ComplexMatrix& a, const ComplexMatrix& b);
double verify_equiv(const Circuit& c, const ComplexMatrix& u);

/// Givens elimination over Gray-code-adjacent basis pairs, so every
/// two-level factor is a doubly-controlled single-qubit rotation. Exact up
/// to global phase. Throws std::invalid_argument for non-unitary input.
Circuit synthesize_two_level(const ComplexMatrix& u);

/// Rewrites controlled gates into single-qubit gates plus CNOTs.
Circuit lower_to_cnot(const Circuit& c);

/// Transcriptions of the two published circuits. "drawn" follows the
/// figures' control dots; "prose" follows the accompanying condition lists.
Circuit fig1_drawn();
Circuit fig1_prose();
Circuit fig2_drawn();
Circuit fig2_prose();

/// One gate per line; see README for the grammar.
std::string to_qasm(const Circuit& c);
/// Throws std::invalid_argument with the offending line number.
Circuit parse_qasm(std::string_view text);

}  // namespace fmo
