// Model files, decomposition reports and trajectory CSV.
#pragma once

#include "fmo/channel.hpp"

#include <json.hpp>

#include <array>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

namespace fmo {

/// Malformed or invalid model file; message names the line or field.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GksEntry {
  int row = 0;  // 1-based
  int col = 0;
  Complex value;
};

struct ModelFile {
  ComplexMatrix hamiltonian = ComplexMatrix::Zero(8, 8);
  std::array<double, 7> dissipative_rates{};
  std::array<double, 7> dephasing_rates{};
  ComplexMatrix initial_state;
  std::vector<GksEntry> gks_perturbation;  // added to A after conversion

  LindbladModel model() const;
  GksForm gks(const OperatorBasis& basis) const;
  bool pure_dissipative() const;
  bool pure_dephasing() const;
};

/// Schema:
///   dim                 must be 8
///   hamiltonian         optional 8×8, entries number or [re, im]
///   dissipative_rates   7 reals ≥ 0
///   dephasing_rates     7 reals ≥ 0
///   initial_state       {"type":"site","index":1..7} | {"type":"ground"} |
///                       {"type":"density","matrix": 8×8}; default site 1
///   gks_perturbation    optional [[row, col, re, im], ...], 1-based
ModelFile parse_model(std::string_view text);
ModelFile load_model(const std::filesystem::path& path);

nlohmann::json decomposition_report(const ModelFile& file, const GksForm& form,
                                    const std::vector<RankOneGenerator>& generators);

/// time,p_ground,p_site1..p_site7,coh_1..coh_7 at 17 significant digits.
std::string trajectory_csv(const Trajectory& traj);
Trajectory parse_trajectory_csv(std::string_view text);

/// Writes to a sibling temporary and renames over `path`.
void write_file_atomic(const std::filesystem::path& path, std::string_view contents);
std::string read_file(const std::filesystem::path& path);

}  // namespace fmo
