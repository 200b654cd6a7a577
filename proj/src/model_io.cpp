#include "fmo/model_io.hpp"

#include "fmo/published.hpp"

#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

namespace fmo {

namespace {

using nlohmann::json;

constexpr int kDim = 8;

[[noreturn]] void fail(const std::string& field, const std::string& what) {
  throw ParseError("field '" + field + "': " + what);
}

double real_number(const json& j, const std::string& field) {
  if (!j.is_number()) fail(field, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) fail(field, "must be finite");
  return v;
}

Complex complex_number(const json& j, const std::string& field) {
  if (j.is_number()) return real_number(j, field);
  if (!j.is_array() || j.size() != 2) fail(field, "expected a number or [re, im]");
  return {real_number(j[0], field + "[0]"), real_number(j[1], field + "[1]")};
}

ComplexMatrix matrix8(const json& j, const std::string& field) {
  if (!j.is_array() || j.size() != kDim) fail(field, "expected 8 rows");
  ComplexMatrix m(kDim, kDim);
  for (int r = 0; r < kDim; ++r) {
    const std::string row = field + "[" + std::to_string(r) + "]";
    if (!j[r].is_array() || j[r].size() != kDim) fail(row, "expected 8 entries");
    for (int c = 0; c < kDim; ++c) m(r, c) = complex_number(j[r][c], row + "[" + std::to_string(c) + "]");
  }
  return m;
}

std::array<double, 7> rates7(const json& root, const std::string& field) {
  if (!root.contains(field)) fail(field, "missing");
  const json& j = root[field];
  if (!j.is_array() || j.size() != 7) fail(field, "expected 7 rates");
  std::array<double, 7> out{};
  for (std::size_t i = 0; i < 7; ++i) {
    const std::string name = field + "[" + std::to_string(i) + "]";
    out[i] = real_number(j[i], name);
    if (out[i] < 0.0) fail(name, "must be non-negative");
  }
  return out;
}

std::pair<int, int> line_col(std::string_view text, std::size_t byte) {
  int line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

json matrix_json(const ComplexMatrix& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
    rows.push_back(row);
  }
  return rows;
}

json sparse_matrix_json(const ComplexMatrix& m, double tol = 1e-14) {
  json out = json::array();
  for (Eigen::Index c = 0; c < m.cols(); ++c)
    for (Eigen::Index r = 0; r < m.rows(); ++r)
      if (std::abs(m(r, c)) > tol) out.push_back({r + 1, c + 1, m(r, c).real(), m(r, c).imag()});
  return out;
}

json sparse_vector_json(const ComplexVector& v, double tol = 1e-14) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (std::abs(v(i)) > tol) out.push_back({i + 1, v(i).real(), v(i).imag()});
  return out;
}

json sparse_vector_json(const RealVector& v, double tol = 1e-14) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (std::abs(v(i)) > tol) out.push_back({i + 1, v(i)});
  return out;
}

int dominant_site(const ComplexVector& a) {
  int best = 1;
  for (int j = 1; j <= 7; ++j)
    if (std::abs(a(j + 6)) > std::abs(a(best + 6))) best = j;
  return best;
}

std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

LindbladModel ModelFile::model() const {
  LindbladModel m = combine(fmo_dissipative(dissipative_rates), fmo_dephasing(dephasing_rates));
  m.hamiltonian = hamiltonian;
  if (pure_dissipative()) m.process = Process::dissipative;
  if (pure_dephasing()) m.process = Process::dephasing;
  return m;
}

GksForm ModelFile::gks(const OperatorBasis& basis) const {
  GksForm form = to_gks(model(), basis);
  for (const auto& e : gks_perturbation) form.gks(e.row - 1, e.col - 1) += e.value;
  return form;
}

bool ModelFile::pure_dissipative() const {
  return gks_perturbation.empty() && hamiltonian.norm() == 0.0 &&
         std::all_of(dephasing_rates.begin(), dephasing_rates.end(), [](double r) { return r == 0.0; }) &&
         std::any_of(dissipative_rates.begin(), dissipative_rates.end(), [](double r) { return r > 0.0; });
}

bool ModelFile::pure_dephasing() const {
  return gks_perturbation.empty() && hamiltonian.norm() == 0.0 &&
         std::all_of(dissipative_rates.begin(), dissipative_rates.end(), [](double r) { return r == 0.0; }) &&
         std::any_of(dephasing_rates.begin(), dephasing_rates.end(), [](double r) { return r > 0.0; });
}

ModelFile parse_model(std::string_view text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    const auto [line, col] = line_col(text, e.byte == 0 ? 0 : e.byte - 1);
    throw ParseError("line " + std::to_string(line) + ", column " + std::to_string(col) + ": malformed JSON");
  }
  if (!root.is_object()) throw ParseError("line 1: top level must be an object");

  ModelFile file;
  if (!root.contains("dim")) fail("dim", "missing");
  if (!root["dim"].is_number_integer() || root["dim"].get<long long>() != kDim) fail("dim", "must be 8");

  if (root.contains("hamiltonian")) {
    file.hamiltonian = matrix8(root["hamiltonian"], "hamiltonian");
    if (!is_hermitian(file.hamiltonian, 1e-10)) fail("hamiltonian", "must be Hermitian");
  }
  file.dissipative_rates = rates7(root, "dissipative_rates");
  file.dephasing_rates = rates7(root, "dephasing_rates");

  file.initial_state = site_state(1, kDim);
  if (root.contains("initial_state")) {
    const json& s = root["initial_state"];
    if (!s.is_object() || !s.contains("type") || !s["type"].is_string())
      fail("initial_state.type", "expected \"site\", \"ground\" or \"density\"");
    const std::string type = s["type"];
    if (type == "ground") {
      file.initial_state = ground_state(kDim);
    } else if (type == "site") {
      if (!s.contains("index") || !s["index"].is_number_integer()) fail("initial_state.index", "expected an integer");
      const auto index = s["index"].get<long long>();
      if (index < 1 || index > 7) fail("initial_state.index", "must be in 1..7");
      file.initial_state = site_state(static_cast<int>(index), kDim);
    } else if (type == "density") {
      if (!s.contains("matrix")) fail("initial_state.matrix", "missing");
      file.initial_state = matrix8(s["matrix"], "initial_state.matrix");
      try {
        validate_density(file.initial_state);
      } catch (const std::invalid_argument& e) {
        fail("initial_state.matrix", e.what());
      }
    } else {
      fail("initial_state.type", "unknown type '" + type + "'");
    }
  }

  if (root.contains("gks_perturbation")) {
    const json& list = root["gks_perturbation"];
    if (!list.is_array()) fail("gks_perturbation", "expected an array");
    ComplexMatrix delta = ComplexMatrix::Zero(63, 63);
    for (std::size_t i = 0; i < list.size(); ++i) {
      const std::string name = "gks_perturbation[" + std::to_string(i) + "]";
      const json& e = list[i];
      if (!e.is_array() || e.size() != 4 || !e[0].is_number_integer() || !e[1].is_number_integer())
        fail(name, "expected [row, col, re, im]");
      const auto row = e[0].get<long long>();
      const auto col = e[1].get<long long>();
      if (row < 1 || row > 63 || col < 1 || col > 63) fail(name, "indices must be in 1..63");
      const Complex value{real_number(e[2], name + "[2]"), real_number(e[3], name + "[3]")};
      file.gks_perturbation.push_back({static_cast<int>(row), static_cast<int>(col), value});
      delta(row - 1, col - 1) += value;
    }
    if (!is_hermitian(delta, 1e-12)) fail("gks_perturbation", "must be Hermitian");
  }
  return file;
}

ModelFile load_model(const std::filesystem::path& path) {
  std::string text;
  try {
    text = read_file(path);
  } catch (const std::runtime_error& e) {
    throw ParseError(e.what());
  }
  return parse_model(text);
}

nlohmann::json decomposition_report(const ModelFile& file, const GksForm& form,
                                    const std::vector<RankOneGenerator>& generators) {
  constexpr double kFlag = 1e-10;
  json report;
  report["dim"] = kDim;
  report["gks_matrix"] = sparse_matrix_json(form.gks);
  report["effective_hamiltonian"] = sparse_matrix_json(form.hamiltonian);
  report["rank"] = generators.size();
  report["tolerances"] = {{"phase", kFlag}, {"rotation", kFlag}, {"conjugation", kFlag}};

  json list = json::array();
  bool any_flagged = false;
  for (std::size_t k = 0; k < generators.size(); ++k) {
    const auto& g = generators[k];
    json item;
    item["index"] = k + 1;
    item["lambda"] = g.weight;
    item["a"] = sparse_vector_json(g.a);
    item["psi"] = g.psi;
    item["theta"] = g.theta;
    item["a_real"] = sparse_vector_json(g.real_part);
    item["a_imag"] = sparse_vector_json(g.imag_part);
    item["conjugator"] = matrix_json(g.conjugator);
    item["target_real"] = sparse_vector_json(g.target_real);
    item["target_imag"] = sparse_vector_json(g.target_imag);
    item["diagonal_real"] = std::vector<double>(g.diagonal_real.data(), g.diagonal_real.data() + g.diagonal_real.size());
    item["f1_target"] = g.f1_target;
    const bool flagged = g.phase_residual > kFlag || g.rotation_residual > kFlag || g.conjugation_residual > kFlag;
    any_flagged = any_flagged || flagged;
    item["residuals"] = {{"phase", g.phase_residual},
                         {"rotation", g.rotation_residual},
                         {"conjugation", g.conjugation_residual},
                         {"flagged", flagged}};
    if (file.pure_dissipative()) {
      const int site = dominant_site(g.a);
      const auto params = published_dissipative_params(site);
      const double lambda = 2.0 * file.dissipative_rates[static_cast<std::size_t>(site - 1)];
      item["published"] = {{"site", site},
                           {"lambda", lambda},
                           {"psi", 0.0},
                           {"theta", params.theta},
                           {"alpha_real", params.alpha_real},
                           {"alpha_imag", params.alpha_imag},
                           {"match", std::abs(lambda - g.weight) <= 1e-12 && std::abs(g.psi) <= 1e-12 &&
                                         std::abs(g.theta - params.theta) <= 1e-12}};
    }
    list.push_back(item);
  }
  report["generators"] = list;
  report["flagged"] = any_flagged;

  if (file.pure_dephasing()) {
    std::vector<double> claimed{4.0 * std::numbers::sqrt2 * file.dephasing_rates[0]};
    for (std::size_t k = 1; k < 7; ++k) claimed.push_back(4.0 * file.dephasing_rates[k]);
    std::sort(claimed.rbegin(), claimed.rend());
    std::vector<double> derived;
    for (const auto& g : generators) derived.push_back(g.weight);
    bool match = claimed.size() == derived.size();
    for (std::size_t i = 0; match && i < claimed.size(); ++i) match = std::abs(claimed[i] - derived[i]) <= 1e-10;
    json params = json::array();
    for (int k = 1; k <= 7; ++k) {
      const auto p = published_dephasing_params(k);
      params.push_back({{"generator", k}, {"theta", p.theta}, {"alpha_real", p.alpha_real}, {"alpha_imag", p.alpha_imag}});
    }
    report["published"] = {{"lambda_claimed", claimed}, {"lambda_derived", derived}, {"match", match}, {"params", params}};
  }
  return report;
}

std::string trajectory_csv(const Trajectory& traj) {
  std::ostringstream os;
  os << "time,p_ground";
  for (int j = 1; j <= 7; ++j) os << ",p_site" << j;
  for (int j = 1; j <= 7; ++j) os << ",coh_" << j;
  os << '\n';
  for (std::size_t r = 0; r < traj.times.size(); ++r) {
    os << fmt17(traj.times[r]);
    for (double p : traj.populations[r]) os << ',' << fmt17(p);
    for (double c : traj.coherences[r]) os << ',' << fmt17(c);
    os << '\n';
  }
  return os.str();
}

Trajectory parse_trajectory_csv(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line) || line.rfind("time,p_ground", 0) != 0) throw ParseError("line 1: missing CSV header");
  Trajectory traj;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<double> values;
    std::istringstream fields(line);
    std::string cell;
    while (std::getline(fields, cell, ',')) {
      char* end = nullptr;
      const double v = std::strtod(cell.c_str(), &end);
      if (end == cell.c_str() || *end != '\0') throw ParseError("line " + std::to_string(line_no) + ": bad number");
      values.push_back(v);
    }
    if (values.size() != 16) throw ParseError("line " + std::to_string(line_no) + ": expected 16 columns");
    traj.times.push_back(values[0]);
    traj.populations.emplace_back(values.begin() + 1, values.begin() + 9);
    traj.coherences.emplace_back(values.begin() + 9, values.end());
  }
  return traj;
}

void write_file_atomic(const std::filesystem::path& path, std::string_view contents) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) throw std::runtime_error("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace fmo
