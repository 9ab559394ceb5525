// SPDX-License-Identifier: Apache-2.0
#include "seriation/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "seriation/errors.hpp"

namespace seriation {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

template <typename T>
std::vector<T> split_numbers(std::string_view line, Index line_no) {
  std::vector<T> out;
  std::size_t start = 0;
  while (start <= line.size()) {
    const std::size_t comma = std::min(line.find(',', start), line.size());
    const std::string_view field = trim(line.substr(start, comma - start));
    T value{};
    const auto res = std::from_chars(field.data(), field.data() + field.size(), value);
    if (field.empty() || res.ec != std::errc{} || res.ptr != field.data() + field.size()) {
      throw InvalidInput("line " + std::to_string(line_no) + ": cannot parse '" + std::string(field) + "'");
    }
    out.push_back(value);
    start = comma + 1;
  }
  return out;
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  return in;
}

}  // namespace

SymMatrixd parse_matrix_csv(std::istream& in, bool symmetrize) {
  std::vector<std::vector<double>> rows;
  std::string line;
  Index line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    rows.push_back(split_numbers<double>(trim(line), line_no));
  }
  const auto n = static_cast<Index>(rows.size());
  if (n == 0) throw InvalidInput("matrix CSV is empty");
  Matrix<double> a(n, n);
  for (Index i = 0; i < n; ++i) {
    const auto& row = rows[static_cast<std::size_t>(i)];
    if (static_cast<Index>(row.size()) != n) {
      throw DimensionMismatch("row " + std::to_string(i + 1) + " has " + std::to_string(row.size()) +
                              " entries, expected " + std::to_string(n));
    }
    for (Index j = 0; j < n; ++j) a(i, j) = row[static_cast<std::size_t>(j)];
  }
  if (!a.allFinite()) throw InvalidInput("matrix contains non-finite values");
  if (symmetrize) return SymMatrixd(Matrix<double>(0.5 * (a + a.transpose())));
  const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  const double asym = (a - a.transpose()).cwiseAbs().maxCoeff();
  if (asym > kAsymmetryTolerance * scale) {
    throw InvalidInput("matrix is not symmetric (max |A - A^T| = " + format_double(asym) +
                       "); pass --symmetrize to average A and A^T");
  }
  return SymMatrixd(a);
}

SymMatrixd read_matrix_csv(const std::filesystem::path& path, bool symmetrize) {
  auto in = open_input(path);
  return parse_matrix_csv(in, symmetrize);
}

void write_matrix_csv(std::ostream& out, const SymMatrixd& m) {
  for (Index i = 0; i < m.size(); ++i) {
    for (Index j = 0; j < m.size(); ++j) {
      if (j) out << ',';
      out << format_double(m(i, j));
    }
    out << '\n';
  }
  if (!out) throw IoError("failed writing matrix CSV");
}

std::vector<Permutation> parse_permutations_csv(std::istream& in) {
  std::vector<Permutation> out;
  std::string line;
  Index line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto images = split_numbers<Index>(trim(line), line_no);
    out.push_back(Permutation::from_one_based(images));
  }
  return out;
}

std::vector<Permutation> read_permutations_csv(const std::filesystem::path& path) {
  auto in = open_input(path);
  return parse_permutations_csv(in);
}

void write_permutation_csv(std::ostream& out, const Permutation& p) {
  const auto images = p.one_based();
  for (std::size_t i = 0; i < images.size(); ++i) out << (i ? "," : "") << images[i];
  out << '\n';
}

Json to_json(const ToeplitzSignal& s) { return Json{{"n", s.size()}, {"theta", s.theta}}; }

ToeplitzSignal signal_from_json(const Json& j) {
  ToeplitzSignal s{j.at("theta").get<std::vector<double>>()};
  if (j.contains("n") && j.at("n").get<Index>() != s.size()) {
    throw DimensionMismatch("signal n does not match theta length");
  }
  return s;
}

Json to_json(const PackingSet& s) {
  Json perms = Json::array();
  for (const auto& p : s.perms) perms.push_back(p.one_based());
  return Json{{"n", s.n}, {"d", s.min_hamming}, {"perms", perms}};
}

PackingSet packing_from_json(const Json& j) {
  PackingSet s{j.at("n").get<Index>(), j.at("d").get<Index>(), {}};
  for (const auto& row : j.at("perms")) {
    s.perms.push_back(Permutation::from_one_based(row.get<std::vector<Index>>()));
  }
  return s;
}

Json to_json(const NoiseSpec& s) {
  return Json{{"family", to_string(s.family)}, {"sigma", s.sigma}, {"seed", s.seed}};
}

NoiseSpec noise_spec_from_json(const Json& j) {
  return NoiseSpec{parse_noise_family(j.at("family").get<std::string>()), j.at("sigma").get<double>(),
                   j.value("seed", std::uint64_t{0})};
}

Json to_json(const Diagnostics& d) {
  return std::visit(
      [](const auto& v) -> Json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, SortingDiagnostics>) {
          return Json{{"type", "adaptive_sort"},
                      {"start", v.start + 1},
                      {"start_margin", v.start_margin},
                      {"min_step_margin", v.min_step_margin},
                      {"ties", v.ties}};
        } else if constexpr (std::is_same_v<T, SpectralDiagnostics>) {
          return Json{{"type", "spectral"},
                      {"fiedler_value", v.fiedler_value},
                      {"spectral_gap", v.spectral_gap},
                      {"min_component_gap", v.min_component_gap},
                      {"distinct_components", v.distinct_components},
                      {"degenerate", v.degenerate}};
        } else {
          return Json{{"type", "lse"}, {"objective", v.objective}, {"candidates", v.candidates}};
        }
      },
      d);
}

Json to_json(const ReorderResult& r) {
  return Json{{"perm", r.perm.one_based()},
              {"diagnostics", to_json(r.diagnostics)},
              {"canonical", canonicalize_up_to_reversal(r).perm.one_based()}};
}

Json to_json(const ExperimentGrid& g) {
  Json estimators = Json::array();
  for (Estimator e : g.estimators) estimators.push_back(to_string(e));
  Json j{{"setting", g.setting},
         {"n", g.n},
         {"sigma_grid", g.sigma_grid},
         {"family", to_string(g.family)},
         {"replicates", g.replicates},
         {"estimators", estimators},
         {"base_seed", g.base_seed}};
  if (g.custom_signal) j["signal"] = to_json(*g.custom_signal);
  return j;
}

ExperimentGrid grid_from_json(const Json& j) {
  ExperimentGrid g;
  const ExperimentGrid defaults;
  try {
    g.setting = j.value("setting", defaults.setting);
    g.n = j.at("n").get<Index>();
    g.sigma_grid = j.at("sigma_grid").get<std::vector<double>>();
    g.family = parse_noise_family(j.value("family", std::string("gaussian")));
    g.replicates = j.value("replicates", defaults.replicates);
    if (j.contains("estimators")) {
      g.estimators.clear();
      for (const auto& e : j.at("estimators")) g.estimators.push_back(parse_estimator(e.get<std::string>()));
    }
    g.base_seed = j.value("base_seed", defaults.base_seed);
    if (j.contains("signal")) g.custom_signal = signal_from_json(j.at("signal"));
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("experiment grid: ") + e.what());
  }
  return g;
}

Json to_json(const CellResult& c) {
  return Json{{"setting", c.setting},
              {"n", c.n},
              {"sigma", c.sigma},
              {"family", to_string(c.family)},
              {"estimator", to_string(c.estimator)},
              {"replicates", c.replicates},
              {"failures", c.failures},
              {"failure_rate", c.failure_rate},
              {"mean_runtime_ms", c.mean_runtime_ms},
              {"error_count", c.error_count}};
}

CellResult cell_from_json(const Json& j) {
  CellResult c;
  c.setting = j.at("setting").get<int>();
  c.n = j.at("n").get<Index>();
  c.sigma = j.at("sigma").get<double>();
  c.family = parse_noise_family(j.at("family").get<std::string>());
  c.estimator = parse_estimator(j.at("estimator").get<std::string>());
  c.replicates = j.at("replicates").get<Index>();
  c.failures = j.at("failures").get<Index>();
  c.failure_rate = j.at("failure_rate").get<double>();
  c.mean_runtime_ms = j.at("mean_runtime_ms").get<double>();
  c.error_count = j.at("error_count").get<Index>();
  return c;
}

Json results_to_json(const ExperimentGrid& g, const std::vector<CellResult>& results) {
  Json cells = Json::array();
  for (const auto& c : results) cells.push_back(to_json(c));
  return Json{{"grid", to_json(g)}, {"results", cells}};
}

void results_from_json(const Json& j, ExperimentGrid& g, std::vector<CellResult>& results) {
  g = grid_from_json(j.at("grid"));
  results.clear();
  for (const auto& c : j.at("results")) results.push_back(cell_from_json(c));
}

namespace {

Json finite_or_null(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

}  // namespace

Json to_json(const LowerBoundReport& r) {
  Json params = Json::object();
  for (const auto& [k, v] : r.parameters) params[k] = finite_or_null(v);
  Json rates = Json::object();
  for (const auto& [k, v] : r.estimator_failure_rates) rates[k] = v;
  Json j{{"construction", r.construction},
         {"parameters", params},
         {"measured_rho_star", finite_or_null(r.measured_rho_star)},
         {"degenerate", r.degenerate},
         {"passed", r.passed},
         {"estimator_failure_rates", rates},
         {"notes", r.notes}};
  if (r.has_interval) j["predicted_interval"] = {r.predicted_low, r.predicted_high};
  return j;
}

Json to_json(const Lemma7Report& r) {
  return Json{{"n", r.n},
              {"delta", r.delta},
              {"max_value_error", r.max_value_error},
              {"max_vector_error", r.max_vector_error},
              {"passed", r.passed}};
}

Json to_json(const NoiselessReport& r) {
  Json skipped = Json::object();
  for (const auto& [k, v] : r.ss_skipped_by_setting) skipped[std::to_string(k)] = v;
  return Json{{"cases", r.cases},
              {"as_failures", r.as_failures},
              {"ss_failures", r.ss_failures},
              {"ss_skipped", r.ss_skipped},
              {"ss_errors", r.ss_errors},
              {"ss_skipped_by_setting", skipped}};
}

Json read_json_file(const std::filesystem::path& path) {
  auto in = open_input(path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(path.string() + ": " + e.what());
  }
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << text;
  if (!out) throw IoError("failed writing " + path.string());
}

}  // namespace seriation
