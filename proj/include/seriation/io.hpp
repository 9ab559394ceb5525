// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "seriation/bench.hpp"
#include "seriation/estimators.hpp"
#include "seriation/noise.hpp"
#include "seriation/permutation.hpp"
#include "seriation/signal.hpp"
#include "seriation/sym_matrix.hpp"

namespace seriation {

using Json = nlohmann::ordered_json;

/// Relative asymmetry (max |A - A^T| / max(1, max |A|)) above which a CSV
/// matrix is rejected.
inline constexpr double kAsymmetryTolerance = 1e-9;

/// n rows of n comma-separated numbers. With `symmetrize` the matrix is
/// replaced by (A + A^T) / 2; otherwise asymmetry beyond the tolerance throws
/// InvalidInput and the upper triangle is mirrored.
SymMatrixd parse_matrix_csv(std::istream& in, bool symmetrize = false);
SymMatrixd read_matrix_csv(const std::filesystem::path& path, bool symmetrize = false);
void write_matrix_csv(std::ostream& out, const SymMatrixd& m);

/// One permutation per line, 1-based images, comma separated.
std::vector<Permutation> parse_permutations_csv(std::istream& in);
std::vector<Permutation> read_permutations_csv(const std::filesystem::path& path);
void write_permutation_csv(std::ostream& out, const Permutation& p);

Json to_json(const ToeplitzSignal& s);
ToeplitzSignal signal_from_json(const Json& j);

Json to_json(const PackingSet& s);
PackingSet packing_from_json(const Json& j);

Json to_json(const NoiseSpec& s);
NoiseSpec noise_spec_from_json(const Json& j);

Json to_json(const Diagnostics& d);

/// {perm, diagnostics, canonical}, permutations 1-based.
Json to_json(const ReorderResult& r);

/// Keys: setting, n, sigma_grid, family, replicates, estimators, base_seed,
/// and optionally signal ({n, theta}) for setting 0.
Json to_json(const ExperimentGrid& g);
ExperimentGrid grid_from_json(const Json& j);

Json to_json(const CellResult& c);
CellResult cell_from_json(const Json& j);

/// {grid, results}.
Json results_to_json(const ExperimentGrid& g, const std::vector<CellResult>& results);
void results_from_json(const Json& j, ExperimentGrid& g, std::vector<CellResult>& results);

Json to_json(const LowerBoundReport& r);
Json to_json(const Lemma7Report& r);
Json to_json(const NoiselessReport& r);

Json read_json_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace seriation
