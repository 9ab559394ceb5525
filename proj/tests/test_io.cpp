// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <sstream>

#include "seriation/errors.hpp"
#include "seriation/io.hpp"

using namespace seriation;

TEST_CASE("matrix CSV round trip") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const SymMatrixd m = draw_noise(7, NoiseSpec{NoiseFamily::Laplace, 3.0, seed});
    std::stringstream buf;
    write_matrix_csv(buf, m);
    CHECK(parse_matrix_csv(buf) == m);
  }
}

TEST_CASE("matrix CSV validation") {
  std::istringstream ok("1,2\n2,5\n");
  CHECK(parse_matrix_csv(ok)(1, 0) == 2.0);

  std::istringstream asym("1,2\n3,5\n");
  CHECK_THROWS_AS(parse_matrix_csv(asym), InvalidInput);

  std::istringstream sym("1,2\n3,5\n");
  const SymMatrixd averaged = parse_matrix_csv(sym, true);
  CHECK(averaged(0, 1) == 2.5);
  CHECK(averaged(1, 0) == 2.5);

  std::istringstream nearly("1,2\n2.0000000000001,5\n");
  CHECK_NOTHROW(parse_matrix_csv(nearly));

  std::istringstream ragged("1,2\n2\n");
  CHECK_THROWS(parse_matrix_csv(ragged));
  std::istringstream empty("");
  CHECK_THROWS_AS(parse_matrix_csv(empty), InvalidInput);
  std::istringstream words("1,x\nx,1\n");
  CHECK_THROWS(parse_matrix_csv(words));
}

TEST_CASE("permutation CSV") {
  std::istringstream in("3,1,2\n1,2,3\n");
  const auto perms = parse_permutations_csv(in);
  REQUIRE(perms.size() == 2);
  CHECK(perms[0].one_based() == std::vector<Index>{3, 1, 2});
  CHECK(perms[1].is_identity());

  std::stringstream buf;
  const Permutation p = random_permutation(12, 4);
  write_permutation_csv(buf, p);
  CHECK(parse_permutations_csv(buf).front() == p);

  std::istringstream bad("1,1,2\n");
  CHECK_THROWS_AS(parse_permutations_csv(bad), InvalidInput);
}

TEST_CASE("JSON round trips") {
  const ToeplitzSignal s = make_setting(5, 9);
  CHECK(signal_from_json(to_json(s)) == s);
  CHECK(signal_from_json(Json::parse(to_json(s).dump())) == s);

  const PackingSet packing = build_packing_set(12, 3, 5);
  const PackingSet back = packing_from_json(to_json(packing));
  CHECK(back.n == packing.n);
  CHECK(back.min_hamming == packing.min_hamming);
  CHECK(back.perms == packing.perms);

  const NoiseSpec spec{NoiseFamily::Laplace, 0.25, 77};
  CHECK(noise_spec_from_json(to_json(spec)) == spec);

  ExperimentGrid g;
  g.setting = 0;
  g.custom_signal = make_tridiagonal(10, 0.5);
  g.n = 10;
  g.sigma_grid = {0.1, 1.0 / 3.0};
  g.family = NoiseFamily::Laplace;
  g.replicates = 4;
  g.estimators = {Estimator::SSN, Estimator::LSE};
  g.base_seed = 123456789012345ull;
  CHECK(grid_from_json(Json::parse(to_json(g).dump())) == g);

  CellResult c;
  c.setting = 3;
  c.n = 50;
  c.sigma = 0.1 + 0.2;
  c.estimator = Estimator::SS;
  c.replicates = 30;
  c.failures = 11;
  c.failure_rate = 11.0 / 30.0;
  c.mean_runtime_ms = 0.75;
  c.error_count = 1;
  CHECK(cell_from_json(Json::parse(to_json(c).dump())) == c);

  ExperimentGrid g2;
  std::vector<CellResult> results;
  results_from_json(results_to_json(g, {c, c}), g2, results);
  CHECK(g2 == g);
  CHECK(results == std::vector<CellResult>{c, c});
}

TEST_CASE("grid JSON defaults and errors") {
  const ExperimentGrid g = grid_from_json(Json::parse(R"({"n": 20, "sigma_grid": [0.1]})"));
  CHECK(g.setting == 1);
  CHECK(g.replicates == 50);
  CHECK(g.estimators == std::vector<Estimator>{Estimator::AS, Estimator::SS});
  CHECK_THROWS_AS(grid_from_json(Json::parse(R"({"sigma_grid": [0.1]})")), InvalidInput);
  CHECK_THROWS_AS(grid_from_json(Json::parse(R"({"n": 5, "sigma_grid": [0.1], "estimators": ["XX"]})")),
                  InvalidInput);
  CHECK_THROWS(signal_from_json(Json::parse(R"({"n": 3, "theta": [1, 0]})")));
}

TEST_CASE("reorder result JSON") {
  const auto s = make_setting(3, 8);
  const Permutation truth = random_permutation(8, 2);
  const ReorderResult r = adaptive_sort(observe_noiseless(s, truth));
  const Json j = to_json(r);
  CHECK(j.at("perm").get<std::vector<Index>>() == r.perm.one_based());
  CHECK(j.at("diagnostics").at("type") == "adaptive_sort");
  const auto canonical = j.at("canonical").get<std::vector<Index>>();
  CHECK(canonical.front() < canonical.back());
  CHECK(to_json(spectral_seriate(observe_noiseless(s, truth))).at("diagnostics").at("type") == "spectral");
}
