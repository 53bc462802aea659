#include <doctest.h>

#include <cmath>

#include "adoptsim/calibration.hpp"
#include "adoptsim/errors.hpp"

using namespace adoptsim;

namespace {

ModelParams forward_params() {
  ModelParams p;
  p.alpha_sd = 0.0;
  p.beta_sd = 0.0;
  p.gamma_sd = 0.0;
  p.n_agents = 50;
  p.n_steps = 150;
  return p;
}

FitSpec spec_for(FreeParam param, double lo, double hi, const ModelParams& truth,
                 std::size_t points = 20, std::size_t refine = 30) {
  FitSpec spec;
  spec.target = run_simulation(truth, 0);
  spec.observed = {std::begin(kObservable), std::end(kObservable)};
  spec.free = {{param, lo, hi, points}};
  spec.refine_iters = refine;
  spec.fixed = truth;
  return spec;
}

}  // namespace

TEST_CASE("loss of the generating parameters is zero") {
  const ModelParams truth = forward_params();
  const FitSpec spec = spec_for(FreeParam::alpha_base, 0.01, 0.2, truth);
  CHECK(trajectory_loss(truth, spec) <= 1e-18);
}

TEST_CASE("loss of a constant offset is a hand sum of squares") {
  const ModelParams truth = forward_params();
  FitSpec spec = spec_for(FreeParam::alpha_base, 0.01, 0.2, truth);
  spec.observed = {Variable::adoption};
  for (auto& row : spec.target.rows) row[Variable::adoption] += 0.1;
  const double expected = 0.01 * static_cast<double>(truth.n_steps + 1);
  CHECK(trajectory_loss(truth, spec) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("loss preconditions") {
  const ModelParams truth = forward_params();
  FitSpec spec = spec_for(FreeParam::alpha_base, 0.01, 0.2, truth);

  FitSpec empty = spec;
  empty.observed.clear();
  CHECK_THROWS_AS(trajectory_loss(truth, empty), InvalidParameter);

  FitSpec supply = spec;
  supply.observed = {Variable::supply};
  CHECK_THROWS_AS(trajectory_loss(truth, supply), InvalidParameter);

  ModelParams outside = truth;
  outside.alpha_base = 0.5;
  CHECK_THROWS_AS(trajectory_loss(outside, spec), InvalidParameter);

  FitSpec shorter = spec;
  shorter.target.rows.pop_back();
  CHECK_THROWS_AS(trajectory_loss(truth, shorter), ShapeError);

  FitSpec shifted = spec;
  shifted.target.rows[3].t += 0.5;
  CHECK_THROWS_AS(trajectory_loss(truth, shifted), ShapeError);
}

TEST_CASE("grid endpoints are exact") {
  const auto g = grid_values(0.01, 0.2, 20);
  CHECK(g.size() == 20);
  CHECK(g.front() == 0.01);
  CHECK(g.back() == 0.2);
  CHECK_THROWS_AS(grid_values(0.0, 1.0, 1), InvalidParameter);
}

TEST_CASE("exact grid hit without refinement") {
  ModelParams truth = forward_params();
  truth.alpha_base = grid_values(0.01, 0.2, 20)[7];
  const FitResult r = grid_fit(spec_for(FreeParam::alpha_base, 0.01, 0.2, truth, 20, 0));
  CHECK(r.values[0] == truth.alpha_base);
  CHECK(r.loss == 0.0);
  CHECK(r.evaluations == 20);
}

TEST_CASE("alpha is recovered within 1%") {
  const ModelParams truth = forward_params();
  const FitResult r = grid_fit(spec_for(FreeParam::alpha_base, 0.01, 0.2, truth));
  CHECK(std::abs(r.values[0] - 0.05) <= 0.01 * 0.05);
  CHECK(r.best.alpha_base == r.values[0]);
  CHECK(r.evaluations == 20 + 2 * 30);
}

TEST_CASE("refinement never worsens the best grid point") {
  ModelParams truth = forward_params();
  truth.delta = 0.037;
  const FitResult coarse = grid_fit(spec_for(FreeParam::delta, 0.005, 0.2, truth, 8, 0));
  const FitResult fine = grid_fit(spec_for(FreeParam::delta, 0.005, 0.2, truth, 8, 25));
  CHECK(fine.loss <= coarse.loss);
  CHECK(fine.values[0] >= 0.005);
  CHECK(fine.values[0] <= 0.2);
}

TEST_CASE("ties resolve to the lexicographically smallest vector") {
  // Education does not depend on delta or demand_scale, so every grid
  // point has the same loss.
  const ModelParams truth = forward_params();
  FitSpec spec = spec_for(FreeParam::delta, 0.01, 0.1, truth, 3, 0);
  spec.observed = {Variable::education_mean};
  spec.free.push_back({FreeParam::demand_scale, 1.0, 30.0, 4});
  const FitResult r = grid_fit(spec);
  CHECK(r.values[0] == 0.01);
  CHECK(r.values[1] == 1.0);
  CHECK(r.evaluations == 12);
}

TEST_CASE("grid_fit is deterministic, also with worker threads") {
  ModelParams truth = forward_params();
  truth.gamma_base = 0.07;
  FitSpec spec = spec_for(FreeParam::gamma_base, 0.01, 0.2, truth, 10, 10);
  spec.free.push_back({FreeParam::delta, 0.005, 0.05, 5});
  const FitResult a = grid_fit(spec);
  spec.threads = 3;
  const FitResult b = grid_fit(spec);
  CHECK(a.values == b.values);
  CHECK(a.loss == b.loss);
  CHECK(a.evaluations == b.evaluations);
}

TEST_CASE("grid_fit rejects malformed specs") {
  const ModelParams truth = forward_params();
  FitSpec spec = spec_for(FreeParam::alpha_base, 0.01, 0.2, truth);

  FitSpec huge = spec;
  huge.free = {{FreeParam::alpha_base, 0.01, 0.1, 1000},
               {FreeParam::delta, 0.01, 0.1, 1000},
               {FreeParam::gamma_base, 0.01, 0.1, 11}};
  CHECK_THROWS_AS(grid_fit(huge), ConfigError);

  FitSpec degenerate = spec;
  degenerate.free[0].hi = degenerate.free[0].lo;
  CHECK_THROWS_AS(grid_fit(degenerate), ConfigError);

  FitSpec duplicate = spec;
  duplicate.free.push_back(duplicate.free[0]);
  CHECK_THROWS_AS(grid_fit(duplicate), ConfigError);

  FitSpec none = spec;
  none.free.clear();
  CHECK_THROWS_AS(grid_fit(none), ConfigError);
}

TEST_CASE("free parameter names round-trip") {
  for (FreeParam p : {FreeParam::alpha_base, FreeParam::beta_base, FreeParam::gamma_base, FreeParam::delta,
                      FreeParam::demand_scale, FreeParam::employment_floor}) {
    CHECK(free_param_from_name(name_of(p)) == p);
    ModelParams m;
    set(m, p, 0.0123);
    CHECK(get(m, p) == 0.0123);
  }
  CHECK_FALSE(free_param_from_name("n_agents").has_value());
}
