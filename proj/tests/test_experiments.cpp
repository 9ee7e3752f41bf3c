#include <doctest.h>

#include <atomic>
#include <cmath>
#include <memory>
#include <vector>

#include "ras/benchmarks.hpp"
#include "ras/errors.hpp"
#include "ras/experiments.hpp"
#include "ras/rng.hpp"

using namespace ras;

TEST_CASE("average angle between random directions") {
  SUBCASE("one dimension leaves no room for an angle") {
    // collinear up to rounding: acos of a cosine a few ulps under one
    const AngleTableRow row = avg_random_angle(1, 500, 42);
    CHECK(row.avg_angle_deg < 1e-5);
    CHECK(row.std_error_deg < 1e-5);
  }

  SUBCASE("two dimensions average to forty-five degrees") {
    const AngleTableRow row = avg_random_angle(2, 20000, 7);
    CHECK(std::abs(row.avg_angle_deg - 45.0) < 1.0);
    CHECK(row.std_error_deg > 0.0);
    CHECK(row.n_samples == 20000);
  }

  SUBCASE("high dimensions crowd the right angle") {
    const AngleTableRow row = avg_random_angle(1000, 2000, 7);
    CHECK(std::abs(row.avg_angle_deg - 88.54) < 0.5);
    CHECK(row.avg_angle_deg < 90.0);
  }

  SUBCASE("the average grows with dimension") {
    double prev = -1.0;
    double prev_se = 0.0;
    for (int dim : {1, 2, 3, 5, 10, 50, 100}) {
      const AngleTableRow row = avg_random_angle(dim, 1000, 99);
      CHECK(row.avg_angle_deg > prev - 2.0 * (prev_se + row.std_error_deg));
      prev = row.avg_angle_deg;
      prev_se = row.std_error_deg;
    }
  }

  SUBCASE("bad arguments are rejected") {
    CHECK_THROWS_AS(avg_random_angle(0, 10, 1), ConfigError);
    CHECK_THROWS_AS(avg_random_angle(2, 0, 1), ConfigError);
  }
}

TEST_CASE("double-shot success probability") {
  SUBCASE("one dimension cannot miss while the step fits") {
    // in 1-d the mirrored pair always contains a descent step as long as
    // the sampled radius stays below the 2|g|/||g|| = 2 cutoff
    CHECK(double_shot_success(1, 1.0, 10000, 3).probability == 1.0);
    CHECK(double_shot_success(1, 2.0, 10000, 3).probability == 1.0);
    const SuccessProbRow wide = double_shot_success(1, 2.5, 10000, 3);
    CHECK(std::abs(wide.probability - 0.8) < 0.02);
  }

  SUBCASE("two dimensions at full radius match the closed form") {
    // 4/3 - sqrt(3)/pi
    const SuccessProbRow row = double_shot_success(2, 1.0, 100000, 11);
    CHECK(std::abs(row.probability - 0.7820044) < 0.01);
  }

  SUBCASE("reference anchors") {
    CHECK(std::abs(double_shot_success(10, 0.5, 100000, 17).probability -
                   0.50) < 0.03);
    CHECK(std::abs(double_shot_success(100, 0.1, 50000, 17).probability -
                   0.62) < 0.03);
    CHECK(std::abs(double_shot_success(1000, 0.005, 20000, 17).probability -
                   0.94) < 0.03);
  }

  SUBCASE("shrinking the radius always helps") {
    double prev = -1.0;
    for (double ratio : {1.0, 0.5, 0.1, 0.05}) {
      const double p = double_shot_success(10, ratio, 20000, 23).probability;
      CHECK(p > prev - 0.02);
      prev = p;
    }
  }

  SUBCASE("raising the dimension always hurts") {
    double prev = 2.0;
    for (int dim : {2, 10, 100}) {
      const double p = double_shot_success(dim, 0.1, 20000, 29).probability;
      CHECK(p < prev + 0.02);
      prev = p;
    }
  }

  SUBCASE("bad arguments are rejected") {
    CHECK_THROWS_AS(double_shot_success(0, 0.5, 10, 1), ConfigError);
    CHECK_THROWS_AS(double_shot_success(2, 0.0, 10, 1), ConfigError);
    CHECK_THROWS_AS(double_shot_success(2, 0.5, 0, 1), ConfigError);
  }
}

TEST_CASE("table drivers fan out deterministic seeds") {
  const std::vector<int> dims = {2, 10, 50};
  const std::vector<double> ratios = {0.5, 0.1};

  SUBCASE("angle table rows equal direct calls") {
    const std::vector<AngleTableRow> rows = angle_table(dims, 2000, 5);
    REQUIRE(rows.size() == dims.size());
    for (std::size_t i = 0; i < dims.size(); ++i) {
      const AngleTableRow direct =
          avg_random_angle(dims[i], 2000, derive_seed(5, i));
      CHECK(rows[i].dim == dims[i]);
      CHECK(rows[i].avg_angle_deg == direct.avg_angle_deg);
      CHECK(rows[i].std_error_deg == direct.std_error_deg);
    }
  }

  SUBCASE("success table cells equal direct calls, row-major") {
    const std::vector<SuccessProbRow> cells =
        success_table(dims, ratios, 2000, 5);
    REQUIRE(cells.size() == dims.size() * ratios.size());
    for (std::size_t r = 0; r < ratios.size(); ++r) {
      for (std::size_t c = 0; c < dims.size(); ++c) {
        const std::size_t t = r * dims.size() + c;
        const SuccessProbRow direct =
            double_shot_success(dims[c], ratios[r], 2000, derive_seed(5, t));
        CHECK(cells[t].dim == dims[c]);
        CHECK(cells[t].radius_ratio == ratios[r]);
        CHECK(cells[t].probability == direct.probability);
      }
    }
  }

  SUBCASE("worker count does not change a single bit") {
    const std::vector<AngleTableRow> seq = angle_table(dims, 2000, 5, 1);
    const std::vector<AngleTableRow> par = angle_table(dims, 2000, 5, 3);
    REQUIRE(seq.size() == par.size());
    for (std::size_t i = 0; i < seq.size(); ++i) {
      CHECK(seq[i].avg_angle_deg == par[i].avg_angle_deg);
      CHECK(seq[i].std_error_deg == par[i].std_error_deg);
    }
    const std::vector<SuccessProbRow> s1 =
        success_table(dims, ratios, 2000, 5, 1);
    const std::vector<SuccessProbRow> s4 =
        success_table(dims, ratios, 2000, 5, 4);
    for (std::size_t i = 0; i < s1.size(); ++i) {
      CHECK(s1[i].probability == s4[i].probability);
    }
  }

  SUBCASE("default table axes") {
    CHECK(table_dims() ==
          std::vector<int>{1, 2, 3, 5, 10, 50, 100, 500, 1000});
    CHECK(table_ratios() ==
          std::vector<double>{1.0, 0.5, 0.1, 0.05, 0.01, 0.005, 0.001});
  }
}

TEST_CASE("default evaluation grid") {
  const std::vector<int> small = default_eval_grid(100);
  REQUIRE(small.size() == 100);
  CHECK(small.front() == 1);
  CHECK(small.back() == 100);
  for (std::size_t i = 1; i < small.size(); ++i) {
    CHECK(small[i] == small[i - 1] + 1);
  }

  const std::vector<int> big = default_eval_grid(10000);
  CHECK(big.size() == 101);
  CHECK(big.front() == 1);
  CHECK(big[1] == 100);
  CHECK(big.back() == 10000);

  CHECK(default_eval_grid(1) == std::vector<int>{1});
  const std::vector<int> odd = default_eval_grid(250);
  CHECK(odd.back() == 250);
  for (std::size_t i = 1; i < odd.size(); ++i) CHECK(odd[i] > odd[i - 1]);
  CHECK_THROWS_AS(default_eval_grid(0), ConfigError);
}

TEST_CASE("campaigns") {
  const Objective f = make_rosenbrock(2);
  RasConfig base;
  base.max_evaluations = 400;
  base.seed = 1000;

  SUBCASE("each run gets consecutive seeds and the summary lines up") {
    const CampaignResult res = run_campaign(f, base, 5);
    REQUIRE(res.runs.size() == 5);
    for (std::size_t i = 0; i < res.runs.size(); ++i) {
      CHECK(res.runs[i].config.seed == 1000 + i);
      CHECK(res.runs[i].trace.config.seed == 1000 + i);
    }
    CHECK(res.eval_grid == default_eval_grid(400));
    CHECK(res.summary.n_runs == 5);
    CHECK(res.summary.points.size() == res.eval_grid.size());

    // a campaign run is exactly the standalone run with that seed
    RasConfig solo = base;
    solo.seed = 1002;
    CHECK(run(f, solo).best_f == res.runs[2].best_f);
  }

  SUBCASE("repeat invocations are bitwise identical") {
    const CampaignResult a = run_campaign(f, base, 4);
    const CampaignResult b = run_campaign(f, base, 4);
    for (std::size_t i = 0; i < a.runs.size(); ++i) {
      CHECK(a.runs[i].best_f == b.runs[i].best_f);
      CHECK(a.runs[i].best_x == b.runs[i].best_x);
    }
    for (std::size_t i = 0; i < a.summary.points.size(); ++i) {
      CHECK(a.summary.points[i].median == b.summary.points[i].median);
    }
  }

  SUBCASE("parallel workers replay the sequential campaign") {
    const CampaignResult seq = run_campaign(f, base, 6, {}, 1);
    const CampaignResult par = run_campaign(f, base, 6, {}, 3);
    REQUIRE(seq.runs.size() == par.runs.size());
    for (std::size_t i = 0; i < seq.runs.size(); ++i) {
      CHECK(seq.runs[i].best_f == par.runs[i].best_f);
      CHECK(seq.runs[i].evaluations_used == par.runs[i].evaluations_used);
      REQUIRE(seq.runs[i].trace.size() == par.runs[i].trace.size());
      for (std::size_t k = 0; k < seq.runs[i].trace.size(); ++k) {
        CHECK(seq.runs[i].trace.records[k].best_f ==
              par.runs[i].trace.records[k].best_f);
      }
    }
    for (std::size_t i = 0; i < seq.summary.points.size(); ++i) {
      CHECK(seq.summary.points[i].q1 == par.summary.points[i].q1);
      CHECK(seq.summary.points[i].q3 == par.summary.points[i].q3);
    }
  }

  SUBCASE("a single-run campaign collapses onto its own step function") {
    const CampaignResult res = run_campaign(f, base, 1, {1, 50, 400});
    for (std::size_t i = 0; i < res.eval_grid.size(); ++i) {
      const double direct =
          best_at_evaluations(res.runs[0].trace, res.eval_grid[i]);
      CHECK(res.summary.points[i].median == direct);
      CHECK(res.summary.points[i].min == direct);
      CHECK(res.summary.points[i].max == direct);
    }
  }

  SUBCASE("custom grids must be sane") {
    CHECK_THROWS_AS(run_campaign(f, base, 0), ConfigError);
    CHECK_THROWS_AS(run_campaign(f, base, 2, {5, 5}), ConfigError);
  }
}

TEST_CASE("filtering runs by final value") {
  const Objective f = make_rosenbrock(2);
  RasConfig base;
  base.max_evaluations = 300;
  base.seed = 7;
  const CampaignResult res = run_campaign(f, base, 6);

  const std::vector<int> all =
      filter_runs_by_final(res.runs, std::numeric_limits<double>::infinity());
  CHECK(all.size() == 6);
  const std::vector<int> none = filter_runs_by_final(res.runs, -1.0);
  CHECK(none.empty());

  double mid = res.runs[0].best_f;
  const std::vector<int> some = filter_runs_by_final(res.runs, mid);
  for (int idx : some) CHECK(res.runs[idx].best_f <= mid);
  CHECK(!some.empty());
}

TEST_CASE("ablation grid") {
  auto calls = std::make_shared<std::atomic<long long>>(0);
  const Objective f("counted-bowl",
                    [calls](const Eigen::VectorXd& x) {
                      calls->fetch_add(1, std::memory_order_relaxed);
                      return x.squaredNorm();
                    },
                    DomainBounds::cube(2, -1.5, 1.5), std::nullopt);
  const std::vector<std::uint64_t> seeds = {100, 101, 102};

  const std::vector<AblationCell> cells = run_ablation_grid(
      f, {0.2}, {0.2}, {Variant::kFull, Variant::kIsotropic}, seeds, 60);

  REQUIRE(cells.size() == 2);
  CHECK(cells[0].variant == Variant::kFull);
  CHECK(cells[1].variant == Variant::kIsotropic);
  for (const AblationCell& cell : cells) {
    CHECK(cell.eta == 0.2);
    CHECK(cell.rho_con == 0.2);
    CHECK(cell.failed_runs == 0);
    REQUIRE(cell.finals.size() == seeds.size());
    CHECK(cell.min <= cell.q1);
    CHECK(cell.q1 <= cell.median);
    CHECK(cell.median <= cell.q3);
    CHECK(cell.q3 <= cell.max);
  }
  CHECK(calls->load() <= 2 * 3 * 60);
  CHECK(calls->load() > 2 * 3 * 30);

  SUBCASE("same seeds in every cell, parallel identical to serial") {
    const std::vector<AblationCell> par = run_ablation_grid(
        f, {0.2}, {0.2}, {Variant::kFull, Variant::kIsotropic}, seeds, 60, 4);
    REQUIRE(par.size() == cells.size());
    for (std::size_t i = 0; i < cells.size(); ++i) {
      REQUIRE(par[i].finals.size() == cells[i].finals.size());
      for (std::size_t k = 0; k < cells[i].finals.size(); ++k) {
        CHECK(par[i].finals[k] == cells[i].finals[k]);
      }
    }
  }

  SUBCASE("grid ordering is eta-major") {
    const std::vector<AblationCell> grid = run_ablation_grid(
        f, {0.1, 0.2}, {0.2, 0.5}, {Variant::kFull}, {1}, 10);
    REQUIRE(grid.size() == 4);
    CHECK(grid[0].eta == 0.1);
    CHECK(grid[0].rho_con == 0.2);
    CHECK(grid[1].eta == 0.1);
    CHECK(grid[1].rho_con == 0.5);
    CHECK(grid[2].eta == 0.2);
    CHECK(grid[3].rho_con == 0.5);
  }

  SUBCASE("defaults bracket the reference setting") {
    CHECK(default_ablation_etas() == std::vector<double>{0.05, 0.1, 0.2, 0.4});
    CHECK(default_ablation_rho_cons() == std::vector<double>{0.1, 0.2, 0.5});
  }

  SUBCASE("empty axes are rejected") {
    CHECK_THROWS_AS(
        run_ablation_grid(f, {}, {0.2}, {Variant::kFull}, {1}, 10),
        ConfigError);
    CHECK_THROWS_AS(run_ablation_grid(f, {0.2}, {0.2}, {Variant::kFull}, {}, 10),
                    ConfigError);
    CHECK_THROWS_AS(
        run_ablation_grid(f, {0.2}, {0.2}, {Variant::kFull}, {1}, 1),
        ConfigError);
  }
}
