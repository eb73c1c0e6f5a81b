#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "secbeam/montecarlo.hpp"

using namespace secbeam;

namespace {

EnsembleConfig small_config(std::size_t draws) {
  EnsembleConfig cfg;
  cfg.fading = FadingConfig{5, 2.0, 2.0, 2.0, 1.0, 7};
  cfg.n_draws = draws;
  cfg.p_r = 1.0;
  cfg.alpha_grid = uniform_alpha_grid(11);
  cfg.schemes_enabled = {Scheme::outer, Scheme::single_null_union,
                         Scheme::double_null, Scheme::tdma};
  return cfg;
}

}  // namespace

TEST_CASE("a single-draw ensemble reproduces the draw exactly") {
  const EnsembleConfig cfg = small_config(1);
  const EnsembleSummary summary = run_ensemble(cfg);
  const auto curves = draw_regions(cfg, 0);
  REQUIRE(summary.mean_frontier.size() == curves.size());
  for (std::size_t c = 0; c < curves.size(); ++c) {
    const auto& mf = summary.mean_frontier[c];
    CHECK(mf.scheme == curves[c].scheme);
    REQUIRE(mf.mean_r_d.size() == curves[c].samples.size());
    for (std::size_t k = 0; k < curves[c].samples.size(); ++k) {
      CHECK(mf.alpha[k] == curves[c].samples[k].alpha);
      CHECK(mf.mean_r_d[k] == curves[c].samples[k].rates.r_d);
      CHECK(mf.mean_r_e[k] == curves[c].samples[k].rates.r_e);
    }
  }
}

TEST_CASE("ensembles are deterministic") {
  const EnsembleConfig cfg = small_config(8);
  const std::string a = summary_to_json(run_ensemble(cfg));
  const std::string b = summary_to_json(run_ensemble(cfg));
  CHECK(a == b);
}

TEST_CASE("two-draw means are the arithmetic mean of the single draws") {
  const EnsembleConfig cfg = small_config(2);
  const EnsembleSummary summary = run_ensemble(cfg);
  const auto first = draw_regions(cfg, 0);
  const auto second = draw_regions(cfg, 1);
  for (std::size_t c = 0; c < first.size(); ++c)
    for (std::size_t k = 0; k < first[c].samples.size(); ++k) {
      const double expect =
          (first[c].samples[k].rates.r_d + second[c].samples[k].rates.r_d) / 2.0;
      CHECK(summary.mean_frontier[c].mean_r_d[k] == expect);
    }
}

TEST_CASE("draws are order independent") {
  const EnsembleConfig cfg = small_config(4);
  const auto late = draw_regions(cfg, 3);
  const auto early = draw_regions(cfg, 0);
  const auto late_again = draw_regions(cfg, 3);
  for (std::size_t c = 0; c < late.size(); ++c)
    for (std::size_t k = 0; k < late[c].samples.size(); ++k) {
      CHECK(late[c].samples[k].rates.r_d == late_again[c].samples[k].rates.r_d);
      CHECK(late[c].samples[k].rates.r_e == late_again[c].samples[k].rates.r_e);
    }
  CHECK(early[0].samples[5].rates.r_d != late[0].samples[5].rates.r_d);
}

TEST_CASE("a failing draw reports its index") {
  EnsembleConfig cfg = small_config(2);
  cfg.fading.m = 1;  // null-space schemes cannot run on one relay
  try {
    run_ensemble(cfg);
    FAIL("expected a draw failure");
  } catch (const std::runtime_error& e) {
    CHECK(std::string(e.what()).find("draw 0") != std::string::npos);
  }
}

TEST_CASE("containment counters populate only for enabled pairs") {
  EnsembleConfig cfg = small_config(3);
  cfg.schemes_enabled = {Scheme::outer, Scheme::double_null};
  const EnsembleSummary summary = run_ensemble(cfg);
  CHECK(summary.outer_contains_single == -1);
  CHECK(summary.single_contains_double == -1);
  CHECK(summary.double_contains_tdma == -1);
  CHECK(summary.outer_double_gap_mean >= 0.0);
  CHECK(summary.outer_double_gap_max >= summary.outer_double_gap_mean);

  const EnsembleSummary full = run_ensemble(small_config(3));
  CHECK(full.outer_contains_single >= 0);
  CHECK(full.outer_contains_single <= 3);
  CHECK(full.single_contains_double >= 0);
}

TEST_CASE("enabled schemes are built as themselves") {
  EnsembleConfig cfg = small_config(1);
  cfg.schemes_enabled = {Scheme::single_null_e, Scheme::single_null_union};
  const auto curves = draw_regions(cfg, 0);
  REQUIRE(curves.size() == 2);
  CHECK(curves[0].scheme == Scheme::single_null_e);
  CHECK(curves[0].samples.size() == cfg.alpha_grid.size());
  CHECK(curves[1].scheme == Scheme::single_null_union);
  CHECK(curves[1].samples.size() == 2 * cfg.alpha_grid.size());
}

TEST_CASE("region containment semantics") {
  const EnsembleConfig cfg = small_config(1);
  const auto curves = draw_regions(cfg, 0);
  const RegionCurve* outer = nullptr;
  const RegionCurve* dbl = nullptr;
  for (const auto& c : curves) {
    if (c.scheme == Scheme::outer) outer = &c;
    if (c.scheme == Scheme::double_null) dbl = &c;
  }
  REQUIRE(outer != nullptr);
  CHECK(region_contains(*outer, *outer));
  CHECK(region_contains(*outer, *dbl));
  CHECK_FALSE(region_contains(*dbl, *outer));
}

TEST_CASE("first hop cap bounds every ensemble sample") {
  EnsembleConfig cfg = small_config(3);
  cfg.cap_first_hop = true;
  cfg.p_s = 0.05;  // tight first hop so the cap actually bites
  std::size_t clipped = 0;
  for (std::uint64_t d = 0; d < cfg.n_draws; ++d) {
    const auto real = sample_channel(cfg.fading, d);
    const double c1 = first_hop_capacity(*real.g, cfg.p_s, *real.noise_relay);
    for (const auto& curve : draw_regions(cfg, d))
      for (const auto& s : curve.samples) {
        CHECK(s.rates.r_d + s.rates.r_e <= c1 + 1e-12);
        if (s.rates.r_d + s.rates.r_e >= c1 - 1e-12) ++clipped;
      }
  }
  CHECK(clipped > 0);
}

TEST_CASE("ensemble config json round trip and validation") {
  const std::string text = R"({
    "fading": {"m": 5, "sigma_g": 2, "sigma_h": 2, "sigma_z": 2, "n0": 1, "seed": 7},
    "n_draws": 4,
    "p_r": 1.5,
    "alpha_count": 11,
    "schemes_enabled": ["outer", "tdma"]
  })";
  const EnsembleConfig cfg = ensemble_config_from_json(text);
  CHECK(cfg.fading.m == 5);
  CHECK(cfg.n_draws == 4);
  CHECK(cfg.p_r == 1.5);
  CHECK(cfg.alpha_grid.size() == 11);
  CHECK(cfg.schemes_enabled ==
        std::vector<Scheme>{Scheme::outer, Scheme::tdma});
  CHECK_FALSE(cfg.cap_first_hop);

  const EnsembleConfig back = ensemble_config_from_json(ensemble_config_to_json(cfg));
  CHECK(back.alpha_grid == cfg.alpha_grid);
  CHECK(back.fading.seed == cfg.fading.seed);

  CHECK_THROWS_AS(ensemble_config_from_json("{]"), parse_error);
  CHECK_THROWS_AS(ensemble_config_from_json("{\"surprise\": 1}"), parse_error);
  CHECK_THROWS_AS(
      ensemble_config_from_json(
          R"({"fading": {"m": 2, "sigma_h": 2, "sigma_z": 2, "seed": 0},
              "n_draws": 1, "p_r": 1, "schemes_enabled": ["bogus"]})"),
      invalid_input);

  EnsembleConfig dup = cfg;
  dup.schemes_enabled = {Scheme::outer, Scheme::outer};
  CHECK_THROWS_AS(dup.validate(), invalid_input);
}

TEST_CASE("summary json carries the aggregate fields") {
  const EnsembleSummary summary = run_ensemble(small_config(2));
  const std::string text = summary_to_json(summary);
  CHECK(text.find("\"n_draws\": 2") != std::string::npos);
  CHECK(text.find("\"mean_frontier\"") != std::string::npos);
  CHECK(text.find("\"outer_contains_single\"") != std::string::npos);
  CHECK(text.find("\"large_m_gap_mean\"") != std::string::npos);
  CHECK(text.back() == '\n');
}
