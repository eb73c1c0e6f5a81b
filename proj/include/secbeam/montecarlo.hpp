#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "secbeam/channel.hpp"
#include "secbeam/schemes.hpp"

namespace secbeam {

/// A seeded ensemble of fading draws pushed through the scheme pipeline.
struct EnsembleConfig {
  FadingConfig fading;
  std::size_t n_draws = 1;
  double p_r = 1.0;
  std::vector<double> alpha_grid;
  std::vector<Scheme> schemes_enabled;
  bool cap_first_hop = false;
  double p_s = 1.0;  ///< source power, used when cap_first_hop is set

  void validate() const;
};

struct MeanFrontier {
  Scheme scheme = Scheme::outer;
  std::vector<double> alpha;
  std::vector<double> mean_r_d;
  std::vector<double> mean_r_e;
};

/// Aggregates over the ensemble. Containment counts are -1 when the pair of
/// schemes was not enabled; gap statistics are NaN when unavailable.
/// The outer/double gap is max(r_d gap, r_e gap) at matched alpha, averaged
/// (or maxed) over every (draw, alpha) pair; the large-m gap is evaluated at
/// alpha = 0.5.
struct EnsembleSummary {
  std::size_t n_draws = 0;
  double p_r = 0.0;
  double n0 = 0.0;
  RateUnit unit = RateUnit::bits;
  std::vector<MeanFrontier> mean_frontier;
  long long outer_contains_single = -1;
  long long single_contains_double = -1;
  long long double_contains_tdma = -1;
  double outer_double_gap_mean = 0.0;
  double outer_double_gap_max = 0.0;
  double large_m_gap_mean = 0.0;
  double large_m_gap_max = 0.0;
};

/// All enabled region curves for one draw (the same computation run_ensemble
/// performs internally), with the first-hop cap applied when configured.
std::vector<RegionCurve> draw_regions(const EnsembleConfig& cfg,
                                      std::uint64_t draw_index,
                                      RateUnit unit = RateUnit::bits);

/// Run the ensemble. Deterministic in cfg: draws use counter-based
/// substreams and aggregation runs in draw-index order. A failing draw
/// aborts with its index in the error message. The optional sink receives
/// each draw's curves as they are produced.
EnsembleSummary run_ensemble(
    const EnsembleConfig& cfg, RateUnit unit = RateUnit::bits,
    const std::function<void(std::uint64_t, const std::vector<RegionCurve>&)>&
        per_draw_sink = nullptr);

/// True when every frontier point of `inner` is dominated by some sample of
/// `outer` (with a small relative slack for rounding).
bool region_contains(const RegionCurve& outer, const RegionCurve& inner,
                     double rel_tol = 1e-9);

EnsembleConfig ensemble_config_from_json(const std::string& text);
std::string ensemble_config_to_json(const EnsembleConfig& cfg);
EnsembleConfig load_ensemble_config(const std::string& path);

std::string summary_to_json(const EnsembleSummary& summary);

}  // namespace secbeam
