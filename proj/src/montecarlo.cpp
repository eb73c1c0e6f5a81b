#include "secbeam/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "secbeam/asymptotics.hpp"

namespace secbeam {

void EnsembleConfig::validate() const {
  fading.validate();
  if (n_draws < 1) throw invalid_input("EnsembleConfig: n_draws must be >= 1");
  if (!(p_r > 0.0)) throw invalid_input("EnsembleConfig: p_r must be positive");
  if (alpha_grid.size() < 2)
    throw invalid_input("EnsembleConfig: alpha_grid needs at least 2 points");
  for (std::size_t i = 1; i < alpha_grid.size(); ++i)
    if (!(alpha_grid[i] > alpha_grid[i - 1]))
      throw invalid_input("EnsembleConfig: alpha_grid must be strictly increasing");
  if (schemes_enabled.empty())
    throw invalid_input("EnsembleConfig: schemes_enabled must not be empty");
  for (std::size_t i = 0; i < schemes_enabled.size(); ++i)
    for (std::size_t j = i + 1; j < schemes_enabled.size(); ++j)
      if (schemes_enabled[i] == schemes_enabled[j])
        throw invalid_input("EnsembleConfig: duplicate scheme enabled");
  if (cap_first_hop && !(p_s > 0.0))
    throw invalid_input("EnsembleConfig: p_s must be positive when capping");
}

std::vector<RegionCurve> draw_regions(const EnsembleConfig& cfg,
                                      std::uint64_t draw_index, RateUnit unit) {
  const ChannelRealization real = sample_channel(cfg.fading, draw_index);
  double c1 = 0.0;
  if (cfg.cap_first_hop)
    c1 = first_hop_capacity(*real.g, cfg.p_s, *real.noise_relay, unit);
  std::vector<RegionCurve> curves;
  curves.reserve(cfg.schemes_enabled.size());
  for (Scheme s : cfg.schemes_enabled) {
    // Schemes are listed explicitly, so a single-null variant stays itself
    // rather than being promoted to the union.
    RegionCurve curve = build_region(s, real.h, real.z, cfg.p_r, real.n0,
                                     cfg.alpha_grid, false, unit);
    if (cfg.cap_first_hop) curve = apply_first_hop_cap(curve, c1);
    curves.push_back(std::move(curve));
  }
  return curves;
}

namespace {

const RegionCurve* find_curve(const std::vector<RegionCurve>& curves, Scheme s) {
  for (const auto& c : curves)
    if (c.scheme == s) return &c;
  return nullptr;
}

}  // namespace

bool region_contains(const RegionCurve& outer, const RegionCurve& inner,
                     double rel_tol) {
  // The covering region is bounded by the polyline through the outer
  // frontier points (the curve a plot draws), not by the sample staircase:
  // finite alpha grids leave sub-grid notches between adjacent samples that
  // have nothing to do with the regions themselves. Frontier points form an
  // antichain, so sorting by r_d gives nonincreasing r_e.
  std::vector<RatePoint> front;
  front.reserve(outer.frontier.size());
  for (std::size_t idx : outer.frontier) front.push_back(outer.samples[idx].rates);
  std::sort(front.begin(), front.end(),
            [](const RatePoint& a, const RatePoint& b) { return a.r_d < b.r_d; });
  if (front.empty()) return inner.frontier.empty();

  const auto boundary_re_at = [&front](double r_d) {
    if (r_d <= front.front().r_d) return front.front().r_e;
    const auto it = std::lower_bound(
        front.begin(), front.end(), r_d,
        [](const RatePoint& q, double x) { return q.r_d < x; });
    if (it == front.end()) return -1.0;  // beyond the rightmost frontier point
    const RatePoint& hi = *it;
    const RatePoint& lo = *(it - 1);
    const double span = hi.r_d - lo.r_d;
    if (span <= 0.0) return hi.r_e;
    const double t = (r_d - lo.r_d) / span;
    return lo.r_e + t * (hi.r_e - lo.r_e);
  };

  for (std::size_t idx : inner.frontier) {
    const RatePoint& p = inner.samples[idx].rates;
    const double slack_d = rel_tol * std::max(1.0, p.r_d);
    const double slack_e = rel_tol * std::max(1.0, p.r_e);
    if (p.r_d > front.back().r_d + slack_d) return false;
    const double limit = boundary_re_at(std::min(p.r_d, front.back().r_d));
    if (p.r_e > limit + slack_e) return false;
  }
  return true;
}

EnsembleSummary run_ensemble(
    const EnsembleConfig& cfg, RateUnit unit,
    const std::function<void(std::uint64_t, const std::vector<RegionCurve>&)>&
        per_draw_sink) {
  cfg.validate();

  EnsembleSummary summary;
  summary.n_draws = cfg.n_draws;
  summary.p_r = cfg.p_r;
  summary.n0 = cfg.fading.n0;
  summary.unit = unit;

  std::vector<std::vector<double>> sum_rd(cfg.schemes_enabled.size());
  std::vector<std::vector<double>> sum_re(cfg.schemes_enabled.size());
  std::vector<std::vector<double>> slot_alpha(cfg.schemes_enabled.size());

  const auto enabled = [&cfg](Scheme s) {
    return std::find(cfg.schemes_enabled.begin(), cfg.schemes_enabled.end(), s) !=
           cfg.schemes_enabled.end();
  };
  const bool has_outer = enabled(Scheme::outer);
  const bool has_single = enabled(Scheme::single_null_union);
  const bool has_double = enabled(Scheme::double_null);
  const bool has_tdma = enabled(Scheme::tdma);

  long long n_outer_single = 0, n_single_double = 0, n_double_tdma = 0;
  double gap_sum = 0.0, gap_max = 0.0;
  std::size_t gap_count = 0;
  double lm_sum = 0.0, lm_max = 0.0;
  const bool track_large_m = cfg.fading.m >= 2;

  for (std::uint64_t i = 0; i < cfg.n_draws; ++i) {
    std::vector<RegionCurve> curves;
    try {
      curves = draw_regions(cfg, i, unit);
      if (track_large_m) {
        const ChannelRealization real = sample_channel(cfg.fading, i);
        const double gap = large_m_gap(real.h, real.z, 0.5, cfg.p_r, real.n0);
        lm_sum += gap;
        lm_max = std::max(lm_max, gap);
      }
    } catch (const std::exception& e) {
      throw std::runtime_error("draw " + std::to_string(i) + ": " + e.what());
    }
    if (per_draw_sink) per_draw_sink(i, curves);

    for (std::size_t c = 0; c < curves.size(); ++c) {
      const auto& samples = curves[c].samples;
      if (sum_rd[c].empty()) {
        sum_rd[c].assign(samples.size(), 0.0);
        sum_re[c].assign(samples.size(), 0.0);
        slot_alpha[c].resize(samples.size());
        for (std::size_t k = 0; k < samples.size(); ++k)
          slot_alpha[c][k] = samples[k].alpha;
      }
      for (std::size_t k = 0; k < samples.size(); ++k) {
        sum_rd[c][k] += samples[k].rates.r_d;
        sum_re[c][k] += samples[k].rates.r_e;
      }
    }

    const RegionCurve* outer = find_curve(curves, Scheme::outer);
    const RegionCurve* single = find_curve(curves, Scheme::single_null_union);
    const RegionCurve* dbl = find_curve(curves, Scheme::double_null);
    const RegionCurve* tdma = find_curve(curves, Scheme::tdma);
    if (outer && single && region_contains(*outer, *single)) ++n_outer_single;
    if (single && dbl && region_contains(*single, *dbl)) ++n_single_double;
    if (dbl && tdma && region_contains(*dbl, *tdma)) ++n_double_tdma;
    if (outer && dbl) {
      for (std::size_t k = 0; k < outer->samples.size(); ++k) {
        const double gd = outer->samples[k].rates.r_d - dbl->samples[k].rates.r_d;
        const double ge = outer->samples[k].rates.r_e - dbl->samples[k].rates.r_e;
        const double gap = std::max(gd, ge);
        gap_sum += gap;
        gap_max = std::max(gap_max, gap);
        ++gap_count;
      }
    }
  }

  const double inv_draws = 1.0 / static_cast<double>(cfg.n_draws);
  for (std::size_t c = 0; c < cfg.schemes_enabled.size(); ++c) {
    MeanFrontier mf;
    mf.scheme = cfg.schemes_enabled[c];
    mf.alpha = slot_alpha[c];
    mf.mean_r_d.resize(sum_rd[c].size());
    mf.mean_r_e.resize(sum_re[c].size());
    for (std::size_t k = 0; k < sum_rd[c].size(); ++k) {
      mf.mean_r_d[k] = sum_rd[c][k] * inv_draws;
      mf.mean_r_e[k] = sum_re[c][k] * inv_draws;
    }
    summary.mean_frontier.push_back(std::move(mf));
  }

  const double nan = std::numeric_limits<double>::quiet_NaN();
  summary.outer_contains_single = (has_outer && has_single) ? n_outer_single : -1;
  summary.single_contains_double = (has_single && has_double) ? n_single_double : -1;
  summary.double_contains_tdma = (has_double && has_tdma) ? n_double_tdma : -1;
  summary.outer_double_gap_mean =
      gap_count ? gap_sum / static_cast<double>(gap_count) : nan;
  summary.outer_double_gap_max = gap_count ? gap_max : nan;
  summary.large_m_gap_mean = track_large_m ? lm_sum * inv_draws : nan;
  summary.large_m_gap_max = track_large_m ? lm_max : nan;
  return summary;
}

namespace {

FadingConfig fading_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw parse_error("fading must be an object");
  for (const auto& [key, _] : j.items())
    if (key != "m" && key != "sigma_g" && key != "sigma_h" && key != "sigma_z" &&
        key != "n0" && key != "seed")
      throw parse_error("fading: unknown field \"" + key + "\"");
  FadingConfig cfg;
  try {
    cfg.m = j.at("m").get<std::size_t>();
    cfg.sigma_g = j.value("sigma_g", 1.0);
    cfg.sigma_h = j.at("sigma_h").get<double>();
    cfg.sigma_z = j.at("sigma_z").get<double>();
    cfg.n0 = j.value("n0", 1.0);
    cfg.seed = j.at("seed").get<std::uint64_t>();
  } catch (const nlohmann::json::exception& e) {
    throw parse_error(std::string("fading: ") + e.what());
  }
  return cfg;
}

}  // namespace

EnsembleConfig ensemble_config_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw parse_error(std::string("ensemble config: ") + e.what());
  }
  if (!j.is_object()) throw parse_error("ensemble config must be an object");
  for (const auto& [key, _] : j.items())
    if (key != "fading" && key != "n_draws" && key != "p_r" &&
        key != "alpha_grid" && key != "alpha_count" && key != "schemes_enabled" &&
        key != "cap_first_hop" && key != "p_s")
      throw parse_error("ensemble config: unknown field \"" + key + "\"");

  EnsembleConfig cfg;
  try {
    if (!j.contains("fading")) throw parse_error("ensemble config: fading required");
    cfg.fading = fading_from_json(j["fading"]);
    cfg.n_draws = j.at("n_draws").get<std::size_t>();
    cfg.p_r = j.at("p_r").get<double>();
    if (j.contains("alpha_grid"))
      cfg.alpha_grid = j["alpha_grid"].get<std::vector<double>>();
    else if (j.contains("alpha_count"))
      cfg.alpha_grid = uniform_alpha_grid(j["alpha_count"].get<std::size_t>());
    else
      cfg.alpha_grid = uniform_alpha_grid(101);
    if (!j.contains("schemes_enabled"))
      throw parse_error("ensemble config: schemes_enabled required");
    for (const auto& name : j["schemes_enabled"])
      cfg.schemes_enabled.push_back(scheme_from_string(name.get<std::string>()));
    cfg.cap_first_hop = j.value("cap_first_hop", false);
    cfg.p_s = j.value("p_s", 1.0);
  } catch (const nlohmann::json::exception& e) {
    throw parse_error(std::string("ensemble config: ") + e.what());
  }
  return cfg;
}

std::string ensemble_config_to_json(const EnsembleConfig& cfg) {
  nlohmann::ordered_json j;
  j["fading"] = {{"m", cfg.fading.m},
                 {"sigma_g", cfg.fading.sigma_g},
                 {"sigma_h", cfg.fading.sigma_h},
                 {"sigma_z", cfg.fading.sigma_z},
                 {"n0", cfg.fading.n0},
                 {"seed", cfg.fading.seed}};
  j["n_draws"] = cfg.n_draws;
  j["p_r"] = cfg.p_r;
  j["alpha_grid"] = cfg.alpha_grid;
  nlohmann::ordered_json names = nlohmann::ordered_json::array();
  for (Scheme s : cfg.schemes_enabled) names.push_back(to_string(s));
  j["schemes_enabled"] = names;
  j["cap_first_hop"] = cfg.cap_first_hop;
  if (cfg.cap_first_hop) j["p_s"] = cfg.p_s;
  return j.dump(2) + "\n";
}

EnsembleConfig load_ensemble_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw parse_error("cannot open config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ensemble_config_from_json(ss.str());
}

std::string summary_to_json(const EnsembleSummary& summary) {
  nlohmann::ordered_json j;
  j["n_draws"] = summary.n_draws;
  j["p_r"] = summary.p_r;
  j["n0"] = summary.n0;
  j["unit"] = to_string(summary.unit);
  nlohmann::ordered_json fronts = nlohmann::ordered_json::array();
  for (const auto& mf : summary.mean_frontier) {
    nlohmann::ordered_json f;
    f["scheme"] = to_string(mf.scheme);
    f["alpha"] = mf.alpha;
    f["mean_r_d"] = mf.mean_r_d;
    f["mean_r_e"] = mf.mean_r_e;
    fronts.push_back(std::move(f));
  }
  j["mean_frontier"] = fronts;
  nlohmann::ordered_json containment;
  if (summary.outer_contains_single >= 0)
    containment["outer_contains_single"] = summary.outer_contains_single;
  if (summary.single_contains_double >= 0)
    containment["single_contains_double"] = summary.single_contains_double;
  if (summary.double_contains_tdma >= 0)
    containment["double_contains_tdma"] = summary.double_contains_tdma;
  j["containment"] = containment;
  nlohmann::ordered_json gaps;
  if (!std::isnan(summary.outer_double_gap_mean)) {
    gaps["outer_double_gap_mean"] = summary.outer_double_gap_mean;
    gaps["outer_double_gap_max"] = summary.outer_double_gap_max;
  }
  if (!std::isnan(summary.large_m_gap_mean)) {
    gaps["large_m_gap_mean"] = summary.large_m_gap_mean;
    gaps["large_m_gap_max"] = summary.large_m_gap_max;
  }
  j["gap_stats"] = gaps;
  return j.dump(2) + "\n";
}

}  // namespace secbeam
