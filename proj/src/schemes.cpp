#include "secbeam/schemes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "secbeam/format.hpp"
#include "secbeam/pencil.hpp"

namespace secbeam {

const char* to_string(Scheme s) {
  switch (s) {
    case Scheme::single_null_d: return "single_null_d";
    case Scheme::single_null_e: return "single_null_e";
    case Scheme::single_null_union: return "single_null_union";
    case Scheme::double_null: return "double_null";
    case Scheme::tdma: return "tdma";
    case Scheme::outer: return "outer";
  }
  return "unknown";
}

Scheme scheme_from_string(const std::string& name) {
  for (Scheme s : all_schemes())
    if (name == to_string(s)) return s;
  throw invalid_input("unknown scheme: " + name);
}

std::vector<Scheme> all_schemes() {
  return {Scheme::single_null_d, Scheme::single_null_e, Scheme::single_null_union,
          Scheme::double_null,   Scheme::tdma,          Scheme::outer};
}

namespace {

double clamp0(double x) { return x > 0.0 ? x : 0.0; }

void check_channel_pair(const cvec& h, const cvec& z) {
  if (h.empty() || h.size() != z.size())
    throw invalid_input("h and z must have equal nonzero length");
}

void check_power_noise(double p_r, double n0) {
  if (!(p_r > 0.0) || !std::isfinite(p_r))
    throw invalid_input("p_r must be positive");
  if (!(n0 > 0.0) || !std::isfinite(n0))
    throw invalid_input("n0 must be positive");
}

void check_alpha(double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0))
    throw invalid_input("alpha must lie in [0, 1]");
}

void require_null_space(const cvec& h) {
  if (h.size() < 2)
    throw unsupported_dimension("null-space beamforming needs m >= 2");
}

// Unit direction of the projection of x onto the orthogonal complement of v,
// together with the beamforming gain |x^H unit|^2. The projector is applied
// twice so the null constraint holds to machine precision even for nearly
// parallel channels; `zero` marks the parallel (or zero-x) case. A zero v
// deflates nothing: its null space is the whole space.
struct ProjectedDirection {
  cvec unit;
  double gain = 0.0;
  bool zero = true;
};

ProjectedDirection project_unit(const cvec& v, const cvec& x) {
  ProjectedDirection out;
  const double x2 = norm_sq(x);
  if (x2 == 0.0) return out;
  cvec p(x);
  if (norm_sq(v) > 0.0) {
    p = null_projector_apply(v, p);
    p = null_projector_apply(v, p);
  }
  if (norm_sq(p) <= 1e-28 * x2) return out;
  out.unit = normalized(p);
  canonicalize_phase(out.unit);
  out.gain = std::norm(vdot(x, out.unit));
  out.zero = false;
  return out;
}

PencilSpec equal_power_pencil(const cvec& num, const cvec& den, double power,
                              double n0) {
  return PencilSpec{num, den, power, power, n0};
}

double log_rate(double lambda, RateUnit unit) {
  return clamp0(from_nats(std::log(lambda), unit));
}

double log1p_rate(double x, RateUnit unit) {
  return clamp0(from_nats(std::log1p(x), unit));
}

}  // namespace

RatePoint achievable_rates(const cvec& h, const cvec& z,
                           const BeamformingWeights& weights, double n0,
                           RateUnit unit) {
  check_channel_pair(h, z);
  if (weights.w.size() != h.size() || weights.u.size() != h.size())
    throw invalid_input("achievable_rates: weight length mismatch");
  if (!(n0 > 0.0)) throw invalid_input("achievable_rates: n0 must be positive");
  const double hw = std::norm(vdot(h, weights.w));
  const double hu = std::norm(vdot(h, weights.u));
  const double zw = std::norm(vdot(z, weights.w));
  const double zu = std::norm(vdot(z, weights.u));
  const double rd = std::log1p(hw / (n0 + hu)) - std::log1p(zw / n0);
  const double re = std::log1p(zu / (n0 + zw)) - std::log1p(hu / n0);
  return RatePoint{clamp0(from_nats(rd, unit)), clamp0(from_nats(re, unit))};
}

std::pair<RatePoint, BeamformingWeights> single_null_point(
    const cvec& h, const cvec& z, double p_r, double n0, double alpha,
    ProtectedUser protected_user, RateUnit unit) {
  check_channel_pair(h, z);
  require_null_space(h);
  check_power_noise(p_r, n0);
  check_alpha(alpha);
  const std::size_t m = h.size();

  if (protected_user == ProtectedUser::E) {
    // u lives in the null space of h; w is free and solves the pencil.
    const EigResult eig = pencil_eigmax(equal_power_pencil(h, z, alpha * p_r, n0));
    const cvec w = scaled(eig.eigvec, std::sqrt(alpha * p_r));
    const double r_d = log_rate(eig.lambda_max, unit);
    const double n_t = n0 + std::norm(vdot(z, w));
    const ProjectedDirection pd = project_unit(h, z);
    cvec u = pd.zero ? zeros(m) : scaled(pd.unit, std::sqrt((1.0 - alpha) * p_r));
    const double r_e =
        pd.zero ? 0.0 : log1p_rate((1.0 - alpha) * p_r * pd.gain / n_t, unit);
    return {RatePoint{r_d, r_e}, BeamformingWeights{w, std::move(u), alpha}};
  }

  // Mirror image: w lives in the null space of z; u solves the pencil.
  const EigResult eig =
      pencil_eigmax(equal_power_pencil(z, h, (1.0 - alpha) * p_r, n0));
  const cvec u = scaled(eig.eigvec, std::sqrt((1.0 - alpha) * p_r));
  const double r_e = log_rate(eig.lambda_max, unit);
  const double n_t = n0 + std::norm(vdot(h, u));
  const ProjectedDirection pd = project_unit(z, h);
  cvec w = pd.zero ? zeros(m) : scaled(pd.unit, std::sqrt(alpha * p_r));
  const double r_d = pd.zero ? 0.0 : log1p_rate(alpha * p_r * pd.gain / n_t, unit);
  return {RatePoint{r_d, r_e}, BeamformingWeights{std::move(w), u, alpha}};
}

std::pair<RatePoint, BeamformingWeights> double_null_point(
    const cvec& h, const cvec& z, double p_r, double n0, double alpha,
    RateUnit unit) {
  check_channel_pair(h, z);
  require_null_space(h);
  check_power_noise(p_r, n0);
  check_alpha(alpha);
  const std::size_t m = h.size();
  const ProjectedDirection pw = project_unit(z, h);
  const ProjectedDirection pu = project_unit(h, z);
  cvec w = pw.zero ? zeros(m) : scaled(pw.unit, std::sqrt(alpha * p_r));
  cvec u = pu.zero ? zeros(m) : scaled(pu.unit, std::sqrt((1.0 - alpha) * p_r));
  const double r_d = pw.zero ? 0.0 : log1p_rate(alpha * p_r * pw.gain / n0, unit);
  const double r_e =
      pu.zero ? 0.0 : log1p_rate((1.0 - alpha) * p_r * pu.gain / n0, unit);
  return {RatePoint{r_d, r_e},
          BeamformingWeights{std::move(w), std::move(u), alpha}};
}

RatePoint tdma_point(const cvec& h, const cvec& z, double p_r, double n0,
                     double alpha, RateUnit unit) {
  check_channel_pair(h, z);
  check_power_noise(p_r, n0);
  check_alpha(alpha);
  // Full power in each slot; alpha splits time, not power.
  const double ld = pencil_eigmax(equal_power_pencil(h, z, p_r, n0)).lambda_max;
  const double le = pencil_eigmax(equal_power_pencil(z, h, p_r, n0)).lambda_max;
  return RatePoint{clamp0(alpha * from_nats(std::log(ld), unit)),
                   clamp0((1.0 - alpha) * from_nats(std::log(le), unit))};
}

RatePoint outer_bound_point(const cvec& h, const cvec& z, double p_r, double n0,
                            double alpha, RateUnit unit) {
  check_channel_pair(h, z);
  check_power_noise(p_r, n0);
  check_alpha(alpha);
  const double ld =
      pencil_eigmax(equal_power_pencil(h, z, alpha * p_r, n0)).lambda_max;
  const double le =
      pencil_eigmax(equal_power_pencil(z, h, (1.0 - alpha) * p_r, n0)).lambda_max;
  return RatePoint{log_rate(ld, unit), log_rate(le, unit)};
}

std::vector<double> uniform_alpha_grid(std::size_t n) {
  if (n < 2) throw invalid_input("alpha grid needs at least 2 points");
  std::vector<double> grid(n);
  for (std::size_t i = 0; i < n; ++i)
    grid[i] = static_cast<double>(i) / static_cast<double>(n - 1);
  return grid;
}

namespace {

void check_grid(const std::vector<double>& grid) {
  if (grid.size() < 2) throw invalid_input("alpha grid needs at least 2 points");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] >= 0.0 && grid[i] <= 1.0))
      throw invalid_input("alpha grid values must lie in [0, 1]");
    if (i > 0 && !(grid[i] > grid[i - 1]))
      throw invalid_input("alpha grid must be strictly increasing");
  }
}

void append_single_null_pass(std::vector<RegionSample>& samples, const cvec& h,
                             const cvec& z, double p_r, double n0,
                             const std::vector<double>& grid,
                             ProtectedUser who, RateUnit unit) {
  for (double alpha : grid) {
    auto [rates, weights] = single_null_point(h, z, p_r, n0, alpha, who, unit);
    samples.push_back(RegionSample{alpha, rates, std::move(weights)});
  }
}

}  // namespace

RegionCurve build_region(Scheme scheme, const cvec& h, const cvec& z,
                         double p_r, double n0,
                         const std::vector<double>& alpha_grid, bool swap_union,
                         RateUnit unit) {
  check_grid(alpha_grid);
  Scheme effective = scheme;
  if (swap_union &&
      (scheme == Scheme::single_null_d || scheme == Scheme::single_null_e))
    effective = Scheme::single_null_union;

  RegionCurve curve;
  curve.scheme = effective;
  switch (effective) {
    case Scheme::single_null_e:
      append_single_null_pass(curve.samples, h, z, p_r, n0, alpha_grid,
                              ProtectedUser::E, unit);
      break;
    case Scheme::single_null_d:
      append_single_null_pass(curve.samples, h, z, p_r, n0, alpha_grid,
                              ProtectedUser::D, unit);
      break;
    case Scheme::single_null_union:
      append_single_null_pass(curve.samples, h, z, p_r, n0, alpha_grid,
                              ProtectedUser::E, unit);
      append_single_null_pass(curve.samples, h, z, p_r, n0, alpha_grid,
                              ProtectedUser::D, unit);
      break;
    case Scheme::double_null:
      for (double alpha : alpha_grid) {
        auto [rates, weights] = double_null_point(h, z, p_r, n0, alpha, unit);
        curve.samples.push_back(RegionSample{alpha, rates, std::move(weights)});
      }
      break;
    case Scheme::tdma:
      for (double alpha : alpha_grid)
        curve.samples.push_back(
            RegionSample{alpha, tdma_point(h, z, p_r, n0, alpha, unit), {}});
      break;
    case Scheme::outer:
      for (double alpha : alpha_grid)
        curve.samples.push_back(RegionSample{
            alpha, outer_bound_point(h, z, p_r, n0, alpha, unit), {}});
      break;
  }
  curve.frontier = pareto_frontier(curve.samples);
  return curve;
}

RegionCurve apply_first_hop_cap(const RegionCurve& region, double c1) {
  if (!(c1 >= 0.0)) throw invalid_input("apply_first_hop_cap: c1 must be >= 0");
  RegionCurve out = region;
  for (auto& s : out.samples) {
    s.rates.r_d = std::min(s.rates.r_d, c1);
    s.rates.r_e = std::min(s.rates.r_e, c1 - s.rates.r_d);
  }
  out.frontier = pareto_frontier(out.samples);
  return out;
}

std::vector<std::size_t> pareto_frontier(const std::vector<RegionSample>& samples) {
  // Sweep in decreasing r_d; a point survives unless some strictly-better-r_d
  // point reaches its r_e, or a same-r_d point beats its r_e. Exact duplicate
  // points do not dominate each other and all stay on the frontier.
  const std::size_t n = samples.size();
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&samples](std::size_t a, std::size_t b) {
    const RatePoint& pa = samples[a].rates;
    const RatePoint& pb = samples[b].rates;
    if (pa.r_d != pb.r_d) return pa.r_d > pb.r_d;
    return pa.r_e > pb.r_e;
  });

  std::vector<std::size_t> frontier;
  // max r_e over strictly larger r_d
  double best_re_above = -std::numeric_limits<double>::infinity();
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    const double group_rd = samples[order[i]].rates.r_d;
    const double group_max_re = samples[order[i]].rates.r_e;
    while (j < n && samples[order[j]].rates.r_d == group_rd) {
      const double re = samples[order[j]].rates.r_e;
      if (re >= group_max_re && re > best_re_above) frontier.push_back(order[j]);
      ++j;
    }
    best_re_above = std::max(best_re_above, group_max_re);
    i = j;
  }
  std::sort(frontier.begin(), frontier.end());
  return frontier;
}

RegionCurve convex_hull_frontier(const RegionCurve& region) {
  RegionCurve out = region;
  if (region.frontier.size() <= 2) return out;

  // Nondominated points sorted by r_d form a descending staircase in r_e;
  // keep only the vertices of its upper concave envelope.
  std::vector<std::size_t> order = region.frontier;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const RatePoint& pa = region.samples[a].rates;
    const RatePoint& pb = region.samples[b].rates;
    if (pa.r_d != pb.r_d) return pa.r_d < pb.r_d;
    return pa.r_e > pb.r_e;
  });

  std::vector<std::size_t> hull;
  for (std::size_t idx : order) {
    const RatePoint& p = region.samples[idx].rates;
    if (!hull.empty()) {
      const RatePoint& last = region.samples[hull.back()].rates;
      if (p.r_d == last.r_d) continue;  // keep the higher r_e, already first
    }
    while (hull.size() >= 2) {
      const RatePoint& a = region.samples[hull[hull.size() - 2]].rates;
      const RatePoint& b = region.samples[hull.back()].rates;
      const double cross = (b.r_d - a.r_d) * (p.r_e - a.r_e) -
                           (b.r_e - a.r_e) * (p.r_d - a.r_d);
      if (cross >= 0.0)  // b lies on or below segment a-p
        hull.pop_back();
      else
        break;
    }
    hull.push_back(idx);
  }
  out.frontier = std::move(hull);
  return out;
}

std::string region_to_csv(const std::vector<RegionCurve>& curves) {
  std::string out = "scheme,alpha,R_d,R_e,on_frontier\n";
  for (const auto& curve : curves) {
    std::vector<bool> on_frontier(curve.samples.size(), false);
    for (std::size_t idx : curve.frontier) on_frontier[idx] = true;
    for (std::size_t i = 0; i < curve.samples.size(); ++i) {
      const auto& s = curve.samples[i];
      out += to_string(curve.scheme);
      out += ',';
      out += fmt_sig(s.alpha, 12);
      out += ',';
      out += fmt_sig(s.rates.r_d, 12);
      out += ',';
      out += fmt_sig(s.rates.r_e, 12);
      out += ',';
      out += on_frontier[i] ? '1' : '0';
      out += '\n';
    }
  }
  return out;
}

}  // namespace secbeam
