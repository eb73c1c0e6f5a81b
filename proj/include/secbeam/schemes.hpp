#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "secbeam/cvec.hpp"
#include "secbeam/units.hpp"

namespace secbeam {

enum class Scheme {
  single_null_d,      ///< w forced into the null space of z (D's stream hidden from E)
  single_null_e,      ///< u forced into the null space of h (E's stream hidden from D)
  single_null_union,  ///< union of both single-null variants
  double_null,
  tdma,
  outer,
};

const char* to_string(Scheme s);
Scheme scheme_from_string(const std::string& name);
std::vector<Scheme> all_schemes();

/// Which user's stream is zero-forced at the other receiver.
enum class ProtectedUser { D, E };

/// Secrecy rate pair; both coordinates are clamped at zero.
struct RatePoint {
  double r_d = 0.0;
  double r_e = 0.0;
};

/// Relay weight vectors for the two streams plus the power split they were
/// built for: |w|^2 <= alpha * P_r and |u|^2 <= (1 - alpha) * P_r.
struct BeamformingWeights {
  cvec w;
  cvec u;
  double alpha = 0.0;
};

struct RegionSample {
  double alpha = 0.0;
  RatePoint rates;
  std::optional<BeamformingWeights> weights;
};

/// Boundary of one scheme's rate region, sampled over a power/time split
/// grid. The region itself is the union of rectangles [0, r_d] x [0, r_e];
/// `frontier` holds indices of the Pareto-nondominated samples. Union curves
/// carry two samples per alpha, one per protected variant, appended as two
/// grid passes.
struct RegionCurve {
  Scheme scheme = Scheme::outer;
  std::vector<RegionSample> samples;
  std::vector<std::size_t> frontier;
};

/// Ground-truth rate evaluator for arbitrary weights:
///   r_d = max(0, log(1 + |h.w|^2 / (n0 + |h.u|^2)) - log(1 + |z.w|^2 / n0))
/// and symmetrically for r_e. Every scheme's claimed boundary point must be
/// reproduced by this function on the returned weights.
RatePoint achievable_rates(const cvec& h, const cvec& z,
                           const BeamformingWeights& weights, double n0,
                           RateUnit unit = RateUnit::bits);

/// Single null-space beamforming. For protected == E the E-stream weights u
/// are zero-forced at D and w maximizes the generalized Rayleigh quotient;
/// the other variant is the mirror image. Requires m >= 2.
std::pair<RatePoint, BeamformingWeights> single_null_point(
    const cvec& h, const cvec& z, double p_r, double n0, double alpha,
    ProtectedUser protected_user, RateUnit unit = RateUnit::bits);

/// Both streams zero-forced at the unintended receiver. Requires m >= 2.
std::pair<RatePoint, BeamformingWeights> double_null_point(
    const cvec& h, const cvec& z, double p_r, double n0, double alpha,
    RateUnit unit = RateUnit::bits);

/// Time sharing with full relay power per slot: alpha fraction of time for
/// D's stream, the rest for E's.
RatePoint tdma_point(const cvec& h, const cvec& z, double p_r, double n0,
                     double alpha, RateUnit unit = RateUnit::bits);

/// Analytical outer bound: each stream sees an interference-free wiretap
/// channel at its power share.
RatePoint outer_bound_point(const cvec& h, const cvec& z, double p_r,
                            double n0, double alpha,
                            RateUnit unit = RateUnit::bits);

/// n evenly spaced alphas covering [0, 1]; n >= 2.
std::vector<double> uniform_alpha_grid(std::size_t n);

/// Evaluate one scheme over a strictly increasing alpha grid and extract the
/// Pareto frontier. A single-null variant with swap_union set is promoted to
/// the union curve.
RegionCurve build_region(Scheme scheme, const cvec& h, const cvec& z,
                         double p_r, double n0,
                         const std::vector<double>& alpha_grid,
                         bool swap_union = true,
                         RateUnit unit = RateUnit::bits);

/// Clip a region by the first-hop sum-rate triangle r_d + r_e <= c1,
/// walking each rectangle corner along the corner path:
/// r_d' = min(r_d, c1), r_e' = min(r_e, c1 - r_d'). Frontier is recomputed.
RegionCurve apply_first_hop_cap(const RegionCurve& region, double c1);

/// Indices of samples not dominated by any other sample (componentwise).
std::vector<std::size_t> pareto_frontier(const std::vector<RegionSample>& samples);

/// Optional post-process: restrict the frontier to the vertices of its
/// upper-right convex hull (time-sharing view of the boundary).
RegionCurve convex_hull_frontier(const RegionCurve& region);

/// CSV with header scheme,alpha,R_d,R_e,on_frontier; floats to 12
/// significant digits, LF line endings.
std::string region_to_csv(const std::vector<RegionCurve>& curves);

}  // namespace secbeam
