#pragma once

#include <string>
#include <utility>
#include <vector>

#include "secbeam/cvec.hpp"
#include "secbeam/units.hpp"

namespace secbeam {

/// Best zero-forced power gains: c_d = max over unit v orthogonal to z of
/// |h^H v|^2 (equivalently h^H P_z_perp h) and c_e symmetrically.
/// Requires m >= 2.
std::pair<double, double> high_snr_constants(const cvec& h, const cvec& z);

/// Largest eigenvalue of the indefinite rank-two Hermitian matrix
/// h h^H - z z^H, solved in closed form on span{h, z}.
double lambda_max_difference(const cvec& h, const cvec& z);

/// Distance of the double-null region from the outer bound at one operating
/// point, plus the distance of the outer bound from its analytical
/// log(alpha p_r c / n0) asymptote. All four gaps vanish as p_r grows.
struct HighSnrGap {
  double gap_d = 0.0;
  double gap_e = 0.0;
  double asymptote_gap_d = 0.0;
  double asymptote_gap_e = 0.0;
};

HighSnrGap high_snr_gap(const cvec& h, const cvec& z, double alpha, double p_r,
                        double n0 = 1.0, RateUnit unit = RateUnit::bits);

/// First-order rate growth per unit relay power as p_r -> 0, in nats per
/// unit power. n_t is the single-null leakage noise n0 + |z^H w_opt|^2
/// evaluated at p_r_eval (its limit n0 is used when p_r_eval <= 0); it stays
/// in the E-slope because the leakage is not negligible at very low power.
struct LowSnrSlopes {
  double outer_d = 0.0;
  double outer_e = 0.0;
  double single_d = 0.0;
  double single_e = 0.0;
  double double_d = 0.0;
  double double_e = 0.0;
  double tdma_d = 0.0;
  double tdma_e = 0.0;
  double n_t = 0.0;
};

LowSnrSlopes low_snr_slopes(const cvec& h, const cvec& z, double alpha,
                            double n0, double p_r_eval = 0.0);

/// Relative shrinkage of the D-stream gain caused by zero-forcing:
///   [(1 + a |h|^2/n0) - (1 + a h^H P_z_perp h / n0)] / (1 + a |h|^2/n0)
/// with a = alpha * p_r. Lies in [0, 1] and decays like 1/m under
/// Rayleigh fading. Requires m >= 2.
double large_m_gap(const cvec& h, const cvec& z, double alpha, double p_r,
                   double n0);

enum class Regime { high_snr, low_snr, large_m };

const char* to_string(Regime r);
Regime regime_from_string(const std::string& name);

/// Diagnostic sweep over a power grid; series values are aligned with
/// p_r_values. Quantities that are rates or rate slopes are converted to the
/// requested unit, dimensionless ratios and channel gains are not.
struct AsymptoticReport {
  Regime regime = Regime::high_snr;
  double alpha = 0.5;
  std::vector<double> p_r_values;
  std::vector<std::pair<std::string, std::vector<double>>> series;
};

AsymptoticReport asymptotic_report(Regime regime, const cvec& h, const cvec& z,
                                   double alpha,
                                   const std::vector<double>& p_r_values,
                                   double n0, RateUnit unit = RateUnit::bits);

/// Long-format CSV: regime,p_r,alpha,quantity,value to 12 significant digits.
std::string report_to_csv(const AsymptoticReport& report);

}  // namespace secbeam
