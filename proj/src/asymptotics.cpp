#include "secbeam/asymptotics.hpp"

#include <algorithm>
#include <cmath>

#include "secbeam/format.hpp"
#include "secbeam/pencil.hpp"
#include "secbeam/schemes.hpp"

namespace secbeam {

namespace {

constexpr double kParallelTol = 1e-12;

void check_pair(const cvec& h, const cvec& z) {
  if (h.empty() || h.size() != z.size())
    throw invalid_input("h and z must have equal nonzero length");
}

void require_m2(const cvec& h) {
  if (h.size() < 2) throw unsupported_dimension("diagnostic needs m >= 2");
}

// h^H P_perp(v) h via a twice-applied projector; 0 for (near) parallel inputs.
double zero_forced_gain(const cvec& v, const cvec& x) {
  const double x2 = norm_sq(x);
  if (x2 == 0.0) return 0.0;
  if (norm_sq(v) == 0.0) return x2;
  cvec p = null_projector_apply(v, x);
  p = null_projector_apply(v, p);
  const double p2 = norm_sq(p);
  if (p2 <= 1e-28 * x2) return 0.0;
  return std::norm(vdot(x, p)) / p2;
}

}  // namespace

std::pair<double, double> high_snr_constants(const cvec& h, const cvec& z) {
  check_pair(h, z);
  require_m2(h);
  return {zero_forced_gain(z, h), zero_forced_gain(h, z)};
}

double lambda_max_difference(const cvec& h, const cvec& z) {
  check_pair(h, z);
  const std::size_t m = h.size();
  const double h2 = norm_sq(h);
  const double z2 = norm_sq(z);
  if (h2 == 0.0 && z2 == 0.0) return 0.0;

  bool span_1d = (h2 == 0.0 || z2 == 0.0);
  if (!span_1d) {
    const double cosang = std::abs(vdot(h, z)) / std::sqrt(h2 * z2);
    span_1d = cosang >= 1.0 - kParallelTol;
  }
  if (span_1d) {
    const double value = h2 - z2;  // both rank-ones share one direction
    return m >= 2 ? std::max(value, 0.0) : value;
  }

  // On span{h, z} with basis {h/|h|, q2}: h -> (|h|, 0), z -> (z1, z2r).
  const cvec q1 = normalized(h);
  cvec zeta = null_projector_apply(q1, z);
  const double z2r = vnorm(zeta);
  const cplx z1 = vdot(q1, z);
  const double s11 = h2 - std::norm(z1);
  const double s22 = -z2r * z2r;
  const double s12sq = std::norm(z1) * z2r * z2r;
  const double tr = s11 + s22;
  const double det = s11 * s22 - s12sq;  // = -h2 z2r^2 <= 0, so lambda_max >= 0
  const double disc = std::max(tr * tr - 4.0 * det, 0.0);
  return 0.5 * (tr + std::sqrt(disc));
}

HighSnrGap high_snr_gap(const cvec& h, const cvec& z, double alpha, double p_r,
                        double n0, RateUnit unit) {
  check_pair(h, z);
  require_m2(h);
  if (!(alpha > 0.0 && alpha < 1.0))
    throw invalid_input("high_snr_gap: alpha must lie in (0, 1)");
  if (!(p_r > 0.0)) throw invalid_input("high_snr_gap: p_r must be positive");
  if (!(n0 > 0.0)) throw invalid_input("high_snr_gap: n0 must be positive");

  const RatePoint outer = outer_bound_point(h, z, p_r, n0, alpha, unit);
  const RatePoint dbl = double_null_point(h, z, p_r, n0, alpha, unit).first;
  const auto [c_d, c_e] = high_snr_constants(h, z);

  HighSnrGap gap;
  gap.gap_d = outer.r_d - dbl.r_d;
  gap.gap_e = outer.r_e - dbl.r_e;
  gap.asymptote_gap_d =
      outer.r_d - from_nats(std::log(alpha * p_r * c_d / n0), unit);
  gap.asymptote_gap_e =
      outer.r_e - from_nats(std::log((1.0 - alpha) * p_r * c_e / n0), unit);
  return gap;
}

LowSnrSlopes low_snr_slopes(const cvec& h, const cvec& z, double alpha,
                            double n0, double p_r_eval) {
  check_pair(h, z);
  require_m2(h);
  if (!(alpha >= 0.0 && alpha <= 1.0))
    throw invalid_input("low_snr_slopes: alpha must lie in [0, 1]");
  if (!(n0 > 0.0)) throw invalid_input("low_snr_slopes: n0 must be positive");

  const double ld = std::max(lambda_max_difference(h, z), 0.0);
  const double le = std::max(lambda_max_difference(z, h), 0.0);
  const double c_d = zero_forced_gain(z, h);
  const double c_e = zero_forced_gain(h, z);

  double n_t = n0;
  if (p_r_eval > 0.0 && alpha > 0.0) {
    const EigResult eig =
        pencil_eigmax(PencilSpec{h, z, alpha * p_r_eval, alpha * p_r_eval, n0});
    const cvec w = scaled(eig.eigvec, std::sqrt(alpha * p_r_eval));
    n_t = n0 + std::norm(vdot(z, w));
  }

  LowSnrSlopes s;
  s.outer_d = alpha * ld / n0;
  s.outer_e = (1.0 - alpha) * le / n0;
  s.single_d = s.outer_d;
  s.single_e = (1.0 - alpha) * c_e / n_t;
  s.double_d = alpha * c_d / n0;
  s.double_e = (1.0 - alpha) * c_e / n0;
  s.tdma_d = s.outer_d;
  s.tdma_e = s.outer_e;
  s.n_t = n_t;
  return s;
}

double large_m_gap(const cvec& h, const cvec& z, double alpha, double p_r,
                   double n0) {
  check_pair(h, z);
  require_m2(h);
  if (!(alpha >= 0.0 && alpha <= 1.0))
    throw invalid_input("large_m_gap: alpha must lie in [0, 1]");
  if (!(p_r > 0.0)) throw invalid_input("large_m_gap: p_r must be positive");
  if (!(n0 > 0.0)) throw invalid_input("large_m_gap: n0 must be positive");
  const double z2 = norm_sq(z);
  if (z2 == 0.0) return 0.0;  // nothing to deflate
  const double a = alpha * p_r;
  const double deflated = std::norm(vdot(z, h)) / z2;  // |h|^2 - h^H P_perp h
  return a * deflated / (n0 + a * norm_sq(h));
}

const char* to_string(Regime r) {
  switch (r) {
    case Regime::high_snr: return "high_snr";
    case Regime::low_snr: return "low_snr";
    case Regime::large_m: return "large_m";
  }
  return "unknown";
}

Regime regime_from_string(const std::string& name) {
  if (name == "high" || name == "high_snr") return Regime::high_snr;
  if (name == "low" || name == "low_snr") return Regime::low_snr;
  if (name == "large_m" || name == "large-m") return Regime::large_m;
  throw invalid_input("unknown regime: " + name);
}

AsymptoticReport asymptotic_report(Regime regime, const cvec& h, const cvec& z,
                                   double alpha,
                                   const std::vector<double>& p_r_values,
                                   double n0, RateUnit unit) {
  check_pair(h, z);
  require_m2(h);
  if (p_r_values.empty())
    throw invalid_input("asymptotic_report: p_r grid must not be empty");
  for (double p : p_r_values)
    if (!(p > 0.0)) throw invalid_input("asymptotic_report: p_r must be positive");

  AsymptoticReport report;
  report.regime = regime;
  report.alpha = alpha;
  report.p_r_values = p_r_values;
  const std::size_t n = p_r_values.size();

  auto series = [&report, n](const std::string& name) -> std::vector<double>& {
    report.series.emplace_back(name, std::vector<double>(n, 0.0));
    return report.series.back().second;
  };

  switch (regime) {
    case Regime::high_snr: {
      auto& gd = series("gap_outer_double_d");
      auto& ge = series("gap_outer_double_e");
      auto& ad = series("gap_asymptote_d");
      auto& ae = series("gap_asymptote_e");
      auto& cd = series("c_d");
      auto& ce = series("c_e");
      const auto [c_d, c_e] = high_snr_constants(h, z);
      for (std::size_t i = 0; i < n; ++i) {
        const HighSnrGap gap = high_snr_gap(h, z, alpha, p_r_values[i], n0, unit);
        gd[i] = gap.gap_d;
        ge[i] = gap.gap_e;
        ad[i] = gap.asymptote_gap_d;
        ae[i] = gap.asymptote_gap_e;
        cd[i] = c_d;
        ce[i] = c_e;
      }
      break;
    }
    case Regime::low_snr: {
      auto& so_d = series("slope_outer_d");
      auto& so_e = series("slope_outer_e");
      auto& ss_d = series("slope_single_d");
      auto& ss_e = series("slope_single_e");
      auto& sd_d = series("slope_double_d");
      auto& sd_e = series("slope_double_e");
      auto& st_d = series("slope_tdma_d");
      auto& st_e = series("slope_tdma_e");
      auto& md = series("measured_slope_d");
      auto& me = series("measured_slope_e");
      auto& nt = series("n_t");
      auto& lld = series("lambda_diff_d");
      auto& lle = series("lambda_diff_e");
      const double ld = lambda_max_difference(h, z);
      const double le = lambda_max_difference(z, h);
      for (std::size_t i = 0; i < n; ++i) {
        const double p = p_r_values[i];
        const LowSnrSlopes s = low_snr_slopes(h, z, alpha, n0, p);
        const double conv = from_nats(1.0, unit);
        so_d[i] = s.outer_d * conv;
        so_e[i] = s.outer_e * conv;
        ss_d[i] = s.single_d * conv;
        ss_e[i] = s.single_e * conv;
        sd_d[i] = s.double_d * conv;
        sd_e[i] = s.double_e * conv;
        st_d[i] = s.tdma_d * conv;
        st_e[i] = s.tdma_e * conv;
        const double lam_d = pencil_eigmax(PencilSpec{h, z, p, p, n0}).lambda_max;
        const double lam_e = pencil_eigmax(PencilSpec{z, h, p, p, n0}).lambda_max;
        md[i] = (lam_d - 1.0) * n0 / p * conv;
        me[i] = (lam_e - 1.0) * n0 / p * conv;
        nt[i] = s.n_t;
        lld[i] = ld * conv;
        lle[i] = le * conv;
      }
      break;
    }
    case Regime::large_m: {
      auto& gap = series("large_m_gap");
      for (std::size_t i = 0; i < n; ++i)
        gap[i] = large_m_gap(h, z, alpha, p_r_values[i], n0);
      break;
    }
  }
  return report;
}

std::string report_to_csv(const AsymptoticReport& report) {
  std::string out = "regime,p_r,alpha,quantity,value\n";
  for (std::size_t i = 0; i < report.p_r_values.size(); ++i) {
    for (const auto& [name, values] : report.series) {
      out += to_string(report.regime);
      out += ',';
      out += fmt_sig(report.p_r_values[i], 12);
      out += ',';
      out += fmt_sig(report.alpha, 12);
      out += ',';
      out += name;
      out += ',';
      out += fmt_sig(values[i], 12);
      out += '\n';
    }
  }
  return out;
}

}  // namespace secbeam
