#include "secbeam/validate.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "secbeam/format.hpp"
#include "secbeam/pencil.hpp"
#include "secbeam/schemes.hpp"

namespace secbeam {

namespace {

bool rel_close(double a, double b, double tol) {
  if (a == b) return true;
  return std::abs(a - b) <= tol * std::max(std::abs(a), std::abs(b));
}

struct Suite {
  std::vector<CheckResult> results;

  void run(const std::string& name, const std::function<std::string()>& body) {
    CheckResult r;
    r.name = name;
    try {
      r.detail = body();
      r.passed = r.detail.rfind("violation:", 0) != 0;
      if (r.passed && r.detail.empty()) r.detail = "ok";
    } catch (const std::exception& e) {
      r.passed = false;
      r.detail = std::string("exception: ") + e.what();
    }
    results.push_back(std::move(r));
  }
};

std::string violation(const std::string& what) { return "violation: " + what; }

}  // namespace

std::vector<CheckResult> run_invariant_checks(const ChannelRealization& r,
                                              double p_r,
                                              const std::vector<double>& alpha_grid,
                                              RateUnit unit,
                                              std::size_t oracle_trials) {
  Suite suite;
  const cvec& h = r.h;
  const cvec& z = r.z;
  const double n0 = r.n0;
  const bool multi_relay = r.m >= 2;

  suite.run("serialization_round_trip", [&] {
    const std::string once = realization_to_json(r);
    const ChannelRealization back = realization_from_json(once);
    if (realization_to_json(back) != once)
      return violation("serialized text changed after a round trip");
    if (back.h != r.h || back.z != r.z || back.n0 != r.n0)
      return violation("field mismatch after a round trip");
    return std::string("byte-exact");
  });

  suite.run("pencil_lambda_ge_one", [&] {
    if (!multi_relay) return std::string("skipped for m = 1");
    for (double alpha : {0.0, 0.25, 0.5, 0.75, 1.0}) {
      const double lam =
          pencil_eigmax(PencilSpec{h, z, alpha * p_r, alpha * p_r, n0}).lambda_max;
      if (lam < 1.0 - 1e-12)
        return violation("lambda_max < 1 at alpha " + fmt_sig(alpha, 6));
    }
    return std::string("ok");
  });

  suite.run("pencil_eigvec_consistency", [&] {
    double worst = 0.0;
    for (double alpha : {0.1, 0.5, 0.9}) {
      const PencilSpec spec{h, z, alpha * p_r, alpha * p_r, n0};
      const EigResult eig = pencil_eigmax(spec);
      const double q = rayleigh_quotient(eig.eigvec, spec);
      worst = std::max(worst, std::abs(q - eig.lambda_max) /
                                  std::max(std::abs(eig.lambda_max), 1e-300));
    }
    if (worst > 1e-9) return violation("quotient mismatch " + fmt_sig(worst, 3));
    return "max relative mismatch " + fmt_sig(worst, 3);
  });

  suite.run("pencil_oracle_bound", [&] {
    const PencilSpec spec{h, z, 0.5 * p_r, 0.5 * p_r, n0};
    const double lam = pencil_eigmax(spec).lambda_max;
    const double oracle = brute_force_oracle(spec, oracle_trials, 1);
    if (lam < oracle - 1e-9)
      return violation("random search exceeded lambda_max by " +
                       fmt_sig(oracle - lam, 3));
    return "lambda_max " + fmt_sig(lam, 12) + ", search max " + fmt_sig(oracle, 12);
  });

  suite.run("projector_idempotence", [&] {
    if (all_zero(h)) return std::string("skipped, h = 0");
    const cvec once = null_projector_apply(h, z);
    const cvec twice = null_projector_apply(h, once);
    double diff = 0.0;
    for (std::size_t i = 0; i < once.size(); ++i)
      diff += std::norm(once[i] - twice[i]);
    const double scale = std::max(norm_sq(once), 1e-300);
    if (diff > 1e-24 * scale)
      return violation("projector not idempotent, relative " +
                       fmt_sig(std::sqrt(diff / scale), 3));
    return std::string("ok");
  });

  // Scheme curves over the grid, reused by the remaining checks.
  std::vector<RegionCurve> curves;
  if (multi_relay) {
    for (Scheme s : {Scheme::single_null_e, Scheme::single_null_d,
                     Scheme::double_null, Scheme::tdma, Scheme::outer})
      curves.push_back(build_region(s, h, z, p_r, n0, alpha_grid, false, unit));
  } else {
    for (Scheme s : {Scheme::tdma, Scheme::outer})
      curves.push_back(build_region(s, h, z, p_r, n0, alpha_grid, false, unit));
  }
  const auto curve_of = [&curves](Scheme s) -> const RegionCurve* {
    for (const auto& c : curves)
      if (c.scheme == s) return &c;
    return nullptr;
  };

  if (multi_relay) {
    suite.run("evaluator_round_trip", [&] {
      double worst = 0.0;
      for (Scheme s :
           {Scheme::single_null_e, Scheme::single_null_d, Scheme::double_null}) {
        for (const auto& sample : curve_of(s)->samples) {
          const RatePoint again =
              achievable_rates(h, z, *sample.weights, n0, unit);
          for (auto [claim, eval] :
               {std::pair{sample.rates.r_d, again.r_d},
                std::pair{sample.rates.r_e, again.r_e}}) {
            if (!rel_close(claim, eval, 1e-9))
              return violation(std::string(to_string(s)) + " rate " +
                               fmt_sig(claim, 12) + " vs evaluator " +
                               fmt_sig(eval, 12));
            worst = std::max(worst, std::abs(claim - eval));
          }
        }
      }
      return "max absolute mismatch " + fmt_sig(worst, 3);
    });

    suite.run("null_constraints", [&] {
      for (const auto& sample : curve_of(Scheme::single_null_e)->samples) {
        const auto& wts = *sample.weights;
        if (std::abs(vdot(h, wts.u)) > 1e-10 * vnorm(h) * vnorm(wts.u))
          return violation("single-null u leaks into h");
      }
      for (const auto& sample : curve_of(Scheme::single_null_d)->samples) {
        const auto& wts = *sample.weights;
        if (std::abs(vdot(z, wts.w)) > 1e-10 * vnorm(z) * vnorm(wts.w))
          return violation("single-null w leaks into z");
      }
      for (const auto& sample : curve_of(Scheme::double_null)->samples) {
        const auto& wts = *sample.weights;
        if (std::abs(vdot(h, wts.u)) > 1e-10 * vnorm(h) * vnorm(wts.u) ||
            std::abs(vdot(z, wts.w)) > 1e-10 * vnorm(z) * vnorm(wts.w))
          return violation("double-null leakage");
      }
      return std::string("ok");
    });

    suite.run("power_accounting", [&] {
      for (Scheme s :
           {Scheme::single_null_e, Scheme::single_null_d, Scheme::double_null})
        for (const auto& sample : curve_of(s)->samples) {
          const auto& wts = *sample.weights;
          if (norm_sq(wts.w) + norm_sq(wts.u) > p_r + 1e-9)
            return violation(std::string(to_string(s)) + " exceeds relay power");
        }
      return std::string("ok");
    });

    suite.run("per_alpha_orderings", [&] {
      const auto& single_e = curve_of(Scheme::single_null_e)->samples;
      const auto& dbl = curve_of(Scheme::double_null)->samples;
      const auto& outer = curve_of(Scheme::outer)->samples;
      for (std::size_t i = 0; i < alpha_grid.size(); ++i) {
        const double slack = 1e-12 * std::max(1.0, outer[i].rates.r_e);
        if (!rel_close(outer[i].rates.r_d, single_e[i].rates.r_d, 1e-9))
          return violation("outer r_d != single-null r_d");
        if (dbl[i].rates.r_d > single_e[i].rates.r_d +
                                   1e-12 * std::max(1.0, dbl[i].rates.r_d))
          return violation("double r_d exceeds single-null r_d");
        if (single_e[i].rates.r_e > dbl[i].rates.r_e +
                                        1e-12 * std::max(1.0, dbl[i].rates.r_e))
          return violation("single-null r_e exceeds double r_e");
        if (dbl[i].rates.r_e > outer[i].rates.r_e + slack)
          return violation("double r_e exceeds outer r_e");
      }
      return std::string("ok");
    });
  }

  suite.run("rates_nonnegative", [&] {
    for (const auto& curve : curves)
      for (const auto& sample : curve.samples)
        if (sample.rates.r_d < 0.0 || sample.rates.r_e < 0.0)
          return violation("negative rate escaped clamping");
    return std::string("ok");
  });

  suite.run("monotonicity_in_alpha", [&] {
    for (const auto& curve : curves) {
      if (curve.scheme == Scheme::tdma) continue;  // affine by construction
      for (std::size_t i = 1; i < curve.samples.size(); ++i) {
        const auto& prev = curve.samples[i - 1].rates;
        const auto& cur = curve.samples[i].rates;
        if (cur.r_d < prev.r_d - 1e-9 * std::max(1.0, prev.r_d))
          return violation(std::string(to_string(curve.scheme)) +
                           " r_d decreased in alpha");
        if (cur.r_e > prev.r_e + 1e-9 * std::max(1.0, prev.r_e))
          return violation(std::string(to_string(curve.scheme)) +
                           " r_e increased in alpha");
      }
    }
    return std::string("ok");
  });

  suite.run("tdma_outer_corners", [&] {
    const auto& tdma = curve_of(Scheme::tdma)->samples;
    const auto& outer = curve_of(Scheme::outer)->samples;
    if (tdma.back().rates.r_d != outer.back().rates.r_d)
      return violation("r_d corner mismatch at alpha = 1");
    if (tdma.front().rates.r_e != outer.front().rates.r_e)
      return violation("r_e corner mismatch at alpha = 0");
    return std::string("ok");
  });

  suite.run("frontier_nondominated", [&] {
    for (const auto& curve : curves)
      for (std::size_t fi : curve.frontier) {
        const RatePoint& p = curve.samples[fi].rates;
        for (const auto& other : curve.samples) {
          const RatePoint& q = other.rates;
          if (q.r_d >= p.r_d && q.r_e >= p.r_e &&
              (q.r_d > p.r_d || q.r_e > p.r_e))
            return violation("dominated point on the frontier");
        }
      }
    return std::string("ok");
  });

  suite.run("first_hop_cap", [&] {
    if (!r.g || !r.noise_relay) return std::string("skipped, no first-hop channel");
    const double c1 = first_hop_capacity(*r.g, p_r, *r.noise_relay, unit);
    for (const auto& curve : curves) {
      const RegionCurve capped = apply_first_hop_cap(curve, c1);
      for (std::size_t i = 0; i < curve.samples.size(); ++i) {
        const auto& before = curve.samples[i].rates;
        const auto& after = capped.samples[i].rates;
        if (after.r_d > before.r_d || after.r_e > before.r_e)
          return violation("cap increased a coordinate");
        if (after.r_d + after.r_e > c1 + 1e-12)
          return violation("capped point violates the sum-rate triangle");
      }
    }
    return "c1 = " + fmt_sig(c1, 12);
  });

  return suite.results;
}

}  // namespace secbeam
