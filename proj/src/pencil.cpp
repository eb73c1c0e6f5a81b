#include "secbeam/pencil.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "secbeam/errors.hpp"
#include "secbeam/rng.hpp"

namespace secbeam {

namespace {

// |h^H z| / (|h| |z|) above 1 - kParallelTol treats the channels as parallel;
// the 2x2 reduction becomes ill conditioned past that point and the
// one-dimensional closed form takes over.
constexpr double kParallelTol = 1e-12;

// Canonical unit vector orthogonal to v (needs |v| > 0 and m >= 2):
// take the basis vector with the smallest overlap, project v out, normalize.
cvec unit_perp_to(const cvec& v) {
  std::size_t k = 0;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (std::norm(v[i]) < best) {
      best = std::norm(v[i]);
      k = i;
    }
  }
  cvec e = zeros(v.size());
  e[k] = 1.0;
  cvec p = null_projector_apply(v, e);
  p = normalized(p);
  canonicalize_phase(p);
  return p;
}

cvec canonical_basis_vector(std::size_t m) {
  cvec e = zeros(m);
  e[0] = 1.0;
  return e;
}

// Unit vector orthogonal to z with maximal overlap with hint; falls back to
// a canonical perpendicular when the hint is (numerically) parallel to z.
cvec perp_witness(const cvec& z, const cvec& hint) {
  if (!all_zero(hint)) {
    cvec p = null_projector_apply(z, hint);
    p = null_projector_apply(z, p);
    if (norm_sq(p) > 1e-28 * norm_sq(hint)) {
      p = normalized(p);
      canonicalize_phase(p);
      return p;
    }
  }
  return unit_perp_to(z);
}

EigResult make_result(double lambda, cvec vec) {
  canonicalize_phase(vec);
  return EigResult{lambda, std::move(vec)};
}

}  // namespace

void PencilSpec::validate() const {
  if (h.empty() || h.size() != z.size())
    throw invalid_input("PencilSpec: h and z must have equal nonzero length");
  if (!(a >= 0.0) || !(b >= 0.0) || !std::isfinite(a) || !std::isfinite(b))
    throw invalid_input("PencilSpec: a and b must be nonnegative");
  if (!(n0 > 0.0) || !std::isfinite(n0))
    throw invalid_input("PencilSpec: n0 must be positive");
}

double rayleigh_quotient(const cvec& w, const PencilSpec& spec) {
  spec.validate();
  if (w.size() != spec.h.size())
    throw invalid_input("rayleigh_quotient: w length mismatch");
  const double w2 = norm_sq(w);
  if (w2 == 0.0) throw invalid_input("rayleigh_quotient: w must be nonzero");
  const double num = spec.n0 * w2 + spec.a * std::norm(vdot(spec.h, w));
  const double den = spec.n0 * w2 + spec.b * std::norm(vdot(spec.z, w));
  return num / den;
}

EigResult pencil_eigmax(const PencilSpec& spec) {
  spec.validate();
  const std::size_t m = spec.h.size();
  const double h2 = norm_sq(spec.h);
  const double z2 = norm_sq(spec.z);
  const double ah = spec.a * h2;
  const double bz = spec.b * z2;

  // Degenerate rank-one terms first; each case has a closed form.
  if (ah == 0.0 && bz == 0.0)
    return make_result(1.0, canonical_basis_vector(m));
  if (bz == 0.0)  // quotient = 1 + a |h^H w|^2 / (n0 |w|^2), maximized along h
    return make_result(1.0 + ah / spec.n0, normalized(spec.h));
  if (ah == 0.0) {
    if (m == 1) return make_result(spec.n0 / (spec.n0 + bz), cvec{1.0});
    return make_result(1.0, perp_witness(spec.z, spec.h));
  }

  if (m == 1) {
    // One dimension: the quotient is the same for every vector.
    return make_result((spec.n0 + ah) / (spec.n0 + bz), cvec{1.0});
  }

  const double cosang = std::abs(vdot(spec.h, spec.z)) / std::sqrt(h2 * z2);
  if (cosang >= 1.0 - kParallelTol) {
    // Parallel channels: with t = |h^H w|^2 the quotient is
    // (n0 + a t) / (n0 + (b z2/h2) t), monotone in t.
    if (ah > bz) return make_result((spec.n0 + ah) / (spec.n0 + bz), normalized(spec.h));
    return make_result(1.0, perp_witness(spec.z, spec.h));
  }

  // Reduce to span{h, z} with the orthonormal basis {q1 = h/|h|, q2}.
  // Coordinates there: h -> (|h|, 0), z -> (z1, z2r) with z2r real positive.
  const cvec q1 = normalized(spec.h);
  cvec zeta = null_projector_apply(q1, spec.z);
  const double z2r = vnorm(zeta);
  const cvec q2 = scaled(zeta, 1.0 / z2r);
  const cplx z1 = vdot(q1, spec.z);

  const double d1 = spec.n0 + spec.a * h2;  // A = diag(d1, d2) in this basis
  const double d2 = spec.n0;
  const double b11 = spec.n0 + spec.b * std::norm(z1);
  const double b22 = spec.n0 + spec.b * z2r * z2r;
  const cplx b12 = spec.b * z1 * z2r;
  const double det_b = b11 * b22 - std::norm(b12);

  // Characteristic roots of B^-1 A; both real, the pencil is definite.
  const double tr = (b22 * d1 + b11 * d2) / det_b;
  const double det = (d1 * d2) / det_b;
  const double disc = std::max(tr * tr - 4.0 * det, 0.0);
  const double lambda = 0.5 * (tr + std::sqrt(disc));

  // Null vector of D = A - lambda B from its larger row.
  const double e11 = d1 - lambda * b11;
  const cplx e12 = -lambda * b12;
  const double e22 = d2 - lambda * b22;
  const cplx e21 = std::conj(e12);
  const double row1 = std::abs(e11) + std::abs(e12);
  const double row2 = std::abs(e21) + std::abs(e22);
  cplx v1, v2;
  const double scale = std::abs(d1) + std::abs(d2) + lambda * (b11 + b22);
  if (row1 <= 1e-15 * scale && row2 <= 1e-15 * scale) {
    v1 = 1.0;  // A == lambda B on the span, any direction attains
    v2 = 0.0;
  } else if (row1 >= row2) {
    v1 = -e12;
    v2 = e11;
  } else {
    v1 = e22;
    v2 = -e21;
  }

  cvec w(m);
  for (std::size_t i = 0; i < m; ++i) w[i] = v1 * q1[i] + v2 * q2[i];
  return make_result(lambda, normalized(w));
}

double brute_force_oracle(const PencilSpec& spec, std::size_t trials,
                          std::uint64_t seed) {
  spec.validate();
  if (trials < 1) throw invalid_input("brute_force_oracle: trials must be >= 1");
  const std::size_t m = spec.h.size();

  // Sampling basis: an orthonormal basis of span{h, z}, padded with a
  // canonical orthogonal direction when the span has fewer than min(m, 2)
  // dimensions. The quotient's maximum over this subspace equals its global
  // maximum, because directions orthogonal to both channels only mix the
  // value toward 1 and the padding direction carries that value exactly.
  std::vector<cvec> basis;
  if (norm_sq(spec.h) > 0.0) basis.push_back(normalized(spec.h));
  if (norm_sq(spec.z) > 0.0) {
    cvec r = spec.z;
    if (!basis.empty()) {
      r = null_projector_apply(basis[0], r);
      r = null_projector_apply(basis[0], r);
    }
    if (norm_sq(r) > 1e-28 * norm_sq(spec.z)) basis.push_back(normalized(r));
  }
  while (basis.size() < std::min<std::size_t>(m, 2)) {
    if (basis.empty())
      basis.push_back(canonical_basis_vector(m));
    else
      basis.push_back(unit_perp_to(basis[0]));
  }
  const std::size_t k = basis.size();

  // Whiten against the denominator restricted to the basis (2x2 Cholesky),
  // so the random directions are isotropic in the metric that matters.
  std::vector<cplx> t(k);
  for (std::size_t i = 0; i < k; ++i) t[i] = vdot(spec.z, basis[i]);
  double g11 = spec.n0 + spec.b * std::norm(t[0]);
  double l11 = std::sqrt(g11);
  cplx l21{0.0, 0.0};
  double l22 = 1.0;
  if (k == 2) {
    const cplx g21 = spec.b * std::conj(t[1]) * t[0];
    const double g22 = spec.n0 + spec.b * std::norm(t[1]);
    l21 = g21 / l11;
    l22 = std::sqrt(std::max(g22 - std::norm(l21), spec.n0 * 1e-12));
  }

  SubstreamRng rng(seed, 0);
  double best = -std::numeric_limits<double>::infinity();
  cvec w(m);
  for (std::size_t trial = 0; trial < trials; ++trial) {
    cplx y1 = rng.complex_gaussian(1.0);
    cplx y2 = (k == 2) ? rng.complex_gaussian(1.0) : cplx{0.0, 0.0};
    // Solve L^H c = y.
    cplx c2 = (k == 2) ? y2 / l22 : cplx{0.0, 0.0};
    cplx c1 = (y1 - std::conj(l21) * c2) / l11;
    for (std::size_t i = 0; i < m; ++i) {
      w[i] = c1 * basis[0][i];
      if (k == 2) w[i] += c2 * basis[1][i];
    }
    const double n = vnorm(w);
    if (n == 0.0) continue;
    for (auto& x : w) x /= n;
    best = std::max(best, rayleigh_quotient(w, spec));
  }
  return best;
}

cvec null_projector_apply(const cvec& v, const cvec& x) {
  if (v.size() != x.size())
    throw invalid_input("null_projector_apply: length mismatch");
  const double v2 = norm_sq(v);
  if (v2 == 0.0) throw invalid_input("null_projector_apply: v must be nonzero");
  const cplx coeff = vdot(v, x) / v2;
  cvec r(x);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= coeff * v[i];
  return r;
}

}  // namespace secbeam
