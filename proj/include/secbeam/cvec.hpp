#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include "secbeam/errors.hpp"

namespace secbeam {

using cplx = std::complex<double>;
using cvec = std::vector<cplx>;

/// conj(a) . b
inline cplx vdot(const cvec& a, const cvec& b) {
  if (a.size() != b.size()) throw invalid_input("vdot: length mismatch");
  cplx s{0.0, 0.0};
  for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

inline double norm_sq(const cvec& v) {
  double s = 0.0;
  for (const auto& x : v) s += std::norm(x);
  return s;
}

inline double vnorm(const cvec& v) { return std::sqrt(norm_sq(v)); }

inline bool all_zero(const cvec& v) {
  for (const auto& x : v)
    if (x != cplx{0.0, 0.0}) return false;
  return true;
}

inline cvec zeros(std::size_t m) { return cvec(m, cplx{0.0, 0.0}); }

inline cvec scaled(const cvec& v, double s) {
  cvec r(v);
  for (auto& x : r) x *= s;
  return r;
}

inline cvec normalized(const cvec& v) {
  const double n = vnorm(v);
  if (n == 0.0) throw invalid_input("normalized: zero vector");
  return scaled(v, 1.0 / n);
}

/// Rotate v so its largest-magnitude entry is real and positive.
/// Ties break at the lowest index; the zero vector is left unchanged.
inline void canonicalize_phase(cvec& v) {
  std::size_t k = 0;
  double best = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double mag = std::norm(v[i]);
    if (mag > best) {
      best = mag;
      k = i;
    }
  }
  if (best == 0.0) return;
  const cplx phase = std::conj(v[k]) / std::abs(v[k]);
  for (auto& x : v) x *= phase;
}

}  // namespace secbeam
