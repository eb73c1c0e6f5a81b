#pragma once

#include <cstdint>

#include "secbeam/cvec.hpp"

namespace secbeam {

/// Identity-plus-rank-one Hermitian pencil
///   (n0 I + a h h^H,  n0 I + b z z^H).
/// Every beamforming scheme in this library reduces to the largest
/// generalized eigenvalue of such a pair.
struct PencilSpec {
  cvec h;
  cvec z;
  double a = 0.0;  ///< coefficient on h h^H (e.g. alpha * P_r)
  double b = 0.0;  ///< coefficient on z z^H
  double n0 = 1.0;

  void validate() const;
};

struct EigResult {
  double lambda_max = 1.0;
  cvec eigvec;  ///< unit norm, largest-magnitude entry real positive
};

/// [w^H (n0 I + a h h^H) w] / [w^H (n0 I + b z z^H) w]; scale invariant in w.
double rayleigh_quotient(const cvec& w, const PencilSpec& spec);

/// Supremum of the Rayleigh quotient over nonzero w, with an attaining unit
/// vector. The maximizer lives in span{h, z}: any component orthogonal to
/// both channels pulls the quotient toward 1, so the problem reduces to a
/// closed-form 2x2 generalized eigenproblem.
EigResult pencil_eigmax(const PencilSpec& spec);

/// Randomized independent check of pencil_eigmax: running maximum of the
/// quotient over `trials` random unit vectors. Vectors are drawn isotropically
/// with respect to the denominator metric on the effective span (padded with a
/// canonical orthogonal direction when the span is defective), which makes the
/// search converge fast enough to certify lambda_max tightly. Deterministic in
/// (spec, trials, seed); monotone in trials for a fixed seed.
double brute_force_oracle(const PencilSpec& spec, std::size_t trials,
                          std::uint64_t seed);

/// (I - v v^H / |v|^2) x. The result is orthogonal to v.
cvec null_projector_apply(const cvec& v, const cvec& x);

}  // namespace secbeam
