#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <utility>

#include "secbeam/cvec.hpp"

namespace secbeam {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Deterministic generator keyed by (seed, stream). Stream selection is
/// counter based, so independent draws can be produced in any order and
/// still come out identical.
class SubstreamRng {
 public:
  SubstreamRng(std::uint64_t seed, std::uint64_t stream)
      : engine_(splitmix64(splitmix64(seed) ^
                           splitmix64(stream ^ 0xD6E8FEB86659FD93ULL))) {}

  /// Uniform draw on (0, 1]; never returns 0, safe under log().
  double uniform01() {
    return static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53;
  }

  /// Two independent standard normals (Box-Muller, no cached state).
  std::pair<double, double> gaussian_pair() {
    const double u1 = uniform01();
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double t = 2.0 * std::numbers::pi * u2;
    return {r * std::cos(t), r * std::sin(t)};
  }

  /// Circularly symmetric complex Gaussian with E|x|^2 = sigma_sq:
  /// real and imaginary parts are independent N(0, sigma_sq / 2).
  cplx complex_gaussian(double sigma_sq) {
    const auto [re, im] = gaussian_pair();
    const double s = std::sqrt(sigma_sq / 2.0);
    return {s * re, s * im};
  }

  cvec gaussian_vector(std::size_t m, double sigma_sq) {
    cvec v(m);
    for (auto& x : v) x = complex_gaussian(sigma_sq);
    return v;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace secbeam
