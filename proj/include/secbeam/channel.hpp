#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "secbeam/cvec.hpp"
#include "secbeam/units.hpp"

namespace secbeam {

/// One draw of the second-hop channels (relays to the two destinations),
/// plus optionally the first-hop source-to-relay channel. Immutable once
/// constructed; construction validates every invariant.
struct ChannelRealization {
  std::size_t m = 0;  ///< number of relays
  cvec h;             ///< relay -> D channel vector
  cvec z;             ///< relay -> E channel vector
  std::optional<cvec> g;  ///< source -> relay channel, used by the first-hop cap
  double n0 = 1.0;        ///< noise variance shared by both destinations
  std::optional<std::vector<double>> noise_relay;  ///< per-relay noise variances
  std::string seed_tag;  ///< provenance label, e.g. "seed=1;draw=0"

  ChannelRealization(cvec h_in, cvec z_in, double n0_in,
                     std::optional<cvec> g_in = std::nullopt,
                     std::optional<std::vector<double>> noise_relay_in = std::nullopt,
                     std::string seed_tag_in = {});
};

/// Fading model parameters: i.i.d. circularly symmetric complex Gaussian
/// coefficients with per-link standard deviations.
struct FadingConfig {
  std::size_t m = 1;
  double sigma_g = 1.0;
  double sigma_h = 1.0;
  double sigma_z = 1.0;
  double n0 = 1.0;
  std::uint64_t seed = 0;

  void validate() const;
};

/// Draw one realization. Deterministic in (cfg, draw_index) regardless of
/// call order; entries of h have E|h_m|^2 = sigma_h^2 and likewise for z, g.
ChannelRealization sample_channel(const FadingConfig& cfg, std::uint64_t draw_index);

/// Decode-and-forward first-hop bottleneck: min over relays of
/// log(1 + |g_m|^2 p_s / N_m) in the requested unit.
double first_hop_capacity(const cvec& g, double p_s,
                          const std::vector<double>& noise_relay,
                          RateUnit unit = RateUnit::bits);

/// Canonical JSON form: fields m, h, z, g, n0, noise_relay, seed_tag with
/// complex numbers as [re, im] pairs printed to 17 significant digits
/// (lossless round trip).
std::string realization_to_json(const ChannelRealization& r);
ChannelRealization realization_from_json(const std::string& text);

void save_realization(const ChannelRealization& r, const std::string& path);
ChannelRealization load_realization(const std::string& path);

}  // namespace secbeam
