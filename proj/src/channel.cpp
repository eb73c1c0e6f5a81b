#include "secbeam/channel.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "json.hpp"
#include "secbeam/format.hpp"
#include "secbeam/rng.hpp"

namespace secbeam {

namespace {

void require_finite(const cvec& v, const char* name) {
  for (const auto& x : v)
    if (!std::isfinite(x.real()) || !std::isfinite(x.imag()))
      throw invalid_input(std::string(name) + ": entries must be finite");
}

}  // namespace

ChannelRealization::ChannelRealization(cvec h_in, cvec z_in, double n0_in,
                                       std::optional<cvec> g_in,
                                       std::optional<std::vector<double>> noise_relay_in,
                                       std::string seed_tag_in)
    : m(h_in.size()),
      h(std::move(h_in)),
      z(std::move(z_in)),
      g(std::move(g_in)),
      n0(n0_in),
      noise_relay(std::move(noise_relay_in)),
      seed_tag(std::move(seed_tag_in)) {
  if (m < 1) throw invalid_input("ChannelRealization: m must be >= 1");
  if (z.size() != m) throw invalid_input("ChannelRealization: |z| != m");
  if (g && g->size() != m) throw invalid_input("ChannelRealization: |g| != m");
  if (noise_relay && noise_relay->size() != m)
    throw invalid_input("ChannelRealization: |noise_relay| != m");
  if (!(n0 > 0.0) || !std::isfinite(n0))
    throw invalid_input("ChannelRealization: n0 must be positive");
  require_finite(h, "h");
  require_finite(z, "z");
  if (g) require_finite(*g, "g");
  if (noise_relay)
    for (double v : *noise_relay)
      if (!(v > 0.0) || !std::isfinite(v))
        throw invalid_input("ChannelRealization: noise_relay entries must be positive");
  if (all_zero(h) && all_zero(z))
    throw invalid_input("ChannelRealization: h and z must not both be zero");
}

void FadingConfig::validate() const {
  if (m < 1) throw invalid_input("FadingConfig: m must be >= 1");
  if (!(sigma_g > 0.0) || !(sigma_h > 0.0) || !(sigma_z > 0.0))
    throw invalid_input("FadingConfig: sigmas must be positive");
  if (!(n0 > 0.0)) throw invalid_input("FadingConfig: n0 must be positive");
}

ChannelRealization sample_channel(const FadingConfig& cfg, std::uint64_t draw_index) {
  cfg.validate();
  SubstreamRng rng(cfg.seed, draw_index);
  // Fixed draw order (h, z, g) is part of the reproducibility contract.
  cvec h = rng.gaussian_vector(cfg.m, cfg.sigma_h * cfg.sigma_h);
  cvec z = rng.gaussian_vector(cfg.m, cfg.sigma_z * cfg.sigma_z);
  cvec g = rng.gaussian_vector(cfg.m, cfg.sigma_g * cfg.sigma_g);
  std::string tag = "seed=" + std::to_string(cfg.seed) +
                    ";draw=" + std::to_string(draw_index);
  return ChannelRealization(std::move(h), std::move(z), cfg.n0, std::move(g),
                            std::vector<double>(cfg.m, cfg.n0), std::move(tag));
}

double first_hop_capacity(const cvec& g, double p_s,
                          const std::vector<double>& noise_relay, RateUnit unit) {
  if (g.empty()) throw invalid_input("first_hop_capacity: empty channel");
  if (g.size() != noise_relay.size())
    throw invalid_input("first_hop_capacity: length mismatch");
  if (!(p_s > 0.0)) throw invalid_input("first_hop_capacity: p_s must be positive");
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (!(noise_relay[i] > 0.0))
      throw invalid_input("first_hop_capacity: noise variances must be positive");
    best = std::min(best, std::log1p(std::norm(g[i]) * p_s / noise_relay[i]));
  }
  return from_nats(best, unit);
}

namespace {

void append_cvec(std::string& out, const cvec& v) {
  out += '[';
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += '[';
    out += fmt_sig(v[i].real(), 17);
    out += ", ";
    out += fmt_sig(v[i].imag(), 17);
    out += ']';
  }
  out += ']';
}

cvec cvec_from_json(const nlohmann::json& j, const char* name) {
  if (!j.is_array()) throw parse_error(std::string(name) + " must be an array");
  cvec v;
  v.reserve(j.size());
  for (const auto& e : j) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
      throw parse_error(std::string(name) + " entries must be [re, im] pairs");
    v.emplace_back(e[0].get<double>(), e[1].get<double>());
  }
  return v;
}

}  // namespace

std::string realization_to_json(const ChannelRealization& r) {
  std::string out = "{\n";
  out += "  \"m\": " + std::to_string(r.m) + ",\n";
  out += "  \"h\": ";
  append_cvec(out, r.h);
  out += ",\n  \"z\": ";
  append_cvec(out, r.z);
  if (r.g) {
    out += ",\n  \"g\": ";
    append_cvec(out, *r.g);
  }
  out += ",\n  \"n0\": " + fmt_sig(r.n0, 17);
  if (r.noise_relay) {
    out += ",\n  \"noise_relay\": [";
    for (std::size_t i = 0; i < r.noise_relay->size(); ++i) {
      if (i) out += ", ";
      out += fmt_sig((*r.noise_relay)[i], 17);
    }
    out += ']';
  }
  out += ",\n  \"seed_tag\": " + nlohmann::json(r.seed_tag).dump();
  out += "\n}\n";
  return out;
}

ChannelRealization realization_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw parse_error(std::string("realization: ") + e.what());
  }
  if (!j.is_object()) throw parse_error("realization: top level must be an object");
  for (const auto& [key, _] : j.items()) {
    if (key != "m" && key != "h" && key != "z" && key != "g" && key != "n0" &&
        key != "noise_relay" && key != "seed_tag")
      throw parse_error("realization: unknown field \"" + key + "\"");
  }
  if (!j.contains("h") || !j.contains("z") || !j.contains("n0"))
    throw parse_error("realization: fields h, z, n0 are required");
  cvec h = cvec_from_json(j["h"], "h");
  cvec z = cvec_from_json(j["z"], "z");
  std::optional<cvec> g;
  if (j.contains("g")) g = cvec_from_json(j["g"], "g");
  if (!j["n0"].is_number()) throw parse_error("realization: n0 must be a number");
  double n0 = j["n0"].get<double>();
  std::optional<std::vector<double>> noise_relay;
  if (j.contains("noise_relay")) {
    if (!j["noise_relay"].is_array())
      throw parse_error("realization: noise_relay must be an array");
    noise_relay = j["noise_relay"].get<std::vector<double>>();
  }
  std::string tag;
  if (j.contains("seed_tag")) {
    if (!j["seed_tag"].is_string())
      throw parse_error("realization: seed_tag must be a string");
    tag = j["seed_tag"].get<std::string>();
  }
  if (j.contains("m")) {
    if (!j["m"].is_number_unsigned())
      throw parse_error("realization: m must be a nonnegative integer");
    if (j["m"].get<std::size_t>() != h.size())
      throw parse_error("realization: m does not match |h|");
  }
  return ChannelRealization(std::move(h), std::move(z), n0, std::move(g),
                            std::move(noise_relay), std::move(tag));
}

void save_realization(const ChannelRealization& r, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << realization_to_json(r);
}

ChannelRealization load_realization(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw parse_error("cannot open realization file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return realization_from_json(ss.str());
}

}  // namespace secbeam
