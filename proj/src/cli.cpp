#include "secbeam/cli.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "secbeam/asymptotics.hpp"
#include "secbeam/channel.hpp"
#include "secbeam/montecarlo.hpp"
#include "secbeam/schemes.hpp"
#include "secbeam/validate.hpp"

namespace secbeam {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitUsage = 2;
constexpr int kExitParse = 3;

struct PresetParams {
  std::size_t m;
  double p_r;
};

// Bundled operating points: fig2/fig3 moderate SNR, fig4 high SNR,
// fig5 low SNR. All use sigma_h = sigma_z = 2 and n0 = 1.
PresetParams preset_params(const std::string& name) {
  if (name == "fig2") return {5, 1.0};
  if (name == "fig3") return {15, 1.0};
  if (name == "fig4") return {3, 100.0};
  if (name == "fig5") return {10, 0.001};
  throw invalid_input("unknown preset: " + name);
}

// Channel source shared by the subcommands: either an input file or a
// seeded fading draw, with optional preset defaults.
struct ChannelArgs {
  std::string input;
  std::string preset;
  std::uint64_t seed = 0;
  std::uint64_t draw = 0;
  std::size_t m = 5;
  double sigma_h = 2.0;
  double sigma_z = 2.0;
  double sigma_g = 2.0;
  double n0 = 1.0;
  double p_r = 1.0;

  CLI::Option* opt_m = nullptr;
  CLI::Option* opt_n0 = nullptr;
  CLI::Option* opt_pr = nullptr;

  void attach(CLI::App* cmd, bool with_input) {
    if (with_input)
      cmd->add_option("--input", input, "realization JSON to load");
    cmd->add_option("--preset", preset,
                    "parameter preset: fig2, fig3, fig4 or fig5");
    cmd->add_option("--seed", seed, "fading seed");
    cmd->add_option("--draw", draw, "draw index within the seed's stream");
    opt_m = cmd->add_option("--m", m, "number of relays");
    cmd->add_option("--sigma-h", sigma_h, "std dev of the relay-to-D fading");
    cmd->add_option("--sigma-z", sigma_z, "std dev of the relay-to-E fading");
    cmd->add_option("--sigma-g", sigma_g, "std dev of the source-to-relay fading");
    opt_n0 = cmd->add_option("--n0", n0, "destination noise variance");
    opt_pr = cmd->add_option("--pr", p_r, "total relay power");
  }

  void resolve_preset() {
    if (preset.empty()) return;
    const PresetParams p = preset_params(preset);
    if (opt_m && opt_m->count() == 0) m = p.m;
    if (opt_pr && opt_pr->count() == 0) p_r = p.p_r;
  }

  FadingConfig fading() const {
    return FadingConfig{m, sigma_g, sigma_h, sigma_z, n0, seed};
  }

  // Anything wrong with an input file (unreadable, malformed, invalid
  // values) is an input parse error; problems with sampling flags are
  // usage errors and propagate as invalid_input.
  ChannelRealization realization() const {
    if (!input.empty()) {
      try {
        return load_realization(input);
      } catch (const std::exception& e) {
        throw parse_error(e.what());
      }
    }
    return sample_channel(fading(), draw);
  }

  // Noise variance for rate computations: an explicit --n0 wins over the
  // value stored in an input file.
  double effective_n0(const ChannelRealization& real) const {
    if (!input.empty() && opt_n0 && opt_n0->count() == 0) return real.n0;
    return n0;
  }
};

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << content;
}

std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      values.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw invalid_input("cannot parse grid value: " + item);
    }
  }
  if (values.empty()) throw invalid_input("empty grid");
  return values;
}

std::string draw_file_name(std::uint64_t index) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "draw_%05llu.csv",
                static_cast<unsigned long long>(index));
  return buf;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"secrecy rate regions for two-user relay beamforming"};
  app.require_subcommand(1);

  std::string unit_name = "bits";
  app.add_option("--unit", unit_name, "rate unit for every output")
      ->check(CLI::IsMember({"bits", "nats"}));

  // sample
  auto* sample_cmd = app.add_subcommand("sample", "draw and save a realization");
  ChannelArgs sample_args;
  sample_args.attach(sample_cmd, false);
  std::string sample_out;
  sample_cmd->add_option("--out", sample_out, "output JSON path")->required();

  // region
  auto* region_cmd =
      app.add_subcommand("region", "compute rate region boundaries as CSV");
  ChannelArgs region_args;
  region_args.attach(region_cmd, true);
  std::string region_out;
  region_cmd->add_option("--out", region_out, "output CSV path")->required();
  std::vector<std::string> region_schemes;
  region_cmd->add_option("--schemes", region_schemes,
                         "schemes to evaluate (default: all)");
  std::size_t region_alphas = 101;
  region_cmd->add_option("--alphas", region_alphas, "size of the alpha grid");
  bool region_cap = false;
  region_cmd->add_flag("--cap-first-hop", region_cap,
                       "clip by the first-hop sum-rate triangle");
  double region_ps = 1.0;
  region_cmd->add_option("--ps", region_ps, "source power for the first hop");
  bool region_hull = false;
  region_cmd->add_flag("--convex-hull", region_hull,
                       "restrict frontiers to their convex hull vertices");

  // validate
  auto* validate_cmd =
      app.add_subcommand("validate", "run the invariant suite on one realization");
  ChannelArgs validate_args;
  validate_args.attach(validate_cmd, true);
  std::size_t validate_alphas = 101;
  validate_cmd->add_option("--alphas", validate_alphas, "size of the alpha grid");
  std::size_t validate_trials = 20000;
  validate_cmd->add_option("--trials", validate_trials,
                           "random-search trials for the pencil bound");

  // asymptotics
  auto* asym_cmd =
      app.add_subcommand("asymptotics", "sweep a diagnostic over relay power");
  ChannelArgs asym_args;
  asym_args.attach(asym_cmd, true);
  std::string asym_out;
  asym_cmd->add_option("--out", asym_out, "output CSV path")->required();
  std::string asym_regime;
  asym_cmd->add_option("--regime", asym_regime, "high, low or large_m")->required();
  std::string asym_grid;
  asym_cmd->add_option("--pr-grid", asym_grid, "comma-separated relay powers");
  double asym_alpha = 0.5;
  asym_cmd->add_option("--alpha", asym_alpha, "power split for the diagnostic");

  // montecarlo
  auto* mc_cmd = app.add_subcommand("montecarlo", "run a seeded ensemble");
  std::string mc_config;
  mc_cmd->add_option("--config", mc_config, "ensemble config JSON")->required();
  std::string mc_out;
  mc_cmd->add_option("--out", mc_out, "output summary JSON path")->required();
  std::string mc_draws_dir;
  mc_cmd->add_option("--draws-dir", mc_draws_dir,
                     "directory for per-draw region CSVs");

  try {
    app.parse(argc, const_cast<char**>(argv));
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  const RateUnit unit = rate_unit_from_string(unit_name);

  try {
    if (*sample_cmd) {
      sample_args.resolve_preset();
      save_realization(sample_channel(sample_args.fading(), sample_args.draw),
                       sample_out);
      return kExitOk;
    }

    if (*region_cmd) {
      region_args.resolve_preset();
      ChannelRealization real = region_args.realization();
      const double n0 = region_args.effective_n0(real);
      std::vector<Scheme> schemes;
      if (region_schemes.empty())
        schemes = all_schemes();
      else
        for (const auto& name : region_schemes)
          schemes.push_back(scheme_from_string(name));
      double c1 = 0.0;
      if (region_cap) {
        if (!real.g || !real.noise_relay)
          throw invalid_input(
              "--cap-first-hop needs g and noise_relay in the realization");
        c1 = first_hop_capacity(*real.g, region_ps, *real.noise_relay, unit);
      }
      const std::vector<double> grid = uniform_alpha_grid(region_alphas);
      std::vector<RegionCurve> curves;
      for (Scheme s : schemes) {
        RegionCurve curve =
            build_region(s, real.h, real.z, region_args.p_r, n0, grid, false, unit);
        if (region_cap) curve = apply_first_hop_cap(curve, c1);
        if (region_hull) curve = convex_hull_frontier(curve);
        curves.push_back(std::move(curve));
      }
      write_text_file(region_out, region_to_csv(curves));
      return kExitOk;
    }

    if (*validate_cmd) {
      validate_args.resolve_preset();
      ChannelRealization real = validate_args.realization();
      const double n0 = validate_args.effective_n0(real);
      ChannelRealization checked(real.h, real.z, n0, real.g, real.noise_relay,
                                 real.seed_tag);
      const auto results =
          run_invariant_checks(checked, validate_args.p_r,
                               uniform_alpha_grid(validate_alphas), unit,
                               validate_trials);
      bool all_passed = true;
      for (const auto& res : results) {
        std::cout << (res.passed ? "PASS " : "FAIL ") << res.name << ": "
                  << res.detail << "\n";
        all_passed = all_passed && res.passed;
      }
      std::cout << (all_passed ? "all checks passed" : "checks failed") << "\n";
      return all_passed ? kExitOk : kExitValidation;
    }

    if (*asym_cmd) {
      asym_args.resolve_preset();
      ChannelRealization real = asym_args.realization();
      const double n0 = asym_args.effective_n0(real);
      std::vector<double> grid;
      if (!asym_grid.empty())
        grid = parse_grid(asym_grid);
      else
        grid = {asym_args.p_r};
      const AsymptoticReport report =
          asymptotic_report(regime_from_string(asym_regime), real.h, real.z,
                            asym_alpha, grid, n0, unit);
      write_text_file(asym_out, report_to_csv(report));
      return kExitOk;
    }

    if (*mc_cmd) {
      EnsembleConfig cfg = load_ensemble_config(mc_config);
      std::function<void(std::uint64_t, const std::vector<RegionCurve>&)> sink;
      if (!mc_draws_dir.empty()) {
        std::filesystem::create_directories(mc_draws_dir);
        sink = [&mc_draws_dir](std::uint64_t index,
                               const std::vector<RegionCurve>& curves) {
          const auto path =
              std::filesystem::path(mc_draws_dir) / draw_file_name(index);
          write_text_file(path.string(), region_to_csv(curves));
        };
      }
      const EnsembleSummary summary = run_ensemble(cfg, unit, sink);
      write_text_file(mc_out, summary_to_json(summary));
      return kExitOk;
    }
  } catch (const parse_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  return kExitUsage;
}

}  // namespace secbeam
