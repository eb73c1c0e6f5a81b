#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "secbeam/asymptotics.hpp"
#include "secbeam/channel.hpp"
#include "secbeam/montecarlo.hpp"
#include "secbeam/pencil.hpp"
#include "secbeam/schemes.hpp"

namespace py = pybind11;
using namespace secbeam;

PYBIND11_MODULE(_core, m) {
  m.doc() = "Secrecy rate regions for two-user collaborative relay beamforming";

  py::register_exception<parse_error>(m, "ParseError", PyExc_ValueError);

  py::enum_<RateUnit>(m, "RateUnit")
      .value("bits", RateUnit::bits)
      .value("nats", RateUnit::nats);

  py::enum_<Scheme>(m, "Scheme")
      .value("single_null_d", Scheme::single_null_d)
      .value("single_null_e", Scheme::single_null_e)
      .value("single_null_union", Scheme::single_null_union)
      .value("double_null", Scheme::double_null)
      .value("tdma", Scheme::tdma)
      .value("outer", Scheme::outer);

  py::enum_<ProtectedUser>(m, "ProtectedUser")
      .value("D", ProtectedUser::D)
      .value("E", ProtectedUser::E);

  py::class_<ChannelRealization>(m, "ChannelRealization")
      .def(py::init<cvec, cvec, double, std::optional<cvec>,
                    std::optional<std::vector<double>>, std::string>(),
           py::arg("h"), py::arg("z"), py::arg("n0"),
           py::arg("g") = std::nullopt, py::arg("noise_relay") = std::nullopt,
           py::arg("seed_tag") = std::string())
      .def_readonly("m", &ChannelRealization::m)
      .def_readonly("h", &ChannelRealization::h)
      .def_readonly("z", &ChannelRealization::z)
      .def_readonly("g", &ChannelRealization::g)
      .def_readonly("n0", &ChannelRealization::n0)
      .def_readonly("noise_relay", &ChannelRealization::noise_relay)
      .def_readonly("seed_tag", &ChannelRealization::seed_tag);

  py::class_<FadingConfig>(m, "FadingConfig")
      .def(py::init([](std::size_t m_, double sigma_g, double sigma_h,
                       double sigma_z, double n0, std::uint64_t seed) {
             FadingConfig cfg{m_, sigma_g, sigma_h, sigma_z, n0, seed};
             cfg.validate();
             return cfg;
           }),
           py::arg("m"), py::arg("sigma_g"), py::arg("sigma_h"),
           py::arg("sigma_z"), py::arg("n0"), py::arg("seed"))
      .def_readwrite("m", &FadingConfig::m)
      .def_readwrite("sigma_g", &FadingConfig::sigma_g)
      .def_readwrite("sigma_h", &FadingConfig::sigma_h)
      .def_readwrite("sigma_z", &FadingConfig::sigma_z)
      .def_readwrite("n0", &FadingConfig::n0)
      .def_readwrite("seed", &FadingConfig::seed);

  py::class_<PencilSpec>(m, "PencilSpec")
      .def(py::init([](cvec h, cvec z, double a, double b, double n0) {
             PencilSpec spec{std::move(h), std::move(z), a, b, n0};
             spec.validate();
             return spec;
           }),
           py::arg("h"), py::arg("z"), py::arg("a"), py::arg("b"),
           py::arg("n0"))
      .def_readonly("h", &PencilSpec::h)
      .def_readonly("z", &PencilSpec::z)
      .def_readonly("a", &PencilSpec::a)
      .def_readonly("b", &PencilSpec::b)
      .def_readonly("n0", &PencilSpec::n0);

  py::class_<EigResult>(m, "EigResult")
      .def_readonly("lambda_max", &EigResult::lambda_max)
      .def_readonly("eigvec", &EigResult::eigvec);

  py::class_<RatePoint>(m, "RatePoint")
      .def(py::init<double, double>(), py::arg("r_d") = 0.0, py::arg("r_e") = 0.0)
      .def_readonly("r_d", &RatePoint::r_d)
      .def_readonly("r_e", &RatePoint::r_e)
      .def("__repr__", [](const RatePoint& p) {
        return "RatePoint(r_d=" + std::to_string(p.r_d) +
               ", r_e=" + std::to_string(p.r_e) + ")";
      });

  py::class_<BeamformingWeights>(m, "BeamformingWeights")
      .def(py::init<cvec, cvec, double>(), py::arg("w"), py::arg("u"),
           py::arg("alpha"))
      .def_readonly("w", &BeamformingWeights::w)
      .def_readonly("u", &BeamformingWeights::u)
      .def_readonly("alpha", &BeamformingWeights::alpha);

  py::class_<RegionSample>(m, "RegionSample")
      .def_readonly("alpha", &RegionSample::alpha)
      .def_readonly("rates", &RegionSample::rates)
      .def_readonly("weights", &RegionSample::weights);

  py::class_<RegionCurve>(m, "RegionCurve")
      .def_readonly("scheme", &RegionCurve::scheme)
      .def_readonly("samples", &RegionCurve::samples)
      .def_readonly("frontier", &RegionCurve::frontier);

  py::class_<HighSnrGap>(m, "HighSnrGap")
      .def_readonly("gap_d", &HighSnrGap::gap_d)
      .def_readonly("gap_e", &HighSnrGap::gap_e)
      .def_readonly("asymptote_gap_d", &HighSnrGap::asymptote_gap_d)
      .def_readonly("asymptote_gap_e", &HighSnrGap::asymptote_gap_e);

  py::class_<LowSnrSlopes>(m, "LowSnrSlopes")
      .def_readonly("outer_d", &LowSnrSlopes::outer_d)
      .def_readonly("outer_e", &LowSnrSlopes::outer_e)
      .def_readonly("single_d", &LowSnrSlopes::single_d)
      .def_readonly("single_e", &LowSnrSlopes::single_e)
      .def_readonly("double_d", &LowSnrSlopes::double_d)
      .def_readonly("double_e", &LowSnrSlopes::double_e)
      .def_readonly("tdma_d", &LowSnrSlopes::tdma_d)
      .def_readonly("tdma_e", &LowSnrSlopes::tdma_e)
      .def_readonly("n_t", &LowSnrSlopes::n_t);

  py::class_<EnsembleConfig>(m, "EnsembleConfig")
      .def(py::init([](FadingConfig fading, std::size_t n_draws, double p_r,
                       std::vector<double> alpha_grid,
                       std::vector<Scheme> schemes_enabled, bool cap_first_hop,
                       double p_s) {
             EnsembleConfig cfg{std::move(fading), n_draws,        p_r,
                                std::move(alpha_grid), std::move(schemes_enabled),
                                cap_first_hop,     p_s};
             cfg.validate();
             return cfg;
           }),
           py::arg("fading"), py::arg("n_draws"), py::arg("p_r"),
           py::arg("alpha_grid"), py::arg("schemes_enabled"),
           py::arg("cap_first_hop") = false, py::arg("p_s") = 1.0)
      .def_readwrite("fading", &EnsembleConfig::fading)
      .def_readwrite("n_draws", &EnsembleConfig::n_draws)
      .def_readwrite("p_r", &EnsembleConfig::p_r)
      .def_readwrite("alpha_grid", &EnsembleConfig::alpha_grid)
      .def_readwrite("schemes_enabled", &EnsembleConfig::schemes_enabled)
      .def_readwrite("cap_first_hop", &EnsembleConfig::cap_first_hop)
      .def_readwrite("p_s", &EnsembleConfig::p_s);

  py::class_<MeanFrontier>(m, "MeanFrontier")
      .def_readonly("scheme", &MeanFrontier::scheme)
      .def_readonly("alpha", &MeanFrontier::alpha)
      .def_readonly("mean_r_d", &MeanFrontier::mean_r_d)
      .def_readonly("mean_r_e", &MeanFrontier::mean_r_e);

  py::class_<EnsembleSummary>(m, "EnsembleSummary")
      .def_readonly("n_draws", &EnsembleSummary::n_draws)
      .def_readonly("p_r", &EnsembleSummary::p_r)
      .def_readonly("n0", &EnsembleSummary::n0)
      .def_readonly("unit", &EnsembleSummary::unit)
      .def_readonly("mean_frontier", &EnsembleSummary::mean_frontier)
      .def_readonly("outer_contains_single", &EnsembleSummary::outer_contains_single)
      .def_readonly("single_contains_double", &EnsembleSummary::single_contains_double)
      .def_readonly("double_contains_tdma", &EnsembleSummary::double_contains_tdma)
      .def_readonly("outer_double_gap_mean", &EnsembleSummary::outer_double_gap_mean)
      .def_readonly("outer_double_gap_max", &EnsembleSummary::outer_double_gap_max)
      .def_readonly("large_m_gap_mean", &EnsembleSummary::large_m_gap_mean)
      .def_readonly("large_m_gap_max", &EnsembleSummary::large_m_gap_max);

  m.def("sample_channel", &sample_channel, py::arg("cfg"), py::arg("draw_index"));
  m.def("first_hop_capacity", &first_hop_capacity, py::arg("g"), py::arg("p_s"),
        py::arg("noise_relay"), py::arg("unit") = RateUnit::bits);
  m.def("realization_to_json", &realization_to_json, py::arg("realization"));
  m.def("realization_from_json", &realization_from_json, py::arg("text"));

  m.def("rayleigh_quotient", &rayleigh_quotient, py::arg("w"), py::arg("spec"));
  m.def("pencil_eigmax", &pencil_eigmax, py::arg("spec"));
  m.def("brute_force_oracle", &brute_force_oracle, py::arg("spec"),
        py::arg("trials"), py::arg("seed"));
  m.def("null_projector_apply", &null_projector_apply, py::arg("v"), py::arg("x"));

  m.def("achievable_rates", &achievable_rates, py::arg("h"), py::arg("z"),
        py::arg("weights"), py::arg("n0"), py::arg("unit") = RateUnit::bits);
  m.def("single_null_point", &single_null_point, py::arg("h"), py::arg("z"),
        py::arg("p_r"), py::arg("n0"), py::arg("alpha"),
        py::arg("protected_user"), py::arg("unit") = RateUnit::bits);
  m.def("double_null_point", &double_null_point, py::arg("h"), py::arg("z"),
        py::arg("p_r"), py::arg("n0"), py::arg("alpha"),
        py::arg("unit") = RateUnit::bits);
  m.def("tdma_point", &tdma_point, py::arg("h"), py::arg("z"), py::arg("p_r"),
        py::arg("n0"), py::arg("alpha"), py::arg("unit") = RateUnit::bits);
  m.def("outer_bound_point", &outer_bound_point, py::arg("h"), py::arg("z"),
        py::arg("p_r"), py::arg("n0"), py::arg("alpha"),
        py::arg("unit") = RateUnit::bits);
  m.def("uniform_alpha_grid", &uniform_alpha_grid, py::arg("n"));
  m.def("build_region", &build_region, py::arg("scheme"), py::arg("h"),
        py::arg("z"), py::arg("p_r"), py::arg("n0"), py::arg("alpha_grid"),
        py::arg("swap_union") = true, py::arg("unit") = RateUnit::bits);
  m.def("apply_first_hop_cap", &apply_first_hop_cap, py::arg("region"),
        py::arg("c1"));
  m.def("pareto_frontier", &pareto_frontier, py::arg("samples"));
  m.def("convex_hull_frontier", &convex_hull_frontier, py::arg("region"));
  m.def("region_to_csv", &region_to_csv, py::arg("curves"));

  m.def("high_snr_constants", &high_snr_constants, py::arg("h"), py::arg("z"));
  m.def("lambda_max_difference", &lambda_max_difference, py::arg("h"), py::arg("z"));
  m.def("high_snr_gap", &high_snr_gap, py::arg("h"), py::arg("z"),
        py::arg("alpha"), py::arg("p_r"), py::arg("n0") = 1.0,
        py::arg("unit") = RateUnit::bits);
  m.def("low_snr_slopes", &low_snr_slopes, py::arg("h"), py::arg("z"),
        py::arg("alpha"), py::arg("n0"), py::arg("p_r_eval") = 0.0);
  m.def("large_m_gap", &large_m_gap, py::arg("h"), py::arg("z"),
        py::arg("alpha"), py::arg("p_r"), py::arg("n0"));

  m.def(
      "draw_regions",
      [](const EnsembleConfig& cfg, std::uint64_t draw_index, RateUnit unit) {
        return draw_regions(cfg, draw_index, unit);
      },
      py::arg("cfg"), py::arg("draw_index"), py::arg("unit") = RateUnit::bits);
  m.def(
      "run_ensemble",
      [](const EnsembleConfig& cfg, RateUnit unit) {
        return run_ensemble(cfg, unit);
      },
      py::arg("cfg"), py::arg("unit") = RateUnit::bits);
  m.def("region_contains", &region_contains, py::arg("outer"), py::arg("inner"),
        py::arg("rel_tol") = 1e-9);
  m.def("ensemble_config_from_json", &ensemble_config_from_json, py::arg("text"));
  m.def("ensemble_config_to_json", &ensemble_config_to_json, py::arg("cfg"));
  m.def("summary_to_json", &summary_to_json, py::arg("summary"));

  m.attr("__version__") = "0.1.0";
}
