#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "sedsim/cli.hpp"
#include "sedsim/ensemble.hpp"
#include "sedsim/version.hpp"
#include "sedsim/zpfield.hpp"

namespace py = pybind11;
using namespace sedsim;

namespace {

RunConfig config_from_json_str(const std::string& text) {
  return RunConfig::from_json(nlohmann::json::parse(text));
}

std::string config_to_json_str(const RunConfig& cfg) { return cfg.to_json().dump(2); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Classical hydrogen electron under zero-point radiation";
  m.attr("__version__") = kVersion;

  py::class_<PhysicalConstants>(m, "PhysicalConstants")
      .def(py::init<>())
      .def_readwrite("e", &PhysicalConstants::e)
      .def_readwrite("m", &PhysicalConstants::m)
      .def_readwrite("c", &PhysicalConstants::c)
      .def_readwrite("hbar", &PhysicalConstants::hbar);

  m.def("bohr_radius", &bohr_radius, py::arg("constants") = PhysicalConstants{});
  m.def("circular_frequency", &circular_frequency, py::arg("r"),
        py::arg("constants") = PhysicalConstants{});
  m.def("circular_speed", &circular_speed, py::arg("r"),
        py::arg("constants") = PhysicalConstants{});
  m.def("qm_radial_density", &qm_radial_density, py::arg("r"), py::arg("bohr"));

  py::class_<CavityConfig>(m, "CavityConfig")
      .def(py::init<>())
      .def_readwrite("lx", &CavityConfig::lx)
      .def_readwrite("ly", &CavityConfig::ly)
      .def_readwrite("lz", &CavityConfig::lz)
      .def_readwrite("r_cutoff", &CavityConfig::r_cutoff)
      .def("omega_min", &CavityConfig::omega_min)
      .def("omega_max", &CavityConfig::omega_max);

  py::enum_<FieldMode>(m, "FieldMode")
      .value("window", FieldMode::window)
      .value("full", FieldMode::full);

  py::class_<RunConfig>(m, "RunConfig")
      .def(py::init<>())
      .def_static("from_json", &config_from_json_str, py::arg("text"))
      .def("to_json", &config_to_json_str)
      .def("validate", &RunConfig::validate)
      .def("apply_override", &RunConfig::apply_override, py::arg("key"), py::arg("value"))
      .def_readwrite("constants", &RunConfig::constants)
      .def_readwrite("cavity", &RunConfig::cavity)
      .def_readwrite("window_fraction", &RunConfig::window_fraction)
      .def_readwrite("field_mode", &RunConfig::field_mode)
      .def_readwrite("seed", &RunConfig::seed)
      .def_readwrite("r0", &RunConfig::r0)
      .def_readwrite("t_end", &RunConfig::t_end)
      .def_readwrite("snapshot_times", &RunConfig::snapshot_times)
      .def_readwrite("zero_field", &RunConfig::zero_field)
      .def_readwrite("radiation_reaction", &RunConfig::radiation_reaction)
      .def_readwrite("trajectory_sample_dt", &RunConfig::trajectory_sample_dt)
      .def_readwrite("checkpoint_interval", &RunConfig::checkpoint_interval)
      .def_readwrite("progress_interval", &RunConfig::progress_interval);

  m.def("mode_count", &mode_count, py::arg("cavity"), py::arg("constants"));
  m.def("max_mode_index", &max_mode_index, py::arg("cavity"), py::arg("constants"));
  m.def("mode_frequency", &mode_frequency, py::arg("n"), py::arg("cavity"),
        py::arg("constants"));
  m.def(
      "window_bounds",
      [](double r, double f, const PhysicalConstants& k) {
        const WindowBounds b = window_bounds(r, f, k);
        return py::make_tuple(b.omega_lo, b.omega_hi);
      },
      py::arg("r"), py::arg("f"), py::arg("constants") = PhysicalConstants{});

  py::enum_<WaveDirection>(m, "WaveDirection")
      .value("plus_z", WaveDirection::plus_z)
      .value("minus_z", WaveDirection::minus_z);
  py::enum_<Polarization>(m, "Polarization")
      .value("x", Polarization::x)
      .value("y", Polarization::y);

  py::class_<FieldRealization>(m, "FieldRealization")
      .def(py::init([](std::uint64_t seed, const CavityConfig& cavity,
                       const PhysicalConstants& constants, bool table) {
             return FieldRealization(seed, cavity, constants,
                                     table ? FieldRealization::Storage::table
                                           : FieldRealization::Storage::on_demand);
           }),
           py::arg("seed"), py::arg("cavity"), py::arg("constants") = PhysicalConstants{},
           py::arg("table") = true)
      .def_property_readonly("n_max", &FieldRealization::n_max)
      .def_property_readonly("omega_min", &FieldRealization::omega_min)
      .def_property_readonly("volume", &FieldRealization::volume)
      .def("window_indices",
           [](const FieldRealization& f, double r, double fraction) {
             const WindowRange w = f.window_indices(r, fraction);
             return py::make_tuple(w.n_lo, w.n_hi);
           })
      .def("amplitudes",
           [](const FieldRealization& f, std::int64_t n, WaveDirection dir, Polarization pol) {
             const ModeAmplitudes a = f.mode_amplitudes({n, dir, pol});
             return py::make_tuple(a.a, a.b);
           })
      .def("fields_at", [](const FieldRealization& f, double t, std::int64_t n_lo,
                           std::int64_t n_hi) {
        const EmFields em = f.fields_at(t, WindowRange{n_lo, n_hi});
        return py::make_tuple(py::make_tuple(em.e.x, em.e.y, em.e.z),
                              py::make_tuple(em.b.x, em.b.y, em.b.z));
      });

  py::class_<RadialHistogram>(m, "RadialHistogram")
      .def(py::init<double, double>(), py::arg("bin_width"), py::arg("r_max"))
      .def("accumulate", &RadialHistogram::accumulate, py::arg("r"), py::arg("dt"))
      .def("merge", &RadialHistogram::merge)
      .def_property_readonly("total_time", &RadialHistogram::total_time)
      .def_property_readonly("weights", &RadialHistogram::weights)
      .def("normalize", [](const RadialHistogram& h) {
        const auto table = h.normalize();
        return py::make_tuple(table.r_center, table.p);
      });

  m.def("l1_distance_to_qm", [](const std::vector<double>& r_center,
                                const std::vector<double>& p, double bin_width, double bohr) {
    RadialHistogram::DensityTable table{r_center, p, bin_width};
    return l1_distance_to_qm(table, bohr);
  });

  py::class_<TrajectorySample>(m, "TrajectorySample")
      .def_readonly("t", &TrajectorySample::t)
      .def_readonly("r", &TrajectorySample::r);

  py::class_<RunResult>(m, "RunResult")
      .def_readonly("seed", &RunResult::seed)
      .def_readonly("end_time", &RunResult::end_time)
      .def_readonly("trajectory", &RunResult::trajectory)
      .def_property_readonly("completed", &RunResult::completed)
      .def_property_readonly("status",
                             [](const RunResult& r) {
                               switch (r.status) {
                                 case StopReason::reached_target: return "completed";
                                 case StopReason::collapse: return "collapse";
                                 case StopReason::ionization: return "ionization";
                                 case StopReason::stiffness: return "stiffness";
                               }
                               return "unknown";
                             })
      .def_property_readonly("final_r", [](const RunResult& r) { return r.final_state.radius(); })
      .def_property_readonly("histogram", [](const RunResult& r) { return r.histogram; });

  py::class_<SnapshotReport>(m, "SnapshotReport")
      .def_readonly("t_avg", &SnapshotReport::t_avg)
      .def_readonly("l1_to_qm", &SnapshotReport::l1_to_qm)
      .def_readonly("run_count", &SnapshotReport::run_count)
      .def_property_readonly("density", [](const SnapshotReport& s) {
        return py::make_tuple(s.density.r_center, s.density.p);
      });

  m.def("run_single", [](const RunConfig& cfg, std::uint64_t seed) {
    cfg.validate();
    return run_single(cfg, seed);
  }, py::arg("config"), py::arg("seed"),
     py::call_guard<py::gil_scoped_release>());

  m.def("run_campaign",
        [](const RunConfig& cfg, const std::vector<std::uint64_t>& seeds, int workers) {
          CampaignResult result = run_campaign(cfg, seeds, workers);
          return std::make_pair(std::move(result.runs), std::move(result.snapshots));
        },
        py::arg("config"), py::arg("seeds"), py::arg("workers") = 1,
        py::call_guard<py::gil_scoped_release>());
}
