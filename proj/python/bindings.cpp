#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "escatter/density_matrix.hpp"
#include "escatter/entropy.hpp"
#include "escatter/error.hpp"
#include "escatter/geometry.hpp"
#include "escatter/kinematics.hpp"
#include "escatter/spin.hpp"

#define STRINGIFY(x) #x
#define MACRO_STRINGIFY(x) STRINGIFY(x)

namespace py = pybind11;
using namespace escatter;

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Entanglement entropies of electron-electron Coulomb scattering";

    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);

    py::enum_<SpinChannel>(m, "SpinChannel")
        .value("SPINLESS", SpinChannel::kSpinless)
        .value("PARALLEL", SpinChannel::kParallel)
        .value("ANTIPARALLEL", SpinChannel::kAntiparallel)
        .value("DISTINGUISHABLE", SpinChannel::kDistinguishableBySpinFilter);

    py::enum_<GridKind>(m, "GridKind")
        .value("RINGS", GridKind::kRings)
        .value("SPHERE", GridKind::kSpherePixels)
        .value("MERIDIAN", GridKind::kMeridian)
        .value("EQUATOR", GridKind::kEquatorRing);

    py::class_<ScatterContext>(m, "ScatterContext")
        .def_readonly("energy_ha", &ScatterContext::energy_ha)
        .def_readonly("k", &ScatterContext::k)
        .def_readonly("extension", &ScatterContext::extension)
        .def_readonly("sigma", &ScatterContext::sigma)
        .def_readonly("sigma_k", &ScatterContext::sigma_k)
        .def_readonly("b_bar", &ScatterContext::b_bar)
        .def_readonly("epsilon", &ScatterContext::epsilon)
        .def_readonly("delta_theta", &ScatterContext::delta_theta)
        .def_readonly("k_scale", &ScatterContext::k_scale)
        .def_property_readonly("q_min", &ScatterContext::q_min)
        .def_property_readonly("q_max", &ScatterContext::q_max);

    py::class_<AngularGrid>(m, "AngularGrid")
        .def_readonly("kind", &AngularGrid::kind)
        .def_readonly("theta_lo", &AngularGrid::theta_lo)
        .def_readonly("theta_hi", &AngularGrid::theta_hi)
        .def_readonly("n_cells", &AngularGrid::n_cells)
        .def_readonly("delta_theta", &AngularGrid::delta_theta)
        .def_readonly("origin", &AngularGrid::origin)
        .def("lower", &AngularGrid::lower)
        .def("upper", &AngularGrid::upper)
        .def("center", &AngularGrid::center);

    m.def("make_context", &make_context, py::arg("energy_ev"), py::arg("extension_nm"),
          py::arg("k_scale") = 1.0, "Kinematics for energy [eV] and packet extension [nm]");

    m.def("direct_amplitude", &direct_amplitude, py::arg("theta"), py::arg("k"));
    m.def("exchange_amplitude", &exchange_amplitude, py::arg("theta"), py::arg("k"));
    m.def("differential_probability", &differential_probability, py::arg("theta"),
          py::arg("k"), py::arg("channel"));

    m.def("ring_grid", &ring_grid, py::arg("ctx"), py::arg("channel"));
    m.def("ring_grid_with_cells", &ring_grid_with_cells, py::arg("ctx"),
          py::arg("channel"), py::arg("n_cells"));
    m.def("meridian_grid", &meridian_grid, py::arg("ctx"), py::arg("n_cells"));
    m.def("postselect_grid", &postselect_grid, py::arg("ctx"), py::arg("theta_r"));
    m.def("equator_grid", &equator_grid, py::arg("delta_theta"));
    m.def("sphere_pixel_count", py::overload_cast<ScatterContext const&>(&sphere_pixel_count),
          py::arg("ctx"));

    m.def("shannon_bits",
          [](std::vector<double> const& p) { return shannon_bits(p); }, py::arg("p"));
    m.def("shannon_ring_discrete",
          [](ScatterContext const& ctx, SpinChannel ch, unsigned threads) {
              py::gil_scoped_release release;
              return shannon_ring_discrete(ctx, ch, threads);
          },
          py::arg("ctx"), py::arg("channel"), py::arg("threads") = 1);
    m.def("shannon_ring_jaynes",
          py::overload_cast<ScatterContext const&, SpinChannel>(&shannon_ring_jaynes),
          py::arg("ctx"), py::arg("channel"));
    m.def("shannon_sphere_discrete",
          [](ScatterContext const& ctx, SpinChannel ch, unsigned threads) {
              py::gil_scoped_release release;
              return shannon_sphere_discrete(ctx, ch, threads);
          },
          py::arg("ctx"), py::arg("channel"), py::arg("threads") = 1);
    m.def("shannon_sphere_jaynes", &shannon_sphere_jaynes, py::arg("ctx"),
          py::arg("channel"));

    m.def("entropy_parallel",
          [](ScatterContext const& ctx, AngularGrid const& grid) {
              auto const r = entropy_parallel(ctx, grid);
              return py::make_tuple(r.entropy, r.modified);
          },
          py::arg("ctx"), py::arg("grid"), "(S, S - 1) for parallel spins");
    m.def("entropy_antiparallel",
          [](ScatterContext const& ctx, AngularGrid const& grid) {
              auto const r = entropy_antiparallel(ctx, grid);
              return py::make_tuple(r.entropy, r.modified);
          },
          py::arg("ctx"), py::arg("grid"), "(S, S - 1) for antiparallel spins");
    m.def("equator_entropies",
          [](double delta_theta, std::size_t n_selected) {
              auto const r = equator_entropies(delta_theta, n_selected);
              py::dict d;
              d["n_selected"] = r.n_selected;
              d["n_ring"] = r.n_ring;
              d["parallel_modified"] = r.parallel_modified;
              d["antiparallel_modified"] = r.antiparallel_modified;
              return d;
          },
          py::arg("delta_theta"), py::arg("n_selected") = 0);
    m.def("postselect_range_sweep",
          [](ScatterContext const& ctx, std::vector<double> const& theta_r) {
              auto const rows = postselect_range_sweep(ctx, theta_r);
              py::list out;
              for (auto const& r : rows)
              {
                  py::dict d;
                  d["theta_r"] = r.theta_r;
                  d["n_cells"] = r.n_cells;
                  d["spinless"] = r.spinless;
                  d["parallel_modified"] = r.parallel_modified;
                  d["antiparallel_modified"] = r.antiparallel_modified;
                  d["delta"] = r.delta;
                  d["status"] = r.status;
                  out.append(d);
              }
              return out;
          },
          py::arg("ctx"), py::arg("theta_r"));

    m.def("build_meridian_matrix",
          [](ScatterContext const& ctx, std::size_t n_grid, std::size_t grid_cap,
             unsigned threads) {
              DensityMatrix dm;
              {
                  py::gil_scoped_release release;
                  dm = build_meridian_matrix(ctx, n_grid, grid_cap, threads);
              }
              return py::make_tuple(dm.theta, dm.rho);
          },
          py::arg("ctx"), py::arg("n_grid"), py::arg("grid_cap") = kDefaultGridCap,
          py::arg("threads") = 1, "(theta, rho) of the trace-normalized meridian matrix");
    m.def("von_neumann_entropy",
          [](Eigen::MatrixXd const& rho) {
              auto spectrum = symmetric_eigenvalues(rho);
              for (double& v : spectrum)
              {
                  if (v < 0 && v >= -1e-10)
                      v = 0;
              }
              return von_neumann_entropy(spectrum);
          },
          py::arg("rho"), "-Tr rho log2 rho of a symmetric unit-trace matrix");
    m.def("vn_compare",
          [](ScatterContext const& ctx, std::size_t n_grid, unsigned threads) {
              VnComparison c;
              {
                  py::gil_scoped_release release;
                  c = vn_compare(ctx, n_grid, kDefaultGridCap, threads);
              }
              py::dict d;
              d["n_grid"] = c.n_grid;
              d["von_neumann"] = c.von_neumann;
              d["diagonal"] = c.diagonal;
              d["ring_matched"] = c.ring_matched;
              d["ring_detector"] = c.ring_detector;
              return d;
          },
          py::arg("ctx"), py::arg("n_grid"), py::arg("threads") = 1);

    m.def("sweep_energies",
          [](std::vector<double> const& energies_ev, double extension_nm,
             SpinChannel channel, GridKind geometry, double k_scale, unsigned threads) {
              std::vector<SweepRow> rows;
              {
                  py::gil_scoped_release release;
                  rows = sweep_energies(energies_ev, extension_nm, channel, geometry,
                                        k_scale, threads);
              }
              py::list out;
              for (auto const& r : rows)
              {
                  py::dict d;
                  d["energy_ev"] = r.energy_ev;
                  d["n_cells"] = r.n_cells;
                  d["entropy"] = r.entropy;
                  d["modified"] = r.modified;
                  d["jaynes"] = r.jaynes;
                  d["status"] = r.status;
                  out.append(d);
              }
              return out;
          },
          py::arg("energies_ev"), py::arg("extension_nm"),
          py::arg("channel") = SpinChannel::kSpinless, py::arg("geometry") = GridKind::kRings,
          py::arg("k_scale") = 1.0, py::arg("threads") = 1);

#ifdef VERSION_INFO
    m.attr("__version__") = MACRO_STRINGIFY(VERSION_INFO);
#else
    m.attr("__version__") = "dev";
#endif
}
