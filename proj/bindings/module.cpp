#include "cbw/analysis.hpp"
#include "cbw/image.hpp"
#include "cbw/presets.hpp"
#include "cbw/scenario_io.hpp"

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <sstream>

namespace py = pybind11;

namespace
{

std::string join_errors(const std::vector<std::string>& errors)
{
    std::ostringstream oss;
    for (std::size_t i = 0; i < errors.size(); ++i)
    {
        if (i > 0)
        {
            oss << "; ";
        }
        oss << errors[i];
    }
    return oss.str();
}

} // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Transfer-matrix simulation of coupled Mach-Zehnder interferometer chains";

    py::register_exception<cbw::NoModulationError>(m, "NoModulationError", PyExc_RuntimeError);
    py::register_exception<cbw::WindowTooShortError>(m, "WindowTooShortError", PyExc_RuntimeError);
    py::register_exception<cbw::UndefinedVisibilityError>(m, "UndefinedVisibilityError",
                                                          PyExc_RuntimeError);

    // --- optics ---
    py::class_<cbw::FieldPair>(m, "FieldPair")
        .def(py::init<>())
        .def(py::init([](cbw::Complex upper, cbw::Complex lower) {
                 return cbw::FieldPair{upper, lower};
             }),
             py::arg("upper"), py::arg("lower"))
        .def_readwrite("upper", &cbw::FieldPair::upper)
        .def_readwrite("lower", &cbw::FieldPair::lower);

    py::class_<cbw::Matrix2>(m, "Matrix2")
        .def(py::init<>())
        .def(py::init([](cbw::Complex a11, cbw::Complex a12, cbw::Complex a21, cbw::Complex a22) {
                 return cbw::Matrix2{a11, a12, a21, a22};
             }),
             py::arg("a11"), py::arg("a12"), py::arg("a21"), py::arg("a22"))
        .def_readwrite("a11", &cbw::Matrix2::a11)
        .def_readwrite("a12", &cbw::Matrix2::a12)
        .def_readwrite("a21", &cbw::Matrix2::a21)
        .def_readwrite("a22", &cbw::Matrix2::a22)
        .def_static("identity", &cbw::Matrix2::identity)
        .def("__matmul__", [](const cbw::Matrix2& a, const cbw::Matrix2& b) { return a * b; })
        .def("__mul__", [](const cbw::Matrix2& a, const cbw::Matrix2& b) { return a * b; });

    m.def("bs_matrix", &cbw::bs_matrix);
    m.def("phase_matrix", &cbw::phase_matrix, py::arg("phi_rad"));
    m.def("coupling_matrix", &cbw::coupling_matrix, py::arg("psi_rad"));
    m.def("attenuation_matrix", &cbw::attenuation_matrix, py::arg("t_upper"), py::arg("t_lower"));
    m.def("mzi_matrix", &cbw::mzi_matrix, py::arg("phi_rad"));
    m.def("matmul", &cbw::matmul, py::arg("m"), py::arg("n"));
    m.def("apply", &cbw::apply, py::arg("m"), py::arg("f"));
    m.def("intensity", &cbw::intensity, py::arg("amplitude"));
    m.def("total_power", &cbw::total_power, py::arg("f"));
    m.def("is_unitary", &cbw::is_unitary, py::arg("m"), py::arg("eps"));

    // --- chain model ---
    py::class_<cbw::ArmSpec>(m, "ArmSpec")
        .def(py::init<>())
        .def(py::init([](double df, double phi0, double t) {
                 return cbw::ArmSpec{df, phi0, t};
             }),
             py::arg("freq_offset_hz") = 0.0, py::arg("initial_phase_rad") = 0.0,
             py::arg("transmission") = 1.0)
        .def_readwrite("freq_offset_hz", &cbw::ArmSpec::freq_offset_hz)
        .def_readwrite("initial_phase_rad", &cbw::ArmSpec::initial_phase_rad)
        .def_readwrite("transmission", &cbw::ArmSpec::transmission);

    py::class_<cbw::MziStage>(m, "MziStage")
        .def(py::init<>())
        .def(py::init([](cbw::ArmSpec upper, cbw::ArmSpec lower) {
                 return cbw::MziStage{upper, lower};
             }),
             py::arg("upper") = cbw::ArmSpec{}, py::arg("lower") = cbw::ArmSpec{})
        .def_readwrite("upper", &cbw::MziStage::upper)
        .def_readwrite("lower", &cbw::MziStage::lower);

    py::class_<cbw::CouplingSection>(m, "CouplingSection")
        .def(py::init<>())
        .def(py::init([](double psi, double tu, double tl) {
                 return cbw::CouplingSection{psi, tu, tl};
             }),
             py::arg("psi_rad") = 0.0, py::arg("upper_transmission") = 1.0,
             py::arg("lower_transmission") = 1.0)
        .def_readwrite("psi_rad", &cbw::CouplingSection::psi_rad)
        .def_readwrite("upper_transmission", &cbw::CouplingSection::upper_transmission)
        .def_readwrite("lower_transmission", &cbw::CouplingSection::lower_transmission);

    py::class_<cbw::Chain>(m, "Chain")
        .def(py::init<>())
        .def(py::init([](std::vector<cbw::ChainElement> elements) {
                 cbw::Chain c;
                 c.elements = std::move(elements);
                 return c;
             }),
             py::arg("elements"))
        .def_readwrite("elements", &cbw::Chain::elements)
        .def("stage_count", &cbw::Chain::stage_count)
        .def("coupling_count", &cbw::Chain::coupling_count)
        .def("block_count", &cbw::Chain::block_count);

    py::enum_<cbw::PathField>(m, "PathField")
        .value("transmission", cbw::PathField::transmission)
        .value("psi", cbw::PathField::psi)
        .value("freq_offset", cbw::PathField::freq_offset)
        .value("initial_phase", cbw::PathField::initial_phase);

    m.def("validate_chain", &cbw::validate_chain, py::arg("chain"));
    m.def("chain_matrix", &cbw::chain_matrix, py::arg("chain"), py::arg("phases"));
    m.def("monitor_matrices", &cbw::monitor_matrices, py::arg("chain"), py::arg("phases"));
    m.def("path_sum_oracle", &cbw::path_sum_oracle, py::arg("chain"), py::arg("phases"),
          py::arg("input"));
    m.def("canonical_cascade", &cbw::canonical_cascade, py::arg("n_blocks"), py::arg("delta_f_hz"));
    m.def("set_path", &cbw::set_path, py::arg("chain"), py::arg("path"), py::arg("field"),
          py::arg("value"));

    // --- time simulation ---
    py::class_<cbw::Event>(m, "Event")
        .def(py::init<>())
        .def(py::init([](double t, std::string path, cbw::PathField field, double value) {
                 return cbw::Event{t, std::move(path), field, value};
             }),
             py::arg("time_s"), py::arg("path"), py::arg("field"), py::arg("value"))
        .def_readwrite("time_s", &cbw::Event::time_s)
        .def_readwrite("path", &cbw::Event::path)
        .def_readwrite("field", &cbw::Event::field)
        .def_readwrite("value", &cbw::Event::value);

    py::class_<cbw::Scenario>(m, "Scenario")
        .def(py::init<>())
        .def_readwrite("chain", &cbw::Scenario::chain)
        .def_readwrite("events", &cbw::Scenario::events)
        .def_readwrite("t_start_s", &cbw::Scenario::t_start_s)
        .def_readwrite("t_end_s", &cbw::Scenario::t_end_s)
        .def_readwrite("sample_rate_hz", &cbw::Scenario::sample_rate_hz)
        .def_readwrite("input_intensity", &cbw::Scenario::input_intensity)
        .def_readwrite("wavelength_nm", &cbw::Scenario::wavelength_nm);

    py::class_<cbw::TimeSeries>(m, "TimeSeries")
        .def(py::init<>())
        .def_readwrite("times_s", &cbw::TimeSeries::times_s)
        .def_readwrite("channels", &cbw::TimeSeries::channels);

    m.def("validate_scenario", &cbw::validate_scenario, py::arg("scenario"));
    m.def("simulate", &cbw::simulate, py::arg("scenario"));
    m.def("event_timeline", &cbw::event_timeline, py::arg("scenario"));
    m.def("arm_phase", &cbw::arm_phase, py::arg("initial_phase_rad"), py::arg("history"),
          py::arg("t_s"));

    py::class_<cbw::FreqSegment>(m, "FreqSegment")
        .def(py::init([](double start, double df) { return cbw::FreqSegment{start, df}; }),
             py::arg("start_s"), py::arg("freq_offset_hz"))
        .def_readwrite("start_s", &cbw::FreqSegment::start_s)
        .def_readwrite("freq_offset_hz", &cbw::FreqSegment::freq_offset_hz);

    // --- analysis ---
    py::class_<cbw::PeriodEstimate>(m, "PeriodEstimate")
        .def_readonly("period_s", &cbw::PeriodEstimate::period_s)
        .def_readonly("crossings_used", &cbw::PeriodEstimate::crossings_used)
        .def_readonly("uncertainty_s", &cbw::PeriodEstimate::uncertainty_s);

    py::enum_<cbw::WavelengthKind>(m, "WavelengthKind")
        .value("cbw", cbw::WavelengthKind::cbw)
        .value("pbw", cbw::WavelengthKind::pbw);

    py::class_<cbw::WavelengthQuery>(m, "WavelengthQuery")
        .def(py::init([](double lambda0, int order, cbw::WavelengthKind kind) {
                 return cbw::WavelengthQuery{lambda0, order, kind};
             }),
             py::arg("lambda0_nm"), py::arg("order"), py::arg("kind"))
        .def_readwrite("lambda0_nm", &cbw::WavelengthQuery::lambda0_nm)
        .def_readwrite("order", &cbw::WavelengthQuery::order)
        .def_readwrite("kind", &cbw::WavelengthQuery::kind);

    m.def("estimate_period", &cbw::estimate_period, py::arg("series"), py::arg("channel"));
    m.def("visibility", &cbw::visibility, py::arg("series"), py::arg("channel"));
    m.def("frequency_component", &cbw::frequency_component, py::arg("series"), py::arg("channel"),
          py::arg("f_hz"));
    m.def("effective_wavelength", &cbw::effective_wavelength, py::arg("query"));
    m.def("slice", &cbw::slice, py::arg("series"), py::arg("t0_s"), py::arg("t1_s"));

    // --- images ---
    py::class_<cbw::FringeImage>(m, "FringeImage")
        .def_readonly("width", &cbw::FringeImage::width)
        .def_readonly("height", &cbw::FringeImage::height)
        .def_readonly("pixels", &cbw::FringeImage::pixels)
        .def_readonly("channel", &cbw::FringeImage::channel)
        .def_readonly("sample_time_s", &cbw::FringeImage::sample_time_s);

    m.def("bar_fringe_image", &cbw::bar_fringe_image, py::arg("scenario"), py::arg("channel"),
          py::arg("t_s"), py::arg("width"), py::arg("height"), py::arg("spatial_period_px"));
    m.def("newton_ring_image", &cbw::newton_ring_image, py::arg("scenario"), py::arg("channel"),
          py::arg("t_s"), py::arg("width"), py::arg("height"), py::arg("curvature_rad_per_px2"));
    m.def(
        "pgm_encode",
        [](const cbw::FringeImage& img) {
            const auto bytes = cbw::pgm_encode(img);
            return py::bytes(reinterpret_cast<const char*>(bytes.data()), bytes.size());
        },
        py::arg("image"));

    // --- presets and serialization ---
    m.def("preset", &cbw::preset, py::arg("name"), py::arg("n") = std::nullopt,
          py::arg("df_hz") = std::nullopt);
    m.def(
        "parse_scenario",
        [](const std::string& text) {
            cbw::ParseResult result = cbw::parse_scenario(text);
            if (!result.scenario)
            {
                throw py::value_error("invalid scenario: " + join_errors(result.errors));
            }
            return *result.scenario;
        },
        py::arg("json_text"));
    m.def("scenario_errors",
          [](const std::string& text) { return cbw::parse_scenario(text).errors; },
          py::arg("json_text"));
    m.def("serialize_scenario", &cbw::serialize_scenario, py::arg("scenario"));
    m.def("to_csv", &cbw::to_csv, py::arg("series"));
    m.def("read_csv", &cbw::read_csv, py::arg("text"));
}
