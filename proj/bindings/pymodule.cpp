#include "qrot/circuit.hpp"
#include "qrot/factor.hpp"
#include "qrot/families.hpp"
#include "qrot/funcspec.hpp"
#include "qrot/sim.hpp"
#include "qrot/synth.hpp"

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace qrot;

namespace {

FamilyId::Kind kind_of(const std::string& name) {
    if (name == "toffoli") return FamilyId::Kind::Toffoli;
    if (name == "adder") return FamilyId::Kind::Adder;
    if (name == "mux") return FamilyId::Kind::Mux;
    if (name == "qft") return FamilyId::Kind::Qft;
    throw FamilyError("unknown family '" + name + "'");
}

py::dict stats_dict(const Stats& s) {
    py::dict d;
    d["one_qubit"] = s.one_qubit;
    d["two_qubit"] = s.two_qubit;
    d["ancillae"] = s.ancillae;
    d["depth"] = s.depth;
    d["lines"] = s.lines;
    d["outputs"] = s.outputs;
    return d;
}

}  // namespace

PYBIND11_MODULE(_qrot, m) {
    m.doc() = "Rotation-gate synthesis toolkit";

    py::register_exception<ParseError>(m, "SpecParseError");
    py::register_exception<DiagramError>(m, "DiagramError");
    py::register_exception<CircuitError>(m, "CircuitError");
    py::register_exception<SimError>(m, "SimulationError");
    py::register_exception<FamilyError>(m, "FamilyError");

    m.def("angle_add", [](const std::string& a, const std::string& b) {
        return (Angle::parse(a) + Angle::parse(b)).str();
    });
    m.def("angle_negate", [](const std::string& a) { return Angle::parse(a).negated().str(); });
    m.def("angle_half_difference", [](const std::string& a2, const std::string& a1) {
        return Angle::half_difference(Angle::parse(a2), Angle::parse(a1)).str();
    });

    m.def(
        "synth",
        [](const std::string& spec_text, bool restore_inputs, bool inplace_target,
           const std::vector<std::string>& order) {
            FunctionSpec spec = parse_spec(spec_text);
            SynthOptions opts;
            opts.restore_inputs = restore_inputs;
            opts.inplace_target = inplace_target;
            opts.order = order;
            SynthResult res = synth_spec(spec, opts);
            py::dict d;
            d["circuit"] = write_text(res.circuit);
            d["forms"] = res.forms;
            d["stats"] = stats_dict(res.statistics);
            return d;
        },
        py::arg("spec"), py::arg("restore_inputs") = true, py::arg("inplace_target") = true,
        py::arg("order") = std::vector<std::string>{});

    m.def("verify", [](const std::string& circuit_text, const std::string& spec_text) {
        Verdict v = verify_circuit(read_text(circuit_text), parse_spec(spec_text));
        py::dict d;
        d["pass"] = v.pass;
        d["max_amplitude_deviation"] = v.max_deviation;
        if (!v.pass) d["counterexample"] = v.counterexample;
        py::list outs;
        for (const auto& [name, ok] : v.outputs) {
            py::dict o;
            o["name"] = name;
            o["pass"] = ok;
            outs.append(o);
        }
        d["outputs"] = outs;
        return d;
    });

    m.def("family", [](const std::string& name, int n) {
        return write_text(generate(FamilyId{kind_of(name), n}));
    });
    m.def("predict", [](const std::string& name, int n) {
        CostPrediction p = predict(FamilyId{kind_of(name), n});
        py::dict d;
        d["two_qubit"] = p.two_qubit;
        d["ancillae"] = p.ancillae;
        if (p.depth_bound) d["depth_bound"] = *p.depth_bound;
        return d;
    });

    m.def("stats", [](const std::string& circuit_text) {
        return stats_dict(stats(read_text(circuit_text)));
    });
    m.def("circuit_depth", [](const std::string& circuit_text) {
        return depth(read_text(circuit_text));
    });
    m.def("merge_rotations", [](const std::string& circuit_text) {
        return write_text(merge_rotations(read_text(circuit_text)));
    });
    m.def("inverse", [](const std::string& circuit_text) {
        return write_text(inverse(read_text(circuit_text)));
    });
}
