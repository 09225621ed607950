#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "cli.hpp"
#include "hermlat/genus.hpp"
#include "hermlat/json_io.hpp"
#include "hermlat/symbols.hpp"

namespace py = pybind11;
using namespace hermlat;

namespace {

DetClass det_arg(long p, int det) {
    if (det == 1) return trivial_class(p);
    if (det == 2) return det_class_of(Rational(2), p);
    throw Error(ErrorCode::InvalidInput, "det must be 1 or 2");
}

std::string genera_json(long p, int n, const std::string& ring) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& s : genus_enumerate(p, n, parse_ring(ring))) arr.push_back(symbol_json(s));
    return arr.dump();
}

std::string glue_json(long p, int n, const std::string& ring, int index) {
    Ring r = parse_ring(ring);
    auto g = genus_enumerate(p, n, r);
    if (index < 1 || index > static_cast<int>(g.size())) throw Error(ErrorCode::InvalidInput, "index out of range");
    const GenusSymbol& s = g[index - 1];
    HermLattice L = glue_lattice(s);
    return serialize_gram_document(gram_document_of(L, r));
}

py::tuple run_cli(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int code;
    {
        py::gil_scoped_release release;
        code = cli::main_entry(args, out, err);
    }
    return py::make_tuple(code, out.str(), err.str());
}

}  // namespace

PYBIND11_MODULE(_hermlat, m) {
    py::register_exception<Error>(m, "HermlatError", PyExc_ValueError);

    m.def("hilbert", [](const std::string& a, const std::string& b, long ell) {
        return hilbert(parse_rational(a), parse_rational(b), ell);
    });
    m.def("artin", &artin);
    m.def("exists", [](long p, int n, const std::string& ring, int det) {
        return exists_modular(p, n, parse_ring(ring), det_arg(p, det));
    }, py::arg("p"), py::arg("n"), py::arg("ring") = "ok", py::arg("det") = 1);
    m.def("genera_json", &genera_json, py::arg("p"), py::arg("n"), py::arg("ring") = "ok");
    m.def("sigma_json", [](long p, int n) { return sigma_json(sigma_report(p, n)).dump(); });
    m.def("glue_json", &glue_json, py::arg("p"), py::arg("n"), py::arg("ring") = "ok", py::arg("index") = 1);
    m.def("run_cli", &run_cli);
}
