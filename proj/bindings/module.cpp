// Python bindings. Scalars cross the boundary as fractions.Fraction and
// matrices as lists of rows.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "mmt/codegen.hpp"
#include "mmt/constructions.hpp"
#include "mmt/errors.hpp"
#include "mmt/parser.hpp"
#include "mmt/transforms.hpp"

namespace py = pybind11;
using namespace mmt;

namespace {

Scalar to_scalar(const py::handle& h) {
  if (py::isinstance<py::str>(h)) return parse_scalar(h.cast<std::string>());
  py::object frac = py::module_::import("fractions").attr("Fraction")(h);
  return parse_scalar(py::str(frac).cast<std::string>());
}

py::object from_scalar(const Scalar& s) {
  return py::module_::import("fractions").attr("Fraction")(to_string(s));
}

Matrix to_matrix(const py::handle& h) {
  std::vector<std::vector<Scalar>> rows;
  for (const auto& row : h) {
    std::vector<Scalar> r;
    for (const auto& x : row) r.push_back(to_scalar(x));
    if (!rows.empty() && r.size() != rows.front().size()) throw DimensionError("ragged matrix rows");
    rows.push_back(std::move(r));
  }
  if (rows.empty()) throw DimensionError("empty matrix");
  Matrix m(rows.size(), rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) m(i + 1, j + 1) = rows[i][j];
  return m;
}

py::list from_matrix(const Matrix& m) {
  py::list rows;
  for (std::size_t i = 1; i <= m.rows(); ++i) {
    py::list row;
    for (std::size_t j = 1; j <= m.cols(); ++j) row.append(from_scalar(m.at(i, j)));
    rows.append(row);
  }
  return rows;
}

IsotropyGroup group_by_name(const std::string& name) {
  if (name == "klein") return klein_group();
  throw ValueError("unknown group '" + name + "'");
}

py::dict correction(const std::string& group, const py::object& multiple) {
  const Scalar mult = to_scalar(multiple);
  CorrectionResult r;
  MonomialOrbitPartition partition;
  CorrectionShape shape;
  if (group == "cyclic") {
    partition = cyclic_partition();
    shape = cyclic_correction_shape();
    r = correction_term(partition, shape, mult);
  } else {
    const IsotropyGroup g = group_by_name(group);
    partition = monomial_partition(g);
    shape = klein_correction_shape();
    r = correction_term(g, shape, mult);
  }
  py::list reps, coeffs, printed;
  for (const auto& m : shape.representatives) reps.append(py::make_tuple(m.i, m.j, m.k));
  for (const auto& c : r.coefficients) coeffs.append(from_scalar(c));
  for (const auto& c : r.printed) printed.append(from_scalar(c));
  py::dict out;
  out["representatives"] = reps;
  out["coefficients"] = coeffs;
  out["printed"] = printed;
  out["discrepancies"] = r.discrepancies();
  out["identity_holds"] = decomposition_identity_holds(partition, shape, r.coefficients, mult);
  out["correction"] = r.correction;
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact arithmetic for matrix multiplication tensors";

  auto base = py::register_exception<Error>(m, "MmtError", PyExc_ValueError);
  py::register_exception<DimensionError>(m, "DimensionError", base.ptr());
  py::register_exception<IndexError>(m, "IndexError", base.ptr());
  py::register_exception<SingularError>(m, "SingularError", base.ptr());
  py::register_exception<ParseError>(m, "ParseError", base.ptr());
  py::register_exception<ValueError>(m, "InvalidValueError", base.ptr());

  py::class_<Tensor>(m, "Tensor")
      .def_property_readonly("dim", &Tensor::dim)
      .def("__len__", &Tensor::size)
      .def("terms",
           [](const Tensor& t) {
             py::list out;
             for (const auto& term : t.terms())
               out.append(py::make_tuple(from_matrix(term.a), from_matrix(term.b), from_matrix(term.c)));
             return out;
           })
      .def("__str__", &print_trilinear)
      .def("__repr__", [](const Tensor& t) {
        return "<Tensor dim=" + std::to_string(t.dim()) + " terms=" + std::to_string(t.size()) + ">";
      })
      .def("__eq__", [](const Tensor& x, const Tensor& y) { return x == y; });

  m.def("parse", [](const std::string& text, const py::object& lam, std::size_t dim) {
    return parse_trilinear(text, to_scalar(lam), dim);
  }, py::arg("text"), py::arg("lam") = 1, py::arg("dim") = 0);
  m.def("to_text", &print_trilinear);
  m.def("read_json", [](const std::string& text) { return read_tensor_file(text); });
  m.def("write_json", [](const Tensor& t) { return write_tensor_file(t); });

  m.def("builtin", [](const std::string& name, const py::object& lam) { return builtin_tensor(name, to_scalar(lam)); },
        py::arg("name"), py::arg("lam") = 1);
  m.def("builtin_names", &builtin_tensor_names);
  m.def("laderman_variant", [](const py::object& lam) { return laderman_variant(to_scalar(lam)); },
        py::arg("lam") = 1);

  m.def("verify", &is_matmul_tensor, "True when the tensor equals the n x n multiplication tensor");
  m.def("decomposition_length", &decomposition_length);
  m.def("tensor_type", [](const Tensor& t) {
    py::dict out;
    for (const auto& [triple, count] : tensor_type(t).counts)
      out[py::make_tuple(triple[0], triple[1], triple[2])] = count;
    return out;
  });
  m.def("same_form", &form_equal);
  m.def("merge", &merge_shared_factors);
  m.def("project", [](const Tensor& t, std::size_t i, std::size_t j, std::size_t k) {
    return tensor_project(t, {i, j, k});
  });
  m.def("orbit_sum", [](const std::string& group, const Tensor& t) { return orbit_sum(group_by_name(group), t); });
  m.def("correction", &correction, py::arg("group") = "klein", py::arg("multiple") = 1);

  m.def("contract12", [](const Tensor& t, const py::object& a, const py::object& b) {
    return from_matrix(contract12(t, to_matrix(a), to_matrix(b)));
  });
  m.def("multiply", [](const Tensor& t, const py::object& a, const py::object& b) {
    return from_matrix(evaluate(extract_schedule(t), to_matrix(a), to_matrix(b)));
  }, "Product A*B through the tensor's bilinear schedule");
  m.def("emit_code", [](const Tensor& t, bool annotated) {
    return emit_code(extract_schedule(t), annotated ? CodeStyle::Annotated : CodeStyle::Flat);
  }, py::arg("tensor"), py::arg("annotated") = false);
  m.def("op_count", [](const Tensor& t) {
    const OpCount c = op_count(extract_schedule(t));
    py::dict out;
    out["multiplications"] = c.multiplications;
    out["additions"] = c.additions;
    out["scalar_multiplications"] = c.scalar_multiplications;
    return out;
  });
  m.def("recursive_multiply", [](const Tensor& t, const py::object& a, const py::object& b, std::size_t threshold) {
    const RecursiveProduct r = recursive_multiply(t, to_matrix(a), to_matrix(b), threshold);
    return py::make_tuple(from_matrix(r.product), r.multiplications);
  }, py::arg("tensor"), py::arg("a"), py::arg("b"), py::arg("threshold") = 1);
}
