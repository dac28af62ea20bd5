#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "okb/cli.hpp"
#include "okb/errors.hpp"
#include "okb/okounkov.hpp"
#include "okb/problem.hpp"
#include "okb/sections.hpp"

namespace py = pybind11;
using namespace okb;

namespace {

py::object fraction(const Rational& q) {
  py::object cls = py::module_::import("fractions").attr("Fraction");
  return cls(cli::rational_string(q));
}

py::list fraction_vector(const RatVector& v) {
  py::list out;
  for (const auto& x : v) out.append(fraction(x));
  return out;
}

py::list constraint_rows(const std::vector<geom::LinearInequality>& rows) {
  py::list out;
  for (const auto& r : rows) {
    py::list row = fraction_vector(r.normal);
    row.append(fraction(r.constant));
    out.append(row);
  }
  return out;
}

py::object json_to_python(const cli::Json& j) {
  py::object loads = py::module_::import("json").attr("loads");
  return loads(j.dump());
}

// A loaded problem with its flag data derived on first use.
class Problem {
 public:
  explicit Problem(cli::ProblemFile p) : p_(std::move(p)) {}

  static Problem from_json(const std::string& text) { return Problem(cli::load_problem_text(text)); }
  static Problem example(const std::string& name, const std::vector<std::string>& args) {
    return Problem(cli::builtin_example(name, args));
  }

  std::string to_json() const { return cli::to_json(p_).dump(2) + "\n"; }
  std::string name() const { return p_.name; }
  std::size_t dim() const { return p_.fan.dim; }
  std::size_t num_rays() const { return p_.fan.rays.size(); }
  std::vector<std::string> warnings() const { return p_.warnings; }

  py::object validate(bool projective) const {
    auto report = validate_fan(p_.fan, {.check_projectivity = projective});
    report.merge(check_compatibility(p_.fan, p_.bundle));
    return json_to_python(cli::report_json(report));
  }

  py::object context() {
    ensure();
    cli::Json j;
    j["flag"] = cli::flag_json(basis_);
    j["context"] = cli::context_json(*ctx_);
    return json_to_python(j);
  }

  py::object cone() {
    ensure();
    return json_to_python(cli::cone_json(*gc_));
  }

  DivisorClass cls(const std::vector<Int>& coeffs, Int twist) {
    ensure();
    if (coeffs.size() != ctx_->d - ctx_->n)
      throw InvalidInput("expected " + std::to_string(ctx_->d - ctx_->n) + " coefficients, got " +
                         std::to_string(coeffs.size()));
    if (twist < 0) throw InvalidInput("twist must be nonnegative");
    return DivisorClass{coeffs, twist};
  }

  py::dict body(const std::vector<Int>& coeffs, Int twist, bool vertices, bool volume, bool lattice) {
    auto c = cls(coeffs, twist);
    OkounkovBody b;
    {
      py::gil_scoped_release release;
      b = fiber_body(*gc_, c, {.vertices = vertices, .volume = volume});
    }
    py::dict out;
    out["inequalities"] = constraint_rows(b.body.inequalities());
    out["equations"] = constraint_rows(b.body.equations());
    out["is_big"] = is_big(*gc_, c);
    if (b.verts) {
      py::list vs;
      for (const auto& v : b.verts->vertices) vs.append(fraction_vector(v));
      out["vertices"] = vs;
      out["dim"] = b.verts->dim;
    }
    if (b.vol) out["volume"] = fraction(*b.vol);
    if (lattice) {
      py::list pts;
      for (const auto& v : geom::lattice_points(b.body)) pts.append(py::tuple(py::cast(v.to_ints())));
      out["lattice_points"] = pts;
    }
    return out;
  }

  py::object vol_class(const std::vector<Int>& coeffs, Int twist) { return fraction(vol_of_class(*gc_ptr(), cls(coeffs, twist))); }
  bool big(const std::vector<Int>& coeffs, Int twist) { return is_big(*gc_ptr(), cls(coeffs, twist)); }
  Int sections(const std::vector<Int>& coeffs, Int twist) { return h0(*ctx_ptr(), cls(coeffs, twist)); }

  std::vector<py::tuple> valuations(const std::vector<Int>& coeffs, Int twist) {
    std::vector<py::tuple> out;
    for (const auto& v : valuation_set(*ctx_ptr(), cls(coeffs, twist))) out.push_back(py::tuple(py::cast(v)));
    return out;
  }

  py::dict check(const std::vector<Int>& coeffs, Int twist) {
    auto c = cls(coeffs, twist);
    CheckReport r;
    {
      py::gil_scoped_release release;
      r = check_against_oracle(*gc_, *ctx_, c, run_oracle(*ctx_, c));
    }
    py::dict out;
    out["containment"] = r.containment;
    out["cardinality"] = r.cardinality;
    out["level_c_applicable"] = r.level_c_applicable;
    out["level_c_equality"] = r.level_c_equality;
    out["h0"] = r.h0;
    out["valuation_count"] = r.valuation_count;
    out["lattice_count"] = r.lattice_count;
    out["passed"] = r.passed();
    return out;
  }

 private:
  void ensure() {
    if (gc_) return;
    basis_ = select_flag(p_.fan, p_.tau);
    ctx_ = derive_context(p_.fan, basis_, p_.bundle);
    gc_ = global_cone(*ctx_);
  }
  const GlobalCone* gc_ptr() { ensure(); return &*gc_; }
  const FlagContext* ctx_ptr() { ensure(); return &*ctx_; }

  cli::ProblemFile p_;
  FlagBasis basis_;
  std::optional<FlagContext> ctx_;
  std::optional<GlobalCone> gc_;
};

}  // namespace

PYBIND11_MODULE(_okb, m) {
  m.doc() = "Exact Okounkov bodies of projectivized rank-two toric vector bundles";

  auto base = py::register_exception<InvalidInput>(m, "InvalidInput", PyExc_ValueError);
  py::register_exception<cli::MalformedInput>(m, "MalformedInput", PyExc_ValueError);
  py::register_exception<cli::UnknownExample>(m, "UnknownExample", PyExc_ValueError);
  py::register_exception<IncompatibleData>(m, "IncompatibleData", PyExc_ValueError);
  py::register_exception<CapExceeded>(m, "CapExceeded", PyExc_RuntimeError);
  (void)base;

  m.def("example_names", &cli::example_names);

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        int code;
        {
          py::gil_scoped_release release;
          code = cli::run_cli(args, out, err);
        }
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Run the okb command line with the given arguments; returns (exit_code, stdout, stderr).");

  py::class_<Problem>(m, "Problem")
      .def_static("from_json", &Problem::from_json, py::arg("text"))
      .def_static("example", &Problem::example, py::arg("name"), py::arg("args") = std::vector<std::string>{})
      .def("to_json", &Problem::to_json)
      .def_property_readonly("name", &Problem::name)
      .def_property_readonly("dim", &Problem::dim)
      .def_property_readonly("num_rays", &Problem::num_rays)
      .def_property_readonly("warnings", &Problem::warnings)
      .def("validate", &Problem::validate, py::arg("projective") = false)
      .def("context", &Problem::context)
      .def("cone", &Problem::cone)
      .def("body", &Problem::body, py::arg("coeffs"), py::arg("twist"), py::arg("vertices") = false,
           py::arg("volume") = false, py::arg("lattice") = false)
      .def("vol_class", &Problem::vol_class, py::arg("coeffs"), py::arg("twist"))
      .def("is_big", &Problem::big, py::arg("coeffs"), py::arg("twist"))
      .def("h0", &Problem::sections, py::arg("coeffs"), py::arg("twist"))
      .def("valuations", &Problem::valuations, py::arg("coeffs"), py::arg("twist"))
      .def("check", &Problem::check, py::arg("coeffs"), py::arg("twist"));
}
