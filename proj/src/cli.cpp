#include "okb/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <thread>

#include "okb/errors.hpp"
#include "okb/okounkov.hpp"
#include "okb/problem.hpp"
#include "okb/sections.hpp"

namespace okb::cli {

unsigned thread_budget() {
  if (const char* env = std::getenv("OKB_THREADS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1) return static_cast<unsigned>(std::min<long>(v, 256));
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

namespace {

// Failure with a definite exit code; the message goes to stderr.
struct CommandError : std::runtime_error {
  CommandError(int code, const std::string& what) : std::runtime_error(what), code(code) {}
  int code;
};

struct Options {
  std::string problem;
  std::optional<std::size_t> tau;
  std::string out;
  std::uint64_t cap = kDefaultAdmissibleCap;
  std::vector<std::string> classes;
  bool vertices = false;
  bool volume = false;
  bool lattice = false;
  bool check = false;
  bool prune = false;
  bool projective = false;
  std::string off;
  std::string example;
  std::vector<std::string> example_args;
};

std::string read_input(const std::string& path) {
  std::ostringstream ss;
  if (path == "-") {
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CommandError(kMalformed, "cannot read '" + path + "'");
  ss << in.rdbuf();
  return ss.str();
}

ProblemFile load(const Options& o) {
  ProblemFile p;
  try {
    p = load_problem_text(read_input(o.problem));
  } catch (const MalformedInput& e) {
    throw CommandError(kMalformed, o.problem + ": " + e.what());
  }
  if (o.tau) p.tau = o.tau;
  return p;
}

ValidationReport validate(const ProblemFile& p, bool projective) {
  auto report = validate_fan(p.fan, {.check_projectivity = projective});
  if (!report.failed("structure")) report.merge(check_compatibility(p.fan, p.bundle));
  if (p.tau && *p.tau >= p.fan.max_cones.size())
    report.issues.push_back({"structure", std::nullopt,
                             "flag.tau = " + std::to_string(*p.tau) + " is not a maximal cone index"});
  return report;
}

void print_issues(const ValidationReport& r, std::ostream& err) {
  for (const auto& i : r.issues) {
    err << i.check << ": ";
    if (i.cone) err << "cone " << *i.cone + 1 << " (0-based " << *i.cone << "): ";
    err << i.detail << "\n";
  }
}

void print_warnings(const ProblemFile& p, std::ostream& err) {
  for (const auto& w : p.warnings) err << "warning: " << w << "\n";
}

struct Prepared {
  ProblemFile problem;
  FlagBasis basis;
  FlagContext ctx;
};

Prepared prepare(const Options& o, std::ostream& err) {
  Prepared s;
  s.problem = load(o);
  print_warnings(s.problem, err);
  auto report = validate(s.problem, o.projective);
  if (!report.ok()) {
    print_issues(report, err);
    throw CommandError(kValidationFailed, "validation failed");
  }
  s.basis = select_flag(s.problem.fan, s.problem.tau);
  s.ctx = derive_context(s.problem.fan, s.basis, s.problem.bundle);
  return s;
}

std::vector<DivisorClass> classes_for(const Options& o, const Prepared& s) {
  std::vector<DivisorClass> out;
  const std::size_t k = s.ctx.d - s.ctx.n;
  try {
    if (!o.classes.empty()) {
      for (const auto& text : o.classes) out.push_back(parse_class(text, k));
    } else {
      for (const auto& spec : s.problem.classes) out.push_back(resolve_class(spec, s.problem.fan, s.basis));
    }
  } catch (const std::invalid_argument& e) {
    throw CommandError(kValidationFailed, e.what());
  }
  if (out.empty()) out.push_back(DivisorClass{IntVector(k, 0), 1});
  return out;
}

// Runs job(i) for every class on up to thread_budget() workers and returns
// the results in class order. The first failure (by index) is rethrown.
std::vector<Json> per_class(std::size_t count, const std::function<Json(std::size_t)>& job) {
  std::vector<Json> results(count);
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < count;) {
      try {
        results[i] = job(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const unsigned n = static_cast<unsigned>(std::min<std::size_t>(thread_budget(), count));
  if (n <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < n; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return results;
}

Json class_json(const DivisorClass& cls) {
  Json j;
  j["coeffs"] = cls.coeffs;
  j["twist"] = cls.twist;
  j["text"] = to_string(cls);
  return j;
}

Json rational_vector(const RatVector& v) {
  Json j = Json::array();
  for (std::size_t i = 0; i < v.size(); ++i) j.push_back(rational_string(v[i]));
  return j;
}

Json integer_points(const std::vector<IntVector>& pts) { return Json(pts); }

Json inequality_json(const geom::HPolyhedron& p) {
  Json rows = Json::array(), eqs = Json::array();
  auto row = [](const geom::LinearInequality& q) {
    Json r = rational_vector(q.normal);
    r.push_back(rational_string(q.constant));
    return r;
  };
  for (const auto& q : p.inequalities()) rows.push_back(row(q));
  for (const auto& q : p.equations()) eqs.push_back(row(q));
  Json j;
  j["meaning"] = "row . (x, 1) >= 0; equations row . (x, 1) = 0";
  j["inequalities"] = rows;
  j["equations"] = eqs;
  return j;
}

std::vector<IntVector> to_int_points(const std::vector<RatVector>& pts) {
  std::vector<IntVector> out;
  out.reserve(pts.size());
  for (const auto& p : pts) out.push_back(p.to_ints());
  return out;
}

void write_off(const std::string& path, const geom::VPolytope& v) {
  const auto& pts = v.vertices;
  const auto fs = geom::facets(v);
  std::ostringstream s;
  s << "OFF\n" << pts.size() << " " << fs.size() << " 0\n";
  for (const auto& p : pts) s << p[0].get_d() << " " << p[1].get_d() << " " << p[2].get_d() << "\n";
  auto cross = [](const RatVector& a, const RatVector& b) {
    RatVector c(3);
    c[0] = a[1] * b[2] - a[2] * b[1];
    c[1] = a[2] * b[0] - a[0] * b[2];
    c[2] = a[0] * b[1] - a[1] * b[0];
    return c;
  };
  for (const auto& f : fs) {
    std::vector<std::size_t> on;
    for (std::size_t i = 0; i < pts.size(); ++i)
      if (f.value(pts[i]) == 0) on.push_back(i);
    RatVector centre(3);
    for (auto i : on) centre += pts[i];
    centre *= Rational(1, static_cast<long>(on.size()));
    // Facet normals point inward, so sorting clockwise about them gives
    // counter-clockwise order seen from outside.
    RatVector normal = f.normal * -1;
    const RatVector r0 = pts[on[0]] - centre;
    auto half = [&](const RatVector& p) {
      Rational s = dot(cross(r0, p), normal);
      return (s > 0 || (s == 0 && dot(r0, p) > 0)) ? 0 : 1;
    };
    std::sort(on.begin(), on.end(), [&](std::size_t a, std::size_t b) {
      RatVector pa = pts[a] - centre, pb = pts[b] - centre;
      int ha = half(pa), hb = half(pb);
      if (ha != hb) return ha < hb;
      return dot(cross(pa, pb), normal) > 0;
    });
    s << on.size();
    for (auto i : on) s << " " << i;
    s << "\n";
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw CommandError(kMalformed, "cannot write '" + path + "'");
  file << s.str();
}

Json header(const Prepared& s) {
  Json j;
  if (!s.problem.name.empty()) j["name"] = s.problem.name;
  j["flag"] = flag_json(s.basis);
  j["context"] = context_json(s.ctx);
  return j;
}

int cmd_validate(const Options& o, Json& result, std::ostream& err) {
  auto p = load(o);
  print_warnings(p, err);
  auto report = validate(p, o.projective);
  result = report_json(report);
  if (!p.warnings.empty()) result["warnings"] = p.warnings;
  print_issues(report, err);
  return report.ok() ? kOk : kValidationFailed;
}

int cmd_context(const Options& o, Json& result, std::ostream& err) {
  auto s = prepare(o, err);
  result = header(s);
  Json sets = Json::array();
  for (const auto& a : admissible_sets(s.ctx, o.cap)) {
    Json aj;
    aj["kind"] = to_string(a.kind);
    aj["rays"] = a.rays;
    sets.push_back(aj);
  }
  result["admissible_sets"] = sets;
  return kOk;
}

int cmd_cone(const Options& o, Json& result, std::ostream& err) {
  auto s = prepare(o, err);
  auto gc = global_cone(s.ctx, o.cap);
  if (o.prune) gc = prune_redundant(gc);
  result = header(s);
  result["cone"] = cone_json(gc);
  if (o.prune) result["cone"]["pruned"] = true;
  return kOk;
}

int cmd_body(const Options& o, Json& result, std::ostream& err) {
  auto s = prepare(o, err);
  const auto classes = classes_for(o, s);
  if (o.check)
    for (const auto& c : classes)
      if (c.twist < 0) throw CommandError(kValidationFailed, "--check needs twist >= 0, got class " + to_string(c));
  const auto gc = global_cone(s.ctx, o.cap);
  const bool want_verts = o.vertices || o.volume || !o.off.empty();

  std::vector<std::optional<geom::VPolytope>> off_shapes(classes.size());
  std::vector<char> failed(classes.size(), 0);
  auto bodies = per_class(classes.size(), [&](std::size_t k) {
    const auto& cls = classes[k];
    auto body = fiber_body(gc, cls, {.vertices = want_verts, .volume = o.volume});
    Json j;
    j["class"] = class_json(cls);
    Json ineq = inequality_json(body.body);
    j["inequalities"] = ineq["inequalities"];
    j["equations"] = ineq["equations"];
    j["meaning"] = ineq["meaning"];
    const bool feasible = geom::is_feasible(body.body);
    j["empty"] = !feasible;
    if (body.verts) {
      j["dim"] = body.verts->dim;
      j["is_big"] = body.verts->dim == static_cast<int>(s.ctx.n + 1);
    } else {
      j["is_big"] = is_big(gc, cls);
    }
    if (o.vertices) {
      Json vs = Json::array();
      for (const auto& v : body.verts->vertices) vs.push_back(rational_vector(v));
      j["vertices"] = vs;
    }
    if (o.volume) {
      j["volume"] = rational_string(*body.vol);
      Integer fact;
      mpz_fac_ui(fact.get_mpz_t(), s.ctx.n + 1);
      j["vol_class"] = rational_string(*body.vol * Rational(fact));
    }
    std::optional<std::vector<RatVector>> lattice;
    if (o.lattice) {
      lattice = feasible ? geom::lattice_points(body.body) : std::vector<RatVector>{};
      j["lattice_points"] = integer_points(to_int_points(*lattice));
    }
    if (o.check) {
      auto oracle = run_oracle(s.ctx, cls);
      auto report = check_against_oracle(gc, s.ctx, cls, oracle);
      j["h0"] = oracle.h0;
      j["valuations"] = integer_points(oracle.valuations);
      Json c;
      c["containment"] = report.containment;
      c["cardinality"] = report.cardinality;
      c["level_c_applicable"] = report.level_c_applicable;
      if (report.level_c_applicable) c["level_c_equality"] = report.level_c_equality;
      c["valuation_count"] = report.valuation_count;
      c["lattice_count"] = report.lattice_count;
      bool ok = report.passed();
      if (s.problem.split) {
        auto model = split_model_body(s.problem.fan, s.basis, s.problem.split->h1, s.problem.split->h2, cls);
        bool same = geom::poly_equal(model, body.body);
        c["split_model"] = same;
        ok = ok && same;
      }
      if (!report.outside_body.empty()) c["outside_body"] = integer_points(report.outside_body);
      if (!report.unmatched_lattice.empty()) c["unmatched_lattice"] = integer_points(report.unmatched_lattice);
      if (!report.unmatched_valuation.empty()) c["unmatched_valuation"] = integer_points(report.unmatched_valuation);
      c["passed"] = ok;
      j["checks"] = c;
      failed[k] = !ok;
    }
    if (!o.off.empty() && body.verts && s.ctx.n + 1 == 3 && body.verts->dim == 3) off_shapes[k] = body.verts;
    return j;
  });

  result = header(s);
  result["bodies"] = bodies;
  if (!o.off.empty())
    for (std::size_t k = 0; k < classes.size(); ++k)
      if (off_shapes[k]) write_off(o.off + "_" + std::to_string(k) + ".off", *off_shapes[k]);
  for (std::size_t k = 0; k < classes.size(); ++k)
    if (failed[k]) err << "check failed for class " << k + 1 << " (" << to_string(classes[k]) << ")\n";
  return std::any_of(failed.begin(), failed.end(), [](char f) { return f != 0; }) ? kCheckFailed : kOk;
}

int cmd_h0(const Options& o, Json& result, std::ostream& err) {
  auto s = prepare(o, err);
  const auto classes = classes_for(o, s);
  auto rows = per_class(classes.size(), [&](std::size_t k) {
    Json j;
    j["class"] = class_json(classes[k]);
    Json summands = Json::array();
    Int total = 0;
    if (classes[k].twist >= 0) {
      for (const auto& sm : isotypical_decomposition(s.ctx, classes[k])) {
        Json sj;
        sj["u"] = sm.u;
        sj["alpha0"] = sm.alpha0;
        sj["alphas"] = sm.alphas;
        sj["dim"] = sm.dim;
        summands.push_back(sj);
        total = checked_add(total, sm.dim);
      }
    }
    j["h0"] = total;
    j["summands"] = summands;
    return j;
  });
  result = header(s);
  result["h0"] = rows;
  return kOk;
}

int cmd_valuations(const Options& o, Json& result, std::ostream& err) {
  auto s = prepare(o, err);
  const auto classes = classes_for(o, s);
  auto rows = per_class(classes.size(), [&](std::size_t k) {
    auto vals = valuation_set(s.ctx, classes[k]);
    Json j;
    j["class"] = class_json(classes[k]);
    j["count"] = vals.size();
    j["valuations"] = integer_points(vals);
    return j;
  });
  result = header(s);
  result["valuations"] = rows;
  return kOk;
}

int cmd_example(const Options& o, Json& result, std::ostream&) {
  try {
    result = to_json(builtin_example(o.example, o.example_args));
  } catch (const UnknownExample& e) {
    std::string names;
    for (const auto& n : example_names()) names += "\n  " + n;
    throw CommandError(kMalformed, std::string(e.what()) + "; available examples:" + names);
  }
  return kOk;
}

void add_common(CLI::App* sub, Options& o, bool classes) {
  sub->add_option("problem", o.problem, "Problem file (JSON), or - for stdin")->required();
  sub->add_option("--tau", o.tau, "Maximal cone for the flag (0-based)");
  sub->add_option("--out", o.out, "Write the result here instead of stdout");
  sub->add_option("--cap", o.cap, "Maximum number of C-family admissible sets");
  sub->add_flag("--projective", o.projective, "Also check projectivity during validation");
  if (classes)
    sub->add_option("--class", o.classes, "Class as m_{n+1},...,m_d;w in flag order (repeatable)")
        ->allow_extra_args(false);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Exact Okounkov bodies of projectivized rank-two toric vector bundles", "okb"};
  app.require_subcommand(1);

  auto* validate_cmd = app.add_subcommand("validate", "Check the fan and the filtration data");
  validate_cmd->add_option("problem", o.problem, "Problem file (JSON), or - for stdin")->required();
  validate_cmd->add_option("--tau", o.tau, "Maximal cone for the flag (0-based)");
  validate_cmd->add_option("--out", o.out, "Write the report here instead of stdout");
  validate_cmd->add_flag("--projective", o.projective, "Also check projectivity");

  auto* context_cmd = app.add_subcommand("context", "Print the flag context and admissible sets");
  add_common(context_cmd, o, false);

  auto* cone_cmd = app.add_subcommand("cone", "Print the global cone inequalities");
  add_common(cone_cmd, o, false);
  cone_cmd->add_flag("--prune", o.prune, "Drop redundant inequalities");

  auto* body_cmd = app.add_subcommand("body", "Slice the global cone at classes");
  add_common(body_cmd, o, true);
  body_cmd->add_flag("--vertices", o.vertices, "Include vertices");
  body_cmd->add_flag("--volume", o.volume, "Include the exact volume");
  body_cmd->add_flag("--lattice", o.lattice, "Include lattice points");
  body_cmd->add_flag("--check", o.check, "Compare against the section oracle (exit 4 on failure)");
  body_cmd->add_option("--off", o.off, "Export 3-dimensional bodies as <prefix>_<k>.off");

  auto* h0_cmd = app.add_subcommand("h0", "Isotypical decomposition and h0");
  add_common(h0_cmd, o, true);

  auto* val_cmd = app.add_subcommand("valuations", "Valuation vectors of the sections");
  add_common(val_cmd, o, true);

  auto* example_cmd = app.add_subcommand("example", "Print a built-in problem file");
  example_cmd->add_option("name", o.example, "tangent-p2 | split-p1 | hirzebruch | pn-sum")->required();
  example_cmd->add_option("args", o.example_args, "Integer parameters of the example");
  example_cmd->add_option("--out", o.out, "Write the problem here instead of stdout");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kMalformed;
  }

  Json result;
  int code = kOk;
  try {
    if (*validate_cmd) code = cmd_validate(o, result, err);
    else if (*context_cmd) code = cmd_context(o, result, err);
    else if (*cone_cmd) code = cmd_cone(o, result, err);
    else if (*body_cmd) code = cmd_body(o, result, err);
    else if (*h0_cmd) code = cmd_h0(o, result, err);
    else if (*val_cmd) code = cmd_valuations(o, result, err);
    else code = cmd_example(o, result, err);
  } catch (const CommandError& e) {
    if (e.code != kValidationFailed || std::string(e.what()) != "validation failed") err << "error: " << e.what() << "\n";
    return e.code;
  } catch (const CapExceeded& e) {
    err << "error: " << e.what() << "\n";
    return kCapExceeded;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kValidationFailed;
  }

  const std::string text = result.dump(2) + "\n";
  if (o.out.empty()) {
    out << text;
  } else {
    std::ofstream file(o.out, std::ios::binary);
    if (!file) {
      err << "error: cannot write '" << o.out << "'\n";
      return kMalformed;
    }
    file << text;
  }
  return code;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run_cli(args, out, err);
}

}  // namespace okb::cli
