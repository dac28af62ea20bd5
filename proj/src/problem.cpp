#include "okb/problem.hpp"

#include <algorithm>
#include <sstream>

#include "okb/errors.hpp"

namespace okb::cli {

namespace {

Int get_int(const Json& j, const std::string& where) {
  if (!j.is_number_integer()) throw MalformedInput(where + ": expected an integer");
  return j.get<Int>();
}

IntVector get_int_array(const Json& j, const std::string& where) {
  if (!j.is_array()) throw MalformedInput(where + ": expected an array of integers");
  IntVector out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(get_int(j[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

std::size_t get_index(const Json& j, const std::string& where) {
  Int v = get_int(j, where);
  if (v < 0) throw MalformedInput(where + ": index must be nonnegative");
  return static_cast<std::size_t>(v);
}

const Json& require(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object()) throw MalformedInput(where + ": expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw MalformedInput(where + ": missing \"" + key + "\"");
  return *it;
}

ProblemFile split_problem(std::string name, Fan fan, IntVector h1, IntVector h2) {
  ProblemFile p;
  p.name = std::move(name);
  p.bundle = split_bundle(fan, h1, h2);
  p.fan = std::move(fan);
  p.split = SplitData{std::move(h1), std::move(h2)};
  return p;
}

Int parse_int_arg(const std::string& s, const std::string& example) {
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size() || s.empty()) throw UnknownExample(example + ": expected an integer argument, got '" + s + "'");
  return static_cast<Int>(v);
}

}  // namespace

ProblemFile parse_problem(const Json& j) {
  ProblemFile p;
  if (!j.is_object()) throw MalformedInput("top level: expected an object");
  if (auto it = j.find("name"); it != j.end() && it->is_string()) p.name = it->get<std::string>();

  const Json& fan = require(j, "fan", "top level");
  Int dim = get_int(require(fan, "dim", "fan"), "fan.dim");
  if (dim <= 0) throw MalformedInput("fan.dim: must be positive");
  p.fan.dim = static_cast<std::size_t>(dim);
  const Json& rays = require(fan, "rays", "fan");
  if (!rays.is_array()) throw MalformedInput("fan.rays: expected an array");
  for (std::size_t i = 0; i < rays.size(); ++i)
    p.fan.rays.push_back(get_int_array(rays[i], "fan.rays[" + std::to_string(i) + "]"));
  const Json& cones = require(fan, "max_cones", "fan");
  if (!cones.is_array()) throw MalformedInput("fan.max_cones: expected an array");
  for (std::size_t c = 0; c < cones.size(); ++c) {
    const std::string where = "fan.max_cones[" + std::to_string(c) + "]";
    if (!cones[c].is_array()) throw MalformedInput(where + ": expected an array");
    std::vector<std::size_t> cone;
    for (std::size_t i = 0; i < cones[c].size(); ++i)
      cone.push_back(get_index(cones[c][i], where + "[" + std::to_string(i) + "]"));
    p.fan.max_cones.push_back(std::move(cone));
  }

  const Json& filtrations = require(require(j, "bundle", "top level"), "filtrations", "bundle");
  if (!filtrations.is_array()) throw MalformedInput("bundle.filtrations: expected an array");
  for (std::size_t r = 0; r < filtrations.size(); ++r) {
    const std::string where = "bundle.filtrations[" + std::to_string(r) + "]";
    RayFiltration fl;
    fl.a = get_int(require(filtrations[r], "a", where), where + ".a");
    if (auto it = filtrations[r].find("jump"); it != filtrations[r].end() && !it->is_null()) {
      Int b = get_int(require(*it, "b", where + ".jump"), where + ".jump.b");
      IntVector line = get_int_array(require(*it, "line", where + ".jump"), where + ".jump.line");
      if (line.size() != 2) throw MalformedInput(where + ".jump.line: expected two integers");
      if (line[0] == 0 && line[1] == 0) throw MalformedInput(where + ".jump.line: the zero vector is not a line");
      ProjLine l(line[0], line[1]);
      if (!ProjLine::is_normalized(line[0], line[1]))
        p.warnings.push_back(where + ".jump.line (" + std::to_string(line[0]) + "," + std::to_string(line[1]) +
                             ") normalized to (" + std::to_string(l.lambda()) + "," + std::to_string(l.mu()) + ")");
      fl.jump = Jump{b, l};
    }
    p.bundle.filtrations.push_back(fl);
  }

  if (auto it = j.find("flag"); it != j.end() && !it->is_null()) {
    if (auto t = it->find("tau"); t != it->end() && !t->is_null()) p.tau = get_index(*t, "flag.tau");
  }

  if (auto it = j.find("classes"); it != j.end() && !it->is_null()) {
    if (!it->is_array()) throw MalformedInput("classes: expected an array");
    for (std::size_t k = 0; k < it->size(); ++k) {
      const std::string where = "classes[" + std::to_string(k) + "]";
      const Json& c = (*it)[k];
      ClassSpec spec;
      spec.twist = get_int(require(c, "twist", where), where + ".twist");
      if (auto co = c.find("coeffs"); co != c.end()) spec.coeffs = get_int_array(*co, where + ".coeffs");
      if (auto dv = c.find("divisor"); dv != c.end()) spec.divisor = get_int_array(*dv, where + ".divisor");
      if (spec.coeffs.has_value() == spec.divisor.has_value())
        throw MalformedInput(where + ": give exactly one of \"coeffs\" or \"divisor\"");
      p.classes.push_back(std::move(spec));
    }
  }

  if (auto it = j.find("split"); it != j.end() && !it->is_null()) {
    SplitData s{get_int_array(require(*it, "h1", "split"), "split.h1"),
                get_int_array(require(*it, "h2", "split"), "split.h2")};
    if (s.h1.size() != p.fan.rays.size() || s.h2.size() != p.fan.rays.size())
      throw MalformedInput("split: h1 and h2 need one value per ray");
    p.split = std::move(s);
  }
  return p;
}

ProblemFile load_problem_text(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    std::size_t line = 1, col = 1;
    const std::size_t end = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t i = 0; i < end; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw MalformedInput("JSON syntax error at line " + std::to_string(line) + ", column " + std::to_string(col) +
                         ": " + e.what());
  }
  return parse_problem(j);
}

Json to_json(const ProblemFile& p) {
  Json j;
  if (!p.name.empty()) j["name"] = p.name;
  Json fan;
  fan["dim"] = p.fan.dim;
  fan["rays"] = p.fan.rays;
  fan["max_cones"] = p.fan.max_cones;
  j["fan"] = fan;
  Json filtrations = Json::array();
  for (const auto& fl : p.bundle.filtrations) {
    Json f;
    f["a"] = fl.a;
    if (fl.jump) {
      Json jump;
      jump["b"] = fl.jump->b;
      jump["line"] = {fl.jump->line.lambda(), fl.jump->line.mu()};
      f["jump"] = jump;
    }
    filtrations.push_back(f);
  }
  j["bundle"]["filtrations"] = filtrations;
  if (p.tau) j["flag"]["tau"] = *p.tau;
  if (!p.classes.empty()) {
    Json classes = Json::array();
    for (const auto& c : p.classes) {
      Json cj;
      if (c.coeffs) cj["coeffs"] = *c.coeffs;
      if (c.divisor) cj["divisor"] = *c.divisor;
      cj["twist"] = c.twist;
      classes.push_back(cj);
    }
    j["classes"] = classes;
  }
  if (p.split) {
    j["split"]["h1"] = p.split->h1;
    j["split"]["h2"] = p.split->h2;
  }
  return j;
}

std::vector<std::string> example_names() {
  return {"tangent-p2", "split-p1 <a> <b>", "hirzebruch <e>", "pn-sum <n>"};
}

Fan projective_space_fan(std::size_t n) {
  Fan f;
  f.dim = n;
  for (std::size_t i = 0; i < n; ++i) {
    IntVector e(n, 0);
    e[i] = 1;
    f.rays.push_back(e);
  }
  f.rays.push_back(IntVector(n, -1));
  for (std::size_t skip = n + 1; skip-- > 0;) {
    std::vector<std::size_t> cone;
    for (std::size_t j = 0; j <= n; ++j)
      if (j != skip) cone.push_back(j);
    f.max_cones.push_back(cone);
  }
  return f;
}

// Jump lines are the spans of the ray generators themselves.
ProblemFile tangent_p2() {
  ProblemFile p;
  p.name = "tangent-p2";
  p.fan.dim = 2;
  p.fan.rays = {{1, 0}, {0, 1}, {-1, -1}};
  p.fan.max_cones = {{1, 2}, {2, 0}, {0, 1}};
  for (const auto& v : p.fan.rays) p.bundle.filtrations.push_back({0, Jump{1, ProjLine(v[0], v[1])}});
  p.classes = {ClassSpec{IntVector{0}, std::nullopt, 1}};
  return p;
}

// O(a) ⊕ O(b) on P^1, with O(k) = O(k·D_2).
ProblemFile split_p1(Int a, Int b) {
  auto p = split_problem("split-p1 " + std::to_string(a) + " " + std::to_string(b), projective_space_fan(1),
                         {0, -a}, {0, -b});
  p.fan.max_cones = {{0}, {1}};
  p.classes = {ClassSpec{IntVector{0}, std::nullopt, 1}};
  return p;
}

ProblemFile hirzebruch(Int e) {
  auto p = split_p1(0, -e);
  p.name = "hirzebruch " + std::to_string(e);
  return p;
}

// O ⊕ O(1) on P^n, with O(1) = O(D_{n+1}).
ProblemFile pn_sum(std::size_t n) {
  IntVector h1(n + 1, 0), h2(n + 1, 0);
  h2[n] = -1;
  auto p = split_problem("pn-sum " + std::to_string(n), projective_space_fan(n), h1, h2);
  p.classes = {ClassSpec{IntVector{0}, std::nullopt, 1}};
  return p;
}

ProblemFile builtin_example(const std::string& name, const std::vector<std::string>& args) {
  auto want = [&](std::size_t k) {
    if (args.size() != k)
      throw UnknownExample(name + ": expected " + std::to_string(k) + " argument(s), got " + std::to_string(args.size()));
  };
  if (name == "tangent-p2") {
    want(0);
    return tangent_p2();
  }
  if (name == "split-p1") {
    want(2);
    return split_p1(parse_int_arg(args[0], name), parse_int_arg(args[1], name));
  }
  if (name == "hirzebruch") {
    want(1);
    return hirzebruch(parse_int_arg(args[0], name));
  }
  if (name == "pn-sum") {
    want(1);
    Int n = parse_int_arg(args[0], name);
    if (n < 1 || n > 6) throw UnknownExample("pn-sum: n must be between 1 and 6");
    return pn_sum(static_cast<std::size_t>(n));
  }
  throw UnknownExample("unknown example '" + name + "'");
}

DivisorClass parse_class(const std::string& text, std::size_t expected_coeffs) {
  auto fail = [&](const std::string& why) { return InvalidInput("class '" + text + "': " + why); };
  auto semi = text.find(';');
  if (semi == std::string::npos || text.find(';', semi + 1) != std::string::npos)
    throw fail("expected the form m1,...,mk;w");
  auto parse_one = [&](std::string s) {
    s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }), s.end());
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (s.empty() || used != s.size()) throw fail("'" + s + "' is not an integer");
    return static_cast<Int>(v);
  };
  DivisorClass cls;
  std::string coeffs = text.substr(0, semi);
  bool blank = std::all_of(coeffs.begin(), coeffs.end(), [](unsigned char c) { return std::isspace(c); });
  if (!blank) {
    std::stringstream ss(coeffs);
    std::string item;
    while (std::getline(ss, item, ',')) cls.coeffs.push_back(parse_one(item));
  }
  cls.twist = parse_one(text.substr(semi + 1));
  if (cls.coeffs.size() != expected_coeffs)
    throw fail("expected " + std::to_string(expected_coeffs) + " coefficient(s) before ';'");
  return cls;
}

DivisorClass resolve_class(const ClassSpec& spec, const Fan& f, const FlagBasis& b) {
  if (spec.divisor) return normalize_class(f, b, *spec.divisor, spec.twist);
  if (spec.coeffs->size() != f.rays.size() - f.dim)
    throw InvalidInput("class has " + std::to_string(spec.coeffs->size()) + " coefficients, expected " +
                       std::to_string(f.rays.size() - f.dim));
  return DivisorClass{*spec.coeffs, spec.twist};
}

std::string rational_string(const Rational& q) { return q.get_str(); }

Json flag_json(const FlagBasis& b) {
  Json j;
  j["tau"] = b.tau;
  j["ray_order"] = b.ray_order;
  std::vector<std::size_t> one_based;
  for (auto r : b.ray_order) one_based.push_back(r + 1);
  j["ray_order_1based"] = one_based;
  j["dual"] = b.dual;
  return j;
}

Json context_json(const FlagContext& ctx) {
  auto line = [](const ProjLine& l) { return Json::array({l.lambda(), l.mu()}); };
  Json j;
  j["indexing"] = "0-based flag positions; flag position k is input ray flag.ray_order[k]";
  j["u1"] = ctx.u1;
  j["u2"] = ctx.u2;
  j["u1_standard"] = ctx.to_standard(ctx.u1);
  j["u2_standard"] = ctx.to_standard(ctx.u2);
  j["E1"] = line(ctx.E1);
  Json ls = Json::array();
  for (const auto& l : ctx.Ls) ls.push_back(line(l));
  j["Ls"] = ls;
  j["A"] = ctx.A;
  j["B"] = ctx.B;
  j["C"] = ctx.C;
  j["a"] = ctx.a;
  j["b"] = ctx.b;
  j["c"] = ctx.c;
  return j;
}

Json cone_json(const GlobalCone& gc) {
  Json j;
  j["coords"] = gc.coordinate_names();
  j["meaning"] = "row . coords >= 0";
  j["inequalities"] = gc.rows;
  Json prov = Json::array();
  for (const auto& p : gc.provenance) prov.push_back(describe(p));
  j["provenance"] = prov;
  j["count"] = gc.rows.size();
  return j;
}

Json report_json(const ValidationReport& r) {
  Json j;
  j["status"] = r.ok() ? "PASS" : "FAIL";
  Json issues = Json::array();
  for (const auto& i : r.issues) {
    Json ij;
    ij["check"] = i.check;
    if (i.cone) {
      ij["cone"] = *i.cone;
      ij["cone_1based"] = *i.cone + 1;
    }
    ij["detail"] = i.detail;
    issues.push_back(ij);
  }
  j["issues"] = issues;
  if (r.projective) j["projective"] = *r.projective;
  return j;
}

}  // namespace okb::cli
