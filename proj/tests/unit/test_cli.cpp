#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "okb/cli.hpp"
#include "okb/problem.hpp"

using namespace okb;
using namespace okb::cli;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

// A file in the temp directory that is removed on scope exit.
struct TempFile {
  std::filesystem::path path;
  explicit TempFile(const std::string& name, const std::string& text)
      : path(std::filesystem::temp_directory_path() / name) {
    std::ofstream(path) << text;
  }
  ~TempFile() { std::filesystem::remove(path); }
  std::string str() const { return path.string(); }
};

std::string example_text(std::vector<std::string> args) {
  args.insert(args.begin(), "example");
  auto r = run(args);
  REQUIRE(r.code == 0);
  return r.out;
}

}  // namespace

TEST_CASE("every builtin round-trips through validate") {
  for (auto args : std::vector<std::vector<std::string>>{
           {"tangent-p2"}, {"split-p1", "0", "0"}, {"split-p1", "1", "-1"}, {"hirzebruch", "1"}, {"pn-sum", "2"}}) {
    TempFile f("okb_builtin.json", example_text(args));
    auto r = run({"validate", f.str()});
    CHECK(r.code == kOk);
    CHECK(Json::parse(r.out)["status"] == "PASS");
    // Reloading and re-serializing gives the same bytes.
    CHECK(to_json(load_problem_text(example_text(args))).dump(2) + "\n" == example_text(args));
  }
}

TEST_CASE("example: contents and errors") {
  auto j = Json::parse(example_text({"tangent-p2"}));
  CHECK(j["fan"]["rays"] == Json::parse("[[1,0],[0,1],[-1,-1]]"));
  CHECK(j["bundle"]["filtrations"][2]["jump"]["line"] == Json::parse("[1,1]"));

  auto split = Json::parse(example_text({"split-p1", "0", "0"}));
  for (const auto& f : split["bundle"]["filtrations"]) CHECK_FALSE(f.contains("jump"));

  auto r = run({"example", "nope"});
  CHECK(r.code == kMalformed);
  CHECK(r.out.empty());
  CHECK(r.err.find("tangent-p2") != std::string::npos);
  CHECK(run({"example", "split-p1", "1"}).code == kMalformed);
}

TEST_CASE("validate: malformed and invalid inputs") {
  std::string text = example_text({"tangent-p2"});
  TempFile truncated("okb_truncated.json", text.substr(0, text.size() / 2));
  auto r = run({"validate", truncated.str()});
  CHECK(r.code == kMalformed);
  CHECK(r.out.empty());
  CHECK(r.err.find("line") != std::string::npos);
  CHECK(r.err.find("column") != std::string::npos);

  TempFile missing("okb_missing.json", R"({"fan": {"dim": 2, "rays": [], "max_cones": []}})");
  CHECK(run({"validate", missing.str()}).code == kMalformed);
  CHECK(run({"validate", "/nonexistent/okb.json"}).code == kMalformed);

  // Three distinct jump lines on the first cone of P^3.
  auto bad = Json::parse(R"({
    "fan": {"dim": 3, "rays": [[1,0,0],[0,1,0],[0,0,1],[-1,-1,-1]],
            "max_cones": [[0,1,2],[0,1,3],[0,2,3],[1,2,3]]},
    "bundle": {"filtrations": [{"a": 0, "jump": {"b": 1, "line": [1,0]}},
                               {"a": 0, "jump": {"b": 1, "line": [0,1]}},
                               {"a": 0, "jump": {"b": 1, "line": [1,1]}},
                               {"a": 0}]}})");
  TempFile three("okb_three.json", bad.dump());
  r = run({"validate", three.str()});
  CHECK(r.code == kValidationFailed);
  auto report = Json::parse(r.out);
  CHECK(report["status"] == "FAIL");
  CHECK(report["issues"][0]["cone"] == 0);
  CHECK(r.err.find("cone 1 (0-based 0)") != std::string::npos);
  CHECK(run({"cone", three.str()}).code == kValidationFailed);
}

TEST_CASE("lines are normalized on load with a warning") {
  auto j = Json::parse(example_text({"tangent-p2"}));
  j["bundle"]["filtrations"][2]["jump"]["line"] = Json::parse("[-2,-2]");
  auto p = parse_problem(j);
  CHECK(p.bundle.filtrations[2].jump->line == ProjLine(1, 1));
  REQUIRE(p.warnings.size() == 1);
  TempFile f("okb_warn.json", j.dump());
  auto r = run({"validate", f.str()});
  CHECK(r.code == kOk);
  CHECK(r.err.find("warning") != std::string::npos);
}

TEST_CASE("cone: tangent bundle and split rows") {
  TempFile f("okb_tp2.json", example_text({"tangent-p2"}));
  auto r = run({"cone", f.str()});
  REQUIRE(r.code == kOk);
  auto cone = Json::parse(r.out)["cone"];
  CHECK(cone["count"] == 6);
  CHECK(cone["coords"] == Json::parse(R"(["x1","x2","x3","w3","w"])"));

  TempFile s("okb_split.json", example_text({"split-p1", "1", "-1"}));
  auto sc = Json::parse(run({"cone", s.str()}).out)["cone"];
  for (const auto& p : sc["provenance"]) CHECK(p.get<std::string>()[0] != 'C');
}

TEST_CASE("cone: the admissible cap gives exit 3") {
  // Any two-dimensional fan is compatible; four distinct lines off tau give
  // a C-family of 2^4 - 1 = 15 sets.
  Json j;
  j["fan"]["dim"] = 2;
  j["fan"]["rays"] = Json::parse("[[1,0],[1,1],[0,1],[-1,0],[-1,-1],[0,-1]]");
  j["fan"]["max_cones"] = Json::parse("[[0,1],[1,2],[2,3],[3,4],[4,5],[5,0]]");
  j["bundle"]["filtrations"] = Json::parse(R"([
    {"a": 0, "jump": {"b": 1, "line": [1,0]}}, {"a": 0, "jump": {"b": 1, "line": [0,1]}},
    {"a": 0, "jump": {"b": 1, "line": [1,1]}}, {"a": 0, "jump": {"b": 1, "line": [1,2]}},
    {"a": 0, "jump": {"b": 1, "line": [1,3]}}, {"a": 0, "jump": {"b": 1, "line": [1,4]}}])");
  TempFile f("okb_cap.json", j.dump());
  auto ok = run({"cone", f.str()});
  REQUIRE(ok.code == kOk);
  auto r = run({"cone", f.str(), "--cap", "2"});
  CHECK(r.code == kCapExceeded);
  CHECK(r.out.empty());
  CHECK(r.err.find("cap is 2") != std::string::npos);
}

TEST_CASE("body: volume, checks and determinism") {
  TempFile f("okb_tp2b.json", example_text({"tangent-p2"}));
  auto r = run({"body", f.str(), "--class", "0;1", "--volume", "--vertices", "--lattice", "--check"});
  REQUIRE(r.code == kOk);
  auto body = Json::parse(r.out)["bodies"][0];
  CHECK(body["volume"] == "1");
  CHECK(body["vol_class"] == "6");
  CHECK(body["h0"] == 8);
  CHECK(body["valuations"].size() == 8);
  CHECK(body["lattice_points"].size() == 8);
  CHECK(body["vertices"].size() == 7);
  CHECK(body["checks"]["level_c_equality"] == true);
  CHECK(body["checks"]["passed"] == true);

  auto again = run({"body", f.str(), "--class", "0;1", "--volume", "--vertices", "--lattice", "--check"});
  CHECK(again.out == r.out);

  auto many = run({"body", f.str(), "--class", "0;1", "--class", "1;2", "--class", "0;0", "--volume"});
  REQUIRE(many.code == kOk);
  auto bodies = Json::parse(many.out)["bodies"];
  REQUIRE(bodies.size() == 3);
  CHECK(bodies[1]["class"]["text"] == "1;2");
  CHECK(bodies[2]["is_big"] == false);

  CHECK(run({"body", f.str(), "--class", "0;-1", "--check"}).code == kValidationFailed);
  CHECK(run({"body", f.str(), "--class", "0,1;1"}).code == kValidationFailed);
  CHECK(run({"body", f.str(), "--frobnicate"}).code == kMalformed);
}

TEST_CASE("body: split models pass the cross-check") {
  TempFile f("okb_splitb.json", example_text({"split-p1", "0", "-1"}));
  for (std::string cls : {"0;1", "2;3", "-1;2"}) {
    auto r = run({"body", f.str(), "--class", cls, "--check"});
    CHECK(r.code == kOk);
    CHECK(Json::parse(r.out)["bodies"][0]["checks"]["split_model"] == true);
  }
}

TEST_CASE("h0, valuations, context and --out") {
  TempFile f("okb_tp2c.json", example_text({"tangent-p2"}));
  auto h = Json::parse(run({"h0", f.str(), "--class", "0;1"}).out);
  CHECK(h["h0"][0]["h0"] == 8);
  CHECK(h["h0"][0]["summands"].size() == 7);

  auto v = Json::parse(run({"valuations", f.str(), "--class", "0;1"}).out);
  CHECK(v["valuations"][0]["count"] == 8);

  auto c = Json::parse(run({"context", f.str()}).out);
  CHECK(c["context"]["u1"] == Json::parse("[1,0]"));
  CHECK(c["admissible_sets"].size() == 4);

  auto alt = Json::parse(run({"context", f.str(), "--tau", "0"}).out);
  CHECK(alt["flag"]["ray_order"] == Json::parse("[1,2,0]"));

  auto target = std::filesystem::temp_directory_path() / "okb_out.json";
  auto r = run({"cone", f.str(), "--out", target.string()});
  CHECK(r.code == kOk);
  CHECK(r.out.empty());
  CHECK(std::filesystem::exists(target));
  std::filesystem::remove(target);
}

TEST_CASE("body: OFF export") {
  TempFile f("okb_tp2d.json", example_text({"tangent-p2"}));
  auto prefix = (std::filesystem::temp_directory_path() / "okb_shape").string();
  REQUIRE(run({"body", f.str(), "--class", "0;1", "--off", prefix}).code == kOk);
  std::ifstream in(prefix + "_0.off");
  std::string magic;
  std::size_t nv = 0, nf = 0, ne = 0;
  in >> magic >> nv >> nf >> ne;
  CHECK(magic == "OFF");
  CHECK(nv == 7);
  CHECK(nf == 6);
  in.close();
  std::filesystem::remove(prefix + "_0.off");
}

TEST_CASE("class syntax") {
  CHECK(parse_class("1,-2;3", 2) == DivisorClass{{1, -2}, 3});
  CHECK(parse_class(" 4 ; 0", 1) == DivisorClass{{4}, 0});
  CHECK(parse_class(";2", 0) == DivisorClass{{}, 2});
  CHECK_THROWS(parse_class("1;2;3", 1));
  CHECK_THROWS(parse_class("1,x;2", 2));
  CHECK_THROWS(parse_class("1", 1));
}
