#include "siegel/tasks.hpp"

#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sys/wait.h>

using namespace siegel;
using namespace siegel::io;

namespace {

ProblemFile problem(const std::string& text) { return parse_problem(Json::parse(text)); }

Json strip_timing(Json report) {
  report.erase("timing");
  return report;
}

Json run(const ProblemFile& p, const RunConfig& cfg = {}) {
  return serialize_report(make_report(p, cfg, run_task(p.task, p, cfg), 0.0));
}

int cli(const std::string& args) {
  int status = std::system((std::string(SIEGEL_CLI_PATH) + " " + args + " >/dev/null 2>&1").c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::filesystem::path scratch(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / "siegel_io_test";
  std::filesystem::create_directories(dir);
  return dir / name;
}

void write(const std::filesystem::path& path, const std::string& text) { std::ofstream(path) << text; }

const char* kTwoLines = R"({"schemaVersion":1,"task":"search","field":"Q",
  "W":{"constraints":[],"ambient":2},"Vs":[{"basis":[["1","0"]]},{"basis":[["0","1"]]}]})";

}  // namespace

TEST_CASE("scalars, vectors and fields") {
  const auto Q = FieldDescriptor::rationals(), QI = FieldDescriptor::gaussian();
  CHECK(rational_from("-3/6") == Rat(-1, 2));
  CHECK(rational_from(Json(7)) == 7);
  CHECK_THROWS_AS(rational_from(Json(0.5)), MalformedInput);
  CHECK_THROWS_AS(rational_from("1/0"), MalformedInput);
  CHECK(scalar_from(Json::array({"1", "-2"}), QI) == GaussRat(1, -2));
  CHECK_THROWS_AS(scalar_from(Json::array({"1", "-2"}), Q), MalformedInput);
  CHECK(scalar_json(GaussRat(Rat(1, 3)), Q) == "1/3");
  CHECK(field_from(field_json(FieldDescriptor::symbolic(3, 1, 1, 23))) == FieldDescriptor::symbolic(3, 1, 1, 23));
  CHECK_THROWS_AS(field_from("R"), MalformedInput);
  CHECK(decimal_up(Rat(1, 3), 4) == "0.3334");
  CHECK(decimal_down(Rat(1, 3), 4) == "0.3333");
  CHECK(decimal_up(Rat(-1, 3), 4) == "-0.3333");
  CHECK(decimal_up(Rat(4), 4) == "4");
  CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
  CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
}

TEST_CASE("problem files round-trip") {
  std::mt19937_64 rng(113);
  for (const auto& f : {FieldDescriptor::rationals(), FieldDescriptor::gaussian()}) {
    for (int trial = 0; trial < 50; ++trial) {
      ProblemFile p;
      p.task = "search";
      p.field = f;
      auto rows = [&](std::size_t k, std::size_t n) {
        std::vector<KVector> out(k, KVector(n));
        for (auto& r : out)
          for (auto& c : r) {
            Rat re(static_cast<long>(rng() % 11) - 5, 1 + static_cast<long>(rng() % 4));
            re.canonicalize();
            c = GaussRat(re, f.kind == FieldKind::QI ? Rat(static_cast<long>(rng() % 7) - 3) : Rat(0));
          }
        return out;
      };
      p.W = SubspaceSpec{trial % 2 == 1, rows(1 + rng() % 2, 3), std::nullopt};
      if (trial % 3 == 0) p.W->ambient = 3;
      for (std::size_t i = 0; i < rng() % 3; ++i) p.Vs.push_back({false, rows(1, 3), std::nullopt});
      if (trial % 4 == 0) p.s = 1;
      if (trial % 5 == 0) p.params["R"] = "3/2";
      Json j = serialize_problem(p);
      CHECK(parse_problem(j) == p);
      CHECK(parse_problem(Json::parse(j.dump())) == p);
      CHECK(input_digest(parse_problem(Json::parse(j.dump(2)))) == input_digest(p));
    }
  }
}

TEST_CASE("malformed problems are rejected") {
  CHECK_THROWS_AS(problem("[]"), MalformedInput);
  CHECK_THROWS_AS(problem(R"({"task":"search","field":"Q"})"), MalformedInput);
  CHECK_THROWS_AS(problem(R"({"schemaVersion":2,"task":"search","field":"Q"})"), MalformedInput);
  CHECK_THROWS_AS(problem(R"({"schemaVersion":1,"task":"search","field":"Q","W":{"basis":[["1"]],"constraints":[]}})"),
                  MalformedInput);
  CHECK_THROWS_AS(problem(R"({"schemaVersion":1,"task":"search","field":"Q","W":{"basis":[["1","2"],["3"]]}})"),
                  MalformedInput);
  CHECK_THROWS_AS(problem(R"({"schemaVersion":1,"task":"search","field":"Q","W":{"basis":[[["1","2"]]]}})"),
                  MalformedInput);
  ProblemFile p = problem(R"({"schemaVersion":1,"task":"count-adelic","field":"Q"})");
  CHECK_THROWS_AS(run_task("count-adelic", p, {}), MalformedInput);
  CHECK_THROWS_AS(run_task("search", p, {}), MalformedInput);
  CHECK_THROWS_AS(run_task("nope", problem(R"({"schemaVersion":1,"task":"nope","field":"Q"})"), {}), MalformedInput);
}

TEST_CASE("reports round-trip and are deterministic") {
  ProblemFile p = problem(kTwoLines);
  Json a = run(p), b = run(p);
  CHECK(a == b);
  CHECK(parse_report(a) == parse_report(b));
  CHECK(serialize_report(parse_report(a)) == a);
  ReportFile r = make_report(p, {}, run_task("search", p, {}), 1.5);
  CHECK(strip_timing(serialize_report(r)) == strip_timing(a));
  CHECK(r.input_digest == input_digest(p));
}

TEST_CASE("task examples") {
  SUBCASE("search") {
    Json c = run(problem(kTwoLines))["results"]["certificate"];
    CHECK(c["witness"] == Json::array({"1", "1"}));
    CHECK(c["bounds"]["R2"]["upper"] == "4");
    CHECK(c["bounds"]["R1"]["roundedUp"] == true);
  }
  SUBCASE("bounds") {
    ProblemFile p = problem(kTwoLines);
    p.task = "bounds";
    Json r = run(p)["results"];
    CHECK(r["R2"]["decimal"] == "4");
    CHECK(r["R1"]["decimal"].get<std::string>().rfind("547.30", 0) == 0);
    CHECK(r["main"]["decimal"].get<std::string>().rfind("4944.3", 0) == 0);
    CHECK(r["maxR"] == "R1");
  }
  SUBCASE("bounds from explicit parameters over a symbolic field") {
    Json r = run(problem(R"({"schemaVersion":1,"task":"bounds","field":{"symbolic":{"d":2,"r1":0,"r2":1,"absDisc":"4"}},
      "params":{"N":2,"w":2,"s":1,"heightSqW":"1","vs":[{"dim":1,"heightSq":"1"}]}})"))["results"];
    CHECK(r["siegel"]["upper"] == "2");
    CHECK_FALSE(r.contains("n10"));
    CHECK(r.contains("extend"));
  }
  SUBCASE("count-adelic") {
    Json r = run(problem(R"({"schemaVersion":1,"task":"count-adelic","field":"Q","W":{"constraints":[["1","1","1"]]},"R":"1"})"))["results"];
    CHECK(r["count"] == "7");
    CHECK(r["lower"]["value"] == "0");
    CHECK(r["upper"]["decimal"].get<std::string>().rfind("9.2426", 0) == 0);
    CHECK(r["points"].size() == 7);
  }
  SUBCASE("count-adelic respects the point cap") {
    RunConfig cfg;
    cfg.points_cap = 3;
    Json r = run(problem(R"({"schemaVersion":1,"task":"count-adelic","field":"QI","W":{"basis":[[["1","0"],["0","1"]]]},"RSq":"1"})"),
                 cfg)["results"];
    CHECK(r["count"] == "5");
    CHECK(r["points"].size() == 3);
    CHECK(r["truncated"] == true);
  }
  SUBCASE("height and subspace-height") {
    Json h = run(problem(R"({"schemaVersion":1,"task":"height","field":"QI","x":[["3","0"],["3/2","3/2"]]})"))["results"];
    CHECK(h["canonical"] == Json::parse(R"([["1","1"],["0","1"]])"));
    Json s = run(problem(R"({"schemaVersion":1,"task":"subspace-height","field":"Q","W":{"constraints":[["1","1","1"]]}})"))["results"];
    CHECK(s["height"]["sq"] == "3");
    CHECK(s["dim"] == 2);
  }
  SUBCASE("count-box") {
    Json r = run(problem(R"({"schemaVersion":1,"task":"count-box","field":"Q","basis":[["2","1"],["0","1"]],"R":"1"})"))["results"];
    CHECK(r["det"] == "2");
    const Int count(r["count"].get<std::string>());
    CHECK(Int(r["boxBounds"]["lower"].get<std::string>()) <= count);
    CHECK(count <= Int(r["boxBounds"]["upper"].get<std::string>()));
    CHECK(r["points"].size() == count.get_ui());
  }
  SUBCASE("scan-f") {
    ProblemFile p = problem(kTwoLines);
    p.task = "scan-f";
    p.params["RSqMax"] = "4";
    Json t = run(p)["results"]["table"];
    REQUIRE(t.size() == 2);
    CHECK(t[0] == Json::parse(R"({"RSq":"1","count":"9","union":"5","f":"4"})"));
    CHECK(t[1]["f"] == "16");
    p.params.erase("RSqMax");
    CHECK(run(p)["results"]["table"].size() == 1);
  }
  SUBCASE("extend, forms, polynomials and probe") {
    Json e = run(problem(R"({"schemaVersion":1,"task":"extend","field":"QI","W":{"constraints":[],"ambient":2},
      "Vs":[{"basis":[[["1","0"],["0","1"]]]}]})"))["results"];
    CHECK(e["x"] == Json::parse(R"([["0","0"],["1","0"]])"));
    Json f = run(problem(R"({"schemaVersion":1,"task":"nonvanish-forms","field":"Q","forms":[["1","0"],["0","1"],["1","1"]]})"))["results"];
    CHECK(f["x"] == Json::array({"1", "1"}));
    CHECK(f["formValues"] == Json::array({"1", "1", "2"}));
    Json poly = run(problem(R"({"schemaVersion":1,"task":"nonvanish-poly","field":"Q",
      "polynomial":{"nvars":2,"terms":[{"exponents":[1,1],"coeff":"1"}]}})"))["results"];
    CHECK(poly["x"] == Json::array({"1", "1"}));
    Json wit = run(problem(R"({"schemaVersion":1,"task":"nonvanish-poly","field":"Q",
      "vanishingWitness":{"M":2,"N":2,"alphas":[0,1]}})"))["results"];
    CHECK(wit["x"] == Json::array({"0", "2"}));
    CHECK(wit["value"] == "2");
    Json pr = run(problem(R"({"schemaVersion":1,"task":"probe","field":"Q","W":{"basis":[["1","0","0"],["0","1","1"]]}})"))["results"];
    CHECK(pr["minima"] == Json::array({"1", "1"}));
    CHECK(pr["certificate"]["witness"] == Json::array({"0", "1", "1"}));
  }
}

TEST_CASE("corpus generation") {
  CorpusSpec spec;
  auto a = gen_corpus(42, spec), b = gen_corpus(42, spec);
  REQUIRE(a.size() == 20);
  for (std::size_t k = 0; k < a.size(); ++k) {
    CHECK(input_digest(a[k]) == input_digest(b[k]));
    const std::size_t N = a[k].W->rows.front().size();
    CHECK((N >= 2 && N <= 4));
  }
  CHECK(input_digest(gen_corpus(43, spec)[0]) != input_digest(a[0]));

  CorpusSpec qi;
  qi.field = FieldDescriptor::gaussian();
  qi.n_max = 3;
  qi.w_max = 3;
  qi.count = 10;
  qi.magnitude = 2;
  auto c = gen_corpus(42, qi);
  CHECK(c.size() == 10);
  for (const auto& p : c) CHECK_NOTHROW(build_lambda(p.W->build(p.field)));

  CorpusSpec bad;
  bad.w_min = 5;
  bad.n_max = 4;
  CHECK_THROWS_AS(gen_corpus(1, bad), std::invalid_argument);
}

TEST_CASE("reports verify and tampering is caught") {
  CorpusSpec spec;
  spec.count = 8;
  spec.magnitude = 3;
  for (const auto& p : gen_corpus(7, spec)) {
    ReportFile r = parse_report(run(p));
    CHECK(verify_report(r, {}).ok);
  }
  for (const char* text : {R"({"schemaVersion":1,"task":"extend","field":"Q","W":{"constraints":[["1","1","1"]]},"Vs":[{"basis":[["1","-1","0"]]}]})",
                           R"({"schemaVersion":1,"task":"nonvanish-forms","field":"QI","forms":[[["1","1"],"2"],["0","1"]]})",
                           R"({"schemaVersion":1,"task":"probe","field":"Q","W":{"constraints":[["1","2","3"]]}})"}) {
    ReportFile r = parse_report(run(problem(text)));
    CHECK(verify_report(r, {}).ok);
  }
  ReportFile r = parse_report(run(problem(kTwoLines)));
  ReportFile bad = r;
  bad.results["certificate"]["witness"] = Json::array({"1", "0"});
  CHECK_FALSE(verify_report(bad, {}).ok);
  bad = r;
  bad.input["Vs"].push_back(Json::parse(R"({"basis":[["1","1"]]})"));
  CHECK_FALSE(verify_report(bad, {}).ok);
  bad = r;
  bad.results["certificate"]["bounds"]["main"]["upper"] = "1";
  CHECK_FALSE(verify_report(bad, {}).ok);
}

TEST_CASE("command-line exit codes") {
  auto good = scratch("two.json");
  write(good, kTwoLines);
  CHECK(cli("search " + good.string()) == 0);
  auto report = scratch("two_report.json");
  CHECK(cli("search " + good.string() + " -o " + report.string()) == 0);
  CHECK(cli("verify-report " + report.string()) == 0);
  CHECK(cli("--threads 2 --precision-bits 96 search " + good.string()) == 0);

  auto broken = scratch("broken.json");
  write(broken, "{\"schemaVersion\":1,");
  CHECK(cli("search " + broken.string()) == 2);
  CHECK(cli("search /nonexistent/file.json") == 2);
  CHECK(cli("bounds " + good.string()) == 2);  // task mismatch
  CHECK(cli("frobnicate") == 2);

  auto big = scratch("big.json");
  write(big, R"({"schemaVersion":1,"task":"search","field":"Q","W":{"constraints":[],"ambient":3},"Vs":[{"basis":[["1","0","0"]]}]})");
  CHECK(cli("--budget 2 search " + big.string()) == 3);
  CHECK(cli("search " + big.string()) == 0);
  CHECK(std::system(("SIEGEL_BUDGET=2 " + std::string(SIEGEL_CLI_PATH) + " search " + big.string() +
                     " >/dev/null 2>&1").c_str()) != 0);
  CHECK(std::system(("SIEGEL_BUDGET=2 " + std::string(SIEGEL_CLI_PATH) + " --budget 100000 search " + big.string() +
                     " >/dev/null 2>&1").c_str()) == 0);

  auto dir = scratch("corpus");
  CHECK(cli("--seed 42 gen-corpus --count 3 --out " + dir.string()) == 0);
  CHECK(std::filesystem::exists(dir / "instance_002.json"));
  CHECK(cli("gen-corpus --w-min 6 --n-max 4 --out " + dir.string()) == 2);
}
