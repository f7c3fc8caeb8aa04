#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "fplab/cli.hpp"
#include "fplab/corpus.hpp"
#include "fplab/instance_io.hpp"

using namespace fplab;

namespace {

struct RunResult {
  int code;
  std::string out;
  std::string err;
};

RunResult run_cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(std::move(args), out, err);
  return {code, out.str(), err.str()};
}

class TempFile {
 public:
  explicit TempFile(const std::string& contents) {
    static int counter = 0;
    path_ = std::filesystem::temp_directory_path() /
            ("fplab_test_" + std::to_string(::getpid()) + "_" +
             std::to_string(counter++) + ".json");
    std::ofstream f(path_);
    f << contents;
  }
  ~TempFile() { std::filesystem::remove(path_); }
  std::string path() const { return path_.string(); }

 private:
  std::filesystem::path path_;
};

TempFile write_instance(const corpus::Instance& inst) {
  return TempFile(io::dump_instance(inst.space, inst.map));
}

}  // namespace

TEST_CASE("validate exit codes") {
  const auto fig1 = write_instance(corpus::fig1());
  const auto ok = run_cli({"validate", fig1.path()});
  CHECK(ok.code == 0);
  CHECK(ok.out == "valid\n");

  TempFile broken(R"({"points":["A","B","C"],
    "distance":[[0,1,3],[1,0,1],[3,1,0]],
    "map":{"A":"A","B":"B","C":"C"}})");  // d(A,C)=3 > 1+1
  const auto bad = run_cli({"validate", broken.path()});
  CHECK(bad.code == 1);
  CHECK(bad.out.find("TriangleViolationAt(A,B,C)") != std::string::npos);

  const auto missing = run_cli({"validate", "/no/such/file.json"});
  CHECK(missing.code == 2);

  TempFile garbage("{{{");
  CHECK(run_cli({"validate", garbage.path()}).code == 2);
}

TEST_CASE("classify reports the corpus verdicts") {
  const auto chat = write_instance(corpus::chatterjea4());
  const auto res = run_cli({"classify", chat.path(), "--json"});
  REQUIRE(res.code == 0);
  const auto j = nlohmann::json::parse(res.out);
  CHECK(j["version"] == "0.1.0");
  bool saw_oc = false, saw_chat = false;
  for (const auto& r : j["classes"]) {
    if (r["class"] == "orbital_chatterjea") {
      saw_oc = true;
      CHECK(r["member"] == true);
      CHECK(r["minimal_constant"] == 0.4);
      CHECK(r["threshold"] == 0.5);
      CHECK(r["vacuous"] == false);
      CHECK(r["witness"]["x"] == "0");
      CHECK(r["witness"]["y"] == "3");
      CHECK(r["admissible_count"] == 9);
    }
    if (r["class"] == "chatterjea") {
      saw_chat = true;
      CHECK(r["member"] == false);
    }
  }
  CHECK(saw_oc);
  CHECK(saw_chat);
  CHECK(j["dynamics"]["fixed_points"] == nlohmann::json::array({"0"}));
  CHECK(j["dynamics"]["period2_points"].empty());
}

TEST_CASE("classify handles class filters and vacuous verdicts") {
  const auto ident = write_instance(corpus::identity_line4());
  const auto res = run_cli({"classify", ident.path(), "--json", "--classes",
                            "orbital_triangular_strict"});
  REQUIRE(res.code == 0);
  const auto j = nlohmann::json::parse(res.out);
  REQUIRE(j["classes"].size() == 1);
  CHECK(j["classes"][0]["vacuous"] == true);
  CHECK(j["classes"][0]["member"] == true);
  CHECK(j["classes"][0]["minimal_constant"].is_null());
  CHECK_FALSE(j["classes"][0].contains("witness"));

  CHECK(run_cli({"classify", ident.path(), "--classes", "no_such_class"}).code == 2);

  const auto two = run_cli({"classify", ident.path(), "--json", "--classes",
                            "banach,kannan"});
  REQUIRE(two.code == 0);
  const auto tj = nlohmann::json::parse(two.out);
  REQUIRE(tj["classes"].size() == 2);
  CHECK(tj["classes"][0]["class"] == "banach");
  CHECK(tj["classes"][1]["class"] == "kannan");
}

TEST_CASE("classify enforces the size caps") {
  const auto big = run_cli({"generate", "--n", "350", "--seed", "1"});
  REQUIRE(big.code == 0);
  TempFile inst(big.out);

  // triple class is dropped from the default set above 300 points
  const auto res = run_cli({"classify", inst.path(), "--json"});
  REQUIRE(res.code == 0);
  const auto j = nlohmann::json::parse(res.out);
  CHECK(j["classes"].size() == 7);
  for (const auto& r : j["classes"])
    CHECK(r["class"] != "perimeter_triangle");

  // asking for it explicitly is a usage error
  CHECK(run_cli({"classify", inst.path(), "--classes", "perimeter_triangle"})
            .code == 2);
}

TEST_CASE("classify reports kannan infinite as non-member") {
  const auto fig1 = write_instance(corpus::fig1());
  const auto res = run_cli({"classify", fig1.path(), "--json"});
  REQUIRE(res.code == 0);
  const auto j = nlohmann::json::parse(res.out);
  for (const auto& r : j["classes"]) {
    if (r["class"] == "kannan") {
      CHECK(r["member"] == false);
      CHECK(r["infinite"] == true);
      CHECK(r["minimal_constant"].is_null());
      CHECK(r["witness"]["x"] == "B");
      CHECK(r["witness"]["y"] == "D");
    }
    if (r["class"] == "orbital_kannan") {
      CHECK(r["member"] == true);
      CHECK(r["minimal_constant"] == 0.5);
    }
  }
}

TEST_CASE("picard command") {
  const auto chat = write_instance(corpus::chatterjea4());
  const auto res = run_cli({"picard", chat.path(), "--start", "3", "--json"});
  REQUIRE(res.code == 0);
  const auto j = nlohmann::json::parse(res.out);
  CHECK(j["iterates"] ==
        nlohmann::json::array({"3", "2", "0", "0"}));
  CHECK(j["stop"] == "converged");
  CHECK(j["d_seq"] == nlohmann::json::array({1.0, 2.0, 0.0}));
  CHECK(j["p_seq"] == nlohmann::json::array({6.0, 4.0}));
  CHECK(j["bound_checks"] == "pass");

  const auto text = run_cli({"picard", chat.path(), "--start", "3"});
  CHECK(text.code == 0);
  CHECK(text.out.find("converged to 0 in 2 step(s)") != std::string::npos);

  // auto certificate on fig1 picks the kannan-orbital class
  const auto fig1 = write_instance(corpus::fig1());
  const auto f = run_cli({"picard", fig1.path(), "--start", "A", "--json"});
  REQUIRE(f.code == 0);
  const auto fj = nlohmann::json::parse(f.out);
  CHECK(fj["certificate"]["class"] == "orbital_kannan");
  CHECK(fj["certificate"]["rate"] == 0.5);
  CHECK(fj["iterates"] == nlohmann::json::array({"A", "C", "C"}));

  const auto swap = write_instance(corpus::two_point_swap());
  const auto s = run_cli({"picard", swap.path(), "--start", "a"});
  CHECK(s.code == 1);
  CHECK(s.err.find("period 2") != std::string::npos);

  CHECK(run_cli({"picard", chat.path(), "--start", "zzz"}).code == 2);
  CHECK(run_cli({"picard", chat.path(), "--start", "3", "--class",
                 "orbital_chatterjea", "--constant", "0.7"}).code == 2);
  CHECK(run_cli({"picard", chat.path(), "--start", "3", "--eps", "-1"}).code == 2);

  // explicit member class without a constant uses the minimal constant
  const auto oc = run_cli({"picard", chat.path(), "--start", "3", "--class",
                           "orbital_chatterjea", "--json"});
  REQUIRE(oc.code == 0);
  const auto ocj = nlohmann::json::parse(oc.out);
  CHECK(ocj["certificate"]["constant"] == 0.4);

  // non-member class and non-theorem class are usage errors
  CHECK(run_cli({"picard", chat.path(), "--start", "3", "--class", "banach"})
            .code == 2);
  CHECK(run_cli({"picard", chat.path(), "--start", "3", "--class", "banach",
                 "--constant", "0.9"}).code == 2);
}

TEST_CASE("fixed-points command") {
  const auto fig1 = write_instance(corpus::fig1());
  const auto res = run_cli({"fixed-points", fig1.path(), "--json"});
  REQUIRE(res.code == 0);
  const auto j = nlohmann::json::parse(res.out);
  CHECK(j["dynamics"]["fixed_points"] ==
        nlohmann::json::array({"B", "C", "D"}));
  CHECK(j["dynamics"]["period2_points"].empty());
  CHECK(j["orbits"][0]["limit"] == "C");
  CHECK(j["orbits"][0]["steps"] == 1);

  const auto swap = write_instance(corpus::two_point_swap());
  const auto s = run_cli({"fixed-points", swap.path(), "--json"});
  REQUIRE(s.code == 0);
  const auto sj = nlohmann::json::parse(s.out);
  CHECK(sj["dynamics"]["period2_points"] == nlohmann::json::array({"a", "b"}));
  CHECK(sj["orbits"][0]["cyclic"] == true);
}

TEST_CASE("picard that runs out of iterations reports max_iterations") {
  TempFile cycle(R"({"points":["a","b","c"],
    "distance":[[0,1,1],[1,0,1],[1,1,0]],
    "map":{"a":"b","b":"c","c":"a"}})");
  const auto res = run_cli({"picard", cycle.path(), "--start", "a",
                            "--max-iter", "10", "--json"});
  REQUIRE(res.code == 0);
  const auto j = nlohmann::json::parse(res.out);
  CHECK(j["stop"] == "max_iterations");
  CHECK_FALSE(j.contains("certificate"));  // no member class to certify with
}

TEST_CASE("explicit class with understated constant fails the bound checks") {
  const auto chat = write_instance(corpus::chatterjea4());
  const auto res = run_cli({"picard", chat.path(), "--start", "3", "--class",
                            "orbital_chatterjea", "--constant", "0.1", "--json"});
  CHECK(res.code == 1);
  const auto j = nlohmann::json::parse(res.out);
  CHECK(j["bound_checks"] == "fail");
}

TEST_CASE("generate is deterministic and feeds validate") {
  const auto a = run_cli({"generate", "--n", "6", "--seed", "9",
                          "--style", "contractive-biased"});
  const auto b = run_cli({"generate", "--n", "6", "--seed", "9",
                          "--style", "contractive-biased"});
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);

  TempFile inst(a.out);
  CHECK(run_cli({"validate", inst.path()}).code == 0);

  CHECK(run_cli({"generate", "--n", "1", "--seed", "0"}).code == 2);
  CHECK(run_cli({"generate", "--n", "4", "--seed", "0", "--style", "bogus"}).code == 2);
}

TEST_CASE("paper-examples passes and reports every assertion") {
  const auto res = run_cli({"paper-examples"});
  CHECK(res.code == 0);
  CHECK(res.out.find(" FAIL ") == std::string::npos);

  const auto js = run_cli({"paper-examples", "--json"});
  REQUIRE(js.code == 0);
  const auto j = nlohmann::json::parse(js.out);
  CHECK(j["pass"] == true);
  CHECK(j["total"].get<int>() > 60);
  for (const auto& c : j["checks"]) CHECK(c["pass"] == true);
}

TEST_CASE("a tampered expectation is caught by the harness") {
  // the corpus harness compares formatted values; a wrong expectation fails
  const auto tampered = corpus::check_num("L(0,3) tampered", 5.0, 4.0, 1e-12);
  CHECK_FALSE(tampered.pass);
  const auto honest = corpus::check_num("L(0,3)", 4.0, 4.0, 1e-12);
  CHECK(honest.pass);
}

TEST_CASE("grid-check command") {
  const auto pass = run_cli({"grid-check", "--family", "remark4",
                             "--grid-size", "400", "--alpha", "0.6667"});
  CHECK(pass.code == 0);
  CHECK(pass.out.find("pass") != std::string::npos);

  const auto fail = run_cli({"grid-check", "--family", "remark4",
                             "--grid-size", "400", "--class", "banach",
                             "--alpha", "0.99"});
  CHECK(fail.code == 1);
  CHECK(fail.out.find("VIOLATED") != std::string::npos);

  const auto js = run_cli({"grid-check", "--grid-size", "400", "--json",
                           "--alpha", "0.34"});
  REQUIRE(js.code == 0);
  const auto j = nlohmann::json::parse(js.out);
  CHECK(j["class"] == "orbital_triangular");
  CHECK(j["grid_points"] == 401);
  CHECK(j["max_ratio"].get<double>() == Catch::Approx(1.0 / 3.0).margin(1e-9));
  CHECK(j["pass"] == true);

  CHECK(run_cli({"grid-check", "--family", "unknown"}).code == 2);
}

TEST_CASE("usage errors and help") {
  CHECK(run_cli({}).code == 2);
  CHECK(run_cli({"bogus-command"}).code == 2);
  const auto help = run_cli({"--help"});
  CHECK(help.code == 0);
  CHECK(help.out.find("classify") != std::string::npos);
  const auto version = run_cli({"--version"});
  CHECK(version.code == 0);
  CHECK(version.out.find("0.1.0") != std::string::npos);
}

TEST_CASE("FPLAB_TOL environment variable sets the default tolerance") {
  const auto chat = write_instance(corpus::chatterjea4());
  // with tol = 1.5 the unit distances violate identity of indiscernibles
  ::setenv("FPLAB_TOL", "1.5", 1);
  const auto res = run_cli({"validate", chat.path()});
  ::unsetenv("FPLAB_TOL");
  CHECK(res.code == 1);
  CHECK(res.out.find("ZeroOffDiagonalAt") != std::string::npos);

  // explicit flag still wins over the environment
  ::setenv("FPLAB_TOL", "1.5", 1);
  const auto flagged = run_cli({"validate", chat.path(), "--tol", "1e-9"});
  ::unsetenv("FPLAB_TOL");
  CHECK(flagged.code == 0);
}
