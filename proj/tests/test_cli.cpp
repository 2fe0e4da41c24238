#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

using Json = nlohmann::ordered_json;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(SCB_BINARY) + " " + args + " 2>/dev/null";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::array<char, 4096> buf{};
  size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

Json json_of(const Run& r) { return Json::parse(r.out); }

Json without_timings(Json j) {
  j.erase("timings");
  return j;
}

size_t count_lines(const std::string& s) { return static_cast<size_t>(std::count(s.begin(), s.end(), '\n')); }

}  // namespace

TEST_CASE("list") {
  const Run r = run("list -f text");
  CHECK(r.code == 0);
  CHECK(r.out.find("bdf6") != std::string::npos);
  CHECK(r.out.find("ebdf5") != std::string::npos);
  CHECK(json_of(run("list")).dump().find("ab4") != std::string::npos);
}

TEST_CASE("check exit codes follow the verdict") {
  const Run bdf1 = run("check --method bdf1 --gamma 1000000");
  CHECK(bdf1.code == 0);
  CHECK(json_of(bdf1)["status"] == "Feasible");

  const Run ab4 = run("check --method ab4 --gamma 1/100");
  CHECK(ab4.code == 1);
  const Json j = json_of(ab4);
  CHECK(j["status"] == "Infeasible");
  CHECK(j["evidence"]["type"] == "InfeasibleWitness");
  CHECK(j["evidence"]["n"] == 2);

  const Run bdf4 = run("check --method bdf4 --gamma 0.48625 --horizon 27000");
  CHECK(bdf4.code == 1);
  const Json w = json_of(bdf4);
  CHECK(w["gamma"] == "389/800");
  CHECK(w["evidence"]["witnesses"] == Json::array({26814, 26875, 26886, 26936, 26947, 26997}));

  CHECK(run("check --method ab1 --gamma 2").code == 1);
}

TEST_CASE("usage and input errors") {
  CHECK(run("check --method bdf2 --gamma abc").code == 10);
  CHECK(run("check --method bdf2").code == 10);
  CHECK(run("frobnicate").code == 10);
  CHECK(run("check --method nope --gamma 1").code >= 10);
  CHECK(run("check --method bdf2 --gamma -1").code >= 10);
  CHECK(run("mu-curve --method bdf1 --n 1..3 --gamma 1:0:1/2").code == 10);
  CHECK(run("mu-curve --method bdf1 --n 3..1 --gamma 0:1:1/2").code == 10);
}

TEST_CASE("gamma-sup reports") {
  const Run bdf5 = run("gamma-sup --method bdf5 --tol 1e-9");
  CHECK(bdf5.code == 0);
  const Json j = json_of(bdf5);
  CHECK(j["mechanism"] == "Crossover");
  CHECK(j["reference"]["passed"] == true);
  CHECK(bdf5.out.find("Confirmed") != std::string::npos);
  CHECK(bdf5.out.find("0.3042137") != std::string::npos);

  const Json ab2 = json_of(run("gamma-sup --method ab2 --tol 1e-12"));
  CHECK(ab2["mechanism"] == "SimpleRoot");
  CHECK(ab2["enclosure"]["lo"]["exact"] == "4/9");

  const Json ab4 = json_of(run("gamma-sup --method ab4"));
  CHECK(ab4["mechanism"] == "NonePositive");
}

TEST_CASE("reports are deterministic apart from timings") {
  for (const char* args : {"gamma-sup --method bdf3", "check --method bdf3 --gamma 1/2", "tau --method ebdf4 --n 10"}) {
    CAPTURE(args);
    const Json a = without_timings(json_of(run(args)));
    const Json b = without_timings(json_of(run(args)));
    CHECK(a.dump() == b.dump());
  }
}

TEST_CASE("tau") {
  const Json e3 = json_of(run("tau --method ebdf3 --n 3"));
  CHECK(e3["tau"] == Json::array({"18/11", "126/121", "1212/1331"}));
  CHECK(e3["n0"] == 1);
  CHECK(e3["status"] == "Exists");

  const Json e4 = json_of(run("tau --method ebdf4 --n 10"));
  REQUIRE(e4["tau"].size() == 10);
  CHECK(e4["tau"][0] == "48/25");
  CHECK(e4["tau"][3] == "366516/390625");
  CHECK(e4["status"] == "Exists");

  const Json ab1 = json_of(run("tau --method ab1 --n 5"));
  CHECK(ab1["tau"] == Json::array({"1", "1", "1", "1", "1"}));

  const Run ab4 = run("tau --method ab4 --n 4");
  CHECK(ab4.code == 1);
  CHECK(json_of(ab4)["status"] == "NotExists");
}

TEST_CASE("reproduce") {
  const Run ab = run("reproduce --target ab-optimal -f text");
  CHECK(ab.code == 0);
  CHECK(ab.out.find("FAIL") == std::string::npos);
  CHECK(count_lines(ab.out) >= 4);
  CHECK(run("reproduce --target theorem-2.4").code == 0);
  CHECK(run("reproduce --target ebdf-existence").code == 0);
  CHECK(run("reproduce --target nonsense").code == 10);
}

TEST_CASE("mu-curve") {
  const Run r = run("mu-curve --method bdf1 --n 1..3 --gamma 0:2:1/2");
  CHECK(r.code == 0);
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  CHECK(line == "gamma,n,value,marker");
  int rows = 0;
  bool saw = false;
  while (std::getline(in, line)) {
    ++rows;
    if (line == "1/2,2,8/27,0") saw = true;  // 1/(3/2)^3
  }
  CHECK(rows == 15);
  CHECK(saw);

  const Run bdf5 = run("mu-curve --method bdf5 --n 1..21 --gamma 0:1:1/1000 --mark 0.304213712525");
  CHECK(bdf5.code == 0);
  CHECK(count_lines(bdf5.out) >= 1 + 21 * 1001);
}

TEST_CASE("formats, output files and custom methods") {
  const Run csv = run("check --method bdf2 --gamma 1/2 -f csv");
  CHECK(csv.code == 0);
  CHECK(csv.out.rfind("field,value", 0) == 0);
  CHECK(csv.out.find("status,Feasible") != std::string::npos);

  const auto dir = std::filesystem::temp_directory_path() / "scb_cli_test";
  std::filesystem::create_directories(dir);
  const auto report = dir / "report.json";
  CHECK(run("check --method bdf2 --gamma 1/2 --output " + report.string()).code == 0);
  std::ifstream f(report);
  const Json j = Json::parse(f);
  CHECK(j["status"] == "Feasible");

  const auto method = dir / "trap.json";
  std::ofstream(method) << R"({"k": 1, "a": ["1"], "b": ["1/2", "1/2"], "name": "trapezoid"})";
  const Run custom = run("check --method " + method.string() + " --gamma 1");
  CHECK(custom.code == 0);
  CHECK(json_of(custom)["method"]["name"] == "trapezoid");

  const auto bad = dir / "bad.json";
  std::ofstream(bad) << R"({"k": 2, "a": ["2", "-1"], "b": ["1", "0", "0"], "name": "unstable"})";
  CHECK(run("check --method " + bad.string() + " --gamma 1").code >= 10);
  std::filesystem::remove_all(dir);
}
