#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(AXIAL_CLI) + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  Run r;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
  const int st = pclose(p);
  r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::filesystem::path scratch(const std::string& name) {
  const auto d = std::filesystem::temp_directory_path() / ("axial_cli_test_" + std::to_string(getpid()));
  std::filesystem::create_directories(d);
  return d / name;
}

}  // namespace

TEST_CASE("analyze the deformed family at a = 0") {
  const Run r = run("--family alpha_eps --a 0 --eps 0.1 analyze");
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["schema_version"] == 1);
  CHECK(j["axiumbilic_count"] == 2);
  CHECK(j["axiumbilic_index_sum"] == "1/2");
  for (const auto& a : j["axiumbilics"]) {
    CHECK(a["type"] == "E3");
    CHECK(a["index"]["value"] == "1/4");
    CHECK(std::abs(a["u"].get<double>()) < 1e-9);
  }
}

TEST_CASE("analyze alpha^a beyond the second bifurcation value") {
  const Run r = run("--family alpha_a --a 10 analyze");
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["axiumbilics"].empty());
  REQUIRE(j["critical_points"].size() == 1);
  CHECK(std::abs(j["critical_points"][0]["u"].get<double>()) < 1e-9);
  CHECK(std::abs(j["critical_points"][0]["v"].get<double>()) < 1e-9);
  CHECK(j["critical_points"][0]["index"]["value"] == "0");
}

TEST_CASE("JSON keys are sorted and output is repeatable") {
  const Run a = run("--family alpha_eps --a 9 --eps 0.001 --region -0.01,0.01,-0.1,0.1 analyze");
  const Run b = run("--family alpha_eps --a 9 --eps 0.001 --region -0.01,0.01,-0.1,0.1 --threads 4 analyze");
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  const auto j = nlohmann::json::parse(a.out);
  CHECK(j.dump(2) + "\n" == a.out);
  CHECK(j["axiumbilic_count"] == 4);
}

TEST_CASE("usage errors exit with 2") {
  CHECK(run("--region 1,0,0,1 analyze").code == 2);
  CHECK(run("--grid 8 analyze").code == 2);
  CHECK(run("--family nosuch analyze").code == 2);
  CHECK(run("--family custom --map u,v analyze").code == 2);
  CHECK(run("--family alpha_a portrait").code == 2);
  CHECK(run("verify --claim nosuch").code == 2);
  CHECK(run("verify --samples 1/0").code == 2);
  CHECK(run("--nosuchflag analyze").code == 2);
  CHECK(run("").code == 2);
}

TEST_CASE("computation and I/O failures exit with 1") {
  CHECK(run("--family whitney analyze --out /nonexistent_dir/x.json").code == 1);
}

TEST_CASE("scan marks guard cells and is byte-identical across thread counts") {
  const Run a = run("scan --a-values 7,8,9 --eps-values -0.05,0.05");
  const Run b = run("--threads 8 scan --a-values 7,8,9 --eps-values -0.05,0.05");
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out ==
        "a,eps,count,types,index_sum\n"
        "7,-0.05,2,E3;E3,1/2\n7,0.05,2,E3;E3,1/2\n"
        "8,-0.05,boundary,,\n8,0.05,boundary,,\n"
        "9,-0.05,0,,0\n9,0.05,2,E3;E3,1/2\n");
}

TEST_CASE("verify") {
  const Run all = run("verify --all --samples 53/7");
  REQUIRE(all.code == 0);
  const auto j = nlohmann::json::parse(all.out);
  CHECK(j["summary"]["failed"].get<int>() >= 0);
  bool note = false;
  for (const auto& c : j["claims"]) note = note || c["status"] == "paper-note";
  CHECK(note);
  const Run one = run("verify --claim res_p_ra");
  REQUIRE(one.code == 0);
  const auto k = nlohmann::json::parse(one.out);
  REQUIRE(k["claims"].size() == 1);
  CHECK(k["claims"][0]["claim_id"] == "res_p_ra");
  CHECK(k["claims"][0]["status"] == "verified");
}

TEST_CASE("forms at a point") {
  const Run r = run("--family alpha_a --a 2 forms --u 1 --v 1");
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["first_form"]["E"].get<double>() == doctest::Approx(2.0));
  CHECK(j["first_form"]["F"].get<double>() == doctest::Approx(1.0));
  CHECK(j["first_form"]["G"].get<double>() == doctest::Approx(6.0));
}

TEST_CASE("portrait writes three deterministic files") {
  const auto p1 = scratch("one"), p2 = scratch("two");
  const std::string base = "--family normal_form --a -2 --b 0 --region -0.5,0.5,-0.5,0.5 --grid 32 portrait --seeds 3 --out ";
  const Run a = run(base + p1.string());
  const Run b = run(base + p2.string());
  REQUIRE(a.code == 0);
  REQUIRE(b.code == 0);
  for (const char* ext : {".svg", ".csv", ".json"}) {
    const std::string x = slurp(p1.string() + ext), y = slurp(p2.string() + ext);
    CHECK(!x.empty());
    CHECK(x == y);
  }
  const auto j = nlohmann::json::parse(a.out);
  REQUIRE(j["axiumbilics"].size() == 1);
  CHECK(j["axiumbilics"][0]["type"] == "E3");
  CHECK(j["separatrix_counts"][0] == 3);
  CHECK(slurp(p1.string() + ".csv").rfind("curve_id,branch,field,idx,u,v\n", 0) == 0);
  std::filesystem::remove_all(p1.parent_path());
}
