#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>

namespace {

namespace fs = std::filesystem;
using Json = nlohmann::json;

struct RunResult {
  int exit_code;
  std::string out;
};

// Runs the CLI with the given arguments through the shell, capturing stdout.
// stderr is dropped unless the caller folds it in with "2>&1".
RunResult run_cli(const std::string& args) {
  const std::string cmd = std::string(PROPAVG_CLI_PATH) + " " + args;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  std::size_t n;
  while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
  const int status = pclose(pipe);
  REQUIRE(WIFEXITED(status));
  return {WEXITSTATUS(status), out};
}

fs::path scratch_dir() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() /
                 ("propavg_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string write_file(const std::string& name, const std::string& content) {
  const fs::path path = scratch_dir() / name;
  std::ofstream f(path, std::ios::binary);
  REQUIRE(f.good());
  f << content;
  f.close();
  return path.string();
}

const char* kWorkhorse =
    "{\"agents\": 3, \"goods\": 4, \"valuations\":"
    " [[10,7,7,6],[10,7,7,6],[10,7,7,6]]}";

}  // namespace

TEST_CASE("cli: version flag") {
  RunResult r = run_cli("--version");
  CHECK(r.exit_code == 0);
  CHECK(r.out == "1.0.0\n");
}

TEST_CASE("cli: solve emits a verified result document") {
  const std::string inst = write_file("solve_in.json", kWorkhorse);
  RunResult r = run_cli("solve --instance " + inst);
  REQUIRE(r.exit_code == 0);

  Json doc = Json::parse(r.out);
  CHECK(doc["allocation"] == Json::parse("[[0], [1], [2, 3]]"));
  CHECK(doc["certificates"]["PROPAVG"]["all_satisfied"] == true);
  CHECK(doc["certificates"]["PROPAVG"]["agents"][0]["lhs"] == 99);
  CHECK(doc["trace"]["levels"].size() == 2);

  // identical invocation, identical bytes
  CHECK(run_cli("solve --instance " + inst).out == r.out);

  // extra certificates on request, and stdin works as an instance source
  RunResult extra = run_cli("solve --notion EFX,PROP1 --instance - < " + inst);
  REQUIRE(extra.exit_code == 0);
  Json with_extra = Json::parse(extra.out);
  CHECK(with_extra["certificates"].size() == 3);
  CHECK(with_extra["certificates"]["EFX"]["all_satisfied"] == true);
}

TEST_CASE("cli: solve output feeds verify") {
  const std::string inst = write_file("roundtrip_in.json", kWorkhorse);
  const std::string result = scratch_dir() / "roundtrip_out.json";
  REQUIRE(run_cli("solve --instance " + inst + " --out " + result).exit_code == 0);

  RunResult v = run_cli("verify --instance " + inst + " --allocation " + result +
                        " --notion PROPAVG,EFX,EF1");
  CHECK(v.exit_code == 0);
  CHECK(v.out.find("PROPAVG: satisfied") != std::string::npos);
  CHECK(v.out.find("EFX: satisfied") != std::string::npos);
  CHECK(v.out.find("VIOLATED") == std::string::npos);
}

TEST_CASE("cli: verify reports violations with the deciding numbers") {
  const std::string inst = write_file("verify_in.json", kWorkhorse);
  const std::string alloc = write_file("verify_alloc.json", "[[0], [1, 2, 3], []]");

  RunResult r = run_cli("verify --instance " + inst + " --allocation " + alloc);
  CHECK(r.exit_code == 1);
  CHECK(r.out.find("PROPAVG: VIOLATED") != std::string::npos);
  CHECK(r.out.find("agent 2: FAIL (lhs 48 < rhs 60)") != std::string::npos);

  // the same allocation clears the weaker notions
  RunResult weaker =
      run_cli("verify --instance " + inst + " --allocation " + alloc + " --notion PROPM,PROP1");
  CHECK(weaker.exit_code == 0);

  RunResult j = run_cli("--json verify --instance " + inst + " --allocation " + alloc +
                        " --notion PROPAVG,PROPM");
  CHECK(j.exit_code == 1);
  Json doc = Json::parse(j.out);
  CHECK(doc["all_satisfied"] == false);
  CHECK(doc["notions"]["PROPAVG"]["all_satisfied"] == false);
  CHECK(doc["notions"]["PROPAVG"]["agents"][2]["lhs"] == 48);
  CHECK(doc["notions"]["PROPAVG"]["agents"][2]["rhs"] == 60);
  CHECK(doc["notions"]["PROPM"]["all_satisfied"] == true);
}

TEST_CASE("cli: bad inputs exit with code 2") {
  const std::string broken = write_file("broken.json", "{\"agents\": 2");
  CHECK(run_cli("solve --instance " + broken).exit_code == 2);
  CHECK(run_cli("solve --instance " + (scratch_dir() / "missing.json").string()).exit_code == 2);

  const std::string inst = write_file("bad_notion_in.json", kWorkhorse);
  const std::string alloc = write_file("bad_notion_alloc.json", "[[0], [1], [2, 3]]");
  CHECK(run_cli("verify --instance " + inst + " --allocation " + alloc + " --notion PROPQ")
            .exit_code == 2);
  const std::string not_partition = write_file("np_alloc.json", "[[0], [1], [2]]");
  CHECK(run_cli("verify --instance " + inst + " --allocation " + not_partition).exit_code == 2);
}

TEST_CASE("cli: gen is deterministic and can emit batches") {
  RunResult a = run_cli("gen --agents 2 --goods 3 --seed 5");
  RunResult b = run_cli("gen --agents 2 --goods 3 --seed 5");
  REQUIRE(a.exit_code == 0);
  CHECK(a.out == b.out);
  Json doc = Json::parse(a.out);
  CHECK(doc["agents"] == 2);
  CHECK(doc["goods"] == 3);
  CHECK(doc["valuations"].size() == 2);

  const std::string prefix = (scratch_dir() / "batch_").string();
  REQUIRE(run_cli("gen --agents 2 --goods 2 --count 3 --seed 9 --out " + prefix).exit_code == 0);
  std::string first_text;
  for (int k = 0; k < 3; ++k) {
    const std::string path = prefix + "00" + std::to_string(k) + ".json";
    REQUIRE(fs::exists(path));
    std::ifstream f(path);
    std::string text((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
    CHECK(Json::parse(text)["agents"] == 2);
    if (k == 0)
      first_text = text;
    else
      CHECK(text != first_text);  // distinct seeds, distinct instances
  }

  CHECK(run_cli("gen --agents 2 --goods 2 --count 2").exit_code == 2);
}

TEST_CASE("cli: bench solves, verifies and reports timings") {
  RunResult r = run_cli("--json bench --agents 3 --goods 6 --trials 3 --seed 2");
  REQUIRE(r.exit_code == 0);
  Json doc = Json::parse(r.out);
  CHECK(doc["trials"] == 3);
  CHECK(doc["all_verified"] == true);
  CHECK(doc["median_ms"].get<double>() >= 0.0);
  CHECK(doc["max_ms"].get<double>() >= doc["median_ms"].get<double>());
  CHECK(doc["max_repair_iterations"].get<int>() >= 0);
}

TEST_CASE("cli: sweep flags impossible instances") {
  RunResult prop =
      run_cli("--json sweep --agents 2 --goods 2 --max-value 1 --exhaustive --notion PROP");
  CHECK(prop.exit_code == 1);
  Json doc = Json::parse(prop.out);
  CHECK(doc["checked"] == 16);
  CHECK(doc["budget_skipped"] == 0);
  REQUIRE(doc["counterexamples"].size() == 2);
  CHECK(doc["counterexamples"][0]["valuations"] == Json::parse("[[1, 0], [1, 0]]"));
  CHECK(doc["counterexamples"][1]["valuations"] == Json::parse("[[0, 1], [0, 1]]"));

  RunResult avg = run_cli("--json sweep --agents 2 --goods 2 --max-value 1 --exhaustive");
  CHECK(avg.exit_code == 0);
  CHECK(Json::parse(avg.out)["counterexamples"].empty());

  RunResult random = run_cli("--json sweep --agents 3 --goods 4 --max-value 9 --count 25 --seed 3");
  CHECK(random.exit_code == 0);
  CHECK(Json::parse(random.out)["checked"] == 25);
}

TEST_CASE("cli: single agent gets everything") {
  const std::string inst =
      write_file("single.json", "{\"agents\": 1, \"goods\": 3, \"valuations\": [[4, 0, 9]]}");
  RunResult r = run_cli("solve --instance " + inst);
  REQUIRE(r.exit_code == 0);
  CHECK(Json::parse(r.out)["allocation"] == Json::parse("[[0, 1, 2]]"));
}
