#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

namespace {

struct CliResult {
  int status = -1;
  std::string out;
};

/// Runs the built binary through the shell. Captures stdout by default;
/// `grab_stderr` swaps the streams so diagnostics can be inspected instead.
CliResult run_cli(const std::string& args, bool grab_stderr = false) {
  std::string cmd = std::string(WORDLAB_CLI_PATH) + " " + args +
                    (grab_stderr ? " 2>&1 1>/dev/null" : " 2>/dev/null");
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  CliResult result;
  char buf[4096];
  std::size_t got = 0;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) result.out.append(buf, got);
  int rc = pclose(pipe);
  result.status = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  return result;
}

constexpr const char* kTmSource = "--source 'morphic:0>01,1>10:seed=0'";

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

TEST_CASE("generate emits a plain prefix in text mode") {
  CliResult r = run_cli(std::string(kTmSource) +
                        " generate --length 16 --format text");
  CHECK(r.status == 0);
  CHECK(r.out == "0110100110010110\n");
}

TEST_CASE("generate json carries tool identity and config echo") {
  CliResult r =
      run_cli(std::string(kTmSource) + " generate --length 16 --format json");
  CHECK(r.status == 0);
  auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["tool"]["name"] == "wordlab");
  CHECK(doc["config"]["command"] == "generate");
  CHECK(doc["config"]["source"] == "morphic:0>01,1>10:seed=0");
  CHECK(doc["config"]["length"] == 16);
  CHECK(doc["config"]["format"] == "json");
  CHECK(doc["payload"]["word"] == "0110100110010110");
  CHECK(doc["payload"]["length"] == 16);
}

TEST_CASE("json reports are byte-stable across runs") {
  std::string gen = std::string(kTmSource) + " generate --length 64";
  CHECK(run_cli(gen).out == run_cli(gen).out);

  std::string verify =
      "--source cf:1 --max 6 --policy 256,2,16384 verify --theorem main";
  CliResult first = run_cli(verify);
  CliResult second = run_cli(verify);
  CHECK(first.status == 0);
  CHECK(!first.out.empty());
  CHECK(first.out == second.out);
}

TEST_CASE("generate csv") {
  CliResult r = run_cli("--source periodic:01 generate --length 6 --format csv");
  CHECK(r.status == 0);
  CHECK(r.out == "length,word\n6,010101\n");
}

TEST_CASE("returns on a Thue-Morse target") {
  CliResult r = run_cli(std::string(kTmSource) +
                        " returns --target 01 --format text");
  CHECK(r.status == 0);
  CHECK(r.out.find("target 01 ~ab (1,1), length 2") != std::string::npos);
  CHECK(r.out.find("return classes (3):") != std::string::npos);
  CHECK(r.out.find("  0 ~ab (1,0)") != std::string::npos);
  CHECK(r.out.find("  01 ~ab (1,1)") != std::string::npos);
}

TEST_CASE("returns reports a class that never recurs") {
  CliResult r =
      run_cli("--source cf:1 --policy 64,2,1024 returns --target 11");
  CHECK(r.status == 2);
  auto doc = nlohmann::json::parse(r.out);
  auto& rec = doc["payload"]["queries"][0];
  CHECK(rec["error"] == "class never recurs within budget");
  CHECK(rec["stable"] == false);
  CHECK(rec["prefixUsed"] == 1024);
  CHECK(doc["config"]["policy"]["cap"] == 1024);
}

TEST_CASE("returns csv carries the fixed header") {
  CliResult r = run_cli(std::string(kTmSource) +
                        " returns --target 01 --format csv");
  CHECK(r.status == 0);
  CHECK(r.out.rfind("targetLength,targetVector,targetRepresentative,"
                    "returnVector,returnRepresentative,occurrences,stable,"
                    "prefixUsed,error\n",
                    0) == 0);
  CHECK(r.out.find("2,\"(1,1)\",01,\"(1,0)\",0,") != std::string::npos);
}

TEST_CASE("returns demands a query") {
  CliResult r = run_cli("--source cf:1 returns", true);
  CHECK(r.status == 3);
  CHECK(r.out.find("--target or --all-lengths") != std::string::npos);
}

TEST_CASE("returns all-lengths respects the policy cap") {
  CliResult r =
      run_cli("--source cf:1 --max 30 --policy 16,2,16 returns --all-lengths",
              true);
  CHECK(r.status == 3);
  CHECK(r.out.find("exceeds the policy cap") != std::string::npos);

  CliResult ok = run_cli(
      "--source cf:1 --max 3 --policy 256,2,4096 returns --all-lengths");
  CHECK(ok.status == 0);
  auto doc = nlohmann::json::parse(ok.out);
  CHECK(doc["config"]["allLengths"] == true);
  // lengths 1..3, two abelian classes each
  CHECK(doc["payload"]["queries"].size() == 6);
}

TEST_CASE("lexarray renders the 3/7 grid") {
  CliResult r = run_cli("lexarray --word 0101001 --format text");
  CHECK(r.status == 0);
  CHECK(r.out ==
        "0010101\n"
        "0100101\n"
        "0101001\n"
        "0101010\n"
        "1001010\n"
        "1010010\n"
        "1010100\n"
        "balanced yes\n"
        "columnShift yes\n");

  CliResult closed = run_cli("lexarray --p 3 --q 7 --format text");
  CHECK(closed.status == 0);
  CHECK(closed.out == r.out);
}

TEST_CASE("lexarray csv") {
  CliResult r = run_cli("lexarray --p 3 --q 7 --format csv");
  CHECK(r.status == 0);
  CHECK(r.out.rfind("field,value\n", 0) == 0);
  CHECK(r.out.find("p,3\n") != std::string::npos);
  CHECK(r.out.find("q,7\n") != std::string::npos);
  CHECK(r.out.find("balanced,true\n") != std::string::npos);
  CHECK(r.out.find("columnShift,true\n") != std::string::npos);
}

TEST_CASE("verify exit codes split clean, violated, caveated") {
  CliResult clean = run_cli(
      "--source cf:1 --max 6 --policy 256,2,16384 verify --theorem main "
      "--format text");
  CHECK(clean.status == 0);
  CHECK(clean.out.find("theorem main: holds") != std::string::npos);

  CliResult violated = run_cli(
      "--source periodic:01 --max 6 --policy 64,2,4096 verify --theorem main");
  CHECK(violated.status == 1);
  auto doc = nlohmann::json::parse(violated.out);
  CHECK(doc["payload"]["verdicts"][0]["holds"] == false);
  CHECK(!doc["payload"]["verdicts"][0]["witnesses"].empty());

  CliResult caveated = run_cli(
      "--source cf:1 --max 30 --policy 4,2,8 verify --theorem main");
  CHECK(caveated.status == 2);
}

TEST_CASE("verify corollary-w fails on Thue-Morse") {
  CliResult r = run_cli(std::string(kTmSource) +
                        " --policy 256,2,4096 verify --theorem corollary-w");
  CHECK(r.status == 1);
}

TEST_CASE("usage and parse failures exit 3") {
  CliResult bad_source = run_cli("--source spiral:0 generate --length 4", true);
  CHECK(bad_source.status == 3);
  CHECK(bad_source.out.find("at byte") != std::string::npos);

  CHECK(run_cli("--format yaml generate --length 4", true).status == 3);
  CHECK(run_cli("", true).status == 3);
  CHECK(run_cli("generate --length 4", true).status == 3);  // missing source
  CHECK(run_cli(std::string(kTmSource) + " generate --length 999999999",
                true).status == 3);  // budget overflow
  CHECK(run_cli("--source periodic:012 verify --theorem periodicity", true)
            .status == 3);
}

TEST_CASE("--out writes the same bytes as stdout") {
  std::string path = "cli_out_check.json";
  std::string base = "lexarray --p 2 --q 5";
  CliResult direct = run_cli(base);
  CHECK(direct.status == 0);
  CliResult filed = run_cli(base + " --out " + path);
  CHECK(filed.status == 0);
  CHECK(filed.out.empty());
  CHECK(slurp(path) == direct.out);
  std::remove(path.c_str());
}
