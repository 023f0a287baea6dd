#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <string>

// Exercises the installed binary end to end: subcommands, report files and
// the 0 / 2 exit-code contract. (Exit code 1, a genuine statistical
// failure, is covered at the library level via Report::passed.)

namespace {

std::string cli_path() {
  const char* path = std::getenv("MIXER_CLI_PATH");
  REQUIRE(path != nullptr);
  return path;
}

int run(const std::string& args) {
  const std::string cmd = cli_path() + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  REQUIRE(status != -1);
  return WEXITSTATUS(status);
}

}  // namespace

TEST_CASE("words subcommand succeeds and writes a csv report") {
  const std::string out = "/tmp/mixer_cli_words.csv";
  std::remove(out.c_str());
  CHECK(run("words --trials 100 --max-support 4 --seed 7 --format csv --out " +
            out) == 0);
  std::ifstream in(out);
  REQUIRE(in.good());
  std::string header;
  std::getline(in, header);
  CHECK(header.find("case,param") == 0);
}

TEST_CASE("claim subcommand writes json") {
  const std::string out = "/tmp/mixer_cli_claim.json";
  std::remove(out.c_str());
  CHECK(run("claim --trials 500 --seed 11 --format json --out " + out) == 0);
  std::ifstream in(out);
  REQUIRE(in.good());
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  CHECK(text.find("\"schema_version\": \"report-v1\"") != std::string::npos);
}

TEST_CASE("sandwich runs at a small radius") {
  CHECK(run("sandwich --radius 3 --seed 5") == 0);
}

TEST_CASE("usage errors exit with 2") {
  CHECK(run("") == 2);                        // missing subcommand
  CHECK(run("words --no-such-flag") == 2);    // unknown flag
  CHECK(run("sandwich --radius 99") == 2);    // beyond the safety limit
  CHECK(run("exponent --format xml") == 2);   // invalid format
}

TEST_CASE("node budget env var is honored") {
  const std::string cmd = "MIXERCHAIN_BFS_NODE_BUDGET=5 " + cli_path() +
                          " sandwich --radius 4 > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  REQUIRE(status != -1);
  CHECK(WEXITSTATUS(status) == 2);  // budget exhaustion is a resource error
}
