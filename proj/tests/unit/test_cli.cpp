#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "doctest.h"
#include "json.hpp"

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run cli(const std::string& args) {
  std::string cmd = std::string("'") + DDCHAOS_CLI_PATH + "' " + args + " 2>/dev/null";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  int st = pclose(p);
  r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

int lines(const std::string& s) {
  int n = 0;
  for (char c : s) n += c == '\n';
  return n;
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("list and describe") {
    Run l = cli("list");
    CHECK(l.code == 0);
    CHECK(lines(l.out) >= 18);
    Run d = cli("describe sunce");
    CHECK(d.code == 0);
    CHECK(d.out.find("b1=2, a1=18") != std::string::npos);
    CHECK(cli("describe unknown").code == 2);
  }

  TEST_CASE("run: exit codes and report") {
    CHECK(cli("run nonexistent").code == 2);
    CHECK(cli("").code != 0);
    Run r = cli("run example-2");
    CHECK(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["scenario"] == "example-2");
    CHECK(j["status"] == "ok");
    CHECK(j["mismatches"].empty());
  }

  TEST_CASE("run writes json and csv to --out") {
    auto dir = std::filesystem::temp_directory_path() / "ddchaos_cli_test";
    std::filesystem::remove_all(dir);
    Run r = cli("run tuple-profo --out '" + dir.string() + "'");
    CHECK(r.code == 0);
    CHECK(std::filesystem::exists(dir / "tuple-profo.json"));
    CHECK(std::filesystem::exists(dir / "tuple-profo.csv"));
    std::ifstream js(dir / "tuple-profo.json");
    std::string body((std::istreambuf_iterator<char>(js)), {});
    CHECK(body == r.out);
    std::filesystem::remove_all(dir);
  }

  TEST_CASE("trace export row count") {
    auto path = std::filesystem::temp_directory_path() / "ddchaos_trace.csv";
    CHECK(cli("trace primerinjo --out '" + path.string() + "'").code == 0);
    std::ifstream in(path);
    std::string line;
    int rows = 0;
    bool in_table = false;
    while (std::getline(in, line)) {
      if (line.rfind("j,k,", 0) == 0) {
        in_table = true;
        continue;
      }
      if (line.empty()) in_table = false;
      if (in_table) ++rows;
    }
    CHECK(rows == 2 * 50);
    std::filesystem::remove(path);
  }

  TEST_CASE("density of the odd numbers") {
    Run r = cli("density --set '{\"progressions\":[{\"offset\":1,\"step\":2}]}'");
    CHECK(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["set"]["density"] == "1/2");
    CHECK(j["check"]["holds"] == false);
    CHECK(cli("density --set '{\"progressions\":[{\"offset\":1,\"step\":2},{\"offset\":3,\"step\":4}]}'").code == 2);
    CHECK(cli("density --set 'not json'").code == 2);
  }

  TEST_CASE("classify honours expected") {
    const std::string base =
        "{\"family\":{\"kind\":\"backward_shift\",\"weights\":[{\"constant\":2}]},"
        "\"x\":{\"power\":-2,\"length\":500},\"K\":100";
    Run ok = cli("classify --scenario '" + base + ",\"expected\":true}'");
    Run bad = cli("classify --scenario '" + base + ",\"expected\":false}'");
    auto j = nlohmann::json::parse(ok.out);
    bool holds = j["verdict"]["holds"].get<bool>();
    CHECK(ok.code == (holds ? 0 : 1));
    CHECK(bad.code == (holds ? 1 : 0));
    CHECK(cli("classify --scenario '{\"family\":{\"weights\":[{\"bogus\":1}]},\"x\":[[1,1]]}'").code == 2);
  }
}
