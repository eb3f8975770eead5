#include <doctest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <json.hpp>
#include <string>

namespace {

struct Result {
  int status = -1;
  std::string out;
};

Result run(const std::string& args) {
  const std::string cmd = std::string("LIGFORGE_COLOR=0 '") + LIGFORGE_BIN + "' " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  Result r;
  std::array<char, 4096> buf{};
  while (std::size_t n = std::fread(buf.data(), 1, buf.size(), pipe)) r.out.append(buf.data(), n);
  const int status = pclose(pipe);
  r.status = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string fixture(const std::string& name) { return std::string("'") + LIGFORGE_FIXTURES + "/" + name + "'"; }

}  // namespace

TEST_CASE("parse exit codes") {
  const auto yes = run("parse " + fixture("example1.lig") + " 'c c c' --count --enumerate 3");
  CHECK(yes.status == 0);
  CHECK(yes.out.find("member: yes") != std::string::npos);
  CHECK(yes.out.find("count: 1") != std::string::npos);
  CHECK(yes.out.find("r8 r7 r4 r3") != std::string::npos);

  const auto no = run("parse " + fixture("example1.lig") + " 'c c'");
  CHECK(no.status == 1);
  CHECK(no.out.find("member: no") != std::string::npos);

  CHECK(run("parse " + fixture("example1.lig") + " 'c z c'").status == 2);
  CHECK(run("parse /nonexistent.lig 'c'").status == 2);
  CHECK(run("parse").status == 2);
  CHECK(run("--help").status == 0);
  CHECK(run("--version").out.find("ligforge") != std::string::npos);
}

TEST_CASE("chars mode and infinite counts") {
  const auto r = run("parse " + fixture("example2.lig") + " a --chars --count --enumerate 2");
  CHECK(r.status == 0);
  CHECK(r.out.find("count: infinite") != std::string::npos);
  CHECK(r.out.find("r4 r3 r2 r1") != std::string::npos);
}

TEST_CASE("json report agrees with the structures") {
  const auto r = run("parse " + fixture("example1.lig") + " 'c c c' --json --count --enumerate 5");
  REQUIRE(r.status == 0);
  const auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["member"] == true);
  CHECK(doc["count"] == "1");
  CHECK(doc["report"]["forest"]["productions"] == 11);
  CHECK(doc["report"]["ldg"]["productions"] == 5);
  CHECK(doc["derivations"].size() == 1);

  const auto forest = nlohmann::json::parse(run("forest " + fixture("example1.lig") + " 'c c c' --json").out);
  CHECK(forest["productions"].size() == doc["report"]["forest"]["productions"]);
  const auto ldg = nlohmann::json::parse(run("ldg " + fixture("example1.lig") + " 'c c c' --json").out);
  CHECK(ldg["productions"].size() == doc["report"]["ldg"]["productions"]);
}

TEST_CASE("check and emptiness") {
  const auto ok = run("check " + fixture("example1.lig"));
  CHECK(ok.status == 0);
  CHECK(ok.out.find("language: nonempty") != std::string::npos);
  CHECK(ok.out.find("(7) [S spine T] -> [S pop+(gc) T] r3") != std::string::npos);

  const auto json = nlohmann::json::parse(run("check " + fixture("example2.lig") + " --json").out);
  CHECK(json["empty"] == false);
  CHECK(run("check --seed 3").status == 0);
  CHECK(run("relations --seed 3 --dot").out.rfind("digraph", 0) == 0);
}

TEST_CASE("oracle, bench and fuzz") {
  const auto o = run("oracle " + fixture("example2.lig") + " a --max-nodes 6 --max-stack 2");
  CHECK(o.status == 0);
  CHECK(o.out.find("3 tree(s)") != std::string::npos);
  CHECK(run("oracle " + fixture("example2.lig") + " a --max-nodes 6").status == 2);

  const auto b = run("bench " + fixture("example1.lig") + " 'c^n' --from 3 --to 9 --step 2");
  CHECK(b.status == 0);
  CHECK(std::count(b.out.begin(), b.out.end(), '\n') == 5);

  const auto f = run("fuzz --seed 10 --count 4 --bound 6 --max-input 3");
  CHECK(f.status == 0);
  CHECK(f.out.find("seed 13: ok") != std::string::npos);
}
