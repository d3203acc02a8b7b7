#include <doctest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <string>

#include <json.hpp>

namespace {

struct CommandResult {
  int exit_code = -1;
  std::string out;
};

CommandResult run_command(const std::string& args) {
  const std::string cmd = std::string(PALLOC_CLI_PATH) + " " + args + " 2>/dev/null";
  CommandResult result;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) {
    result.out.append(buf.data(), n);
  }
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

std::string write_temp(const std::string& name, const std::string& content) {
  const std::string path = "/tmp/palloc_cli_test_" + name;
  std::ofstream out(path, std::ios::binary);
  out << content;
  return path;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("gen lower2d emits the 14-entry multiset") {
  const CommandResult r = run_command("gen lower2d --k 8 --scale 1000");
  REQUIRE(r.exit_code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j.size() == 14);
}

TEST_CASE("ratio on the adversarial instance passes its bound") {
  const CommandResult gen = run_command("gen lower2d --k 8 --scale 1000");
  REQUIRE(gen.exit_code == 0);
  const std::string instance = write_temp("lemma.json", gen.out);

  const CommandResult r = run_command("ratio --algo mm --instance " + instance + " --k 8");
  REQUIRE(r.exit_code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j.at("total") == 27979);
  CHECK(j.at("opt") == 16000);
  CHECK(j.at("ratio") == "1.748687");
  CHECK(j.at("bound") == "7/4");
  CHECK(j.at("pass") == true);
}

TEST_CASE("usage errors exit with 2") {
  const std::string points = write_temp("pts.json", "[[0,0],[1,0],[0,1]]");
  CHECK(run_command("allocate --algo mm --points " + points + " --k 0").exit_code == 2);
  CHECK(run_command("allocate --algo nosuch --points " + points + " --k 1").exit_code == 2);
  CHECK(run_command("allocate --algo hilbert-bf --points " + points + " --k 1").exit_code == 2);
  CHECK(run_command("nosuchcommand").exit_code == 2);
}

TEST_CASE("runtime errors exit with 1") {
  const std::string points = write_temp("small.json", "[[0,0],[1,0]]");
  // Too few free points.
  CHECK(run_command("allocate --algo mm --points " + points + " --k 3").exit_code == 1);
  // Oracle budget exceeded.
  const CommandResult gen = run_command("gen points --n 40 --d 2 --lo 0 --hi 30 --seed 4");
  REQUIRE(gen.exit_code == 0);
  const std::string big = write_temp("big.json", gen.out);
  CHECK(run_command("oracle --points " + big + " --k 20").exit_code == 1);
  // Missing file.
  CHECK(run_command("allocate --algo mm --points /nonexistent.json --k 1").exit_code == 1);
}

TEST_CASE("identical invocations produce identical bytes") {
  const std::string points = write_temp("det.json", "[[0,0],[1,0],[0,1],[5,5],[2,2],[9,1]]");
  const std::string cmd = "allocate --algo mm --points " + points + " --k 3";
  const CommandResult a = run_command(cmd);
  const CommandResult b = run_command(cmd);
  REQUIRE(a.exit_code == 0);
  CHECK(a.out == b.out);

  const CommandResult t1 = run_command("--threads 1 " + cmd);
  const CommandResult t4 = run_command("--threads 4 " + cmd);
  CHECK(t1.out == a.out);
  CHECK(t4.out == a.out);
}

TEST_CASE("allocate reports the allocation as json") {
  const std::string points = write_temp("alloc.json", "[[0,0],[1,0],[0,1],[5,5]]");
  const CommandResult r = run_command("allocate --algo mm --points " + points + " --k 3");
  REQUIRE(r.exit_code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j.at("algorithm") == "mm");
  CHECK(j.at("total") == 4);
  CHECK(j.at("points").size() == 3);
  CHECK(j.at("average") == "1.333333");
}

TEST_CASE("ptas subcommand reports strips and plan") {
  const CommandResult gen = run_command("gen points --n 10 --d 2 --lo 0 --hi 30 --seed 7");
  REQUIRE(gen.exit_code == 0);
  const std::string points = write_temp("ptas.json", gen.out);
  const CommandResult r = run_command("ptas --points " + points + " --k 5 --m 5");
  REQUIRE(r.exit_code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j.contains("allocation"));
  CHECK(j.at("strips").at("m") == 5);
  CHECK(j.at("plan").size() == 5);

  // k=10 has no divisor >= 5 other than 10 itself; --auto-m picks it.
  const CommandResult adj = run_command("ptas --points " + points + " --k 10 --auto-m");
  REQUIRE(adj.exit_code == 0);
  CHECK(nlohmann::json::parse(adj.out).at("strips").at("m") == 10);
}

TEST_CASE("simulate emits the matrix csv") {
  std::string swf = "; synthetic\n";
  for (int id = 1; id <= 6; ++id) {
    swf += std::to_string(id) + " " + std::to_string(id * 3) +
           " -1 40 3 -1 -1 -1 -1 -1 -1 -1 -1 -1 -1 -1 -1 -1\n";
  }
  const std::string trace = write_temp("trace.swf", swf);
  const CommandResult r =
      run_command("simulate --swf " + trace + " --extents 8x8 --situations mm --decisions mm,mm-inc");
  REQUIRE(r.exit_code == 0);
  CHECK(r.out.substr(0, r.out.find('\n')) == "situation,mm,mm-inc");
  CHECK(r.out.find("\nmm,") != std::string::npos);
}

TEST_CASE("shapes emits the per-k table") {
  const CommandResult r = run_command("shapes --max-k 4");
  REQUIRE(r.exit_code == 0);
  const auto j = nlohmann::json::parse(r.out);
  REQUIRE(j.size() == 3);
  CHECK(j[0].at("k") == 2);
  CHECK(j[0].at("total") == 1);
  CHECK(j[1].at("total") == 4);
  CHECK(j[2].at("total") == 8);
  CHECK(j[2].at("average") == "1.333333");
}

}  // TEST_SUITE
