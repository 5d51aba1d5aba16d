// End-to-end checks against the installed binary: exit codes, diagnostics,
// byte-stable machine output. The binary path arrives in MIXBOUND_CLI.

#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

namespace {

std::string cli_path() {
  const char* env = std::getenv("MIXBOUND_CLI");
  REQUIRE_MESSAGE(env != nullptr, "MIXBOUND_CLI must point at the mixbound binary");
  return env;
}

struct RunResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

RunResult run(const std::string& args) {
  const std::string out_path = "/tmp/mixbound_exec_out.txt";
  const std::string err_path = "/tmp/mixbound_exec_err.txt";
  const std::string cmd = cli_path() + " " + args + " >" + out_path + " 2>" + err_path;
  const int status = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = WEXITSTATUS(status);
  auto slurp = [](const std::string& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
  };
  r.out = slurp(out_path);
  r.err = slurp(err_path);
  return r;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  f << text;
}

const char* kChain = R"({
  "format_version": "1",
  "type": "chain",
  "alphabet": ["a", "b"],
  "p0": [0.5, 0.5],
  "kernels": [{"kernel": [[0.75, 0.25], [0.25, 0.75]], "repeat": 2}]
})";

}  // namespace

TEST_CASE("analyze succeeds and machine output round-trips byte for byte") {
  const std::string spec = "/tmp/mixbound_exec_chain.json";
  write_file(spec, kChain);
  const auto r = run("analyze " + spec + " --format machine --no-timing");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("\"delta_inf\": 1.75") != std::string::npos);

  // a second run is byte-identical with timing off
  const auto r2 = run("analyze " + spec + " --format machine --no-timing");
  CHECK(r.out == r2.out);
}

TEST_CASE("schema-invalid documents exit 2") {
  const std::string spec = "/tmp/mixbound_exec_broken.json";
  write_file(spec, "{\"format_version\": \"1\"}");
  const auto r = run("analyze " + spec);
  CHECK(r.exit_code == 2);
  CHECK(r.err.find("code=2") != std::string::npos);
}

TEST_CASE("numeric-invalid kernels exit 4 naming the kernel column") {
  const std::string spec = "/tmp/mixbound_exec_badcol.json";
  write_file(spec, R"({
    "format_version": "1",
    "type": "chain",
    "alphabet": ["a", "b"],
    "p0": [0.5, 0.5],
    "kernels": [
      [[0.75, 0.25], [0.25, 0.75]],
      [[0.75, 0.25], [0.5, 0.48]]
    ]
  })");
  const auto r = run("analyze " + spec);
  CHECK(r.exit_code == 4);
  CHECK(r.err.find("code=4") != std::string::npos);
  CHECK(r.err.find("kernel[2]") != std::string::npos);
  CHECK(r.err.find("'b'") != std::string::npos);
}

TEST_CASE("cap overflow under --exact exits 3") {
  const std::string spec = "/tmp/mixbound_exec_big.json";
  write_file(spec, R"({
    "format_version": "1",
    "type": "chain",
    "alphabet": ["a", "b"],
    "p0": [0.5, 0.5],
    "kernels": [{"kernel": [[0.75, 0.25], [0.25, 0.75]], "repeat": 40}]
  })");
  const auto r = run("analyze " + spec + " --exact");
  CHECK(r.exit_code == 3);
  CHECK(r.err.find("code=3") != std::string::npos);
}

TEST_CASE("envelope command renders the grid") {
  const std::string spec = "/tmp/mixbound_exec_chain.json";
  write_file(spec, kChain);
  const auto r = run("envelope " + spec + " --t-grid 0:1:0.5 --which kontram");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("vacuous") != std::string::npos);

  const auto bad = run("envelope " + spec + " --t-grid nonsense");
  CHECK(bad.exit_code == 2);
}

TEST_CASE("sample command is reproducible per seed") {
  const std::string spec = "/tmp/mixbound_exec_chain.json";
  write_file(spec, kChain);
  const auto a = run("sample " + spec + " --seed 9 --trials 5");
  const auto b = run("sample " + spec + " --seed 9 --trials 5");
  CHECK(a.exit_code == 0);
  CHECK(a.out == b.out);
  CHECK(!a.out.empty());
}

TEST_CASE("verify passes on a healthy spec and fails under --negate-bound") {
  const std::string spec = "/tmp/mixbound_exec_chain.json";
  write_file(spec, kChain);
  const auto ok = run("verify " + spec + " --trials 3 --envelope-count 2000 --seed 7");
  CHECK(ok.exit_code == 0);
  CHECK(ok.out.find("PASS") != std::string::npos);

  const auto bad = run("verify " + spec +
                       " --trials 3 --envelope-count 2000 --seed 7 --negate-bound");
  CHECK(bad.exit_code == 1);
  CHECK(bad.out.find("FAIL") != std::string::npos);
  CHECK(bad.out.find("counterexample") != std::string::npos);
}
