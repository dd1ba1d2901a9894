// End-to-end checks of the command-line surface: exit codes, JSON shape,
// and byte stability. Runs the binary whose path arrives as argv[1].
#include <array>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <string>

#include "json.hpp"

namespace {

std::string g_binary;
int g_failures = 0;

struct RunResult {
  int exit_code;
  std::string out;
};

RunResult run(const std::string& args) {
  std::string cmd = g_binary + " " + args + " 2>/dev/null";
  std::array<char, 4096> buf{};
  std::string out;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return {-1, ""};
  while (std::size_t n = fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), n);
  int status = pclose(pipe);
  return {WEXITSTATUS(status), out};
}

void expect(bool ok, const std::string& what) {
  if (ok) {
    std::cout << "ok: " << what << "\n";
  } else {
    ++g_failures;
    std::cout << "FAIL: " << what << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: cli_tests <path-to-nilcap>\n";
    return 2;
  }
  g_binary = argv[1];

  // exit codes
  expect(run("definitely-not-a-command").exit_code == 2, "unknown command exits 2");
  expect(run("mul --class 2 --orders 2,2").exit_code == 2, "missing flags exit 2");
  expect(run("mul --class 9 --orders 4,4 --lhs x1 --rhs x2").exit_code == 3,
         "regime violation exits 3 (prime 2 < class 9)");
  expect(run("verify --suite no-such-suite").exit_code == 2, "unknown suite exits 2");
  expect(run("order --class 2 --orders 0,0 --lhs \"x1 x2\"").exit_code == 3,
         "infinite group order request exits 3");

  // basic computations
  {
    RunResult r = run("mul --class 2 --orders 2,2 --lhs x2 --rhs x1");
    expect(r.exit_code == 0 && r.out == "x1 x2 [x2,x1]\n", "mul text output");
  }
  {
    RunResult r = run("order --class 2 --orders 2,2 --lhs \"x1 x2\"");
    expect(r.exit_code == 0 && r.out == "4\n", "order of the rotation in D8");
  }
  {
    RunResult r = run("basics --gens 2 --class 3 --format json");
    auto j = nlohmann::json::parse(r.out, nullptr, false);
    expect(r.exit_code == 0 && !j.is_discarded() && j.is_array() && j.size() == 5 &&
               j[4]["expr"] == "[x2,x1,x2]",
           "basics JSON lists the five class-3 items");
  }
  {
    RunResult r = run("collect --gens 2 --class 3 --word \"x2^2 x1\" --format json");
    auto j = nlohmann::json::parse(r.out, nullptr, false);
    expect(r.exit_code == 0 && !j.is_discarded() && j["exponents"][2] == "2",
           "collect JSON exponents are exact strings");
  }
  {
    RunResult r = run("capable abelian --orders 2,2 --format json");
    auto j = nlohmann::json::parse(r.out, nullptr, false);
    expect(r.exit_code == 0 && !j.is_discarded() && j["decision"] == "Capable" &&
               j["witness"]["class"] == 2,
           "capable abelian JSON verdict");
  }
  {
    RunResult r = run("capable nilprod --class 2 --prime 3 --alphas 1,2 --format json");
    auto j = nlohmann::json::parse(r.out, nullptr, false);
    expect(r.exit_code == 0 && !j.is_discarded() && j["decision"] == "NotCapable" &&
               j["witness"].is_null(),
           "capable nilprod NotCapable verdict");
  }
  {
    RunResult r = run("capable nilprod --class 2 --prime 3 --alphas 1,1 --verify --format json");
    auto j = nlohmann::json::parse(r.out, nullptr, false);
    expect(r.exit_code == 0 && !j.is_discarded() && j["decision"] == "Capable" &&
               j["verified"] == true,
           "capable nilprod verified witness");
  }
  {
    RunResult r = run("witness nilprod --class 3 --prime 3 --alphas 1,1");
    expect(r.exit_code == 3, "witness for an undecided case exits 3");
  }
  {
    RunResult r = run("center --class 2 --orders 2,2 --verify-brute --format json");
    auto j = nlohmann::json::parse(r.out, nullptr, false);
    expect(r.exit_code == 0 && !j.is_discarded() && j["center_order"] == 2 &&
               j["matches_bruteforce"] == true,
           "center with brute-force verification");
  }
  {
    RunResult r = run("lcs --class 3 --orders 3,3 --term 3 --format json");
    auto j = nlohmann::json::parse(r.out, nullptr, false);
    expect(r.exit_code == 0 && !j.is_discarded() && j["order"] == 9, "lcs term JSON");
  }
  {
    RunResult r = run("quotient --class 3 --orders 3,3 --kernel "
                      "\"[x2,x1,x1];[x2,x1,x2]\" --format json");
    auto j = nlohmann::json::parse(r.out, nullptr, false);
    expect(r.exit_code == 0 && !j.is_discarded() && j["quotient_order"] == "27",
           "quotient by the weight-3 block");
  }
  {
    RunResult r = run("capable class2 --p 3 --alpha 1 --beta 1 --gamma 1 --sigma 0");
    expect(r.exit_code == 3, "violated presentation constraints exit 3");
  }

  // suites: success, determinism, failure-free JSON
  {
    RunResult a = run("verify --suite identities --seed 1 --format json");
    RunResult b = run("verify --suite identities --seed 1 --format json");
    auto j = nlohmann::json::parse(a.out, nullptr, false);
    expect(a.exit_code == 0 && !j.is_discarded() && j["failures"].empty(),
           "identities suite passes");
    expect(a.out == b.out, "suite JSON is byte-stable at a fixed seed");
    RunResult c = run("verify --suite identities --seed 2 --format json");
    expect(c.exit_code == 0, "identities suite passes under another seed");
  }
  {
    RunResult r = run("verify --suite maxs");
    expect(r.exit_code == 0, "maxs suite passes");
  }
  {
    RunResult r = run("verify --suite dihedral-tightness --format json");
    auto j = nlohmann::json::parse(r.out, nullptr, false);
    expect(r.exit_code == 0 && !j.is_discarded() && !j["citation"].get<std::string>().empty(),
           "dihedral-tightness suite passes and cites its theorem");
  }

  // environment variable controls the default format
  {
    std::string cmd = "NILCAP_FORMAT=json " + g_binary + " order --class 2 --orders 2,2 --lhs x1";
    std::array<char, 4096> buf{};
    std::string out;
    FILE* pipe = popen(cmd.c_str(), "r");
    while (std::size_t n = fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), n);
    pclose(pipe);
    auto j = nlohmann::json::parse(out, nullptr, false);
    expect(!j.is_discarded() && j["order"] == 2, "NILCAP_FORMAT=json switches the default");
  }

  std::cout << (g_failures ? "FAILED" : "PASSED") << " cli tests (" << g_failures
            << " failures)\n";
  return g_failures ? 1 : 0;
}
