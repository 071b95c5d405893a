// End-to-end checks of the ngv binary: exit codes, report shape, catalog and
// verify-report round trips. The binary path arrives in NGV_BIN.

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include "json.hpp"

namespace {

int failures = 0;

#define EXPECT(cond, what)                                         \
  do {                                                             \
    if (!(cond)) {                                                 \
      ++failures;                                                  \
      std::cerr << "FAIL " << what << " (" << #cond << ")\n";      \
    }                                                              \
  } while (0)

struct RunOutput {
  int exit_code;
  std::string stdout_text;
};

RunOutput run(const std::string& cmd) {
  std::array<char, 4096> buf{};
  std::string text;
  FILE* pipe = popen((cmd + " 2>/dev/null").c_str(), "r");
  if (!pipe) return {127, ""};
  while (fgets(buf.data(), buf.size(), pipe)) text += buf.data();
  const int status = pclose(pipe);
  return {WEXITSTATUS(status), text};
}

std::string write_config(const nlohmann::json& j, const std::string& name) {
  const std::string path = "/tmp/ngv_cli_" + name + ".json";
  std::ofstream out(path);
  out << j.dump();
  return path;
}

}  // namespace

int main() {
  const char* bin = std::getenv("NGV_BIN");
  if (!bin) {
    std::cerr << "NGV_BIN not set\n";
    return 1;
  }
  const std::string ngv = bin;

  {
    const auto path = write_config(
        {{"task", "axioms"},
         {"group", {{"type", "sym"}, {"n", 4}, {"norm", "hamming"}}}},
        "axioms");
    const auto out = run(ngv + " --config " + path);
    EXPECT(out.exit_code == 0, "axioms exit code");
    const auto report = nlohmann::json::parse(out.stdout_text);
    EXPECT(report.at("verdict") == true, "axioms verdict");
    EXPECT(report.at("schema_version") == "1.0", "schema version present");
  }

  {
    const auto path = write_config(
        {{"task", "bigseq"},
         {"group", {{"type", "sym"}, {"n", 3}, {"norm", "hamming_normalized"}}},
         {"r", "9/10"},
         {"t", "101/100"},
         {"eps", {"1/10", "1/10", "1/10", "1/10", "1/10"}}},
        "bigseq");
    const auto out = run(ngv + " --config " + path + " --out /tmp/ngv_cli_report.json");
    EXPECT(out.exit_code == 1, "bigseq exit code 1 on a small sequence");

    const auto verify = run(ngv + " verify-report /tmp/ngv_cli_report.json");
    EXPECT(verify.exit_code == 0, "verify-report replays the witness");
  }

  {
    const auto out = run(ngv + " catalog");
    EXPECT(out.exit_code == 0, "catalog exit code");
    const auto cat = nlohmann::json::parse(out.stdout_text);
    EXPECT(cat.at("tasks").size() == 11, "catalog lists 11 tasks");
  }

  {
    const auto path = write_config({{"task", "nonsense"}}, "bad");
    const auto out = run(ngv + " --config " + path);
    EXPECT(out.exit_code == 3, "unknown task exits 3");
  }

  {
    const auto path = write_config(
        {{"task", "sl"}, {"n", 2}, {"p", 5}}, "probe");
    const auto out = run(ngv + " --config " + path + " --format csv");
    EXPECT(out.exit_code == 0, "sl probe csv exit code");
    EXPECT(out.stdout_text.rfind("element,jordan,N\n", 0) == 0, "csv header");
  }

  {
    // Same config, same seed: byte-identical up to runtime_ms.
    const auto path = write_config(
        {{"task", "brenner"},
         {"op", "sigma_infinity"},
         {"sigma", "(1 2)(3 4 5)"},
         {"n", 12},
         {"seed", 5}},
        "det");
    auto a = nlohmann::json::parse(run(ngv + " --config " + path).stdout_text);
    auto b = nlohmann::json::parse(run(ngv + " --config " + path).stdout_text);
    a.erase("runtime_ms");
    b.erase("runtime_ms");
    EXPECT(a.dump() == b.dump(), "deterministic reports");
  }

  if (failures) {
    std::cerr << failures << " CLI check(s) failed\n";
    return 1;
  }
  std::cout << "all CLI checks passed\n";
  return 0;
}
