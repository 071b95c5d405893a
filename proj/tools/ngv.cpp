// ngv - batch verifier for normed-group computations.
//
// Usage:
//   ngv --config task.json [--out report.json] [--seed S] [--jobs N]
//       [--format json|csv]
//   ngv catalog
//   ngv verify-report report.json
//
// Exit codes: 0 verified true, 1 verified false (witness in the report),
// 2 inconclusive (a budget bound), 3 config error.

#include <fstream>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "json.hpp"
#include "ngv/tasks.hpp"

namespace {

int write_output(const nlohmann::ordered_json& report, const std::string& out_path,
                 const std::string& format) {
  std::string payload;
  if (format == "csv") {
    payload = ngv::report_to_csv(report);
  } else {
    payload = report.dump(2);
    payload += '\n';
  }
  if (out_path.empty()) {
    std::cout << payload;
  } else {
    std::ofstream out(out_path);
    if (!out) {
      std::cerr << "cannot open --out path: " << out_path << "\n";
      return 3;
    }
    out << payload;
  }
  return -1;
}

nlohmann::json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  nlohmann::json j;
  in >> j;
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"verifier for bi-invariant norms, conjugate balls and covering "
               "conditions on finite groups"};
  app.require_subcommand(0, 1);

  std::string config_path, out_path, format = "json";
  std::uint64_t seed = 0;
  bool seed_set = false;
  int jobs = 1;
  app.add_option("--config", config_path, "task config JSON");
  app.add_option("--out", out_path, "write the report here instead of stdout");
  app.add_option("--seed", seed, "override the config seed")
      ->each([&](const std::string&) { seed_set = true; });
  app.add_option("--jobs", jobs, "worker cap for exhaustive scans")
      ->check(CLI::Range(1, 256));
  app.add_option("--format", format, "json (default) or csv")
      ->check(CLI::IsMember({"json", "csv"}));

  auto* catalog_cmd =
      app.add_subcommand("catalog", "list group types, norms, rules and tasks");
  auto* verify_cmd = app.add_subcommand(
      "verify-report", "re-verify the witnesses/certificates of a report");
  std::string report_path;
  verify_cmd->add_option("report", report_path, "report JSON file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*catalog_cmd) {
      const int rc = write_output(ngv::catalog(), out_path, "json");
      return rc < 0 ? 0 : rc;
    }
    if (*verify_cmd) {
      const auto result = ngv::verify_report(load_json(report_path));
      const int rc = write_output(result.report, out_path, "json");
      return rc < 0 ? result.exit_code : rc;
    }
    if (config_path.empty()) {
      std::cerr << "--config is required (or use the catalog / verify-report "
                   "subcommands)\n";
      return 3;
    }
    const auto config = load_json(config_path);
    const auto result = ngv::run_task(
        config, seed_set ? std::optional<std::uint64_t>(seed) : std::nullopt,
        jobs);
    const int rc = write_output(result.report, out_path, format);
    return rc < 0 ? result.exit_code : rc;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "malformed JSON: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 3;
  }
}
