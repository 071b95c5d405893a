#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "json.hpp"

namespace ngv {

inline constexpr const char* kSchemaVersion = "1.0";

/// Exit status contract of the batch runner:
///   0 verified true, 1 verified false (witness in the report),
///   2 inconclusive (budget), 3 config or precondition error.
struct RunResult {
  int exit_code = 3;
  nlohmann::ordered_json report;
};

/// Runs one task config:
///   {"task":"axioms"|"cover"|"brenner"|"bigseq"|"scan"|"star"|"iet"|"sl"|
///            "ultra"|"tree"|"dirlim", ..., "seed":..., "budgets":{...}}
/// Reports echo the parameters and are byte-identical across reruns with the
/// same seed, except for the runtime_ms field.
RunResult run_task(const nlohmann::json& config,
                   std::optional<std::uint64_t> seed_override = {},
                   int jobs = 1);

/// Stable, versioned listing of tasks, group descriptors, norm ids and
/// sequence rules.
nlohmann::ordered_json catalog();

/// Re-verifies the witnesses and certificates of a previously produced
/// report, recomputing only the claimed facts. Exit 0 when everything
/// re-verifies.
RunResult verify_report(const nlohmann::json& report);

/// CSV rendering for tabular reports (sl probe rows, ultra profiles).
std::string report_to_csv(const nlohmann::ordered_json& report);

}  // namespace ngv
