#pragma once

#include <optional>
#include <string>
#include <vector>

#include "deltaset/json_io.hpp"

namespace deltaset {

struct RunResult {
    json payload;   // deterministic given (config, seed)
    json meta;      // timing; excluded from reproducibility comparisons
    int exit_code = 0;   // 0 ok, 1 task failure, 2 config error
};

/// Schema-style validation; returns human-readable problems, empty when ok.
std::vector<std::string> validate_config(const json& config);

/// Node budget resolution: config budgets.nodes, overridden by the
/// TOOL_BUDGET_NODES environment variable when set.
uint64_t resolve_node_budget(const json& config, uint64_t fallback);

/// Executes one experiment described by a config object:
///   {"semigroup": {...}, "task": "...", "params": {...},
///    "oracle": {...}?, "measure": {...}?, "seed": N?, "budgets": {...}?}
/// The report payload embeds the config hash and echoes the inputs.
RunResult run_experiment(json config, std::optional<uint64_t> seed_override = std::nullopt);

/// CSV rows extracted from a payload's "tables" entry (name -> csv text).
std::vector<std::pair<std::string, std::string>> payload_tables(const json& payload);

}  // namespace deltaset
