#pragma once

#include <string>
#include <vector>

#include "deltaset/json_io.hpp"

namespace deltaset {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
};

struct AcceptanceOptions {
    /// Directory holding golden files (qrec_z5.json); empty skips file
    /// comparison and keeps the embedded expected values.
    std::string golden_dir;
};

/// Selectors: algebra, delta, qrec, ramsey, ip, vdc, triple, respects,
/// determinism, all.
std::vector<CriterionResult> run_acceptance(const std::string& selector,
                                            const AcceptanceOptions& opts = {});

json acceptance_matrix_json(const std::vector<CriterionResult>& results);

}  // namespace deltaset
