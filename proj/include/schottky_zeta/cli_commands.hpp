#pragma once

#include <optional>
#include <string>
#include <vector>

#include "schottky_zeta/json_io.hpp"

namespace szeta {

/// Exit codes: 0 all requested identities pass, 1 an identity failed its
/// tolerance, 2 input error.
enum ExitCode : int { kExitPass = 0, kExitIdentityFailure = 1, kExitInputError = 2 };

struct CommandOptions {
    int max_word_len = 10;
    double tol = 1e-9;        // identity tolerance (products) / quadrature tol (pairing)
    std::vector<int> ks = {2};
    int threads = 1;
    int tate_order = 16;
    std::vector<std::string> tate_series = {"delta"};
    // pairing only: fit det(pairing) ~ C t^{g-1} along the family that scales
    // every multiplier by t, evaluated at these two t values.
    std::vector<double> det_fit_ts;
};

struct CommandResult {
    Json report;
    int exit_code = kExitPass;
};

CommandResult run_validate(const Json& spec_json, const CommandOptions& opts);
CommandResult run_products(const Json& spec_json, const CommandOptions& opts);
CommandResult run_pairing(const Json& spec_json, const CommandOptions& opts,
                          const std::optional<Json>& coeffs);
CommandResult run_tate(const CommandOptions& opts);

/// Aligned human-readable rendering of a run report (--pretty).
std::string render_report_text(const Json& report);

}  // namespace szeta
