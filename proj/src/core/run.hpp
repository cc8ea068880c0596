#pragma once

#include <string>

#include "config.hpp"

namespace th {

inline constexpr const char* kVersion = "0.1.0";

struct RunResult {
    bool passed = true;        // all enabled assertions held
    std::string manifest_json; // config echo, timings, output digests
    std::string summary;       // one-line human summary
};

// Executes the experiment named by config["experiment"]:
//   lpp_lln | shape | level_curve | tasep | hydro | godunov | pde_check |
//   envelope_check | compare
// Outputs land in config["out"] (directory; TASEPHYDRO_OUT_DIR overrides).
// Throws th::error on invalid configuration; assertion failures are reported
// through RunResult::passed.
RunResult run_experiment(const Config& cfg);

} // namespace th
