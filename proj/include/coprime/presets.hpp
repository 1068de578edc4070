#pragma once
// Named experiment presets: one per headline density statement plus the
// identity/property suites.  Each run returns rendered reports and a pass
// verdict; exploratory presets never fail.

#include "coprime/density.hpp"

#include <string>
#include <vector>

namespace coprime {

struct PresetOptions {
    uint64_t N = 0;         // 0 = preset default
    int k = 2;              // tuple-k arity (2 or 3)
    int threads = 1;
    double tolerance = 0;   // 0 = preset default (5e-3 for density presets)
    std::string out_prefix; // when nonempty, write <prefix>.csv and <prefix>.json
    PrecisionPolicy policy{};
};

struct PresetOutcome {
    std::string name;
    bool pass = true;
    bool exploratory = false;
    std::string summary;  // one line, human-readable
    std::string csv;      // rendered report (also written when out_prefix set)
    std::string json;
    DensityReport report;  // populated for density presets
};

std::vector<std::string> preset_names();

// Throws std::invalid_argument for unknown names.  Reports are rendered (and
// written) even when the verdict is fail; exploratory presets always pass.
PresetOutcome run_preset(const std::string& name, const PresetOptions& options);

// exit status for a CLI wrapper: 0 iff pass or exploratory
int preset_exit_code(const PresetOutcome& outcome);

}  // namespace coprime
