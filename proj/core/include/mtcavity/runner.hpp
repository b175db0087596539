#pragma once

#include <string>
#include <vector>

#include "mtcavity/config.hpp"
#include "mtcavity/errors.hpp"

namespace mtcavity {

struct RunnerOptions {
    std::string output_dir_override;  // --out; beats MTCAVITY_OUT, which beats the config
    int workers = 1;                  // sweep parallelism; artifacts identical for any count
};

struct RunSummary {
    std::string output_dir;
    std::vector<std::string> artifacts;  // filenames written, manifest.json included
    std::string summary_name;            // headline scalar, e.g. "splitting"
    double summary_value = 0.0;
};

// Execute the configured command and write its artifacts plus manifest.json
// (sorted keys, shortest-round-trip floats) into the resolved output
// directory.  Wall time goes to a timing.json sidecar, the only artifact
// exempt from the byte-for-byte reproducibility contract.
RunSummary run(const RunConfig& config, const RunnerOptions& options = {});

// --out flag > MTCAVITY_OUT env var > config output_dir > "."
std::string resolve_output_dir(const RunConfig& config, const RunnerOptions& options);

// 0 success, 2 config/usage errors, 3 numerical failures, 4 filesystem
int exit_code_for(const Error& error);

}  // namespace mtcavity
