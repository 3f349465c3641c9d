#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "floq/config.hpp"

namespace floq {

inline constexpr const char* kToolVersion = "1.0.0";

enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,
  kExitParseError = 2,
  kExitNotConverged = 3,
  kExitOracleLimit = 4,
};

/// Environment variable naming the default output directory.
inline constexpr const char* kOutputEnvVar = "FLOQ_ADAPT_OUT";

/// $FLOQ_ADAPT_OUT if set, otherwise "floq_out".
std::string default_output_dir();

struct RunOutcome {
  nlohmann::json record;
  int exit_code = kExitOk;
  std::vector<std::string> files;
};

/// Dispatches on c.task, writes <out_dir>/<name>.json and task CSVs.
RunOutcome run(const ExperimentConfig& c, const std::string& out_dir);

/// Bundled configs for fig2, fig3, fig4, fig5 and figD1.
std::vector<ExperimentConfig> figure_configs(const std::string& figure);
std::vector<std::string> figure_ids();

/// Runs a figure's configs and writes its comparison table.
std::vector<RunOutcome> reproduce(const std::string& figure, const std::string& out_dir, int threads = 1);

/// Writes text to path via a temporary file and rename.
void write_file_atomic(const std::string& path, const std::string& text);

}  // namespace floq
