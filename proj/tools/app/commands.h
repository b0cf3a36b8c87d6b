#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "app/config.h"

namespace tmsr::app {

struct RunOptions {
    std::size_t jobs = 1;
    /// simulate only: also write the shots in the binary layout.
    std::optional<std::filesystem::path> binary_out;
};

/// "tmsr <version>".
std::string tool_banner();

/// Column names of each command's main table. Stable; tests pin them.
std::vector<std::string> output_columns(Command command);

/// Runs one command and writes its artifact to `out`. CSV artifacts open
/// with "# tmsr <version>" and "# config: <resolved config>" lines; JSON
/// artifacts are {"tool", "config", "result"}. Warnings go to `err`.
void run_command(const ResolvedConfig &config, const RunOptions &options, std::ostream &out, std::ostream &err);

}  // namespace tmsr::app
