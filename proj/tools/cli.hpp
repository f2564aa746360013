#pragma once

// Command-line front end. Every command is a thin wrapper over the core
// library; `run` is what main() calls and what the tests drive directly.

#include "defsort/source_location.hpp"

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace defsort::cli {

using Properties = std::map<std::string, std::string>;

struct ToolConfig {
    std::string output_dir = "./.generated/sorted";
    std::string dot_dir = "./";
    bool dot_enabled = false;
    bool debug = false;
    bool check_only = false;
    Properties properties;
};

/// `key=value` lines; `#` starts a comment. Later keys win. Malformed lines
/// are skipped and reported through `warnings`. A missing file is empty.
Properties load_properties(const std::string& path, std::vector<Diagnostic>* warnings = nullptr);

/// Defaults, overridden by `props`, overridden by DEFSORT_* environment variables.
ToolConfig resolve_config(const Properties& props);

/// Exit codes: 0 clean or warnings only, 1 errors, 2 usage errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace defsort::cli
