#pragma once

#include "defsort/ast.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace defsort {

/// Parses every module in `text`, in source order. Throws ParseError on
/// malformed input, on a module whose closing name does not match, and on
/// duplicate top-level names within one namespace of a module.
std::vector<SourceModule> parse_source(std::string_view text, const std::string& file);

/// Convenience wrapper for inputs known to hold exactly one module.
SourceModule parse_module(std::string_view text, const std::string& file = "<input>");

/// Reads a file from disk and parses it.
std::vector<SourceModule> parse_file(const std::string& path);

} // namespace defsort
