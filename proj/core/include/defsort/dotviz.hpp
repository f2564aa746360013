#pragma once

// Graphviz renderings of definition and module dependency graphs.

#include "defsort/defcollect.hpp"
#include "defsort/depgraph.hpp"
#include "defsort/modorder.hpp"
#include "defsort/reorder.hpp"

#include <string>

namespace defsort {

struct DotDocument {
    std::string text;
};

/// Node styling: start points are red inverted triangles, synthetic
/// invariants double circles, nodes without outgoing edges triangles, and
/// everything else ellipses, in that order of precedence.
DotDocument emit_def_dot(const FlatModule& fm, const DepGraph& g, const SortReport& report);

DotDocument emit_module_dot(const ModuleGraph& mg);

/// `<dir>/<module>.dot`
std::string dot_file_name(const std::string& dir, const std::string& module_name);

} // namespace defsort
