#pragma once

// Load order for a set of modules, driven by `imports from X all` clauses.

#include "defsort/ast.hpp"
#include "defsort/depgraph.hpp"

#include <string>
#include <utility>
#include <vector>

namespace defsort {

struct ModuleGraph {
    std::vector<std::string> nodes;                        // input (file) order, then unresolved imports
    std::vector<std::pair<std::size_t, std::size_t>> edges; // importer -> imported
    std::vector<bool> unresolved;                          // parallel to nodes
};

ModuleGraph build_module_graph(const std::vector<SourceModule>& mods);

struct ModuleOrder {
    std::vector<std::string> order; // imported before importer
    std::vector<std::pair<std::string, std::string>> removed_edges;
    std::vector<Diagnostic> warnings;
};

ModuleOrder order_modules(const std::vector<SourceModule>& mods);

} // namespace defsort
