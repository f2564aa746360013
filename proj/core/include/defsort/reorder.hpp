#pragma once

// Detection of use-before-declaration and the module rewrite that removes it.

#include "defsort/ast.hpp"
#include "defsort/defcollect.hpp"
#include "defsort/depgraph.hpp"

#include <string>
#include <vector>

namespace defsort {

struct ForwardRef {
    std::string user;
    std::string used;
    SourceLocation user_location;
    std::string message; // "M`T declared after Rec" / "tail declared after S"
    bool type_space = false;
};

struct SortReport {
    std::string module_name;
    std::vector<std::string> original_names;
    std::vector<std::string> start_points;
    std::vector<std::string> sorted_names;
    std::vector<std::string> organised_names;
    std::vector<ForwardRef> forward_refs;
    std::vector<std::pair<std::string, std::string>> removed_edges; // (user, used)
    bool sorted = false;
};

/// Everything the analysis stages derive from one module.
struct ModuleAnalysis {
    FlatModule flat;
    std::vector<Link> type_links;
    std::vector<std::vector<std::size_t>> fv_deps;
    DepGraph graph;
};

ModuleAnalysis analyse(const SourceModule& m);

/// Edges whose used node is declared in a later definition than the user.
std::vector<Edge> forward_edges(const FlatModule& fm, const DepGraph& g);

/// Forward edges that sorting can fix: those not inside a dependency cycle.
std::vector<Edge> fixable_forward_edges(const FlatModule& fm, const DepGraph& g);

/// Reported findings. Clause users are listed under their own name and under
/// the definition they belong to. Type-space targets are all listed; for
/// function-space targets each user lists only the earliest-declared one.
std::vector<ForwardRef> forward_references(const FlatModule& fm, const DepGraph& g);

/// Maps a sorted node list to user-declared names, dropping clause and
/// synthetic nodes. Names bound by one pattern value stay together.
std::vector<std::string> organise(const std::vector<std::size_t>& sorted, const FlatModule& fm);

/// Definition indices in the order `organise` places them.
std::vector<std::size_t> organised_definitions(const std::vector<std::size_t>& sorted, const FlatModule& fm);

struct SortResult {
    SourceModule module;
    SortReport report;
};

/// Rewrites `m` so that definitions precede their uses. Modules without a
/// fixable forward reference come back unchanged with report.sorted = false.
SortResult sort_module(const SourceModule& m);

/// True when no definition uses another declared after it, except within
/// mutually recursive groups.
bool verify_order(const SourceModule& m);

/// Value initialization cycles, reported as errors.
std::vector<Diagnostic> check_initialization_cycles(const FlatModule& fm);

/// All diagnostics for a module: analysis failures, initialization cycles,
/// duplicate binds, unguarded precondition calls and forward references.
std::vector<Diagnostic> check_module(const SourceModule& m);

} // namespace defsort
