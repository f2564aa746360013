#pragma once

// Flattening of a module's top-level definitions into uniquely named nodes,
// including the implicit invariant functions every type carries.

#include "defsort/ast.hpp"

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace defsort {

enum class Namespace { Type, Function };

enum class NodeKind { TypeDef, ValueDef, FunctionDef, InvariantFn, EqFn, OrdFn, PreFn, PostFn, MeasureFn };

const char* node_kind_name(NodeKind k);

/// A clause node is any predicate function derived from another definition.
inline bool is_clause(NodeKind k) {
    return k != NodeKind::TypeDef && k != NodeKind::ValueDef && k != NodeKind::FunctionDef;
}

struct DefNode {
    std::string name;
    Namespace ns = Namespace::Function;
    NodeKind kind = NodeKind::FunctionDef;
    std::string origin;      // the user definition this node was flattened from
    std::size_t definition = 0; // index into SourceModule::definitions
    bool synthetic = false;
    SourceLocation location;

    // What free-variable analysis looks at. TypeDef nodes have no body.
    std::vector<Pattern> params;
    std::set<std::string> bound_params;
    ExprPtr body;
};

struct FlatModule {
    std::string module_name;
    std::vector<std::string> imports;
    std::vector<DefNode> nodes;               // declaration order
    std::vector<std::string> original_names;  // user-declared names, declaration order

    std::optional<std::size_t> find(Namespace ns, const std::string& name) const;
    /// The TypeDef/ValueDef/FunctionDef node a clause node belongs to (itself for user-level nodes).
    std::size_t owner_of(std::size_t node) const;
};

/// A structural (non free-variable) dependency: `from` needs `to` declared first.
struct Link {
    std::size_t from;
    std::size_t to;
    SourceLocation at;
};

/// Every Name identifier bound by `p`, left to right.
std::vector<std::string> pattern_names(const Pattern& p);

/// Throws AnalysisError("DuplicateName") when two nodes collide within a namespace.
FlatModule collect(const SourceModule& m);

/// Type-space links. Throws AnalysisError("UnknownName") for a type reference
/// that is neither declared locally nor qualified by an imported module.
std::vector<Link> type_dependency_links(const FlatModule& fm, const SourceModule& m);

} // namespace defsort
