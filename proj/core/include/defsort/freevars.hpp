#pragma once

// Free-variable analysis over definition bodies, plus the small syntactic
// checks that ride on the same traversal.

#include "defsort/ast.hpp"
#include "defsort/defcollect.hpp"

#include <set>
#include <string>
#include <vector>

namespace defsort {

class BoundContext {
public:
    BoundContext() = default;
    explicit BoundContext(std::set<std::string> outermost);

    void push();
    void pop();
    void bind(const std::string& name);
    void bind(const Pattern& p);
    bool contains(const std::string& name) const;

private:
    std::vector<std::set<std::string>> scopes_;
};

struct UseSite {
    std::string used_name;
    SourceLocation at;
    bool conditional = false; // under an if branch or a quantifier body
    Namespace ns = Namespace::Function; // Type for mk_T / is_T / type annotations
    bool call = false;                  // the name is the callee of an application
};

/// Every free use in `body`, in traversal order; duplicates kept.
std::vector<UseSite> free_uses(const Expr& body, BoundContext ctx = {});

/// Nodes of `fm` that `node`'s body uses, in first-use order, self removed.
/// A use of a clause node (inv_T, pre_f, ...) also depends on its owner.
std::vector<std::size_t> def_dependencies(std::size_t node, const FlatModule& fm);

/// Value nodes the initializer of `node` must evaluate unconditionally.
std::vector<std::size_t> init_dependencies(std::size_t node, const FlatModule& fm);

/// One error per comprehension bind that rebinds an identifier already bound
/// by an earlier bind of the same comprehension.
std::vector<Diagnostic> check_duplicate_binds(const SourceModule& m);

/// Warns about calls to a function with a precondition when the calling
/// function never mentions that precondition.
std::vector<Diagnostic> check_precondition_calls(const SourceModule& m, const FlatModule& fm);

} // namespace defsort
