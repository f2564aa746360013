#pragma once

#include "defsort/ast.hpp"

#include <string>

namespace defsort {

/// Renders a module: header, then each definition's verbatim text in order,
/// opening a new section keyword whenever the section kind changes.
std::string print_module(const SourceModule& m);

/// Location-free canonical rendering of a module's structure. Two modules are
/// structurally equal iff their dumps are equal.
std::string dump_module(const SourceModule& m);
std::string dump_expr(const Expr& e);
std::string dump_type(const TypeExpr& t);
std::string dump_pattern(const Pattern& p);

bool structurally_equal(const SourceModule& a, const SourceModule& b);

} // namespace defsort
