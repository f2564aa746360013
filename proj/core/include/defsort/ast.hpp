#pragma once

// Syntax tree for the supported VDM-SL subset. Nodes are built once by the
// parser and only handed out through shared_ptr<const ...>, so a parsed module
// can be shared freely between analyses.

#include "defsort/source_location.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace defsort {

struct TypeExpr;
struct Expr;
using TypePtr = std::shared_ptr<const TypeExpr>;
using ExprPtr = std::shared_ptr<const Expr>;

// ---------------------------------------------------------------------------
// Patterns

enum class PatternKind { Name, SeqEnum, SetEnum, RecordCtor, Ignore };

struct Pattern {
    PatternKind kind = PatternKind::Ignore;
    std::string name;              // Name: the bound identifier; RecordCtor: the record type
    std::vector<Pattern> elements; // SeqEnum / SetEnum / RecordCtor
    SourceLocation loc;

    static Pattern make_name(std::string id, SourceLocation at);
};

// ---------------------------------------------------------------------------
// Types

enum class TypeKind { Basic, Quote, Seq, Seq1, Set, Map, Optional, Union, Named };

struct TypeExpr {
    TypeKind kind = TypeKind::Basic;
    // Basic: nat|nat1|int|real|bool|char|token|rat; Quote: the quote name;
    // Named: the identifier, possibly module-qualified as "Mod`T".
    std::string name;
    std::vector<TypePtr> args; // Seq/Seq1/Set/Optional: 1; Map: 2 (from, to); Union: >= 2
    SourceLocation loc;
};

// ---------------------------------------------------------------------------
// Expressions

enum class ExprKind {
    Literal,     // text holds the literal spelling (numbers, chars, strings, <QUOTE>, true, false, nil)
    NameRef,     // text holds the identifier, possibly "Mod`name"
    Apply,       // operands[0] is the callee expression, the rest are arguments
    Unary,       // text holds the operator (-, +, not, abs, floor, ...)
    Binary,      // text holds the operator; operands = {lhs, rhs}
    IfThenElse,  // operands = {cond, then, (elseif-cond, elseif-then)*, else}
    LetIn,       // lets + operands[0] = body
    Quantifier,  // text = forall|exists|exists1; binds; operands[0] = body
    SetEnum,     // operands are the elements
    SetRange,    // operands = {low, high}
    SeqEnum,
    MapEnum,     // operands alternate key, value
    SetComp,     // operands[0] = element, binds, optional predicate
    SeqComp,
    MapComp,     // operands = {key, value}, binds, optional predicate
    IsType,      // is_T(e) with named_type = T, or is_(e, type) with type set
    FieldSelect, // operands[0] = record, text = field name
    RecordCtor,  // mk_T(args): text = T
    TupleCtor,   // mk_(args)
    Builtin,     // text = hd|tl|len|elems|card|dom|rng|inds|...; operands = args
    Undefined,   // `is not yet specified`
};

enum class BindKind { InSet, OfType };

struct Bind {
    BindKind kind = BindKind::InSet;
    std::vector<Pattern> patterns; // `a, b in set s` binds two patterns to one set
    ExprPtr set;                   // InSet
    TypePtr type;                  // OfType
    SourceLocation loc;
};

struct LetBinding {
    Pattern pattern;
    TypePtr type; // optional
    ExprPtr value;
};

struct Expr {
    ExprKind kind = ExprKind::Literal;
    SourceLocation loc;
    std::string text;
    std::vector<ExprPtr> operands;
    std::vector<Bind> binds;        // Quantifier, *Comp
    std::vector<LetBinding> lets;   // LetIn
    ExprPtr predicate;              // *Comp: optional `& pred`
    TypePtr type;                   // IsType with basic/compound type argument
};

// ---------------------------------------------------------------------------
// Definitions

enum class DefKind { RecordType, NamedType, Value, ExplicitFunction };
enum class Section { Types, Values, Functions };

const char* section_keyword(Section s);

struct Field {
    std::string name;
    TypePtr type;
    SourceLocation loc;
};

/// An invariant, equality, order, pre, post or measure clause.
struct Clause {
    std::vector<Pattern> params; // inv: one pattern; eq/ord: two; pre/post/measure: none
    ExprPtr body;
    SourceLocation loc;          // location of the introducing keyword
};

struct Definition {
    DefKind kind = DefKind::NamedType;
    std::string name;          // empty for values (see pattern)
    SourceLocation name_loc;

    // RecordType
    std::vector<Field> fields;
    // NamedType right-hand side; Value declared type (optional)
    TypePtr type;
    std::optional<Clause> inv, eq, ord;

    // Value
    Pattern pattern;
    ExprPtr init;

    // ExplicitFunction
    std::vector<TypePtr> domain;
    TypePtr range;
    bool partial = true; // `->` vs `+>`
    std::vector<Pattern> params;
    ExprPtr body;
    std::optional<Clause> pre, post, measure;

    std::vector<std::string> doc_comments; // attached `--@doc` lines, verbatim
    SourceSpan span;
    std::string verbatim;

    Section section() const;
    bool is_type() const { return kind == DefKind::RecordType || kind == DefKind::NamedType; }
    /// Human readable name: the definition name, or the pattern's bound names.
    std::string display_name() const;
};

struct SourceModule {
    std::string name;
    bool exports_all = false;
    std::vector<std::string> imports;
    std::vector<Definition> definitions;
    SourceSpan span;
    std::string source_file;
};

} // namespace defsort
