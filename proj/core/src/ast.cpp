#include "defsort/ast.hpp"

namespace defsort {

Pattern Pattern::make_name(std::string id, SourceLocation at) {
    Pattern p;
    p.kind = PatternKind::Name;
    p.name = std::move(id);
    p.loc = std::move(at);
    return p;
}

const char* section_keyword(Section s) {
    switch (s) {
    case Section::Types: return "types";
    case Section::Values: return "values";
    case Section::Functions: return "functions";
    }
    return "?";
}

Section Definition::section() const {
    switch (kind) {
    case DefKind::RecordType:
    case DefKind::NamedType: return Section::Types;
    case DefKind::Value: return Section::Values;
    case DefKind::ExplicitFunction: return Section::Functions;
    }
    return Section::Functions;
}

namespace {
void pattern_names_into(const Pattern& p, std::string& out) {
    if (p.kind == PatternKind::Name) {
        if (!out.empty()) out += ",";
        out += p.name;
    }
    for (const auto& e : p.elements) pattern_names_into(e, out);
}
} // namespace

std::string Definition::display_name() const {
    if (kind != DefKind::Value) return name;
    std::string out;
    pattern_names_into(pattern, out);
    return out;
}

} // namespace defsort
