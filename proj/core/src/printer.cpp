#include "defsort/printer.hpp"

#include <sstream>

namespace defsort {

std::string print_module(const SourceModule& m) {
    std::ostringstream out;
    out << "module " << m.name << "\n";
    if (!m.imports.empty()) {
        out << "imports ";
        for (std::size_t i = 0; i < m.imports.size(); ++i)
            out << (i ? ",\n        " : "") << "from " << m.imports[i] << " all";
        out << "\n";
    }
    if (m.exports_all) out << "exports all\n";
    out << "definitions\n";

    std::optional<Section> open;
    for (const auto& d : m.definitions) {
        if (open != d.section()) {
            open = d.section();
            out << "\n" << section_keyword(*open) << "\n";
        } else {
            out << "\n";
        }
        // Restore the original indentation of the first line; the rest of the
        // verbatim text carries its own.
        out << std::string(static_cast<std::size_t>(d.span.start.column - 1), ' ') << d.verbatim << "\n";
    }
    if (!m.definitions.empty()) out << "\n";
    out << "end " << m.name;
    return out.str();
}

std::string dump_pattern(const Pattern& p) {
    std::string out;
    auto list = [&](const char* open, const char* close) {
        out += open;
        for (std::size_t i = 0; i < p.elements.size(); ++i) out += (i ? " " : "") + dump_pattern(p.elements[i]);
        out += close;
    };
    switch (p.kind) {
    case PatternKind::Name: return p.name;
    case PatternKind::Ignore: return "-";
    case PatternKind::SeqEnum: list("[", "]"); break;
    case PatternKind::SetEnum: list("{", "}"); break;
    case PatternKind::RecordCtor: list(("(mk_" + p.name + " ").c_str(), ")"); break;
    }
    return out;
}

std::string dump_type(const TypeExpr& t) {
    std::string out = "(";
    switch (t.kind) {
    case TypeKind::Basic: out += "basic"; break;
    case TypeKind::Quote: out += "quote"; break;
    case TypeKind::Seq: out += "seq"; break;
    case TypeKind::Seq1: out += "seq1"; break;
    case TypeKind::Set: out += "set"; break;
    case TypeKind::Map: out += "map"; break;
    case TypeKind::Optional: out += "opt"; break;
    case TypeKind::Union: out += "union"; break;
    case TypeKind::Named: out += "named"; break;
    }
    if (!t.name.empty()) out += " " + t.name;
    for (const auto& a : t.args) out += " " + dump_type(*a);
    return out + ")";
}

namespace {

const char* expr_kind_name(ExprKind k) {
    switch (k) {
    case ExprKind::Literal: return "lit";
    case ExprKind::NameRef: return "name";
    case ExprKind::Apply: return "apply";
    case ExprKind::Unary: return "unary";
    case ExprKind::Binary: return "binary";
    case ExprKind::IfThenElse: return "if";
    case ExprKind::LetIn: return "let";
    case ExprKind::Quantifier: return "quant";
    case ExprKind::SetEnum: return "set";
    case ExprKind::SetRange: return "range";
    case ExprKind::SeqEnum: return "seq";
    case ExprKind::MapEnum: return "map";
    case ExprKind::SetComp: return "setcomp";
    case ExprKind::SeqComp: return "seqcomp";
    case ExprKind::MapComp: return "mapcomp";
    case ExprKind::IsType: return "is";
    case ExprKind::FieldSelect: return "field";
    case ExprKind::RecordCtor: return "mk";
    case ExprKind::TupleCtor: return "tuple";
    case ExprKind::Builtin: return "builtin";
    case ExprKind::Undefined: return "undefined";
    }
    return "?";
}

std::string dump_bind(const Bind& b) {
    std::string out = "(bind";
    for (const auto& p : b.patterns) out += " " + dump_pattern(p);
    if (b.kind == BindKind::InSet) out += " in " + dump_expr(*b.set);
    else out += " : " + dump_type(*b.type);
    return out + ")";
}

void dump_clause(std::ostringstream& out, const char* tag, const std::optional<Clause>& c) {
    if (!c) return;
    out << " (" << tag;
    for (const auto& p : c->params) out << " " << dump_pattern(p);
    out << " " << dump_expr(*c->body) << ")";
}

} // namespace

std::string dump_expr(const Expr& e) {
    std::string out = "(";
    out += expr_kind_name(e.kind);
    if (!e.text.empty()) out += " " + e.text;
    for (const auto& l : e.lets) {
        out += " (:= " + dump_pattern(l.pattern);
        if (l.type) out += " " + dump_type(*l.type);
        out += " " + dump_expr(*l.value) + ")";
    }
    for (const auto& b : e.binds) out += " " + dump_bind(b);
    if (e.type) out += " " + dump_type(*e.type);
    for (const auto& o : e.operands) out += " " + dump_expr(*o);
    if (e.predicate) out += " (& " + dump_expr(*e.predicate) + ")";
    return out + ")";
}

std::string dump_module(const SourceModule& m) {
    std::ostringstream out;
    out << "(module " << m.name << (m.exports_all ? " exports-all" : "");
    for (const auto& i : m.imports) out << " (import " << i << ")";
    for (const auto& d : m.definitions) {
        out << "\n  (";
        switch (d.kind) {
        case DefKind::RecordType:
            out << "record " << d.name;
            for (const auto& f : d.fields) out << " (" << f.name << " " << dump_type(*f.type) << ")";
            break;
        case DefKind::NamedType:
            out << "type " << d.name << " " << dump_type(*d.type);
            break;
        case DefKind::Value:
            out << "value " << dump_pattern(d.pattern);
            if (d.type) out << " " << dump_type(*d.type);
            out << " " << dump_expr(*d.init);
            break;
        case DefKind::ExplicitFunction:
            out << "function " << d.name << " (sig";
            for (const auto& t : d.domain) out << " " << dump_type(*t);
            out << (d.partial ? " -> " : " +> ") << dump_type(*d.range) << ") (params";
            for (const auto& p : d.params) out << " " << dump_pattern(p);
            out << ") " << dump_expr(*d.body);
            break;
        }
        dump_clause(out, "inv", d.inv);
        dump_clause(out, "eq", d.eq);
        dump_clause(out, "ord", d.ord);
        dump_clause(out, "pre", d.pre);
        dump_clause(out, "post", d.post);
        dump_clause(out, "measure", d.measure);
        for (const auto& c : d.doc_comments) out << " (doc \"" << c << "\")";
        out << " (verbatim \"" << d.verbatim << "\"))";
    }
    out << ")";
    return out.str();
}

bool structurally_equal(const SourceModule& a, const SourceModule& b) { return dump_module(a) == dump_module(b); }

} // namespace defsort
