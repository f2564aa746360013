#include "defsort/defcollect.hpp"

#include <algorithm>
#include <map>
#include <utility>

namespace defsort {

const char* node_kind_name(NodeKind k) {
    switch (k) {
    case NodeKind::TypeDef: return "type";
    case NodeKind::ValueDef: return "value";
    case NodeKind::FunctionDef: return "function";
    case NodeKind::InvariantFn: return "inv";
    case NodeKind::EqFn: return "eq";
    case NodeKind::OrdFn: return "ord";
    case NodeKind::PreFn: return "pre";
    case NodeKind::PostFn: return "post";
    case NodeKind::MeasureFn: return "measure";
    }
    return "?";
}

std::optional<std::size_t> FlatModule::find(Namespace ns, const std::string& name) const {
    for (std::size_t i = 0; i < nodes.size(); ++i)
        if (nodes[i].ns == ns && nodes[i].name == name) return i;
    return std::nullopt;
}

std::size_t FlatModule::owner_of(std::size_t node) const {
    const DefNode& n = nodes[node];
    if (!is_clause(n.kind)) return node;
    const Namespace owner_ns = (n.kind == NodeKind::InvariantFn || n.kind == NodeKind::EqFn || n.kind == NodeKind::OrdFn)
                                   ? Namespace::Type
                                   : Namespace::Function;
    auto found = find(owner_ns, n.origin);
    return found ? *found : node;
}

namespace {

void names_into(const Pattern& p, std::vector<std::string>& out) {
    if (p.kind == PatternKind::Name) out.push_back(p.name);
    for (const auto& e : p.elements) names_into(e, out);
}

std::set<std::string> bound_names(const std::vector<Pattern>& ps) {
    std::set<std::string> out;
    for (const auto& p : ps)
        for (auto& n : pattern_names(p)) out.insert(std::move(n));
    return out;
}

ExprPtr true_literal(const SourceLocation& at) {
    auto e = std::make_shared<Expr>();
    e->kind = ExprKind::Literal;
    e->text = "true";
    e->loc = at;
    return e;
}

// Named types referenced by `t`, in textual order.
void named_types(const TypeExpr& t, std::vector<std::pair<std::string, SourceLocation>>& out) {
    if (t.kind == TypeKind::Named) out.emplace_back(t.name, t.loc);
    for (const auto& a : t.args) named_types(*a, out);
}

std::size_t resolve_local(const FlatModule& fm, const std::string& name, const SourceLocation& at) {
    if (auto t = fm.find(Namespace::Type, name)) return *t;
    throw AnalysisError("UnknownName", at, "unknown type '" + name + "'");
}

} // namespace

std::vector<std::string> pattern_names(const Pattern& p) {
    std::vector<std::string> out;
    names_into(p, out);
    return out;
}

FlatModule collect(const SourceModule& m) {
    FlatModule fm;
    fm.module_name = m.name;
    fm.imports = m.imports;

    std::map<std::pair<Namespace, std::string>, SourceLocation> seen;
    auto add = [&](DefNode n) {
        auto [it, fresh] = seen.emplace(std::make_pair(n.ns, n.name), n.location);
        if (!fresh)
            throw AnalysisError("DuplicateName", n.location,
                                "'" + n.name + "' already defined at " + it->second.str());
        if (!n.synthetic && !is_clause(n.kind)) fm.original_names.push_back(n.name);
        fm.nodes.push_back(std::move(n));
    };
    auto clause_node = [&](std::size_t def, const std::string& owner, NodeKind kind, const char* prefix,
                           const Clause& c, std::vector<Pattern> params) {
        DefNode n;
        n.name = std::string(prefix) + owner;
        n.kind = kind;
        n.origin = owner;
        n.definition = def;
        n.location = c.loc;
        n.params = std::move(params);
        n.bound_params = bound_names(n.params);
        n.body = c.body;
        return n;
    };

    for (std::size_t i = 0; i < m.definitions.size(); ++i) {
        const Definition& d = m.definitions[i];
        switch (d.kind) {
        case DefKind::RecordType:
        case DefKind::NamedType: {
            DefNode t;
            t.name = d.name;
            t.ns = Namespace::Type;
            t.kind = NodeKind::TypeDef;
            t.origin = d.name;
            t.definition = i;
            t.location = d.name_loc;
            add(std::move(t));

            if (d.inv) {
                add(clause_node(i, d.name, NodeKind::InvariantFn, "inv_", *d.inv, d.inv->params));
            } else {
                // Same shape the user would get from writing `inv - == true`.
                DefNode inv;
                inv.name = "inv_" + d.name;
                inv.kind = NodeKind::InvariantFn;
                inv.origin = d.name;
                inv.definition = i;
                inv.synthetic = true;
                inv.location = d.name_loc;
                inv.params.push_back(Pattern{});
                inv.body = true_literal(d.name_loc);
                add(std::move(inv));
            }
            if (d.eq) add(clause_node(i, d.name, NodeKind::EqFn, "eq_", *d.eq, d.eq->params));
            if (d.ord) add(clause_node(i, d.name, NodeKind::OrdFn, "ord_", *d.ord, d.ord->params));
            break;
        }
        case DefKind::Value: {
            for (const auto& name : pattern_names(d.pattern)) {
                DefNode v;
                v.name = name;
                v.kind = NodeKind::ValueDef;
                v.origin = name;
                v.definition = i;
                v.location = d.name_loc;
                v.body = d.init;
                add(std::move(v));
            }
            break;
        }
        case DefKind::ExplicitFunction: {
            DefNode f;
            f.name = d.name;
            f.kind = NodeKind::FunctionDef;
            f.origin = d.name;
            f.definition = i;
            f.location = d.name_loc;
            f.params = d.params;
            f.bound_params = bound_names(d.params);
            f.body = d.body;
            add(std::move(f));
            if (d.pre) add(clause_node(i, d.name, NodeKind::PreFn, "pre_", *d.pre, d.params));
            if (d.post) {
                DefNode post = clause_node(i, d.name, NodeKind::PostFn, "post_", *d.post, d.params);
                post.bound_params.insert("RESULT");
                add(std::move(post));
            }
            if (d.measure) add(clause_node(i, d.name, NodeKind::MeasureFn, "measure_", *d.measure, d.params));
            break;
        }
        }
    }
    return fm;
}

std::vector<Link> type_dependency_links(const FlatModule& fm, const SourceModule& m) {
    std::vector<Link> links;
    auto resolve = [&](const std::string& name, const SourceLocation& at) -> std::optional<std::size_t> {
        const auto tick = name.find('`');
        if (tick != std::string::npos) {
            const std::string mod = name.substr(0, tick);
            if (mod == fm.module_name) return std::optional<std::size_t>(resolve_local(fm, name.substr(tick + 1), at));
            if (std::find(fm.imports.begin(), fm.imports.end(), mod) == fm.imports.end())
                throw AnalysisError("UnknownName", at, "type '" + name + "' refers to module '" + mod + "' which is not imported");
            return std::nullopt; // external leaf
        }
        return std::optional<std::size_t>(resolve_local(fm, name, at));
    };
    auto link_types = [&](std::size_t from, const std::vector<const TypeExpr*>& types) {
        std::vector<std::pair<std::string, SourceLocation>> refs;
        for (const TypeExpr* t : types)
            if (t) named_types(*t, refs);
        for (const auto& [name, at] : refs) {
            auto to = resolve(name, at);
            if (!to || *to == from) continue;
            const bool dup = std::any_of(links.begin(), links.end(),
                                         [&](const Link& l) { return l.from == from && l.to == *to; });
            if (!dup) links.push_back(Link{from, *to, at});
        }
    };

    for (std::size_t i = 0; i < fm.nodes.size(); ++i) {
        const DefNode& n = fm.nodes[i];
        const Definition& d = m.definitions[n.definition];
        switch (n.kind) {
        case NodeKind::TypeDef: {
            std::vector<const TypeExpr*> types;
            if (d.type) types.push_back(d.type.get());
            for (const auto& f : d.fields) types.push_back(f.type.get());
            link_types(i, types);
            for (const char* prefix : {"inv_", "eq_", "ord_"})
                if (auto c = fm.find(Namespace::Function, prefix + n.name); c && fm.nodes[*c].definition == n.definition)
                    links.push_back(Link{i, *c, fm.nodes[*c].location});
            break;
        }
        case NodeKind::ValueDef:
            link_types(i, {d.type.get()});
            break;
        case NodeKind::FunctionDef:
        case NodeKind::PreFn:
        case NodeKind::PostFn:
        case NodeKind::MeasureFn: {
            std::vector<const TypeExpr*> types;
            for (const auto& t : d.domain) types.push_back(t.get());
            types.push_back(d.range.get());
            link_types(i, types);
            if (n.kind == NodeKind::FunctionDef)
                for (const char* prefix : {"pre_", "post_", "measure_"})
                    if (auto c = fm.find(Namespace::Function, prefix + n.name); c && fm.nodes[*c].definition == n.definition)
                        links.push_back(Link{i, *c, fm.nodes[*c].location});
            break;
        }
        case NodeKind::InvariantFn:
        case NodeKind::EqFn:
        case NodeKind::OrdFn:
            // Their argument type is the owning type (or its right-hand side),
            // which the owner already links to.
            break;
        }
    }
    return links;
}

} // namespace defsort
