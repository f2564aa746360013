#include "defsort/freevars.hpp"

#include <algorithm>
#include <functional>

namespace defsort {

BoundContext::BoundContext(std::set<std::string> outermost) { scopes_.push_back(std::move(outermost)); }

void BoundContext::push() { scopes_.emplace_back(); }

void BoundContext::pop() { scopes_.pop_back(); }

void BoundContext::bind(const std::string& name) {
    if (scopes_.empty()) push();
    scopes_.back().insert(name);
}

void BoundContext::bind(const Pattern& p) {
    for (const auto& n : pattern_names(p)) bind(n);
}

bool BoundContext::contains(const std::string& name) const {
    return std::any_of(scopes_.begin(), scopes_.end(), [&](const auto& s) { return s.count(name) != 0; });
}

namespace {

class FreeUseVisitor {
public:
    explicit FreeUseVisitor(BoundContext ctx) : ctx_(std::move(ctx)) {}

    std::vector<UseSite> take() { return std::move(uses_); }

    void visit(const Expr& e) {
        switch (e.kind) {
        case ExprKind::Literal:
        case ExprKind::Undefined:
            break;
        case ExprKind::NameRef:
            use(e.text, e.loc, Namespace::Function, false);
            break;
        case ExprKind::Apply:
            if (e.operands.front()->kind == ExprKind::NameRef) {
                use(e.operands.front()->text, e.operands.front()->loc, Namespace::Function, true);
            } else {
                visit(*e.operands.front());
            }
            for (std::size_t i = 1; i < e.operands.size(); ++i) visit(*e.operands[i]);
            break;
        case ExprKind::IfThenElse: {
            visit(*e.operands.front());
            ++conditional_;
            for (std::size_t i = 1; i < e.operands.size(); ++i) visit(*e.operands[i]);
            --conditional_;
            break;
        }
        case ExprKind::LetIn:
            ctx_.push();
            for (const auto& l : e.lets) {
                if (l.type) visit_type(*l.type);
                visit(*l.value);
                visit_pattern_types(l.pattern);
                ctx_.bind(l.pattern);
            }
            visit(*e.operands.front());
            ctx_.pop();
            break;
        case ExprKind::Quantifier:
            ctx_.push();
            bind_all(e.binds);
            ++conditional_;
            visit(*e.operands.front());
            --conditional_;
            ctx_.pop();
            break;
        case ExprKind::SetComp:
        case ExprKind::SeqComp:
        case ExprKind::MapComp:
            ctx_.push();
            bind_all(e.binds);
            if (e.predicate) visit(*e.predicate);
            for (const auto& o : e.operands) visit(*o);
            ctx_.pop();
            break;
        case ExprKind::IsType:
            if (e.type) visit_type(*e.type);
            else use(e.text, e.loc, Namespace::Type, false);
            visit(*e.operands.front());
            break;
        case ExprKind::RecordCtor:
            use(e.text, e.loc, Namespace::Type, false);
            for (const auto& o : e.operands) visit(*o);
            break;
        case ExprKind::FieldSelect:
            visit(*e.operands.front());
            break;
        default:
            for (const auto& o : e.operands) visit(*o);
            break;
        }
    }

    void visit_pattern_types(const Pattern& p) {
        if (p.kind == PatternKind::RecordCtor) use(p.name, p.loc, Namespace::Type, false);
        for (const auto& el : p.elements) visit_pattern_types(el);
    }

    void visit_type(const TypeExpr& t) {
        if (t.kind == TypeKind::Named) use(t.name, t.loc, Namespace::Type, false);
        for (const auto& a : t.args) visit_type(*a);
    }

private:
    // Bind sets are evaluated outside the scope they introduce; every
    // pattern of the bind list becomes visible afterwards.
    void bind_all(const std::vector<Bind>& binds) {
        for (const auto& b : binds) {
            if (b.set) visit(*b.set);
            if (b.type) visit_type(*b.type);
            for (const auto& p : b.patterns) visit_pattern_types(p);
        }
        for (const auto& b : binds)
            for (const auto& p : b.patterns) ctx_.bind(p);
    }

    void use(const std::string& name, const SourceLocation& at, Namespace ns, bool call) {
        if (ns == Namespace::Function && ctx_.contains(name)) return;
        uses_.push_back(UseSite{name, at, conditional_ > 0, ns, call});
    }

    BoundContext ctx_;
    int conditional_ = 0;
    std::vector<UseSite> uses_;
};

std::vector<UseSite> node_uses(const DefNode& n) {
    if (!n.body) return {};
    FreeUseVisitor v{BoundContext(n.bound_params)};
    for (const auto& p : n.params) v.visit_pattern_types(p);
    v.visit(*n.body);
    return v.take();
}

std::optional<std::size_t> resolve_use(const UseSite& u, const FlatModule& fm) {
    std::string name = u.used_name;
    if (const auto tick = name.find('`'); tick != std::string::npos) {
        if (name.substr(0, tick) != fm.module_name) return std::nullopt; // imported
        name = name.substr(tick + 1);
    }
    return fm.find(u.ns, name);
}

template <typename Pred>
std::vector<std::size_t> dependencies_where(std::size_t node, const FlatModule& fm, Pred keep) {
    const DefNode& n = fm.nodes[node];
    std::vector<std::size_t> out;
    auto add = [&](std::size_t target) {
        if (target == node) return;
        if (n.kind == NodeKind::MeasureFn && target == fm.owner_of(node)) return;
        if (std::find(out.begin(), out.end(), target) == out.end()) out.push_back(target);
    };
    for (const auto& u : node_uses(n)) {
        if (!keep(u)) continue;
        auto target = resolve_use(u, fm);
        if (!target) continue;
        add(*target);
        if (is_clause(fm.nodes[*target].kind)) {
            const std::size_t owner = fm.owner_of(*target);
            if (fm.nodes[owner].definition != n.definition) add(owner);
        }
    }
    return out;
}

void walk(const Expr& e, const std::function<void(const Expr&)>& f) {
    f(e);
    for (const auto& o : e.operands) walk(*o, f);
    for (const auto& l : e.lets) walk(*l.value, f);
    for (const auto& b : e.binds)
        if (b.set) walk(*b.set, f);
    if (e.predicate) walk(*e.predicate, f);
}

std::vector<const Expr*> definition_exprs(const Definition& d) {
    std::vector<const Expr*> out;
    for (const ExprPtr& e : {d.init, d.body}) if (e) out.push_back(e.get());
    for (const auto* c : {&d.inv, &d.eq, &d.ord, &d.pre, &d.post, &d.measure})
        if (*c) out.push_back((*c)->body.get());
    return out;
}

} // namespace

std::vector<UseSite> free_uses(const Expr& body, BoundContext ctx) {
    FreeUseVisitor v(std::move(ctx));
    v.visit(body);
    return v.take();
}

std::vector<std::size_t> def_dependencies(std::size_t node, const FlatModule& fm) {
    return dependencies_where(node, fm, [](const UseSite&) { return true; });
}

std::vector<std::size_t> init_dependencies(std::size_t node, const FlatModule& fm) {
    if (fm.nodes[node].kind != NodeKind::ValueDef) return {};
    auto deps = dependencies_where(node, fm, [](const UseSite& u) { return !u.conditional; });
    std::erase_if(deps, [&](std::size_t t) { return fm.nodes[t].kind != NodeKind::ValueDef; });
    return deps;
}

std::vector<Diagnostic> check_duplicate_binds(const SourceModule& m) {
    std::vector<Diagnostic> out;
    for (const auto& d : m.definitions) {
        for (const Expr* root : definition_exprs(d)) {
            walk(*root, [&](const Expr& e) {
                if (e.kind != ExprKind::SetComp && e.kind != ExprKind::SeqComp && e.kind != ExprKind::MapComp) return;
                std::set<std::string> seen;
                for (const auto& b : e.binds) {
                    for (const auto& p : b.patterns) {
                        for (const auto& n : pattern_names(p)) {
                            if (seen.insert(n).second) continue;
                            out.push_back(Diagnostic{Severity::Error, "DuplicateBind", b.loc,
                                                     "'" + n + "' is bound more than once in one comprehension"});
                        }
                    }
                }
            });
        }
    }
    return out;
}

std::vector<Diagnostic> check_precondition_calls(const SourceModule& m, const FlatModule& fm) {
    std::vector<Diagnostic> out;
    for (const auto& d : m.definitions) {
        if (d.kind != DefKind::ExplicitFunction) continue;
        std::set<std::string> params;
        for (const auto& p : d.params)
            for (auto& n : pattern_names(p)) params.insert(std::move(n));

        const auto body_uses = free_uses(*d.body, BoundContext(params));
        std::set<std::string> mentioned;
        for (const auto& u : body_uses) mentioned.insert(u.used_name);
        if (d.pre)
            for (const auto& u : free_uses(*d.pre->body, BoundContext(params))) mentioned.insert(u.used_name);

        for (const auto& u : body_uses) {
            if (!u.call || u.ns != Namespace::Function) continue;
            auto pre = fm.find(Namespace::Function, "pre_" + u.used_name);
            if (!pre || fm.nodes[*pre].kind != NodeKind::PreFn) continue;
            if (mentioned.count("pre_" + u.used_name)) continue;
            out.push_back(Diagnostic{Severity::Warning, "UnguardedPreconditionCall", u.at,
                                     "call to '" + u.used_name + "' in '" + d.name + "' does not check 'pre_" +
                                         u.used_name + "'"});
        }
    }
    return out;
}

} // namespace defsort
