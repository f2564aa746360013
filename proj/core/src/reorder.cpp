#include "defsort/reorder.hpp"

#include "defsort/freevars.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace defsort {

ModuleAnalysis analyse(const SourceModule& m) {
    ModuleAnalysis a;
    a.flat = collect(m);
    a.type_links = type_dependency_links(a.flat, m);
    a.fv_deps.reserve(a.flat.nodes.size());
    for (std::size_t i = 0; i < a.flat.nodes.size(); ++i) a.fv_deps.push_back(def_dependencies(i, a.flat));
    a.graph = build_graph(a.flat, a.type_links, a.fv_deps);
    return a;
}

std::vector<Edge> forward_edges(const FlatModule& fm, const DepGraph& g) {
    std::vector<Edge> out;
    for (const auto& e : g.edges())
        if (fm.nodes[e.used].definition > fm.nodes[e.user].definition) out.push_back(e);
    return out;
}

std::vector<Edge> fixable_forward_edges(const FlatModule& fm, const DepGraph& g) {
    std::vector<std::size_t> component(g.size(), g.size());
    const auto comps = strongly_connected_components(g);
    for (std::size_t c = 0; c < comps.size(); ++c)
        for (std::size_t v : comps[c]) component[v] = c;
    auto out = forward_edges(fm, g);
    std::erase_if(out, [&](const Edge& e) {
        return component[e.user] != g.size() && component[e.user] == component[e.used];
    });
    return out;
}

std::vector<ForwardRef> forward_references(const FlatModule& fm, const DepGraph& g) {
    struct Candidate {
        std::size_t user_def;
        int clause_rank; // the owning definition's line comes before its clauses'
        std::string user;
        SourceLocation user_location;
        std::size_t used;
    };
    std::vector<Candidate> cands;
    for (const auto& e : forward_edges(fm, g)) {
        const DefNode& u = fm.nodes[e.user];
        if (u.synthetic) continue;
        const std::size_t owner = fm.owner_of(e.user);
        cands.push_back(Candidate{u.definition, 0, fm.nodes[owner].name, fm.nodes[owner].location, e.used});
        if (owner != e.user) cands.push_back(Candidate{u.definition, 1, u.name, u.location, e.used});
    }

    // Function-space targets: keep only the earliest-declared per user.
    std::map<std::string, std::size_t> first_function_target;
    for (const auto& c : cands) {
        if (fm.nodes[c.used].ns != Namespace::Function) continue;
        auto [it, fresh] = first_function_target.emplace(c.user, c.used);
        if (!fresh && c.used < it->second) it->second = c.used;
    }
    std::erase_if(cands, [&](const Candidate& c) {
        return fm.nodes[c.used].ns == Namespace::Function && first_function_target[c.user] != c.used;
    });

    // Per user: type-space targets latest first, then the function-space one.
    std::stable_sort(cands.begin(), cands.end(), [&](const Candidate& a, const Candidate& b) {
        if (a.user_def != b.user_def) return a.user_def < b.user_def;
        if (a.clause_rank != b.clause_rank) return a.clause_rank < b.clause_rank;
        if (a.user != b.user) return a.user_location < b.user_location;
        const bool ta = fm.nodes[a.used].ns == Namespace::Type, tb = fm.nodes[b.used].ns == Namespace::Type;
        if (ta != tb) return ta;
        return ta ? a.used > b.used : a.used < b.used;
    });

    std::vector<ForwardRef> out;
    std::set<std::pair<std::string, std::string>> seen;
    for (const auto& c : cands) {
        const DefNode& used = fm.nodes[c.used];
        if (!seen.emplace(c.user, used.name).second) continue;
        ForwardRef r;
        r.user = c.user;
        r.used = used.name;
        r.user_location = c.user_location;
        r.type_space = used.ns == Namespace::Type;
        r.message = (r.type_space ? fm.module_name + "`" : std::string()) + used.name + " declared after " + c.user;
        out.push_back(std::move(r));
    }
    return out;
}

std::vector<std::size_t> organised_definitions(const std::vector<std::size_t>& sorted, const FlatModule& fm) {
    std::vector<std::size_t> defs;
    std::vector<bool> placed;
    for (std::size_t id : sorted) {
        const DefNode& n = fm.nodes[id];
        if (n.synthetic || is_clause(n.kind)) continue;
        if (n.definition >= placed.size()) placed.resize(n.definition + 1, false);
        if (placed[n.definition]) continue;
        placed[n.definition] = true;
        defs.push_back(n.definition);
    }
    return defs;
}

std::vector<std::string> organise(const std::vector<std::size_t>& sorted, const FlatModule& fm) {
    std::vector<std::string> out;
    for (std::size_t def : organised_definitions(sorted, fm))
        for (const auto& n : fm.nodes)
            if (n.definition == def && !n.synthetic && !is_clause(n.kind)) out.push_back(n.name);
    return out;
}

SortResult sort_module(const SourceModule& m) {
    const ModuleAnalysis a = analyse(m);
    SortResult result{m, {}};
    SortReport& r = result.report;
    r.module_name = m.name;
    r.original_names = a.flat.original_names;
    r.start_points = names_of(a.graph, start_points(a.graph));
    r.forward_refs = forward_references(a.flat, a.graph);

    if (fixable_forward_edges(a.flat, a.graph).empty()) {
        for (const auto& n : a.flat.nodes) r.sorted_names.push_back(n.name);
        r.organised_names = r.original_names;
        return result;
    }

    BrokenGraph broken = break_cycles(a.graph);
    const SortOutcome outcome = kahn_sort(broken.graph);
    r.sorted_names = names_of(broken.graph, outcome.sorted);
    r.organised_names = organise(outcome.sorted, a.flat);
    for (const auto& e : broken.removed) r.removed_edges.emplace_back(a.graph.node(e.user).name, a.graph.node(e.used).name);

    result.module.definitions.clear();
    for (std::size_t def : organised_definitions(outcome.sorted, a.flat))
        result.module.definitions.push_back(m.definitions[def]);
    r.sorted = true;
    return result;
}

bool verify_order(const SourceModule& m) {
    const ModuleAnalysis a = analyse(m);
    return fixable_forward_edges(a.flat, a.graph).empty();
}

std::vector<Diagnostic> check_initialization_cycles(const FlatModule& fm) {
    DepGraph g;
    for (const auto& n : fm.nodes) g.add_node(GraphNode{n.name, n.location});
    for (std::size_t i = 0; i < fm.nodes.size(); ++i)
        for (std::size_t d : init_dependencies(i, fm)) g.add_edge(i, d, fm.nodes[i].location);

    std::vector<Diagnostic> out;
    for (const auto& c : find_cycles(g)) {
        std::string walk;
        for (std::size_t v : c.members) walk += (walk.empty() ? "" : " -> ") + g.node(v).name;
        out.push_back(Diagnostic{Severity::Error, "InitializationCycle", g.node(c.members.front()).location,
                                 "values depend on each other for initialization: " + walk});
    }
    return out;
}

std::vector<Diagnostic> check_module(const SourceModule& m) {
    std::vector<Diagnostic> out = check_duplicate_binds(m);
    try {
        const ModuleAnalysis a = analyse(m);
        for (auto& d : check_initialization_cycles(a.flat)) out.push_back(std::move(d));
        for (auto& d : check_precondition_calls(m, a.flat)) out.push_back(std::move(d));
        for (const auto& f : forward_references(a.flat, a.graph))
            out.push_back(Diagnostic{Severity::Warning, "ForwardReference", f.user_location, f.message});
    } catch (const AnalysisError& e) {
        out.push_back(e.to_diagnostic());
    }
    std::stable_sort(out.begin(), out.end(),
                     [](const Diagnostic& a, const Diagnostic& b) { return a.location < b.location; });
    return out;
}

} // namespace defsort
