#include "defsort/modorder.hpp"

#include <algorithm>

namespace defsort {

ModuleGraph build_module_graph(const std::vector<SourceModule>& mods) {
    ModuleGraph mg;
    auto index_of = [&](const std::string& name) -> std::optional<std::size_t> {
        auto it = std::find(mg.nodes.begin(), mg.nodes.end(), name);
        if (it == mg.nodes.end()) return std::nullopt;
        return static_cast<std::size_t>(it - mg.nodes.begin());
    };
    for (const auto& m : mods) {
        if (index_of(m.name)) continue;
        mg.nodes.push_back(m.name);
        mg.unresolved.push_back(false);
    }
    for (const auto& m : mods) {
        const std::size_t from = *index_of(m.name);
        for (const auto& imp : m.imports) {
            auto to = index_of(imp);
            if (!to) {
                mg.nodes.push_back(imp);
                mg.unresolved.push_back(true);
                to = mg.nodes.size() - 1;
            }
            const std::pair<std::size_t, std::size_t> e{from, *to};
            if (std::find(mg.edges.begin(), mg.edges.end(), e) == mg.edges.end()) mg.edges.push_back(e);
        }
    }
    return mg;
}

ModuleOrder order_modules(const std::vector<SourceModule>& mods) {
    ModuleOrder out;
    const ModuleGraph mg = build_module_graph(mods);

    std::vector<SourceLocation> where(mg.nodes.size());
    std::vector<bool> reported(mg.nodes.size(), false);
    for (const auto& m : mods) {
        const auto it = std::find(mg.nodes.begin(), mg.nodes.end(), m.name);
        const std::size_t i = static_cast<std::size_t>(it - mg.nodes.begin());
        if (reported[i]) {
            out.warnings.push_back(Diagnostic{Severity::Warning, "DuplicateModule", m.span.start,
                                              "module '" + m.name + "' defined more than once; first definition used"});
            continue;
        }
        reported[i] = true;
        where[i] = m.span.start;
    }

    DepGraph g;
    for (std::size_t i = 0; i < mg.nodes.size(); ++i) {
        if (mg.unresolved[i]) continue;
        g.add_node(GraphNode{mg.nodes[i], where[i]});
    }
    // Resolved modules occupy the first indices, in input order.
    for (const auto& [from, to] : mg.edges) {
        if (mg.unresolved[to]) {
            out.warnings.push_back(Diagnostic{Severity::Warning, "UnresolvedImport", where[from],
                                              "module '" + mg.nodes[from] + "' imports unknown module '" +
                                                  mg.nodes[to] + "'"});
            continue;
        }
        g.add_edge(from, to, where[from]);
    }

    BrokenGraph broken = break_cycles(std::move(g));
    for (const auto& e : broken.removed) {
        const std::string& importer = broken.graph.node(e.user).name;
        const std::string& imported = broken.graph.node(e.used).name;
        out.removed_edges.emplace_back(importer, imported);
        out.warnings.push_back(Diagnostic{Severity::Warning, "ImportCycle", e.at,
                                          "import cycle broken by ignoring '" + importer + "' imports '" + imported +
                                              "'"});
    }
    out.order = names_of(broken.graph, kahn_sort(broken.graph).sorted);
    return out;
}

} // namespace defsort
