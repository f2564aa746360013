#include "defsort/dotviz.hpp"

#include <algorithm>
#include <filesystem>
#include <sstream>

namespace defsort {

namespace {

std::string quoted(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '\\';
        out += c;
    }
    return out + "\"";
}

} // namespace

DotDocument emit_def_dot(const FlatModule& fm, const DepGraph& g, const SortReport& report) {
    std::ostringstream out;
    out << "digraph " << quoted(fm.module_name) << " {\n";
    for (std::size_t i = 0; i < g.size(); ++i) {
        const DefNode& n = fm.nodes[i];
        const bool start = std::find(report.start_points.begin(), report.start_points.end(), n.name) !=
                           report.start_points.end();
        std::string style;
        if (start) style = "shape=invtriangle, color=red";
        else if (n.synthetic) style = "shape=doublecircle";
        else if (g.successors(i).empty()) style = "shape=triangle";
        else style = "shape=ellipse";
        out << "    " << quoted(n.name) << " [label=" << quoted(n.name + "\\n(line " + std::to_string(n.location.line) + ")")
            << ", " << style << "];\n";
    }
    for (const auto& e : g.edges()) out << "    " << quoted(g.node(e.user).name) << " -> " << quoted(g.node(e.used).name) << ";\n";
    out << "}\n";
    return DotDocument{out.str()};
}

DotDocument emit_module_dot(const ModuleGraph& mg) {
    std::ostringstream out;
    out << "digraph \"modules\" {\n";
    for (std::size_t i = 0; i < mg.nodes.size(); ++i) {
        out << "    " << quoted(mg.nodes[i]);
        if (mg.unresolved[i]) out << " [style=dashed]";
        out << ";\n";
    }
    for (const auto& [from, to] : mg.edges) out << "    " << quoted(mg.nodes[from]) << " -> " << quoted(mg.nodes[to]) << ";\n";
    out << "}\n";
    return DotDocument{out.str()};
}

std::string dot_file_name(const std::string& dir, const std::string& module_name) {
    return (std::filesystem::path(dir) / (module_name + ".dot")).string();
}

} // namespace defsort
