#include "defsort/depgraph.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <queue>

namespace defsort {

DepGraph::DepGraph(std::vector<GraphNode> nodes)
    : nodes_(std::move(nodes)), succ_(nodes_.size()), witness_(nodes_.size()) {}

std::size_t DepGraph::add_node(GraphNode n) {
    nodes_.push_back(std::move(n));
    succ_.emplace_back();
    witness_.emplace_back();
    return nodes_.size() - 1;
}

void DepGraph::add_edge(std::size_t user, std::size_t used, const SourceLocation& at) {
    if (user == used) return;
    auto& s = succ_[user];
    auto it = std::find(s.begin(), s.end(), used);
    if (it == s.end()) {
        s.push_back(used);
        witness_[user].push_back(at);
        return;
    }
    auto& w = witness_[user][static_cast<std::size_t>(it - s.begin())];
    if (at < w) w = at;
}

bool DepGraph::remove_edge(std::size_t user, std::size_t used) {
    auto& s = succ_[user];
    auto it = std::find(s.begin(), s.end(), used);
    if (it == s.end()) return false;
    witness_[user].erase(witness_[user].begin() + (it - s.begin()));
    s.erase(it);
    return true;
}

bool DepGraph::has_edge(std::size_t user, std::size_t used) const {
    const auto& s = succ_[user];
    return std::find(s.begin(), s.end(), used) != s.end();
}

std::vector<Edge> DepGraph::edges() const {
    std::vector<Edge> out;
    for (std::size_t u = 0; u < succ_.size(); ++u)
        for (std::size_t k = 0; k < succ_[u].size(); ++k) out.push_back(Edge{u, succ_[u][k], witness_[u][k]});
    return out;
}

std::size_t DepGraph::edge_count() const {
    std::size_t n = 0;
    for (const auto& s : succ_) n += s.size();
    return n;
}

std::vector<std::size_t> DepGraph::in_degrees() const {
    std::vector<std::size_t> deg(nodes_.size(), 0);
    for (const auto& s : succ_)
        for (std::size_t v : s) ++deg[v];
    return deg;
}

CycleError::CycleError(const std::string& message) : AnalysisError("CycleError", SourceLocation{}, message) {}

DepGraph build_graph(const FlatModule& fm, const std::vector<Link>& type_links,
                     const std::vector<std::vector<std::size_t>>& fv_deps) {
    std::vector<GraphNode> nodes;
    nodes.reserve(fm.nodes.size());
    for (const auto& n : fm.nodes) nodes.push_back(GraphNode{n.name, n.location});
    DepGraph g(std::move(nodes));
    for (const auto& l : type_links) g.add_edge(l.from, l.to, l.at);
    for (std::size_t i = 0; i < fv_deps.size() && i < fm.nodes.size(); ++i)
        for (std::size_t d : fv_deps[i]) g.add_edge(i, d, fm.nodes[i].location);
    return g;
}

std::vector<std::vector<std::size_t>> strongly_connected_components(const DepGraph& g) {
    // Tarjan, iterative so deep chains cannot exhaust the stack.
    const std::size_t n = g.size();
    constexpr std::size_t unvisited = static_cast<std::size_t>(-1);
    std::vector<std::size_t> index(n, unvisited), low(n, 0);
    std::vector<bool> on_stack(n, false);
    std::vector<std::size_t> stack;
    std::vector<std::vector<std::size_t>> comps;
    std::size_t counter = 0;

    struct Frame {
        std::size_t node;
        std::size_t next_succ;
    };
    for (std::size_t root = 0; root < n; ++root) {
        if (index[root] != unvisited) continue;
        std::vector<Frame> call{{root, 0}};
        index[root] = low[root] = counter++;
        stack.push_back(root);
        on_stack[root] = true;
        while (!call.empty()) {
            Frame& f = call.back();
            const auto& succ = g.successors(f.node);
            if (f.next_succ < succ.size()) {
                const std::size_t w = succ[f.next_succ++];
                if (index[w] == unvisited) {
                    index[w] = low[w] = counter++;
                    stack.push_back(w);
                    on_stack[w] = true;
                    call.push_back({w, 0});
                } else if (on_stack[w]) {
                    low[f.node] = std::min(low[f.node], index[w]);
                }
                continue;
            }
            const std::size_t v = f.node;
            call.pop_back();
            if (!call.empty()) low[call.back().node] = std::min(low[call.back().node], low[v]);
            if (low[v] != index[v]) continue;
            std::vector<std::size_t> comp;
            std::size_t w;
            do {
                w = stack.back();
                stack.pop_back();
                on_stack[w] = false;
                comp.push_back(w);
            } while (w != v);
            if (comp.size() >= 2) {
                std::sort(comp.begin(), comp.end());
                comps.push_back(std::move(comp));
            }
        }
    }
    std::sort(comps.begin(), comps.end(), [](const auto& a, const auto& b) { return a.front() < b.front(); });
    return comps;
}

std::vector<Cycle> find_cycles(const DepGraph& g) {
    std::vector<Cycle> out;
    for (const auto& comp : strongly_connected_components(g)) {
        // Shortest walk from the earliest member back to itself, within the component.
        const std::size_t start = comp.front();
        std::vector<bool> member(g.size(), false);
        for (std::size_t v : comp) member[v] = true;
        std::vector<std::size_t> parent(g.size(), g.size());
        std::deque<std::size_t> queue{start};
        std::size_t closing = g.size();
        std::vector<bool> seen(g.size(), false);
        seen[start] = true;
        while (!queue.empty() && closing == g.size()) {
            const std::size_t u = queue.front();
            queue.pop_front();
            for (std::size_t v : g.successors(u)) {
                if (!member[v]) continue;
                if (v == start) {
                    closing = u;
                    break;
                }
                if (seen[v]) continue;
                seen[v] = true;
                parent[v] = u;
                queue.push_back(v);
            }
        }
        Cycle c;
        for (std::size_t v = closing; v != start; v = parent[v]) c.members.push_back(v);
        c.members.push_back(start);
        std::reverse(c.members.begin(), c.members.end());
        c.members.push_back(start);
        out.push_back(std::move(c));
    }
    return out;
}

namespace {

// First back edge of a full depth-first search in declaration order.
std::optional<Edge> first_back_edge(const DepGraph& g) {
    enum class Mark { White, Grey, Black };
    std::vector<Mark> mark(g.size(), Mark::White);
    struct Frame {
        std::size_t node;
        std::size_t next_succ;
    };
    const auto edges = g.edges();
    auto witness = [&](std::size_t u, std::size_t v) {
        for (const auto& e : edges)
            if (e.user == u && e.used == v) return e.at;
        return SourceLocation{};
    };
    for (std::size_t root = 0; root < g.size(); ++root) {
        if (mark[root] != Mark::White) continue;
        std::vector<Frame> call{{root, 0}};
        mark[root] = Mark::Grey;
        while (!call.empty()) {
            Frame& f = call.back();
            const auto& succ = g.successors(f.node);
            if (f.next_succ == succ.size()) {
                mark[f.node] = Mark::Black;
                call.pop_back();
                continue;
            }
            const std::size_t v = succ[f.next_succ++];
            if (mark[v] == Mark::Grey) return Edge{f.node, v, witness(f.node, v)};
            if (mark[v] == Mark::White) {
                mark[v] = Mark::Grey;
                call.push_back({v, 0});
            }
        }
    }
    return std::nullopt;
}

} // namespace

BrokenGraph break_cycles(DepGraph g) {
    BrokenGraph out{std::move(g), {}};
    while (auto back = first_back_edge(out.graph)) {
        out.graph.remove_edge(back->user, back->used);
        out.removed.push_back(*back);
    }
    return out;
}

std::vector<std::size_t> start_points(const DepGraph& g) {
    const auto deg = g.in_degrees();
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < g.size(); ++i)
        if (deg[i] == 0) out.push_back(i);
    return out;
}

SortOutcome kahn_sort(const DepGraph& g) {
    SortOutcome outcome;
    outcome.start_points = start_points(g);
    auto deg = g.in_degrees();
    // Max-heap on declaration order: the latest-declared ready user is peeled
    // first, so after reversal unrelated nodes keep their declaration order.
    std::priority_queue<std::size_t> ready(outcome.start_points.begin(), outcome.start_points.end());
    std::vector<std::size_t> peeled;
    peeled.reserve(g.size());
    while (!ready.empty()) {
        const std::size_t u = ready.top();
        ready.pop();
        peeled.push_back(u);
        for (std::size_t v : g.successors(u))
            if (--deg[v] == 0) ready.push(v);
    }
    if (peeled.size() != g.size()) {
        std::string stuck;
        for (std::size_t i = 0; i < g.size(); ++i)
            if (deg[i] != 0) stuck += (stuck.empty() ? "" : ", ") + g.node(i).name;
        throw CycleError("dependency cycle remains among: " + stuck);
    }
    outcome.sorted.assign(peeled.rbegin(), peeled.rend());
    return outcome;
}

std::vector<std::string> names_of(const DepGraph& g, const std::vector<std::size_t>& ids) {
    std::vector<std::string> out;
    out.reserve(ids.size());
    for (std::size_t i : ids) out.push_back(g.node(i).name);
    return out;
}

} // namespace defsort
