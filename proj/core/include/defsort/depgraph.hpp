#pragma once

// Directed dependency graph with cycle detection, naive cycle breaking and a
// deterministic Kahn sort. Edges point from the user to the used node; node
// indices double as declaration order.

#include "defsort/defcollect.hpp"
#include "defsort/source_location.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace defsort {

struct GraphNode {
    std::string name;
    SourceLocation location;
};

struct Edge {
    std::size_t user;
    std::size_t used;
    SourceLocation at;

    friend bool operator==(const Edge& a, const Edge& b) { return a.user == b.user && a.used == b.used; }
};

class DepGraph {
public:
    DepGraph() = default;
    explicit DepGraph(std::vector<GraphNode> nodes);

    std::size_t add_node(GraphNode n);
    /// Adds user -> used. Self edges and duplicates are ignored; the first
    /// witness wins unless a later one has an earlier location.
    void add_edge(std::size_t user, std::size_t used, const SourceLocation& at);
    bool remove_edge(std::size_t user, std::size_t used);
    bool has_edge(std::size_t user, std::size_t used) const;

    std::size_t size() const { return nodes_.size(); }
    const GraphNode& node(std::size_t i) const { return nodes_[i]; }
    const std::vector<GraphNode>& nodes() const { return nodes_; }
    /// Successors of `n` in insertion order.
    const std::vector<std::size_t>& successors(std::size_t n) const { return succ_[n]; }
    /// All edges, grouped by user in declaration order, then insertion order.
    std::vector<Edge> edges() const;
    std::size_t edge_count() const;
    std::vector<std::size_t> in_degrees() const;

private:
    std::vector<GraphNode> nodes_;
    std::vector<std::vector<std::size_t>> succ_;
    std::vector<std::vector<SourceLocation>> witness_; // parallel to succ_
};

/// A closed walk: front() == back().
struct Cycle {
    std::vector<std::size_t> members;
};

struct SortOutcome {
    std::vector<std::size_t> sorted;       // dependencies first
    std::vector<std::size_t> start_points;
    std::vector<Edge> removed_edges;
};

class CycleError : public AnalysisError {
public:
    explicit CycleError(const std::string& message);
};

/// Nodes: every DefNode. Edges: the structural links plus each node's
/// free-variable dependencies (`fv_deps[i]` for node i).
DepGraph build_graph(const FlatModule& fm, const std::vector<Link>& type_links,
                     const std::vector<std::vector<std::size_t>>& fv_deps);

/// Strongly connected components with at least two members, in topological
/// position of their first member.
std::vector<std::vector<std::size_t>> strongly_connected_components(const DepGraph& g);

/// One witness cycle per non-trivial strongly connected component.
std::vector<Cycle> find_cycles(const DepGraph& g);

struct BrokenGraph {
    DepGraph graph;
    std::vector<Edge> removed; // deletion order
};

/// Repeatedly deletes the back edge that closes the first cycle met by a
/// depth-first search in declaration order, until the graph is acyclic.
BrokenGraph break_cycles(DepGraph g);

/// Nodes nothing depends on, in declaration order.
std::vector<std::size_t> start_points(const DepGraph& g);

/// Kahn's algorithm on an acyclic graph. Users are peeled off starting from
/// the start points, always taking the latest-declared ready node; the result
/// is reversed so every node follows everything it uses. Throws CycleError if
/// the graph still has a cycle.
SortOutcome kahn_sort(const DepGraph& g);

std::vector<std::string> names_of(const DepGraph& g, const std::vector<std::size_t>& ids);

} // namespace defsort
