#pragma once

// Helpers shared by the unit tests and the acceptance runner.

#include "defsort/depgraph.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace defsort::testing {

std::string corpus_dir();
std::string corpus_path(const std::string& name);
std::vector<std::string> corpus_files(); // sorted by file name
std::string read_file(const std::string& path);

/// Module text with up to `max_defs` definitions of mixed kinds. When
/// `cyclic` is false every dependency points at a definition of lower rank
/// in a hidden random order, so the result is acyclic but usually not sorted.
std::string random_module(std::mt19937& rng, int max_defs, bool cyclic);

/// Random graph on `n` nodes, each ordered pair an edge with probability p.
DepGraph random_graph(std::mt19937& rng, std::size_t n, double p);

/// True when every edge user -> used has `used` placed before `user`.
bool respects(const DepGraph& g, const std::vector<std::size_t>& order);

/// Exhaustive search over all orders of the nodes for one that respects `g`.
bool some_order_respects(const DepGraph& g);

/// Transitive closure (Warshall); reach[i][j] iff a path i ->+ j.
std::vector<std::vector<bool>> reachability(const DepGraph& g);

} // namespace defsort::testing
