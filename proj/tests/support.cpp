#include "support.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>

namespace fs = std::filesystem;

namespace defsort::testing {

std::string corpus_dir() { return DEFSORT_CORPUS_DIR; }

std::string corpus_path(const std::string& name) { return corpus_dir() + "/" + name; }

std::vector<std::string> corpus_files() {
    std::vector<std::string> out;
    for (const auto& e : fs::directory_iterator(corpus_dir()))
        if (e.path().extension() == ".vdmsl") out.push_back(e.path().string());
    std::sort(out.begin(), out.end());
    return out;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

namespace {

enum class Kind { Type, Value, Function };

struct Gen {
    Kind kind;
    std::string name;
    int rank;
    std::vector<int> deps; // indices into the generated list
    bool with_inv = false;
};

} // namespace

std::string random_module(std::mt19937& rng, int max_defs, bool cyclic) {
    std::uniform_int_distribution<int> count(1, max_defs);
    std::uniform_int_distribution<int> kind(0, 2);
    std::bernoulli_distribution coin(0.5);
    std::bernoulli_distribution sparse(0.3);

    const int n = count(rng);
    std::vector<int> rank(n);
    std::iota(rank.begin(), rank.end(), 0);
    std::shuffle(rank.begin(), rank.end(), rng);

    std::vector<Gen> defs;
    int types = 0, values = 0, funs = 0;
    for (int i = 0; i < n; ++i) {
        Gen g;
        g.kind = static_cast<Kind>(kind(rng));
        g.rank = rank[i];
        switch (g.kind) {
        case Kind::Type: g.name = "T" + std::to_string(types++); break;
        case Kind::Value: g.name = "v" + std::to_string(values++); break;
        case Kind::Function: g.name = "f" + std::to_string(funs++); break;
        }
        defs.push_back(g);
    }
    auto allowed = [&](const Gen& from, const Gen& to) {
        if (&from == &to) return false;
        if (!cyclic && to.rank >= from.rank) return false;
        // Values may only use other values when acyclic; a value cycle is an
        // initialization error, which is still fine for sorting.
        if (from.kind == Kind::Type) return to.kind == Kind::Type;
        return to.kind != Kind::Type;
    };
    for (auto& g : defs) {
        for (int j = 0; j < n; ++j)
            if (allowed(g, defs[j]) && sparse(rng)) g.deps.push_back(j);
        if (g.kind == Kind::Type && coin(rng)) {
            for (int j = 0; j < n; ++j)
                if (defs[j].kind != Kind::Type && (cyclic || defs[j].rank < g.rank) && sparse(rng)) {
                    g.deps.push_back(j);
                    g.with_inv = true;
                }
        }
    }

    auto term = [&](const Gen& d) {
        return d.kind == Kind::Function ? d.name + "(1)" : d.name;
    };
    std::ostringstream out;
    out << "module R\nexports all\ndefinitions\n";
    std::optional<Kind> open;
    for (const auto& g : defs) {
        if (open != g.kind) {
            open = g.kind;
            out << (g.kind == Kind::Type ? "types\n" : g.kind == Kind::Value ? "values\n" : "functions\n");
        }
        if (g.kind == Kind::Type) {
            std::string rhs = "nat";
            std::vector<std::string> inv;
            for (int j : g.deps) {
                if (defs[j].kind == Kind::Type) rhs = "seq of " + defs[j].name + " | " + rhs;
                else inv.push_back(term(defs[j]));
            }
            out << "    " << g.name << " = " << rhs;
            if (g.with_inv) {
                out << "\n    inv x == x = x";
                for (const auto& t : inv) out << " and " << t << " > 0";
            }
            out << ";\n";
        } else {
            std::string e = "1";
            for (int j : g.deps) e += " + " + term(defs[j]);
            if (g.kind == Kind::Value) {
                out << "    " << g.name << " : nat = " << e << ";\n";
            } else {
                out << "    " << g.name << ": nat -> nat\n    " << g.name << "(x) == x + " << e << ";\n";
            }
        }
    }
    out << "end R\n";
    return out.str();
}

DepGraph random_graph(std::mt19937& rng, std::size_t n, double p) {
    DepGraph g;
    for (std::size_t i = 0; i < n; ++i) g.add_node({"n" + std::to_string(i), {}});
    std::bernoulli_distribution edge(p);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j && edge(rng)) g.add_edge(i, j, {});
    return g;
}

bool respects(const DepGraph& g, const std::vector<std::size_t>& order) {
    std::vector<std::size_t> pos(g.size(), g.size());
    for (std::size_t i = 0; i < order.size(); ++i) pos[order[i]] = i;
    for (const auto& e : g.edges())
        if (pos[e.used] >= pos[e.user]) return false;
    return true;
}

bool some_order_respects(const DepGraph& g) {
    const auto edges = g.edges();
    std::vector<std::size_t> order(g.size());
    std::iota(order.begin(), order.end(), 0);
    std::vector<std::size_t> pos(g.size());
    do {
        for (std::size_t i = 0; i < order.size(); ++i) pos[order[i]] = i;
        if (std::all_of(edges.begin(), edges.end(), [&](const Edge& e) { return pos[e.used] < pos[e.user]; }))
            return true;
    } while (std::next_permutation(order.begin(), order.end()));
    return false;
}

std::vector<std::vector<bool>> reachability(const DepGraph& g) {
    const std::size_t n = g.size();
    std::vector<std::vector<bool>> r(n, std::vector<bool>(n, false));
    for (const auto& e : g.edges()) r[e.user][e.used] = true;
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            if (r[i][k])
                for (std::size_t j = 0; j < n; ++j)
                    if (r[k][j]) r[i][j] = true;
    return r;
}

} // namespace defsort::testing
