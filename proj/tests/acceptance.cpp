// Acceptance runner: one PASS/FAIL line per criterion, nonzero exit if any fail.

#include "cli.hpp"
#include "defsort/dotviz.hpp"
#include "defsort/modorder.hpp"
#include "defsort/parser.hpp"
#include "defsort/printer.hpp"
#include "defsort/reorder.hpp"
#include "support.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <regex>
#include <set>
#include <sstream>

namespace fs = std::filesystem;
using namespace defsort;
using defsort::testing::corpus_files;
using defsort::testing::corpus_path;
using defsort::testing::read_file;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        if (!ok && pass) detail = what;
        pass = pass && ok;
    }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

// The dependency edges of module M, worked out by hand from the listing.
const std::set<std::pair<std::string, std::string>> kMEdges = {
    {"Rec", "S"}, {"Rec", "T"}, {"Rec", "inv_Rec"}, {"S", "T"},
    {"S", "inv_S"}, {"inv_S", "head"}, {"inv_S", "tail"}, {"T", "inv_T"}};

const std::set<std::string> kMNodes = {"Rec", "inv_Rec", "S", "inv_S", "T", "inv_T", "tail", "head"};

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& tag) {
        path = fs::temp_directory_path() / ("defsort-acceptance-" + tag);
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

std::vector<SourceModule> corpus_modules() {
    std::vector<SourceModule> out;
    for (const auto& f : corpus_files())
        for (auto& m : parse_source(read_file(f), f)) out.push_back(std::move(m));
    return out;
}

Outcome golden_module_m() {
    Outcome o;
    const auto t0 = Clock::now();
    const auto m = parse_module(read_file(corpus_path("module_m.vdmsl")), "module_m.vdmsl");
    const auto r = sort_module(m);

    std::vector<std::pair<std::string, std::string>> refs;
    for (const auto& f : r.report.forward_refs) refs.emplace_back(f.user, f.used);
    o.require(refs == std::vector<std::pair<std::string, std::string>>{
                          {"Rec", "T"}, {"Rec", "S"}, {"S", "T"}, {"S", "tail"}, {"inv_S", "tail"}},
              "forward references differ from the five expected findings");
    o.require(r.report.original_names == std::vector<std::string>{"Rec", "S", "T", "tail", "head"},
              "original names");

    const auto& sorted = r.report.sorted_names;
    o.require(std::set<std::string>(sorted.begin(), sorted.end()) == kMNodes && sorted.size() == 8,
              "sorted names are not a permutation of the eight nodes");
    auto pos = [&](const std::string& n) { return std::find(sorted.begin(), sorted.end(), n) - sorted.begin(); };
    for (const auto& [user, used] : kMEdges) o.require(pos(used) < pos(user), used + " not before " + user);

    o.require(r.report.organised_names == std::vector<std::string>{"tail", "head", "T", "S", "Rec"}, "organised names");

    TempDir tmp("golden");
    std::ostringstream out, err;
    const int code = cli::run({"sort", "--debug", "--properties", (tmp.path / "none").string(), "--output",
                               tmp.path.string(), corpus_path("module_m.vdmsl")},
                              out, err);
    o.require(code == 0, "sort exited with " + std::to_string(code));
    o.require(out.str().find("Exu successfully sorted module M definitions") != std::string::npos, "no success line");

    const double secs = seconds_since(t0);
    o.require(secs < 1.0, "took " + std::to_string(secs) + " s");
    if (o.pass) o.detail = "5 findings, organised [tail, head, T, S, Rec], " + std::to_string(secs * 1000).substr(0, 5) + " ms";
    return o;
}

Outcome gate_and_idempotence() {
    Outcome o;
    const auto m = parse_module(read_file(corpus_path("module_m.vdmsl")), "module_m.vdmsl");
    const auto once = print_module(sort_module(m).module);
    const auto again = sort_module(parse_module(once, "sorted"));
    o.require(again.report.forward_refs.empty(), "rewritten M still reports forward references");
    o.require(!again.report.sorted, "rewritten M was sorted again");

    TempDir tmp("gate");
    const auto input = (tmp.path / "M.vdmsl").string();
    std::ofstream(input) << once << "\n";
    std::ostringstream out, err;
    cli::run({"sort", "--properties", (tmp.path / "none").string(), "--output", (tmp.path / "out").string(), input}, out, err);
    o.require(!fs::exists(tmp.path / "out"), "sort rewrote an already sorted file");

    std::size_t checked = 0;
    for (const auto& mod : corpus_modules()) {
        const auto s1 = print_module(sort_module(mod).module);
        const auto s2 = print_module(sort_module(parse_module(s1, mod.source_file)).module);
        o.require(s1 == s2, "sort is not idempotent on module " + mod.name);
        ++checked;
    }
    if (o.pass) o.detail = "rewritten M untouched; idempotent on " + std::to_string(checked) + " corpus modules";
    return o;
}

Outcome name_conservation() {
    Outcome o;
    std::mt19937 rng(20261015);
    int sorted_count = 0;
    for (int i = 0; i < 100; ++i) {
        const auto text = defsort::testing::random_module(rng, 12, i % 2 == 1);
        try {
            const auto r = sort_module(parse_module(text, "random" + std::to_string(i)));
            const auto& rep = r.report;
            std::set<std::string> orig(rep.original_names.begin(), rep.original_names.end());
            std::set<std::string> org(rep.organised_names.begin(), rep.organised_names.end());
            std::set<std::string> srt(rep.sorted_names.begin(), rep.sorted_names.end());
            o.require(orig == org, "name sets differ for module:\n" + text);
            o.require(std::includes(srt.begin(), srt.end(), org.begin(), org.end()),
                      "sorted names miss an organised name for module:\n" + text);
            sorted_count += rep.sorted;
        } catch (const std::exception& e) {
            o.require(false, std::string(e.what()) + " for module:\n" + text);
        }
    }
    if (o.pass) o.detail = "100 modules, " + std::to_string(sorted_count) + " needed sorting";
    return o;
}

Outcome oracle_equivalence() {
    Outcome o;
    const auto t0 = Clock::now();
    std::mt19937 rng(8);
    std::uniform_int_distribution<std::size_t> size(1, 8);
    const double density[] = {0.1, 0.2, 0.35, 0.5};
    int cyclic = 0;
    for (int i = 0; i < 500; ++i) {
        const auto g = defsort::testing::random_graph(rng, size(rng), density[i % 4]);
        const bool has_cycle = !find_cycles(g).empty();
        const bool orderable = defsort::testing::some_order_respects(g);
        o.require(has_cycle != orderable, "find_cycles disagrees with exhaustive search on instance " + std::to_string(i));
        cyclic += has_cycle;

        const auto broken = break_cycles(g);
        const auto s = kahn_sort(broken.graph);
        std::vector<std::size_t> perm = s.sorted;
        std::sort(perm.begin(), perm.end());
        bool is_perm = perm.size() == g.size();
        for (std::size_t k = 0; is_perm && k < perm.size(); ++k) is_perm = perm[k] == k;
        o.require(is_perm, "kahn_sort output is not a permutation on instance " + std::to_string(i));
        o.require(defsort::testing::respects(broken.graph, s.sorted),
                  "retained edge points forward on instance " + std::to_string(i));
        o.require(defsort::testing::some_order_respects(broken.graph) , "broken graph has no valid order");
        o.require(has_cycle == !broken.removed.empty(), "edges removed from an acyclic graph");
    }
    const double secs = seconds_since(t0);
    o.require(secs < 30.0, "took " + std::to_string(secs) + " s");
    if (o.pass) o.detail = "500 graphs (" + std::to_string(cyclic) + " cyclic) in " + std::to_string(secs).substr(0, 4) + " s";
    return o;
}

Outcome verification_pass() {
    Outcome o;
    int sorted = 0;
    for (const auto& m : corpus_modules()) {
        const auto r = sort_module(m);
        if (!r.report.sorted) continue;
        ++sorted;
        o.require(verify_order(r.module), "verify_order failed for " + m.name);
    }
    o.require(sorted > 0, "no corpus module needed sorting");
    if (o.pass) o.detail = std::to_string(sorted) + " sorted corpus modules verified";
    return o;
}

Outcome cycle_handling() {
    Outcome o;
    try {
        const auto r = sort_module(parse_module(read_file(corpus_path("mutual.vdmsl"))));
        o.require(r.report.sorted, "module was not sorted");
        o.require(r.report.removed_edges.size() == 1, std::to_string(r.report.removed_edges.size()) + " removed edges");
        const auto& names = r.report.organised_names;
        auto pos = [&](const char* n) { return std::find(names.begin(), names.end(), n) - names.begin(); };
        o.require(pos("even") < pos("h") && pos("odd") < pos("h"), "a mutually recursive function follows its caller");
        if (o.pass)
            o.detail = "removed " + r.report.removed_edges[0].first + " -> " + r.report.removed_edges[0].second +
                       ", order " + [&] {
                           std::string s;
                           for (const auto& n : names) s += (s.empty() ? "" : ", ") + n;
                           return s;
                       }();
    } catch (const std::exception& e) {
        o.require(false, e.what());
    }
    return o;
}

Outcome diagnostics() {
    Outcome o;
    auto errors = [](const std::string& file) {
        std::vector<Diagnostic> out;
        for (const auto& d : check_module(parse_module(read_file(corpus_path(file)), file)))
            if (d.severity == Severity::Error) out.push_back(d);
        return out;
    };
    const auto text = read_file(corpus_path("dup_bind.vdmsl"));
    const auto second_x = text.find("x in set {1,2,3}");
    const auto dup = errors("dup_bind.vdmsl");
    o.require(dup.size() == 1, std::to_string(dup.size()) + " duplicate-bind errors");
    o.require(!dup.empty() && dup[0].location.offset == second_x, "error is not at the second x bind");

    const auto cyc = errors("init_cycle.vdmsl");
    o.require(cyc.size() == 1 && cyc[0].code == "InitializationCycle", "A = B; B = A not reported");
    o.require(errors("init_conditional.vdmsl").empty(), "conditional initialization flagged");
    if (o.pass) o.detail = "duplicate bind at " + dup[0].location.str() + "; init cycle reported; conditional clean";
    return o;
}

Outcome dot_conformance() {
    Outcome o;
    TempDir tmp("dot");
    std::string first;
    for (int i = 0; i < 2; ++i) {
        std::ostringstream out, err;
        cli::run({"dot", "--properties", (tmp.path / "none").string(), "--dot", tmp.path.string(),
                  corpus_path("module_m.vdmsl")},
                 out, err);
        const auto text = read_file((tmp.path / "M.dot").string());
        if (i == 0) first = text;
        else o.require(text == first, "dot output differs between runs");
    }

    const std::regex node_re(R"re(^    "([^"]+)" \[label="[^"]*", shape=([a-z]+)(, color=red)?\];$)re");
    const std::regex edge_re(R"re(^    "([^"]+)" -> "([^"]+)";$)re");
    std::map<std::string, std::pair<std::string, bool>> shapes;
    std::set<std::pair<std::string, std::string>> edges;
    std::istringstream lines(first);
    std::string line;
    while (std::getline(lines, line)) {
        std::smatch mm;
        if (std::regex_match(line, mm, node_re)) shapes[mm[1]] = {mm[2], mm[3].matched};
        else if (std::regex_match(line, mm, edge_re)) edges.emplace(mm[1], mm[2]);
    }
    o.require(shapes.size() == 8, std::to_string(shapes.size()) + " node statements");
    o.require(edges == kMEdges, "edge set differs from the derived one");

    // Shapes follow the fixed precedence start point > synthetic > terminal.
    std::set<std::string> has_out;
    for (const auto& e : kMEdges) has_out.insert(e.first);
    const std::set<std::string> synthetic = {"inv_Rec", "inv_T"};
    const std::set<std::string> start = {"Rec"};
    for (const auto& n : kMNodes) {
        const auto it = shapes.find(n);
        if (it == shapes.end()) {
            o.require(false, "missing node " + n);
            continue;
        }
        const auto& [shape, red] = it->second;
        if (start.count(n)) o.require(shape == "invtriangle" && red, n + " is not a red invtriangle");
        else if (synthetic.count(n)) o.require(shape == "doublecircle", n + " is not a doublecircle");
        else if (!has_out.count(n)) o.require(shape == "triangle", n + " is not a triangle");
        else o.require(shape == "ellipse", n + " is not an ellipse");
    }
    if (o.pass) o.detail = "8 nodes, 8 edges, styles as expected, byte-stable";
    return o;
}

Outcome round_trip() {
    Outcome o;
    const auto files = corpus_files();
    o.require(files.size() >= 20, "corpus has only " + std::to_string(files.size()) + " files");
    std::size_t modules = 0;
    for (const auto& f : files) {
        for (const auto& m : parse_source(read_file(f), f)) {
            ++modules;
            try {
                const auto again = parse_module(print_module(m), f);
                o.require(structurally_equal(m, again), "round trip changed " + f);
            } catch (const ParseError& e) {
                o.require(false, "reparse of " + f + " failed: " + e.what());
            }
        }
    }
    if (o.pass) o.detail = std::to_string(files.size()) + " files, " + std::to_string(modules) + " modules";
    return o;
}

Outcome module_ordering() {
    Outcome o;
    auto load = [](std::initializer_list<const char*> files) {
        std::vector<SourceModule> out;
        for (const char* f : files) out.push_back(parse_module(read_file(corpus_path(f)), f));
        return out;
    };
    const auto chain = order_modules(load({"import_a.vdmsl", "import_b.vdmsl", "import_c.vdmsl"}));
    o.require(chain.order == std::vector<std::string>{"C", "B", "A"}, "chain is not imported-first");
    const auto cyc = order_modules(load({"cycle_x.vdmsl", "cycle_y.vdmsl"}));
    std::set<std::string> both(cyc.order.begin(), cyc.order.end());
    o.require(both == std::set<std::string>{"X", "Y"} && cyc.order.size() == 2, "cycle does not emit both modules");
    o.require(cyc.removed_edges.size() == 1, std::to_string(cyc.removed_edges.size()) + " removed edges");
    o.require(cyc.warnings.size() == 1 && cyc.warnings[0].code == "ImportCycle", "no single cycle warning");
    if (o.pass) o.detail = "chain C, B, A; cycle emits " + cyc.order[0] + ", " + cyc.order[1] + " with one warning";
    return o;
}

} // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"golden module M", golden_module_m},
        {"gate and idempotence", gate_and_idempotence},
        {"name conservation", name_conservation},
        {"oracle equivalence", oracle_equivalence},
        {"verification pass", verification_pass},
        {"cycle handling", cycle_handling},
        {"diagnostics", diagnostics},
        {"dot conformance", dot_conformance},
        {"round trip", round_trip},
        {"module ordering", module_ordering},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        failed += !o.pass;
        std::cout << (o.pass ? "PASS" : "FAIL") << "  " << (i + 1) << ". " << criteria[i].first << ": " << o.detail
                  << std::endl;
    }
    std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed" << std::endl;
    return failed == 0 ? 0 : 1;
}
