#include "cli.hpp"

#include "defsort/dotviz.hpp"
#include "defsort/modorder.hpp"
#include "defsort/parser.hpp"
#include "defsort/printer.hpp"
#include "defsort/reorder.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace fs = std::filesystem;

namespace defsort::cli {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

bool truthy(const std::string& v) { return v == "true" || v == "1" || v == "yes" || v == "on"; }

std::string join(const std::vector<std::string>& xs) {
    std::string out;
    for (const auto& x : xs) out += (out.empty() ? "" : ", ") + x;
    return out;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError(SourceLocation{path, 1, 1, 0}, "cannot read file");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_atomically(const fs::path& path, const std::string& text) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream o(tmp, std::ios::binary | std::ios::trunc);
        if (!o) throw std::runtime_error("cannot write " + tmp.string());
        o << text;
    }
    fs::rename(tmp, path);
}

struct Context {
    ToolConfig config;
    std::ostream& out;
    std::ostream& err;
    bool failed = false;

    void report(const std::vector<Diagnostic>& diags) {
        for (const auto& d : diags) {
            err << d.str() << "\n";
            if (d.severity == Severity::Error) failed = true;
        }
    }
};

struct ParsedInput {
    std::string path;
    std::string text;
    std::vector<SourceModule> modules;
};

std::vector<ParsedInput> parse_inputs(Context& ctx, const std::vector<std::string>& files) {
    std::vector<ParsedInput> inputs;
    for (const auto& f : files) {
        try {
            ParsedInput in{f, read_file(f), {}};
            in.modules = parse_source(in.text, f);
            inputs.push_back(std::move(in));
        } catch (const ParseError& e) {
            ctx.report({Diagnostic{Severity::Error, "ParseError", e.where(), e.message()}});
        }
    }
    return inputs;
}

void emit_dot(Context& ctx, const SourceModule& m, const ModuleAnalysis& a, const SortReport& report) {
    const std::string path = dot_file_name(ctx.config.dot_dir, m.name);
    write_atomically(path, emit_def_dot(a.flat, a.graph, report).text);
    ctx.out << "Printed dependencies for module " << m.name << ".dot at " << path << "\n";
}

// Diagnostics other than forward references, which the sort trace reports itself.
std::vector<Diagnostic> sort_diagnostics(const SourceModule& m) {
    auto diags = check_module(m);
    std::erase_if(diags, [](const Diagnostic& d) { return d.code == "ForwardReference"; });
    return diags;
}

void sort_command(Context& ctx, const std::vector<ParsedInput>& inputs) {
    const bool debug = ctx.config.debug;
    if (debug) ctx.out << "Calling Exu VDM analyser...\n";
    for (const auto& in : inputs) {
        std::string rewritten;
        std::size_t copied_to = 0;
        bool changed = false;
        for (const auto& m : in.modules) {
            ctx.report(sort_diagnostics(m));
            if (debug) ctx.out << "Calculating declaration dependencies for module `" << m.name << "`...\n";
            SortResult result;
            try {
                result = sort_module(m);
                if (ctx.config.dot_enabled && !ctx.config.check_only) emit_dot(ctx, m, analyse(m), result.report);
            } catch (const AnalysisError& e) {
                ctx.report({e.to_diagnostic()});
                continue;
            }
            const SortReport& r = result.report;
            if (debug) {
                for (const auto& f : r.forward_refs) ctx.out << f.message << "\n";
                if (r.sorted) {
                    ctx.out << "Found " << r.forward_refs.size()
                            << " definition use before declaration. Topological sorted required.\n";
                    ctx.out << "Original names : " << join(r.original_names) << "\n";
                    ctx.out << "Start points   : " << join(r.start_points) << "\n";
                    ctx.out << "Sorted names   : " << join(r.sorted_names) << "\n";
                    ctx.out << "Organised names: " << join(r.organised_names) << "\n";
                } else if (!r.forward_refs.empty()) {
                    ctx.out << "Found " << r.forward_refs.size()
                            << " definition use before declaration, all within mutually recursive definitions. "
                               "Topological sort not required.\n";
                }
                for (const auto& [user, used] : r.removed_edges)
                    ctx.out << "Broke dependency cycle by ignoring " << user << " -> " << used << "\n";
            }
            if (!r.sorted) {
                ctx.out << "Module " << m.name << " declares every definition before use; sorting skipped\n";
                continue;
            }
            ctx.out << "Exu successfully sorted module " << m.name << " definitions\n";
            rewritten += in.text.substr(copied_to, m.span.start.offset - copied_to);
            rewritten += print_module(result.module);
            copied_to = m.span.end.offset;
            changed = true;
        }
        if (!changed || ctx.config.check_only) continue;
        rewritten += in.text.substr(copied_to);
        const fs::path target = fs::path(ctx.config.output_dir) / fs::path(in.path).filename();
        write_atomically(target, rewritten);
        ctx.out << "Wrote " << target.string() << "\n";
    }
}

void check_command(Context& ctx, const std::vector<ParsedInput>& inputs) {
    for (const auto& in : inputs) {
        for (const auto& m : in.modules) {
            const auto diags = check_module(m);
            ctx.report(diags);
            const auto errors = std::count_if(diags.begin(), diags.end(),
                                              [](const Diagnostic& d) { return d.severity == Severity::Error; });
            ctx.out << "Module " << m.name << ": " << errors << " error(s), " << diags.size() - errors
                    << " warning(s)\n";
        }
    }
}

void order_command(Context& ctx, const std::vector<ParsedInput>& inputs) {
    std::vector<SourceModule> mods;
    for (const auto& in : inputs) mods.insert(mods.end(), in.modules.begin(), in.modules.end());
    const ModuleOrder order = order_modules(mods);
    ctx.report(order.warnings);
    for (const auto& name : order.order) ctx.out << name << "\n";
    if (ctx.config.dot_enabled && !ctx.config.check_only) {
        const std::string path = dot_file_name(ctx.config.dot_dir, "modules");
        write_atomically(path, emit_module_dot(build_module_graph(mods)).text);
        if (ctx.config.debug) ctx.out << "Printed module dependencies at " << path << "\n";
    }
}

void dot_command(Context& ctx, const std::vector<ParsedInput>& inputs) {
    for (const auto& in : inputs) {
        for (const auto& m : in.modules) {
            try {
                const ModuleAnalysis a = analyse(m);
                SortReport report;
                report.start_points = names_of(a.graph, start_points(a.graph));
                if (!ctx.config.check_only) emit_dot(ctx, m, a, report);
            } catch (const AnalysisError& e) {
                ctx.report({e.to_diagnostic()});
            }
        }
    }
}

} // namespace

Properties load_properties(const std::string& path, std::vector<Diagnostic>* warnings) {
    Properties props;
    std::ifstream in(path);
    if (!in) return props;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty() || t.front() == '#') continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos || trim(t.substr(0, eq)).empty()) {
            if (warnings)
                warnings->push_back(Diagnostic{Severity::Warning, "MalformedProperty", SourceLocation{path, lineno, 1, 0},
                                               "expected key=value, line skipped"});
            continue;
        }
        props[trim(t.substr(0, eq))] = trim(t.substr(eq + 1));
    }
    return props;
}

ToolConfig resolve_config(const Properties& file_props) {
    Properties props = file_props;
    for (const char* key : {"output.dir", "dot.dir", "dot.enabled", "debug", "check"}) {
        std::string env = "DEFSORT_";
        for (const char* c = key; *c; ++c) env += *c == '.' ? '_' : static_cast<char>(std::toupper(*c));
        if (const char* v = std::getenv(env.c_str())) props[key] = v;
    }
    ToolConfig cfg;
    if (auto it = props.find("output.dir"); it != props.end()) cfg.output_dir = it->second;
    if (auto it = props.find("dot.dir"); it != props.end()) cfg.dot_dir = it->second;
    if (auto it = props.find("dot.enabled"); it != props.end()) cfg.dot_enabled = truthy(it->second);
    if (auto it = props.find("debug"); it != props.end()) cfg.debug = truthy(it->second);
    if (auto it = props.find("check"); it != props.end()) cfg.check_only = truthy(it->second);
    cfg.properties = std::move(props);
    return cfg;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Sorts VDM-SL module definitions so that every name is declared before it is used"};
    app.name("defsort");
    app.require_subcommand(1);

    std::vector<std::string> files;
    bool debug = false, check = false;
    std::string dot_dir, output_dir, properties_file = "defsort.properties";

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("files", files, "Input .vdmsl files")->required();
        sub->add_flag("--debug", debug, "Print the full analysis trace");
        sub->add_option("--dot", dot_dir, "Write Graphviz files into this directory");
        sub->add_option("--output", output_dir, "Directory for rewritten files");
        sub->add_flag("--check", check, "Analyse only; never write files");
        sub->add_option("--properties", properties_file, "Properties file");
    };
    add_common(app.add_subcommand("sort", "Reorder definitions so they are declared before use"));
    add_common(app.add_subcommand("check", "Report diagnostics without rewriting"));
    add_common(app.add_subcommand("order", "Print the module load order, imported modules first"));
    add_common(app.add_subcommand("dot", "Write definition dependency graphs as dot files"));

    std::vector<std::string> argv_rev(args.rbegin(), args.rend());
    try {
        app.parse(argv_rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n" << app.help();
        return 2;
    }

    std::vector<Diagnostic> prop_warnings;
    Context ctx{resolve_config(load_properties(properties_file, &prop_warnings)), out, err};
    ctx.report(prop_warnings);
    if (debug) ctx.config.debug = true;
    if (check) ctx.config.check_only = true;
    if (!output_dir.empty()) ctx.config.output_dir = output_dir;
    if (!dot_dir.empty()) {
        ctx.config.dot_dir = dot_dir;
        ctx.config.dot_enabled = true;
    }

    const std::string command = app.get_subcommands().front()->get_name();
    if (command == "dot") ctx.config.dot_enabled = true;
    const auto inputs = parse_inputs(ctx, files);
    try {
        if (command == "sort") sort_command(ctx, inputs);
        else if (command == "check") check_command(ctx, inputs);
        else if (command == "order") order_command(ctx, inputs);
        else dot_command(ctx, inputs);
    } catch (const std::exception& e) {
        err << "defsort: " << e.what() << "\n";
        return 1;
    }
    return ctx.failed ? 1 : 0;
}

} // namespace defsort::cli
