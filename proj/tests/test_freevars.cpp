#include "doctest.h"

#include "defsort/defcollect.hpp"
#include "defsort/freevars.hpp"
#include "defsort/parser.hpp"
#include "support.hpp"

#include <algorithm>

using namespace defsort;
using defsort::testing::corpus_path;
using defsort::testing::read_file;

namespace {

ExprPtr value_expr(const std::string& e) {
    const auto m = parse_module("module X definitions values\n probe = " + e + ";\nend X");
    return m.definitions[0].init;
}

std::vector<std::string> used(const std::vector<UseSite>& uses) {
    std::vector<std::string> out;
    for (const auto& u : uses) out.push_back(u.used_name);
    return out;
}

std::vector<std::string> dep_names(const FlatModule& fm, const std::vector<std::size_t>& ids) {
    std::vector<std::string> out;
    for (auto i : ids) out.push_back(fm.nodes[i].name);
    return out;
}

std::size_t node(const FlatModule& fm, const std::string& name) {
    return *fm.find(Namespace::Function, name);
}

} // namespace

TEST_CASE("bound context scopes") {
    BoundContext ctx({"s"});
    CHECK(ctx.contains("s"));
    ctx.push();
    ctx.bind("x");
    CHECK(ctx.contains("x"));
    CHECK(ctx.contains("s"));
    ctx.pop();
    CHECK_FALSE(ctx.contains("x"));
}

TEST_CASE("free uses") {
    SUBCASE("invariant body of S") {
        const auto uses = free_uses(*value_expr("head(s) > 0 and len tail(s) > 0"), BoundContext({"s"}));
        CHECK(used(uses) == std::vector<std::string>{"head", "tail"});
        CHECK(uses[0].call);
    }
    SUBCASE("fully bound let") {
        CHECK(free_uses(*value_expr("let x = 1 in x + x")).empty());
    }
    SUBCASE("if branches are conditional, the guard is not") {
        const auto uses = free_uses(*value_expr("if p then a else b"));
        REQUIRE(used(uses) == std::vector<std::string>{"p", "a", "b"});
        CHECK_FALSE(uses[0].conditional);
        CHECK(uses[1].conditional);
        CHECK(uses[2].conditional);
    }
    SUBCASE("quantifier bodies are conditional, their sets are not") {
        const auto uses = free_uses(*value_expr("forall x in set s & x < lim"));
        REQUIRE(used(uses) == std::vector<std::string>{"s", "lim"});
        CHECK_FALSE(uses[0].conditional);
        CHECK(uses[1].conditional);
    }
    SUBCASE("let is sequential and shadows") {
        CHECK(used(free_uses(*value_expr("let a = b, b = a in a + b"))) == std::vector<std::string>{"b"});
    }
    SUBCASE("comprehension binds scope the element and predicate") {
        CHECK(used(free_uses(*value_expr("{ x + y | x in set s, y in set t & x < k }"))) ==
              std::vector<std::string>{"s", "t", "k"});
    }
    SUBCASE("record construction is a type use, field names are not uses") {
        const auto uses = free_uses(*value_expr("mk_P(1, 2).x"));
        REQUIRE(uses.size() == 1);
        CHECK(uses[0].used_name == "P");
        CHECK(uses[0].ns == Namespace::Type);
    }
    SUBCASE("is_ tests use the type") {
        const auto uses = free_uses(*value_expr("is_(v, seq of T) or is_U(v)"), BoundContext({"v"}));
        REQUIRE(uses.size() == 2);
        CHECK(uses[0].used_name == "T");
        CHECK(uses[1].used_name == "U");
        CHECK(uses[1].ns == Namespace::Type);
    }
}

TEST_CASE("binding never adds uses") {
    // Property: binding a name removes exactly that name's uses and nothing else.
    const std::vector<std::string> exprs = {
        "a + b * c", "if a then f(b) else c", "let x = a in x + b", "{ e | e in set a & e > b }",
        "forall q in set a & q = c", "[f(i) | i in set inds a]", "mk_(a, b, c)"};
    for (const auto& text : exprs) {
        CAPTURE(text);
        const auto e = value_expr(text);
        const auto open = used(free_uses(*e));
        for (const char* bound : {"a", "b", "c", "f"}) {
            auto expect = open;
            expect.erase(std::remove(expect.begin(), expect.end(), bound), expect.end());
            CHECK(used(free_uses(*e, BoundContext({bound}))) == expect);
        }
    }
}

TEST_CASE("definition dependencies") {
    SUBCASE("inv_S uses head and tail only") {
        const auto fm = collect(parse_module(read_file(corpus_path("module_m.vdmsl"))));
        CHECK(dep_names(fm, def_dependencies(node(fm, "inv_S"), fm)) == std::vector<std::string>{"head", "tail"});
        CHECK(def_dependencies(node(fm, "tail"), fm).empty());
    }
    SUBCASE("self recursion is dropped") {
        const auto fm = collect(parse_module(read_file(corpus_path("post_measure.vdmsl"))));
        CHECK(def_dependencies(node(fm, "fact"), fm).empty());
        CHECK(def_dependencies(node(fm, "measure_fact"), fm).empty());
        CHECK(dep_names(fm, def_dependencies(node(fm, "pre_fact_all"), fm)) == std::vector<std::string>{"bound"});
    }
    SUBCASE("mutual recursion keeps both directions") {
        const auto fm = collect(parse_module(read_file(corpus_path("mutual.vdmsl"))));
        CHECK(dep_names(fm, def_dependencies(node(fm, "even"), fm)) == std::vector<std::string>{"odd"});
        CHECK(dep_names(fm, def_dependencies(node(fm, "odd"), fm)) == std::vector<std::string>{"even"});
    }
    SUBCASE("a use of pre_f also depends on f") {
        const auto fm = collect(parse_module(read_file(corpus_path("precondition.vdmsl"))));
        CHECK(dep_names(fm, def_dependencies(node(fm, "guarded"), fm)) ==
              std::vector<std::string>{"pre_safe_div", "safe_div"});
    }
    SUBCASE("bound names shadow module values") {
        const auto fm = collect(parse_module(read_file(corpus_path("lets_quantifiers.vdmsl"))));
        CHECK(def_dependencies(node(fm, "shadow"), fm).empty());
        CHECK(dep_names(fm, def_dependencies(node(fm, "squares"), fm)) == std::vector<std::string>{"limit"});
    }
}

TEST_CASE("initialization dependencies") {
    const auto cyc = collect(parse_module(read_file(corpus_path("init_cycle.vdmsl"))));
    CHECK(dep_names(cyc, init_dependencies(node(cyc, "A"), cyc)) == std::vector<std::string>{"B"});
    CHECK(dep_names(cyc, init_dependencies(node(cyc, "B"), cyc)) == std::vector<std::string>{"A"});

    const auto cond = collect(parse_module(read_file(corpus_path("init_conditional.vdmsl"))));
    CHECK(dep_names(cond, init_dependencies(node(cond, "A"), cond)) == std::vector<std::string>{"c"});

    const auto one = collect(parse_module("module X definitions values\n A = 1;\nend X"));
    CHECK(init_dependencies(0, one).empty());
}

TEST_CASE("duplicate comprehension binds") {
    const auto diags = check_duplicate_binds(parse_module(read_file(corpus_path("dup_bind.vdmsl"))));
    REQUIRE(diags.size() == 1);
    CHECK(diags[0].severity == Severity::Error);
    CHECK(diags[0].location.line == 5);
    CHECK(diags[0].location.column == 44);

    CHECK(check_duplicate_binds(parse_module("module X definitions values\n v = { x | x in set s };\nend X")).empty());
    CHECK(check_duplicate_binds(
              parse_module("module X definitions values\n v = { x+y | x in set s, y in set t };\nend X"))
              .empty());
}

TEST_CASE("unguarded precondition calls") {
    const auto m = parse_module(read_file(corpus_path("precondition.vdmsl")));
    const auto diags = check_precondition_calls(m, collect(m));
    REQUIRE(diags.size() == 1);
    CHECK(diags[0].severity == Severity::Warning);
    CHECK(diags[0].location.line == 10);

    const auto plain = parse_module(read_file(corpus_path("mutual.vdmsl")));
    CHECK(check_precondition_calls(plain, collect(plain)).empty());

    const auto guarded = parse_module("module X definitions functions\n"
                                      " f: nat -> nat f(x) == x pre x > 0;\n"
                                      " g: nat -> bool g(x) == pre_f(x) and f(x) > 0;\nend X");
    CHECK(check_precondition_calls(guarded, collect(guarded)).empty());
}
