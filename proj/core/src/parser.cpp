#include "defsort/parser.hpp"

#include "defsort/lexer.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <unordered_set>

namespace defsort {

namespace {

const std::unordered_set<std::string_view> kBuiltins = {"hd", "tl", "len", "elems", "card", "dom", "rng", "inds"};
const std::unordered_set<std::string_view> kUnaryKeywords = {"abs", "floor", "dunion", "dinter", "conc", "power"};
const std::unordered_set<std::string_view> kBasicTypes = {"nat", "nat1", "int", "real", "rat", "bool", "char", "token"};

bool starts_with(std::string_view s, std::string_view prefix) { return s.substr(0, prefix.size()) == prefix; }

void collect_pattern_names(const Pattern& p, std::vector<std::pair<std::string, SourceLocation>>& out) {
    if (p.kind == PatternKind::Name) {
        out.emplace_back(p.name, p.loc);
        return;
    }
    for (const auto& e : p.elements) collect_pattern_names(e, out);
}

class Parser {
public:
    Parser(std::string_view text, std::string file)
        : text_(text), file_(std::move(file)), toks_(tokenize(text, file_)) {}

    std::vector<SourceModule> parse_all() {
        std::vector<SourceModule> mods;
        while (cur().kind != TokenKind::End) mods.push_back(parse_module());
        return mods;
    }

private:
    // -- token helpers ------------------------------------------------------

    const Token& cur() const { return toks_[pos_]; }
    const Token& look(std::size_t n) const {
        const std::size_t i = pos_ + n;
        return i < toks_.size() ? toks_[i] : toks_.back();
    }
    const Token& prev() const { return toks_[pos_ - 1]; }
    const Token& take() {
        const Token& t = toks_[pos_];
        if (t.kind != TokenKind::End) ++pos_;
        claimed_comments_ = 0;
        return t;
    }

    [[noreturn]] void fail(const std::string& expected) const {
        const Token& t = cur();
        std::string found = t.kind == TokenKind::End ? "end of input" : "'" + t.text + "'";
        throw ParseError(t.start, "expected " + expected + " but found " + found);
    }

    bool accept_keyword(std::string_view kw) {
        if (!cur().is_keyword(kw)) return false;
        take();
        return true;
    }
    bool accept_symbol(std::string_view sym) {
        if (!cur().is_symbol(sym)) return false;
        take();
        return true;
    }
    const Token& expect_keyword(std::string_view kw) {
        if (!cur().is_keyword(kw)) fail("'" + std::string(kw) + "'");
        return take();
    }
    const Token& expect_symbol(std::string_view sym) {
        if (!cur().is_symbol(sym)) fail("'" + std::string(sym) + "'");
        return take();
    }
    const Token& expect_identifier(const char* what = "identifier") {
        if (cur().kind != TokenKind::Identifier) fail(what);
        return take();
    }
    std::string expect_plain_identifier(const char* what = "identifier") {
        const Token& t = expect_identifier(what);
        if (t.text.find('`') != std::string::npos) throw ParseError(t.start, "qualified name not allowed here");
        return t.text;
    }

    bool at_section_boundary() const {
        const Token& t = cur();
        return t.kind == TokenKind::End || t.is_keyword("types") || t.is_keyword("values") ||
               t.is_keyword("functions") || t.is_keyword("end");
    }

    // -- modules ------------------------------------------------------------

    SourceModule parse_module() {
        SourceModule m;
        m.source_file = file_;
        const Token& head = expect_keyword("module");
        m.span.start = head.start;
        m.name = expect_plain_identifier("module name");

        for (;;) {
            if (accept_keyword("exports")) {
                expect_keyword("all");
                m.exports_all = true;
            } else if (accept_keyword("imports")) {
                do {
                    expect_keyword("from");
                    m.imports.push_back(expect_plain_identifier("imported module name"));
                    expect_keyword("all");
                } while (accept_symbol(","));
            } else {
                break;
            }
        }
        expect_keyword("definitions");

        std::set<std::string> type_names, fn_names;
        while (!cur().is_keyword("end")) {
            Section section;
            if (accept_keyword("types")) section = Section::Types;
            else if (accept_keyword("values")) section = Section::Values;
            else if (accept_keyword("functions")) section = Section::Functions;
            else fail("'types', 'values', 'functions' or 'end'");

            while (!at_section_boundary()) {
                Definition d = parse_definition(section);
                register_names(d, type_names, fn_names);
                m.definitions.push_back(std::move(d));
            }
        }
        expect_keyword("end");
        const Token& closing = expect_identifier("module name after 'end'");
        if (closing.text != m.name)
            throw ParseError(closing.start, "module '" + m.name + "' closed by 'end " + closing.text + "'");
        m.span.end = closing.end;
        return m;
    }

    void register_names(const Definition& d, std::set<std::string>& types, std::set<std::string>& fns) {
        auto add = [](std::set<std::string>& space, const std::string& n, const SourceLocation& at) {
            if (!space.insert(n).second) throw ParseError(at, "duplicate definition of '" + n + "'");
        };
        if (d.is_type()) {
            add(types, d.name, d.name_loc);
        } else if (d.kind == DefKind::Value) {
            std::vector<std::pair<std::string, SourceLocation>> names;
            collect_pattern_names(d.pattern, names);
            for (const auto& [n, at] : names) add(fns, n, at);
        } else {
            add(fns, d.name, d.name_loc);
        }
    }

    // -- definitions --------------------------------------------------------

    Definition parse_definition(Section section) {
        Definition d;
        const Token& first = cur();
        const auto& comments = first.leading_comments;
        if (claimed_comments_ < comments.size()) {
            d.span.start = comments[claimed_comments_].start;
            for (std::size_t i = claimed_comments_; i < comments.size(); ++i)
                if (starts_with(comments[i].text, "--@doc")) d.doc_comments.push_back(comments[i].text);
        } else {
            d.span.start = first.start;
        }

        switch (section) {
        case Section::Types: parse_type_definition(d); break;
        case Section::Values: parse_value_definition(d); break;
        case Section::Functions: parse_function_definition(d); break;
        }
        accept_symbol(";");

        d.span.end = prev().end;
        // A comment starting on the line where the definition ends trails it.
        const auto& after = cur().leading_comments;
        std::size_t trailing = 0;
        while (trailing < after.size() && after[trailing].start.line == d.span.end.line) {
            d.span.end = after[trailing].end;
            ++trailing;
        }
        claimed_comments_ = trailing;
        d.verbatim = std::string(text_.substr(d.span.start.offset, d.span.end.offset - d.span.start.offset));
        return d;
    }

    void parse_type_definition(Definition& d) {
        const Token& name = expect_identifier("type name");
        if (name.text.find('`') != std::string::npos) throw ParseError(name.start, "qualified name not allowed here");
        d.name = name.text;
        d.name_loc = name.start;
        if (accept_symbol("::")) {
            d.kind = DefKind::RecordType;
            while (cur().kind == TokenKind::Identifier && (look(1).is_symbol(":") || look(1).is_symbol(":-"))) {
                Field f;
                f.loc = cur().start;
                f.name = take().text;
                take();
                f.type = parse_type();
                d.fields.push_back(std::move(f));
            }
        } else if (accept_symbol("=")) {
            d.kind = DefKind::NamedType;
            d.type = parse_type();
        } else {
            fail("'::' or '=' after type name");
        }
        for (;;) {
            if (cur().is_keyword("inv")) {
                if (d.inv) throw ParseError(cur().start, "duplicate 'inv' clause");
                Clause c;
                c.loc = take().start;
                c.params.push_back(parse_pattern());
                expect_symbol("==");
                c.body = parse_expr();
                d.inv = std::move(c);
            } else if (cur().is_keyword("eq")) {
                if (d.eq) throw ParseError(cur().start, "duplicate 'eq' clause");
                Clause c;
                c.loc = take().start;
                c.params.push_back(parse_pattern());
                expect_symbol("=");
                c.params.push_back(parse_pattern());
                expect_symbol("==");
                c.body = parse_expr();
                d.eq = std::move(c);
            } else if (cur().is_keyword("ord")) {
                if (d.ord) throw ParseError(cur().start, "duplicate 'ord' clause");
                Clause c;
                c.loc = take().start;
                c.params.push_back(parse_pattern());
                expect_symbol("<");
                c.params.push_back(parse_pattern());
                expect_symbol("==");
                c.body = parse_expr();
                d.ord = std::move(c);
            } else {
                break;
            }
        }
    }

    void parse_value_definition(Definition& d) {
        d.kind = DefKind::Value;
        d.name_loc = cur().start;
        d.pattern = parse_pattern();
        std::vector<std::pair<std::string, SourceLocation>> names;
        collect_pattern_names(d.pattern, names);
        if (names.empty()) throw ParseError(d.name_loc, "value definition binds no names");
        if (accept_symbol(":")) d.type = parse_type();
        expect_symbol("=");
        d.init = parse_expr();
    }

    void parse_function_definition(Definition& d) {
        d.kind = DefKind::ExplicitFunction;
        const Token& name = expect_identifier("function name");
        if (name.text.find('`') != std::string::npos) throw ParseError(name.start, "qualified name not allowed here");
        d.name = name.text;
        d.name_loc = name.start;
        expect_symbol(":");
        if (cur().is_symbol("(") && look(1).is_symbol(")")) {
            take();
            take();
        } else {
            d.domain.push_back(parse_type());
            while (accept_symbol("*")) d.domain.push_back(parse_type());
        }
        if (accept_symbol("->")) d.partial = true;
        else if (accept_symbol("+>")) d.partial = false;
        else fail("'->' or '+>'");
        d.range = parse_type();

        const Token& again = expect_identifier("function name");
        if (again.text != d.name)
            throw ParseError(again.start, "signature of '" + d.name + "' followed by definition of '" + again.text + "'");
        expect_symbol("(");
        if (!cur().is_symbol(")")) {
            d.params.push_back(parse_pattern());
            while (accept_symbol(",")) d.params.push_back(parse_pattern());
        }
        expect_symbol(")");
        if (d.params.size() != d.domain.size())
            throw ParseError(again.start, "function '" + d.name + "' takes " + std::to_string(d.domain.size()) +
                                              " parameter(s) but defines " + std::to_string(d.params.size()));
        check_distinct(d.params);
        expect_symbol("==");
        d.body = parse_expr();

        auto clause = [&](std::string_view kw, std::optional<Clause>& slot) {
            if (!cur().is_keyword(kw)) return false;
            if (slot) throw ParseError(cur().start, "duplicate '" + std::string(kw) + "' clause");
            Clause c;
            c.loc = take().start;
            c.body = parse_expr();
            slot = std::move(c);
            return true;
        };
        while (clause("pre", d.pre) || clause("post", d.post) || clause("measure", d.measure)) {
        }
    }

    // -- patterns -----------------------------------------------------------

    void check_distinct(const std::vector<Pattern>& ps) {
        std::vector<std::pair<std::string, SourceLocation>> names;
        for (const auto& p : ps) collect_pattern_names(p, names);
        std::set<std::string> seen;
        for (const auto& [n, at] : names)
            if (!seen.insert(n).second) throw ParseError(at, "identifier '" + n + "' bound twice in one pattern");
    }

    Pattern parse_pattern() {
        Pattern p = parse_pattern_inner();
        check_distinct({p});
        return p;
    }

    Pattern parse_pattern_inner() {
        Pattern p;
        p.loc = cur().start;
        if (accept_symbol("-")) {
            p.kind = PatternKind::Ignore;
        } else if (cur().is_symbol("[") || cur().is_symbol("{")) {
            const bool seq = cur().is_symbol("[");
            const char* close = seq ? "]" : "}";
            take();
            p.kind = seq ? PatternKind::SeqEnum : PatternKind::SetEnum;
            if (!cur().is_symbol(close)) {
                p.elements.push_back(parse_pattern_inner());
                while (accept_symbol(",")) p.elements.push_back(parse_pattern_inner());
            }
            expect_symbol(close);
        } else if (cur().kind == TokenKind::Identifier && starts_with(cur().text, "mk_") && look(1).is_symbol("(")) {
            p.kind = PatternKind::RecordCtor;
            p.name = take().text.substr(3);
            take();
            if (!cur().is_symbol(")")) {
                p.elements.push_back(parse_pattern_inner());
                while (accept_symbol(",")) p.elements.push_back(parse_pattern_inner());
            }
            expect_symbol(")");
        } else if (cur().kind == TokenKind::Identifier) {
            const Token& t = take();
            if (t.text.find('`') != std::string::npos) throw ParseError(t.start, "qualified name not allowed in pattern");
            p.kind = PatternKind::Name;
            p.name = t.text;
        } else {
            fail("pattern");
        }
        return p;
    }

    // -- types --------------------------------------------------------------

    TypePtr parse_type() {
        auto first = parse_type_atom();
        if (!cur().is_symbol("|")) return first;
        auto u = std::make_shared<TypeExpr>();
        u->kind = TypeKind::Union;
        u->loc = first->loc;
        auto add = [&](const TypePtr& t) {
            if (t->kind == TypeKind::Union) u->args.insert(u->args.end(), t->args.begin(), t->args.end());
            else u->args.push_back(t);
        };
        add(first);
        while (accept_symbol("|")) add(parse_type_atom());
        return u;
    }

    TypePtr parse_type_atom() {
        auto t = std::make_shared<TypeExpr>();
        t->loc = cur().start;
        const Token& tok = cur();
        if (tok.kind == TokenKind::Keyword && kBasicTypes.count(tok.text)) {
            t->kind = TypeKind::Basic;
            t->name = take().text;
        } else if (tok.kind == TokenKind::Quote) {
            t->kind = TypeKind::Quote;
            t->name = take().text;
        } else if (tok.is_keyword("seq") || tok.is_keyword("seq1") || tok.is_keyword("set") || tok.is_keyword("set1")) {
            const std::string kw = take().text;
            t->kind = kw == "seq" ? TypeKind::Seq : kw == "seq1" ? TypeKind::Seq1 : TypeKind::Set;
            t->name = kw;
            expect_keyword("of");
            t->args.push_back(parse_type_atom());
        } else if (tok.is_keyword("map") || tok.is_keyword("inmap")) {
            t->kind = TypeKind::Map;
            t->name = take().text;
            t->args.push_back(parse_type_atom());
            expect_keyword("to");
            t->args.push_back(parse_type_atom());
        } else if (tok.is_symbol("[")) {
            take();
            t->kind = TypeKind::Optional;
            t->args.push_back(parse_type());
            expect_symbol("]");
        } else if (tok.is_symbol("(")) {
            take();
            auto inner = parse_type();
            expect_symbol(")");
            return inner;
        } else if (tok.kind == TokenKind::Identifier) {
            t->kind = TypeKind::Named;
            t->name = take().text;
        } else {
            fail("type");
        }
        return t;
    }

    // -- expressions --------------------------------------------------------

    static ExprPtr make_binary(std::string op, ExprPtr lhs, ExprPtr rhs) {
        auto e = std::make_shared<Expr>();
        e->kind = ExprKind::Binary;
        e->loc = lhs->loc;
        e->text = std::move(op);
        e->operands = {std::move(lhs), std::move(rhs)};
        return e;
    }

    ExprPtr parse_expr() { return parse_implies(); }

    ExprPtr parse_implies() {
        auto lhs = parse_or();
        if (cur().is_symbol("=>") || cur().is_symbol("<=>")) {
            std::string op = take().text;
            return make_binary(std::move(op), lhs, parse_implies());
        }
        return lhs;
    }

    ExprPtr parse_or() {
        auto lhs = parse_and();
        while (accept_keyword("or")) lhs = make_binary("or", lhs, parse_and());
        return lhs;
    }

    ExprPtr parse_and() {
        auto lhs = parse_not();
        while (accept_keyword("and")) lhs = make_binary("and", lhs, parse_not());
        return lhs;
    }

    ExprPtr parse_not() {
        if (cur().is_keyword("not")) {
            auto e = std::make_shared<Expr>();
            e->kind = ExprKind::Unary;
            e->loc = take().start;
            e->text = "not";
            e->operands.push_back(parse_not());
            return e;
        }
        return parse_relational();
    }

    ExprPtr parse_relational() {
        auto lhs = parse_additive();
        const Token& t = cur();
        std::string op;
        if (t.kind == TokenKind::Symbol &&
            (t.text == "=" || t.text == "<>" || t.text == "<" || t.text == "<=" || t.text == ">" || t.text == ">=")) {
            op = take().text;
        } else if (t.is_keyword("in") && look(1).is_keyword("set")) {
            take();
            take();
            op = "in set";
        } else if (t.is_keyword("not") && look(1).is_keyword("in") && look(2).is_keyword("set")) {
            take();
            take();
            take();
            op = "not in set";
        } else if (t.is_keyword("subset") || t.is_keyword("psubset")) {
            op = take().text;
        } else {
            return lhs;
        }
        return make_binary(std::move(op), lhs, parse_additive());
    }

    ExprPtr parse_additive() {
        auto lhs = parse_multiplicative();
        for (;;) {
            const Token& t = cur();
            const bool sym = t.kind == TokenKind::Symbol &&
                             (t.text == "+" || t.text == "-" || t.text == "\\" || t.text == "++" || t.text == "^" ||
                              t.text == "<:" || t.text == "<-:" || t.text == ":>" || t.text == ":->");
            const bool kw = t.is_keyword("union") || t.is_keyword("munion");
            if (!sym && !kw) return lhs;
            std::string op = take().text;
            lhs = make_binary(std::move(op), lhs, parse_multiplicative());
        }
    }

    ExprPtr parse_multiplicative() {
        auto lhs = parse_unary();
        for (;;) {
            const Token& t = cur();
            const bool sym = t.is_symbol("*") || t.is_symbol("/");
            const bool kw = t.is_keyword("div") || t.is_keyword("rem") || t.is_keyword("mod") || t.is_keyword("inter");
            if (!sym && !kw) return lhs;
            std::string op = take().text;
            lhs = make_binary(std::move(op), lhs, parse_unary());
        }
    }

    ExprPtr parse_unary() {
        const Token& t = cur();
        if (t.is_symbol("-") || t.is_symbol("+") || (t.kind == TokenKind::Keyword && kUnaryKeywords.count(t.text))) {
            auto e = std::make_shared<Expr>();
            e->kind = ExprKind::Unary;
            e->loc = t.start;
            e->text = take().text;
            e->operands.push_back(parse_unary());
            return e;
        }
        if (t.kind == TokenKind::Keyword && kBuiltins.count(t.text)) {
            auto e = std::make_shared<Expr>();
            e->kind = ExprKind::Builtin;
            e->loc = t.start;
            e->text = take().text;
            e->operands.push_back(parse_unary());
            return e;
        }
        return parse_postfix();
    }

    std::vector<ExprPtr> parse_args(const char* close) {
        std::vector<ExprPtr> args;
        if (!cur().is_symbol(close)) {
            args.push_back(parse_expr());
            while (accept_symbol(",")) args.push_back(parse_expr());
        }
        expect_symbol(close);
        return args;
    }

    ExprPtr parse_postfix() {
        auto e = parse_primary();
        for (;;) {
            if (cur().is_symbol("(")) {
                auto app = std::make_shared<Expr>();
                app->kind = ExprKind::Apply;
                app->loc = e->loc;
                take();
                app->operands.push_back(e);
                for (auto& a : parse_args(")")) app->operands.push_back(std::move(a));
                e = app;
            } else if (cur().is_symbol(".")) {
                take();
                auto sel = std::make_shared<Expr>();
                sel->kind = ExprKind::FieldSelect;
                sel->loc = e->loc;
                sel->text = expect_plain_identifier("field name");
                sel->operands.push_back(e);
                e = sel;
            } else if (cur().is_symbol(".#")) {
                take();
                if (cur().kind != TokenKind::Number) fail("tuple index");
                auto sel = std::make_shared<Expr>();
                sel->kind = ExprKind::FieldSelect;
                sel->loc = e->loc;
                sel->text = "#" + take().text;
                sel->operands.push_back(e);
                e = sel;
            } else if (cur().is_symbol("**")) {
                take();
                e = make_binary("**", e, parse_primary());
            } else {
                return e;
            }
        }
    }

    ExprPtr parse_primary() {
        const Token& t = cur();
        auto e = std::make_shared<Expr>();
        e->loc = t.start;
        switch (t.kind) {
        case TokenKind::Number:
        case TokenKind::Char:
        case TokenKind::String:
        case TokenKind::Quote:
            e->kind = ExprKind::Literal;
            e->text = take().text;
            return e;
        case TokenKind::Identifier:
            return parse_identifier_expr();
        case TokenKind::Keyword:
            if (t.text == "true" || t.text == "false" || t.text == "nil") {
                e->kind = ExprKind::Literal;
                e->text = take().text;
                return e;
            }
            if (t.text == "if") return parse_if();
            if (t.text == "let") return parse_let();
            if (t.text == "forall" || t.text == "exists" || t.text == "exists1") return parse_quantifier();
            if (t.text == "is" && look(1).is_keyword("not") && look(2).is_keyword("yet") && look(3).is_keyword("specified")) {
                for (int i = 0; i < 4; ++i) take();
                e->kind = ExprKind::Undefined;
                e->text = "is not yet specified";
                return e;
            }
            break;
        case TokenKind::Symbol:
            if (t.text == "(") {
                take();
                auto inner = parse_expr();
                expect_symbol(")");
                return inner;
            }
            if (t.text == "{") return parse_brace();
            if (t.text == "[") return parse_bracket();
            break;
        case TokenKind::End:
            break;
        }
        fail("expression");
    }

    ExprPtr parse_identifier_expr() {
        const Token& t = take();
        auto e = std::make_shared<Expr>();
        e->loc = t.start;
        if (cur().is_symbol("(")) {
            if (t.text == "mk_") {
                take();
                e->kind = ExprKind::TupleCtor;
                e->operands = parse_args(")");
                return e;
            }
            if (starts_with(t.text, "mk_")) {
                take();
                e->kind = ExprKind::RecordCtor;
                e->text = t.text.substr(3);
                e->operands = parse_args(")");
                return e;
            }
            if (t.text == "is_") {
                take();
                e->kind = ExprKind::IsType;
                e->operands.push_back(parse_expr());
                expect_symbol(",");
                e->type = parse_type();
                expect_symbol(")");
                return e;
            }
            if (starts_with(t.text, "is_")) {
                take();
                e->kind = ExprKind::IsType;
                e->text = t.text.substr(3);
                e->operands.push_back(parse_expr());
                expect_symbol(")");
                return e;
            }
        }
        e->kind = ExprKind::NameRef;
        e->text = t.text;
        return e;
    }

    ExprPtr parse_if() {
        auto e = std::make_shared<Expr>();
        e->kind = ExprKind::IfThenElse;
        e->loc = expect_keyword("if").start;
        e->operands.push_back(parse_expr());
        expect_keyword("then");
        e->operands.push_back(parse_expr());
        while (accept_keyword("elseif")) {
            e->operands.push_back(parse_expr());
            expect_keyword("then");
            e->operands.push_back(parse_expr());
        }
        expect_keyword("else");
        e->operands.push_back(parse_expr());
        return e;
    }

    ExprPtr parse_let() {
        auto e = std::make_shared<Expr>();
        e->kind = ExprKind::LetIn;
        e->loc = expect_keyword("let").start;
        do {
            LetBinding b;
            b.pattern = parse_pattern();
            if (accept_symbol(":")) b.type = parse_type();
            expect_symbol("=");
            b.value = parse_expr();
            e->lets.push_back(std::move(b));
        } while (accept_symbol(","));
        expect_keyword("in");
        e->operands.push_back(parse_expr());
        return e;
    }

    std::vector<Bind> parse_bind_list() {
        std::vector<Bind> binds;
        do {
            Bind b;
            b.loc = cur().start;
            b.patterns.push_back(parse_pattern());
            while (accept_symbol(",")) b.patterns.push_back(parse_pattern());
            if (cur().is_keyword("in") && look(1).is_keyword("set")) {
                take();
                take();
                b.kind = BindKind::InSet;
                b.set = parse_expr();
            } else if (accept_symbol(":")) {
                b.kind = BindKind::OfType;
                b.type = parse_type();
            } else {
                fail("'in set' or ':' in binding");
            }
            binds.push_back(std::move(b));
        } while (accept_symbol(","));
        return binds;
    }

    ExprPtr parse_quantifier() {
        auto e = std::make_shared<Expr>();
        e->kind = ExprKind::Quantifier;
        e->loc = cur().start;
        e->text = take().text;
        e->binds = parse_bind_list();
        expect_symbol("&");
        e->operands.push_back(parse_expr());
        return e;
    }

    void parse_comprehension_tail(Expr& e) {
        expect_symbol("|");
        e.binds = parse_bind_list();
        if (accept_symbol("&")) e.predicate = parse_expr();
    }

    ExprPtr parse_brace() {
        auto e = std::make_shared<Expr>();
        e->loc = expect_symbol("{").start;
        if (accept_symbol("}")) {
            e->kind = ExprKind::SetEnum;
            return e;
        }
        if (cur().is_symbol("|->") && look(1).is_symbol("}")) {
            take();
            take();
            e->kind = ExprKind::MapEnum;
            return e;
        }
        auto first = parse_expr();
        if (accept_symbol("|->")) {
            auto value = parse_expr();
            e->operands = {first, value};
            if (cur().is_symbol("|")) {
                e->kind = ExprKind::MapComp;
                parse_comprehension_tail(*e);
            } else {
                e->kind = ExprKind::MapEnum;
                while (accept_symbol(",")) {
                    e->operands.push_back(parse_expr());
                    expect_symbol("|->");
                    e->operands.push_back(parse_expr());
                }
            }
            expect_symbol("}");
            return e;
        }
        if (cur().is_symbol("|")) {
            e->kind = ExprKind::SetComp;
            e->operands.push_back(first);
            parse_comprehension_tail(*e);
            expect_symbol("}");
            return e;
        }
        if (cur().is_symbol(",") && look(1).is_symbol("...")) {
            take();
            take();
            expect_symbol(",");
            e->kind = ExprKind::SetRange;
            e->operands = {first, parse_expr()};
            expect_symbol("}");
            return e;
        }
        e->kind = ExprKind::SetEnum;
        e->operands.push_back(first);
        while (accept_symbol(",")) e->operands.push_back(parse_expr());
        expect_symbol("}");
        return e;
    }

    ExprPtr parse_bracket() {
        auto e = std::make_shared<Expr>();
        e->loc = expect_symbol("[").start;
        e->kind = ExprKind::SeqEnum;
        if (accept_symbol("]")) return e;
        auto first = parse_expr();
        e->operands.push_back(first);
        if (cur().is_symbol("|")) {
            e->kind = ExprKind::SeqComp;
            parse_comprehension_tail(*e);
        } else {
            while (accept_symbol(",")) e->operands.push_back(parse_expr());
        }
        expect_symbol("]");
        return e;
    }

    std::string_view text_;
    std::string file_;
    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    // Leading comments of the current token already claimed as trailing
    // comments of the previous definition.
    std::size_t claimed_comments_ = 0;
};

} // namespace

std::vector<SourceModule> parse_source(std::string_view text, const std::string& file) {
    return Parser(text, file).parse_all();
}

SourceModule parse_module(std::string_view text, const std::string& file) {
    auto mods = parse_source(text, file);
    if (mods.size() != 1)
        throw ParseError(SourceLocation{file, 1, 1, 0},
                         "expected exactly one module, found " + std::to_string(mods.size()));
    return std::move(mods.front());
}

std::vector<SourceModule> parse_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError(SourceLocation{path, 1, 1, 0}, "cannot read file");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_source(buf.str(), path);
}

} // namespace defsort
