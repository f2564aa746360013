#include "defsort/lexer.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <unordered_set>

namespace defsort {

namespace {

const std::unordered_set<std::string_view>& reserved_words() {
    static const std::unordered_set<std::string_view> words = {
        "module", "exports", "imports", "from", "all", "definitions", "end",
        "types", "values", "functions", "inv", "eq", "ord", "pre", "post", "measure",
        "of", "seq", "seq1", "set", "set1", "map", "inmap", "to",
        "nat", "nat1", "int", "real", "rat", "bool", "char", "token",
        "if", "then", "elseif", "else", "let", "in", "be", "st",
        "forall", "exists", "exists1", "and", "or", "not", "true", "false", "nil",
        "subset", "psubset", "union", "inter", "munion", "div", "rem", "mod",
        "abs", "floor", "card", "dom", "rng", "len", "elems", "hd", "tl", "inds",
        "dunion", "dinter", "conc", "power", "is", "yet", "specified",
    };
    return words;
}

// Longest match first.
constexpr std::string_view kSymbols[] = {
    "<=>", "|->", "<-:", ":->", "...", "::", ":-", "==", "<>", "<=", ">=", "=>", "->", "+>",
    "++", "**", ".#", "<:", ":>", ":", "=", "<", ">", "|", "&", ",", ";", "(", ")", "[", "]",
    "{", "}", "+", "-", "*", "/", "\\",
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

class Lexer {
public:
    Lexer(std::string_view text, const std::string& file) : text_(text), file_(file) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        for (;;) {
            std::vector<Comment> comments = skip_trivia();
            Token tok = next();
            tok.leading_comments = std::move(comments);
            const bool done = tok.kind == TokenKind::End;
            out.push_back(std::move(tok));
            if (done) break;
        }
        return out;
    }

private:
    SourceLocation here() const { return SourceLocation{file_, line_, col_, pos_}; }
    char peek(std::size_t ahead = 0) const { return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0'; }
    bool at_end() const { return pos_ >= text_.size(); }

    void advance(std::size_t n = 1) {
        for (std::size_t i = 0; i < n && pos_ < text_.size(); ++i) {
            // Columns count bytes; UTF-8 continuation bytes still advance.
            if (text_[pos_] == '\n') {
                ++line_;
                col_ = 1;
            } else {
                ++col_;
            }
            ++pos_;
        }
    }

    std::vector<Comment> skip_trivia() {
        std::vector<Comment> comments;
        for (;;) {
            while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) advance();
            if (peek() == '-' && peek(1) == '-') {
                Comment c;
                c.start = here();
                const std::size_t begin = pos_;
                while (!at_end() && peek() != '\n') advance();
                std::size_t stop = pos_;
                while (stop > begin && (text_[stop - 1] == '\r' || text_[stop - 1] == ' ' || text_[stop - 1] == '\t'))
                    --stop;
                c.text = std::string(text_.substr(begin, stop - begin));
                c.end = c.start;
                c.end.offset = stop;
                c.end.column = c.start.column + static_cast<int>(stop - begin);
                comments.push_back(std::move(c));
                continue;
            }
            if (peek() == '/' && peek(1) == '*') {
                Comment c;
                c.start = here();
                const std::size_t begin = pos_;
                advance(2);
                while (!at_end() && !(peek() == '*' && peek(1) == '/')) advance();
                if (at_end()) throw ParseError(c.start, "unterminated block comment");
                advance(2);
                c.text = std::string(text_.substr(begin, pos_ - begin));
                c.end = here();
                comments.push_back(std::move(c));
                continue;
            }
            return comments;
        }
    }

    Token make(TokenKind kind, SourceLocation start) {
        Token t;
        t.kind = kind;
        t.start = start;
        t.end = here();
        t.text = std::string(text_.substr(start.offset, pos_ - start.offset));
        return t;
    }

    Token next() {
        const SourceLocation start = here();
        if (at_end()) return make(TokenKind::End, start);
        const char c = peek();

        if (ident_start(c)) {
            while (ident_char(peek())) advance();
            // Module-qualified name: Mod`name
            if (peek() == '`' && ident_start(peek(1))) {
                advance();
                while (ident_char(peek())) advance();
                return make(TokenKind::Identifier, start);
            }
            Token t = make(TokenKind::Identifier, start);
            if (is_reserved_word(t.text)) t.kind = TokenKind::Keyword;
            return t;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            while (std::isdigit(static_cast<unsigned char>(peek()))) advance();
            // A '.' starts a fraction only when followed by a digit (`1,...,3` must not lex as reals).
            if (peek() == '.' && std::isdigit(static_cast<unsigned char>(peek(1)))) {
                advance();
                while (std::isdigit(static_cast<unsigned char>(peek()))) advance();
            }
            if ((peek() == 'e' || peek() == 'E') &&
                (std::isdigit(static_cast<unsigned char>(peek(1))) ||
                 ((peek(1) == '-' || peek(1) == '+') && std::isdigit(static_cast<unsigned char>(peek(2)))))) {
                advance(2);
                while (std::isdigit(static_cast<unsigned char>(peek()))) advance();
            }
            return make(TokenKind::Number, start);
        }
        if (c == '\'' || c == '"') {
            const char quote = c;
            advance();
            while (!at_end() && peek() != quote && peek() != '\n') {
                if (peek() == '\\') advance();
                advance();
            }
            if (peek() != quote) throw ParseError(start, quote == '"' ? "unterminated string literal" : "unterminated character literal");
            advance();
            return make(quote == '"' ? TokenKind::String : TokenKind::Char, start);
        }
        // Quote literal <NAME>: no whitespace allowed inside.
        if (c == '<' && ident_start(peek(1))) {
            std::size_t n = 1;
            while (ident_char(peek(n))) ++n;
            if (peek(n) == '>') {
                advance(n + 1);
                return make(TokenKind::Quote, start);
            }
        }
        for (std::string_view sym : kSymbols) {
            if (text_.substr(pos_, sym.size()) == sym) {
                advance(sym.size());
                return make(TokenKind::Symbol, start);
            }
        }
        if (c == '.' || c == '^' || c == '`') {
            advance();
            return make(TokenKind::Symbol, start);
        }
        throw ParseError(start, std::string("unexpected character '") + c + "'");
    }

    std::string_view text_;
    std::string file_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
};

} // namespace

bool is_reserved_word(std::string_view word) { return reserved_words().count(word) != 0; }

std::vector<Token> tokenize(std::string_view text, const std::string& file) {
    return Lexer(text, file).run();
}

} // namespace defsort
