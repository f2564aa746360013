#pragma once

#include "defsort/source_location.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace defsort {

enum class TokenKind { Identifier, Keyword, Number, Char, String, Quote, Symbol, End };

struct Comment {
    std::string text; // including the leading `--` or `/*`
    SourceLocation start;
    SourceLocation end;
};

struct Token {
    TokenKind kind = TokenKind::End;
    std::string text;
    SourceLocation start;
    SourceLocation end;
    std::vector<Comment> leading_comments; // comments between the previous token and this one

    bool is(TokenKind k, std::string_view t) const { return kind == k && text == t; }
    bool is_keyword(std::string_view t) const { return is(TokenKind::Keyword, t); }
    bool is_symbol(std::string_view t) const { return is(TokenKind::Symbol, t); }
};

bool is_reserved_word(std::string_view word);

/// Splits `text` into tokens. The final token is always TokenKind::End and
/// carries any trailing comments. Throws ParseError on unterminated literals
/// or stray characters.
std::vector<Token> tokenize(std::string_view text, const std::string& file);

} // namespace defsort
