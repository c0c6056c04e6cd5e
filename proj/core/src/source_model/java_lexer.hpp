#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace reusemine::java {

enum class TokenKind { Identifier, Keyword, Number, Char, String, Operator, End };

struct Token {
    TokenKind kind = TokenKind::End;
    std::string_view text;
    int line = 0;
    int column = 0;
    std::size_t offset = 0;

    bool is(TokenKind k, std::string_view t) const { return kind == k && text == t; }
    bool op(std::string_view t) const { return kind == TokenKind::Operator && text == t; }
    bool kw(std::string_view t) const { return kind == TokenKind::Keyword && text == t; }
    bool ident() const { return kind == TokenKind::Identifier; }
    bool ident(std::string_view t) const { return kind == TokenKind::Identifier && text == t; }
};

struct LexedSource {
    std::vector<Token> tokens;  // terminated by an End token
    // code_lines[i] is true when line i+1 holds at least one token.
    std::vector<bool> code_lines;
};

// Tokenizes Java source. `>` is always emitted as a single-character token so
// that nested type arguments close cleanly; the parser reassembles shift
// operators from adjacent tokens. Throws ParseError on malformed input.
LexedSource lex(std::string_view source, const std::string& path);

bool is_keyword(std::string_view word);

} // namespace reusemine::java
