#include "java_lexer.hpp"

#include <algorithm>
#include <array>
#include <cctype>

#include "reusemine/errors.hpp"

namespace reusemine::java {

namespace {

constexpr std::array<std::string_view, 50> kKeywords = {
    "abstract",  "assert",     "boolean",   "break",     "byte",         "case",
    "catch",     "char",       "class",     "const",     "continue",     "default",
    "do",        "double",     "else",      "enum",      "extends",      "final",
    "finally",   "float",      "for",       "goto",      "if",           "implements",
    "import",    "instanceof", "int",       "interface", "long",         "native",
    "new",       "package",    "private",   "protected", "public",       "return",
    "short",     "static",     "strictfp",  "super",     "switch",       "synchronized",
    "this",      "throw",      "throws",    "transient", "try",          "void",
    "volatile",  "while"};

// Longest-first so that greedy matching picks `>>>=` style operators. `>`
// and `>=` are handled separately.
constexpr std::array<std::string_view, 36> kOperators = {
    "<<=", "...", "->", "::", "++", "--", "&&", "||", "==", "!=", "<=", "+=",
    "-=",  "*=",  "/=", "%=", "&=", "|=", "^=", "<<", "(",  ")",  "{",  "}",
    "[",   "]",   ";",  ",",  ".",  "@",  "=",  "<",  "!",  "~",  "?",  ":"};

constexpr std::string_view kSingleOps = "+-*/%&|^";

bool ident_start(unsigned char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_' || c == '$' || c >= 0x80;
}

bool ident_part(unsigned char c) { return ident_start(c) || (c >= '0' && c <= '9'); }

class Lexer {
public:
    Lexer(std::string_view src, const std::string& path) : src_(src), path_(path) {}

    LexedSource run() {
        LexedSource out;
        while (true) {
            skip_trivia();
            if (pos_ >= src_.size()) break;
            out.tokens.push_back(next_token());
        }
        Token end;
        end.kind = TokenKind::End;
        end.line = line_;
        end.column = column();
        end.offset = src_.size();
        out.tokens.push_back(end);

        out.code_lines.assign(static_cast<std::size_t>(line_), false);
        for (const auto& [first, last] : spans_) {
            for (int l = first; l <= last; ++l) out.code_lines[static_cast<std::size_t>(l - 1)] = true;
        }
        return out;
    }

private:
    [[noreturn]] void fail(const std::string& what) const { throw ParseError(path_, line_, column(), what); }

    int column() const { return static_cast<int>(pos_ - line_start_) + 1; }

    char peek(std::size_t ahead = 0) const {
        return pos_ + ahead < src_.size() ? src_[pos_ + ahead] : '\0';
    }

    void advance() {
        if (src_[pos_] == '\n') {
            ++line_;
            line_start_ = pos_ + 1;
        }
        ++pos_;
    }

    void skip_trivia() {
        while (pos_ < src_.size()) {
            char c = peek();
            if (c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\f') {
                advance();
            } else if (c == '/' && peek(1) == '/') {
                while (pos_ < src_.size() && peek() != '\n') advance();
            } else if (c == '/' && peek(1) == '*') {
                advance();
                advance();
                while (pos_ < src_.size() && !(peek() == '*' && peek(1) == '/')) advance();
                if (pos_ >= src_.size()) fail("unterminated comment");
                advance();
                advance();
            } else {
                break;
            }
        }
    }

    Token next_token() {
        Token t;
        t.line = line_;
        t.column = column();
        t.offset = pos_;
        const std::size_t start = pos_;
        const auto c = static_cast<unsigned char>(peek());

        if (ident_start(c)) {
            while (pos_ < src_.size() && ident_part(static_cast<unsigned char>(peek()))) advance();
            t.text = src_.substr(start, pos_ - start);
            t.kind = is_keyword(t.text) ? TokenKind::Keyword : TokenKind::Identifier;
        } else if ((c >= '0' && c <= '9') || (c == '.' && peek(1) >= '0' && peek(1) <= '9')) {
            lex_number();
            t.kind = TokenKind::Number;
            t.text = src_.substr(start, pos_ - start);
        } else if (c == '"') {
            lex_string();
            t.kind = TokenKind::String;
            t.text = src_.substr(start, pos_ - start);
        } else if (c == '\'') {
            lex_char();
            t.kind = TokenKind::Char;
            t.text = src_.substr(start, pos_ - start);
        } else {
            t.kind = TokenKind::Operator;
            t.text = lex_operator();
        }
        spans_.emplace_back(t.line, line_);
        return t;
    }

    void lex_number() {
        if (peek() == '0' && (peek(1) == 'x' || peek(1) == 'X')) {
            advance();
            advance();
            while (std::isxdigit(static_cast<unsigned char>(peek())) || peek() == '_' || peek() == '.') advance();
            if (peek() == 'p' || peek() == 'P') {
                advance();
                if (peek() == '+' || peek() == '-') advance();
                while (std::isdigit(static_cast<unsigned char>(peek()))) advance();
            }
        } else if (peek() == '0' && (peek(1) == 'b' || peek(1) == 'B')) {
            advance();
            advance();
            while (peek() == '0' || peek() == '1' || peek() == '_') advance();
        } else {
            while (std::isdigit(static_cast<unsigned char>(peek())) || peek() == '_') advance();
            if (peek() == '.' && std::isdigit(static_cast<unsigned char>(peek(1)))) {
                advance();
                while (std::isdigit(static_cast<unsigned char>(peek())) || peek() == '_') advance();
            } else if (peek() == '.' && !ident_start(static_cast<unsigned char>(peek(1))) && peek(1) != '.') {
                advance();  // `1.` is a valid double literal
            }
            if (peek() == 'e' || peek() == 'E') {
                advance();
                if (peek() == '+' || peek() == '-') advance();
                while (std::isdigit(static_cast<unsigned char>(peek())) || peek() == '_') advance();
            }
        }
        const char s = peek();
        if (s == 'l' || s == 'L' || s == 'f' || s == 'F' || s == 'd' || s == 'D') advance();
    }

    void lex_string() {
        if (peek(1) == '"' && peek(2) == '"') {
            advance();
            advance();
            advance();
            while (pos_ < src_.size()) {
                if (peek() == '\\') {
                    advance();
                    if (pos_ < src_.size()) advance();
                    continue;
                }
                if (peek() == '"' && peek(1) == '"' && peek(2) == '"') {
                    advance();
                    advance();
                    advance();
                    return;
                }
                advance();
            }
            fail("unterminated text block");
        }
        advance();
        while (pos_ < src_.size() && peek() != '"') {
            if (peek() == '\n') fail("unterminated string literal");
            if (peek() == '\\') advance();
            if (pos_ < src_.size()) advance();
        }
        if (pos_ >= src_.size()) fail("unterminated string literal");
        advance();
    }

    void lex_char() {
        advance();
        while (pos_ < src_.size() && peek() != '\'') {
            if (peek() == '\n') fail("unterminated character literal");
            if (peek() == '\\') advance();
            if (pos_ < src_.size()) advance();
        }
        if (pos_ >= src_.size()) fail("unterminated character literal");
        advance();
    }

    std::string_view lex_operator() {
        const std::size_t start = pos_;
        if (peek() == '>') {
            advance();
            if (peek() == '=') advance();
            return src_.substr(start, pos_ - start);
        }
        for (std::string_view op : kOperators) {
            if (src_.substr(pos_, op.size()) == op) {
                for (std::size_t i = 0; i < op.size(); ++i) advance();
                return src_.substr(start, op.size());
            }
        }
        if (kSingleOps.find(peek()) != std::string_view::npos) {
            advance();
            return src_.substr(start, 1);
        }
        if (peek() == '\\' && peek(1) == 'u') fail("unicode escapes outside literals are not supported");
        fail(std::string("unexpected character '") + peek() + "'");
    }

    std::string_view src_;
    const std::string& path_;
    std::size_t pos_ = 0;
    std::size_t line_start_ = 0;
    int line_ = 1;
    std::vector<std::pair<int, int>> spans_;
};

} // namespace

bool is_keyword(std::string_view word) {
    return std::find(kKeywords.begin(), kKeywords.end(), word) != kKeywords.end();
}

LexedSource lex(std::string_view source, const std::string& path) {
    // A UTF-8 byte-order mark is not part of the token stream.
    if (source.substr(0, 3) == "\xEF\xBB\xBF") {
        LexedSource out = Lexer(source.substr(3), path).run();
        return out;
    }
    return Lexer(source, path).run();
}

} // namespace reusemine::java
