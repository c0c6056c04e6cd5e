#include "java_parser.hpp"

#include <algorithm>
#include <array>
#include <utility>

#include "reusemine/errors.hpp"

namespace reusemine::java {

namespace {

constexpr std::array<std::string_view, 8> kPrimitives = {"boolean", "byte",  "char", "short",
                                                          "int",     "long",  "float", "double"};

constexpr std::array<std::string_view, 12> kModifierKeywords = {
    "public", "protected", "private",  "static",       "abstract", "final",
    "native", "transient", "volatile", "synchronized", "strictfp", "default"};

bool is_primitive(const Token& t) {
    return t.kind == TokenKind::Keyword &&
           std::find(kPrimitives.begin(), kPrimitives.end(), t.text) != kPrimitives.end();
}

bool is_modifier_keyword(const Token& t) {
    return t.kind == TokenKind::Keyword &&
           std::find(kModifierKeywords.begin(), kModifierKeywords.end(), t.text) != kModifierKeywords.end();
}

bool is_literal_word(std::string_view w) { return w == "true" || w == "false" || w == "null"; }

class Parser {
public:
    Parser(const LexedSource& lexed, const std::string& path) : toks_(lexed.tokens), path_(path) {}

    CompilationUnitSyntax parse_unit() {
        CompilationUnitSyntax unit;
        skip_annotations();
        if (peek().kw("package")) {
            next();
            unit.package_name = parse_qualified_name();
            expect_op(";");
        }
        while (peek().kw("import") || peek().op(";")) {
            if (accept_op(";")) continue;
            next();
            ImportDecl imp;
            imp.is_static = accept_kw("static");
            imp.name = expect_ident();
            while (accept_op(".")) {
                if (accept_op("*")) {
                    imp.wildcard = true;
                    break;
                }
                imp.name += ".";
                imp.name += expect_ident();
            }
            expect_op(";");
            unit.imports.push_back(std::move(imp));
        }
        if (is_module_declaration()) return unit;
        while (peek().kind != TokenKind::End) {
            if (accept_op(";")) continue;
            const int begin = peek().line;
            skip_modifiers();
            if (!at_type_declaration()) fail("expected a type declaration");
            unit.types.push_back(parse_type_declaration(begin));
        }
        return unit;
    }

private:
    // ---- token plumbing -------------------------------------------------

    const Token& peek(std::size_t k = 0) const {
        return toks_[std::min(pos_ + k, toks_.size() - 1)];
    }

    const Token& next() {
        const Token& t = toks_[pos_];
        if (pos_ + 1 < toks_.size()) ++pos_;
        return t;
    }

    bool adjacent(std::size_t k) const {
        const Token& a = peek(k);
        const Token& b = peek(k + 1);
        return b.kind != TokenKind::End && b.offset == a.offset + a.text.size();
    }

    [[noreturn]] void fail(const std::string& what) const {
        const Token& t = peek();
        std::string near = t.kind == TokenKind::End ? std::string("end of file") : "'" + std::string(t.text) + "'";
        throw ParseError(path_, t.line, t.column, what + " near " + near);
    }

    bool accept_op(std::string_view op) {
        if (peek().op(op)) {
            next();
            return true;
        }
        return false;
    }

    bool accept_kw(std::string_view kw) {
        if (peek().kw(kw)) {
            next();
            return true;
        }
        return false;
    }

    void expect_op(std::string_view op) {
        if (!accept_op(op)) fail("expected '" + std::string(op) + "'");
    }

    std::string expect_ident() {
        if (!peek().ident()) fail("expected identifier");
        return std::string(next().text);
    }

    std::string parse_qualified_name() {
        std::string name = expect_ident();
        while (peek().op(".") && peek(1).ident()) {
            next();
            name += ".";
            name += next().text;
        }
        return name;
    }

    // Skips a balanced bracket group starting at the current opening token.
    void skip_balanced(std::string_view open, std::string_view close) {
        expect_op(open);
        int depth = 1;
        while (depth > 0) {
            if (peek().kind == TokenKind::End) fail("unbalanced '" + std::string(open) + "'");
            if (peek().op(open)) ++depth;
            if (peek().op(close)) --depth;
            next();
        }
    }

    // ---- modifiers and annotations ---------------------------------------

    bool at_annotation() const { return peek().op("@") && !peek(1).kw("interface"); }

    void skip_annotation() {
        expect_op("@");
        parse_qualified_name();
        if (peek().op("(")) skip_balanced("(", ")");
    }

    void skip_annotations() {
        while (at_annotation()) skip_annotation();
    }

    bool at_contextual_modifier() const {
        const Token& t = peek();
        if (t.ident("sealed")) return peek(1).kind == TokenKind::Keyword || peek(1).ident();
        if (t.ident("non")) return peek(1).op("-") && peek(2).ident("sealed");
        return false;
    }

    // Returns true when anything was consumed.
    bool skip_modifiers() {
        bool any = false;
        while (true) {
            if (at_annotation()) {
                skip_annotation();
            } else if (is_modifier_keyword(peek()) && !(peek().kw("default") && (peek(1).op(":") || peek(1).op("->")))) {
                next();
            } else if (at_contextual_modifier()) {
                if (peek().ident("non")) {
                    next();
                    next();
                }
                next();
            } else {
                return any;
            }
            any = true;
        }
    }

    bool at_record_declaration() const {
        return peek().ident("record") && peek(1).ident() && (peek(2).op("(") || peek(2).op("<"));
    }

    bool at_type_declaration() const {
        return peek().kw("class") || peek().kw("interface") || peek().kw("enum") ||
               (peek().op("@") && peek(1).kw("interface")) || at_record_declaration();
    }

    // ---- types ---------------------------------------------------------------

    // Non-throwing type parser used both for declarations and speculation.
    // Restores the position on failure.
    bool try_type(TypeRef& out) {
        const std::size_t saved = pos_;
        TypeRef t;
        skip_annotations();
        if (is_primitive(peek())) {
            t.name = std::string(next().text);
            t.primitive = true;
        } else if (peek().ident()) {
            t.name = std::string(next().text);
            if (peek().op("<") && !try_type_arguments()) {
                pos_ = saved;
                return false;
            }
            while (peek().op(".") && (peek(1).ident() || peek(1).op("@"))) {
                next();
                skip_annotations();
                if (!peek().ident()) {
                    pos_ = saved;
                    return false;
                }
                t.name += ".";
                t.name += next().text;
                if (peek().op("<") && !try_type_arguments()) {
                    pos_ = saved;
                    return false;
                }
            }
        } else {
            pos_ = saved;
            return false;
        }
        while (true) {
            const std::size_t before = pos_;
            skip_annotations();
            if (peek().op("[") && peek(1).op("]")) {
                next();
                next();
                ++t.dims;
            } else {
                pos_ = before;
                break;
            }
        }
        out = std::move(t);
        return true;
    }

    bool try_type_arguments() {
        const std::size_t saved = pos_;
        if (!accept_op("<")) return false;
        if (accept_op(">")) return true;  // diamond
        while (true) {
            skip_annotations();
            if (accept_op("?")) {
                if (accept_kw("extends") || accept_kw("super")) {
                    TypeRef bound;
                    if (!try_type(bound)) {
                        pos_ = saved;
                        return false;
                    }
                    while (accept_op("&")) {
                        if (!try_type(bound)) {
                            pos_ = saved;
                            return false;
                        }
                    }
                }
            } else {
                TypeRef arg;
                if (!try_type(arg)) {
                    pos_ = saved;
                    return false;
                }
            }
            if (accept_op(",")) continue;
            if (accept_op(">")) return true;
            pos_ = saved;
            return false;
        }
    }

    TypeRef parse_type() {
        TypeRef t;
        if (!try_type(t)) fail("expected type");
        return t;
    }

    TypeRef parse_result_type() {
        if (peek().kw("void")) {
            next();
            return TypeRef{"void", 0, true};
        }
        return parse_type();
    }

    void skip_type_parameters() {
        if (peek().op("<")) skip_balanced("<", ">");
    }

    std::vector<TypeRef> parse_type_list() {
        std::vector<TypeRef> out;
        out.push_back(parse_type());
        while (accept_op(",")) out.push_back(parse_type());
        return out;
    }

    // ---- declarations ----------------------------------------------------

    ClassPtr parse_type_declaration(int begin_line) {
        auto node = std::make_unique<ClassNode>();
        node->begin_line = begin_line;
        if (accept_kw("class")) {
            node->kind = TypeKind::Class;
            node->name = expect_ident();
            skip_type_parameters();
            if (accept_kw("extends")) node->superclass = parse_type();
            if (accept_kw("implements")) node->interfaces = parse_type_list();
            if (peek().ident("permits")) {
                next();
                parse_type_list();
            }
            parse_class_body(*node);
        } else if (accept_kw("interface")) {
            node->kind = TypeKind::Interface;
            node->name = expect_ident();
            skip_type_parameters();
            if (accept_kw("extends")) node->interfaces = parse_type_list();
            if (peek().ident("permits")) {
                next();
                parse_type_list();
            }
            parse_class_body(*node);
        } else if (accept_kw("enum")) {
            node->kind = TypeKind::Enum;
            node->name = expect_ident();
            if (accept_kw("implements")) node->interfaces = parse_type_list();
            parse_enum_body(*node);
        } else if (peek().op("@") && peek(1).kw("interface")) {
            next();
            next();
            node->kind = TypeKind::Interface;
            node->name = expect_ident();
            parse_class_body(*node);
        } else if (at_record_declaration()) {
            next();
            node->kind = TypeKind::Class;
            node->name = expect_ident();
            skip_type_parameters();
            expect_op("(");
            if (!peek().op(")")) {
                do {
                    node->record_components.push_back(parse_formal_parameter());
                } while (accept_op(","));
            }
            expect_op(")");
            if (accept_kw("implements")) node->interfaces = parse_type_list();
            parse_class_body(*node);
        } else {
            fail("expected a type declaration");
        }
        return node;
    }

    void parse_class_body(ClassNode& node) {
        expect_op("{");
        while (!peek().op("}")) {
            if (peek().kind == TokenKind::End) fail("unterminated class body");
            parse_member(node);
        }
        node.end_line = peek().line;
        next();
    }

    void parse_enum_body(ClassNode& node) {
        expect_op("{");
        while (!peek().op(";") && !peek().op("}")) {
            skip_annotations();
            EnumConstant c;
            c.line = peek().line;
            c.name = expect_ident();
            if (peek().op("(")) c.args = parse_arguments();
            if (peek().op("{")) {
                c.body = std::make_unique<ClassNode>();
                c.body->begin_line = peek().line;
                parse_class_body(*c.body);
            }
            node.constants.push_back(std::move(c));
            if (!accept_op(",")) break;
        }
        if (accept_op(";")) {
            while (!peek().op("}")) {
                if (peek().kind == TokenKind::End) fail("unterminated enum body");
                parse_member(node);
            }
        }
        node.end_line = peek().line;
        expect_op("}");
    }

    void parse_member(ClassNode& node) {
        if (accept_op(";")) return;
        if (peek().op("{") || (peek().kw("static") && peek(1).op("{"))) {
            accept_kw("static");
            node.initializers.push_back(parse_block());
            return;
        }
        const int begin = peek().line;
        skip_modifiers();
        if (at_type_declaration()) {
            node.member_types.push_back(parse_type_declaration(begin));
            return;
        }
        skip_type_parameters();
        if (!node.name.empty() && peek().ident(node.name) && peek(1).op("(")) {
            MethodNode m;
            m.line = peek().line;
            m.name = std::string(next().text);
            m.constructor = true;
            parse_method_rest(m);
            node.methods.push_back(std::move(m));
            return;
        }
        if (!node.name.empty() && !node.record_components.empty() && peek().ident(node.name) && peek(1).op("{")) {
            MethodNode m;
            m.line = peek().line;
            m.name = std::string(next().text);
            m.constructor = true;
            for (const Param& p : node.record_components) m.params.push_back(p);
            m.body = parse_block();
            node.methods.push_back(std::move(m));
            return;
        }
        const int line = peek().line;
        TypeRef type = parse_result_type();
        std::string name = expect_ident();
        if (peek().op("(")) {
            MethodNode m;
            m.line = line;
            m.name = std::move(name);
            m.return_type = std::move(type);
            parse_method_rest(m);
            node.methods.push_back(std::move(m));
            return;
        }
        FieldNode f;
        f.line = line;
        f.type = std::move(type);
        f.declarators = parse_declarators_after_name(std::move(name), line);
        expect_op(";");
        node.fields.push_back(std::move(f));
    }

    void parse_method_rest(MethodNode& m) {
        expect_op("(");
        if (!peek().op(")")) {
            do {
                // Receiver parameter: `Type this` or `Type Outer.this`.
                const std::size_t saved = pos_;
                skip_modifiers();
                TypeRef t;
                if (try_type(t) && (peek().kw("this") || (peek().ident() && peek(1).op(".") && peek(2).kw("this")))) {
                    while (!peek().kw("this")) next();
                    next();
                    continue;
                }
                pos_ = saved;
                m.params.push_back(parse_formal_parameter());
            } while (accept_op(","));
        }
        expect_op(")");
        while (peek().op("[") || peek().op("@")) {
            skip_annotations();
            expect_op("[");
            expect_op("]");
            ++m.return_type.dims;
        }
        if (accept_kw("throws")) parse_type_list();
        if (peek().op("{")) {
            m.body = parse_block();
        } else if (accept_kw("default")) {
            parse_element_value();
            expect_op(";");
        } else {
            expect_op(";");
        }
    }

    void parse_element_value() {
        if (at_annotation()) {
            skip_annotation();
        } else if (peek().op("{")) {
            skip_balanced("{", "}");
        } else {
            parse_ternary();
        }
    }

    Param parse_formal_parameter() {
        skip_modifiers();
        Param p;
        p.line = peek().line;
        p.type = parse_type();
        skip_annotations();
        if (accept_op("...")) {
            p.varargs = true;
            ++p.type.dims;
        }
        p.name = expect_ident();
        while (peek().op("[") && peek(1).op("]")) {
            next();
            next();
            ++p.type.dims;
        }
        return p;
    }

    std::vector<Declarator> parse_declarators_after_name(std::string first, int line) {
        std::vector<Declarator> out;
        Declarator d;
        d.name = std::move(first);
        d.line = line;
        parse_declarator_rest(d);
        out.push_back(std::move(d));
        while (accept_op(",")) {
            Declarator more;
            more.line = peek().line;
            more.name = expect_ident();
            parse_declarator_rest(more);
            out.push_back(std::move(more));
        }
        return out;
    }

    void parse_declarator_rest(Declarator& d) {
        while (peek().op("[") && peek(1).op("]")) {
            next();
            next();
            ++d.extra_dims;
        }
        if (accept_op("=")) d.init = parse_variable_initializer();
    }

    ExprPtr parse_variable_initializer() {
        if (peek().op("{")) return parse_array_initializer();
        return parse_expression();
    }

    ExprPtr parse_array_initializer() {
        auto e = make(ExprKind::ArrayInit);
        expect_op("{");
        while (!peek().op("}")) {
            e->args.push_back(parse_variable_initializer());
            if (!accept_op(",")) break;
        }
        expect_op("}");
        return e;
    }

    // ---- statements --------------------------------------------------------

    StmtPtr make_stmt(StmtKind kind) {
        auto s = std::make_unique<Stmt>();
        s->kind = kind;
        s->line = peek().line;
        return s;
    }

    StmtPtr parse_block() {
        auto s = make_stmt(StmtKind::Block);
        expect_op("{");
        while (!peek().op("}")) {
            if (peek().kind == TokenKind::End) fail("unterminated block");
            s->body.push_back(parse_block_statement());
        }
        next();
        return s;
    }

    // Local class declarations may be preceded by modifiers.
    bool at_local_class() {
        const std::size_t saved = pos_;
        skip_modifiers();
        const bool result = peek().kw("class") || peek().kw("interface") || peek().kw("enum") || at_record_declaration();
        pos_ = saved;
        return result;
    }

    // `Type name` followed by a declarator terminator.
    bool at_local_variable_declaration() {
        const std::size_t saved = pos_;
        bool result = false;
        TypeRef t;
        if (try_type(t) && peek().ident()) {
            const Token& after = peek(1);
            result = after.op("=") || after.op(";") || after.op(",") || after.op("[") || after.op(":");
        }
        pos_ = saved;
        return result;
    }

    bool at_modified_local_variable_declaration() {
        const std::size_t saved = pos_;
        skip_modifiers();
        const bool result = at_local_variable_declaration();
        pos_ = saved;
        return result;
    }

    bool at_yield_statement() const {
        if (!peek().ident("yield")) return false;
        const Token& n = peek(1);
        if (n.ident() || n.kind == TokenKind::Number || n.kind == TokenKind::String || n.kind == TokenKind::Char) {
            return true;
        }
        if (n.kind == TokenKind::Keyword) return true;
        return n.op("(") || n.op("-") || n.op("+") || n.op("!") || n.op("~");
    }

    StmtPtr parse_block_statement() {
        if (at_local_class()) {
            auto s = make_stmt(StmtKind::LocalClass);
            const int begin = peek().line;
            skip_modifiers();
            s->local_class = parse_type_declaration(begin);
            return s;
        }
        if (at_yield_statement()) return parse_statement();
        const std::size_t saved = pos_;
        if (at_modified_local_variable_declaration()) {
            auto s = parse_local_variable_declaration();
            expect_op(";");
            return s;
        }
        pos_ = saved;
        return parse_statement();
    }

    // Parses `[modifiers] Type declarators` without the trailing semicolon.
    StmtPtr parse_local_variable_declaration() {
        skip_modifiers();
        auto s = make_stmt(StmtKind::LocalVar);
        s->var_type = parse_type();
        const int line = peek().line;
        std::string name = expect_ident();
        s->vars = parse_declarators_after_name(std::move(name), line);
        return s;
    }

    StmtPtr parse_statement() {
        const Token& t = peek();
        if (t.op("{")) return parse_block();
        if (t.op(";")) {
            auto s = make_stmt(StmtKind::Empty);
            next();
            return s;
        }
        if (t.kind == TokenKind::Keyword) {
            if (t.text == "if") return parse_if();
            if (t.text == "while") {
                auto s = make_stmt(StmtKind::While);
                next();
                s->exprs.push_back(parse_par_expression());
                s->body.push_back(parse_statement());
                return s;
            }
            if (t.text == "do") {
                auto s = make_stmt(StmtKind::DoWhile);
                next();
                s->body.push_back(parse_statement());
                if (!accept_kw("while")) fail("expected 'while'");
                s->exprs.push_back(parse_par_expression());
                expect_op(";");
                return s;
            }
            if (t.text == "for") return parse_for();
            if (t.text == "try") return parse_try();
            if (t.text == "switch") return parse_switch_statement();
            if (t.text == "return" || t.text == "throw") {
                auto s = make_stmt(t.text == "return" ? StmtKind::Return : StmtKind::Throw);
                next();
                if (!peek().op(";")) s->exprs.push_back(parse_expression());
                expect_op(";");
                return s;
            }
            if (t.text == "break" || t.text == "continue") {
                auto s = make_stmt(t.text == "break" ? StmtKind::Break : StmtKind::Continue);
                next();
                if (peek().ident()) next();
                expect_op(";");
                return s;
            }
            if (t.text == "synchronized") {
                auto s = make_stmt(StmtKind::Synchronized);
                next();
                s->exprs.push_back(parse_par_expression());
                s->body.push_back(parse_block());
                return s;
            }
            if (t.text == "assert") {
                auto s = make_stmt(StmtKind::Assert);
                next();
                s->exprs.push_back(parse_expression());
                if (accept_op(":")) s->exprs.push_back(parse_expression());
                expect_op(";");
                return s;
            }
        }
        if (at_yield_statement()) {
            auto s = make_stmt(StmtKind::Yield);
            next();
            s->exprs.push_back(parse_expression());
            expect_op(";");
            return s;
        }
        if (t.ident() && peek(1).op(":")) {
            auto s = make_stmt(StmtKind::Labeled);
            next();
            next();
            s->body.push_back(parse_statement());
            return s;
        }
        auto s = make_stmt(StmtKind::Expression);
        s->exprs.push_back(parse_expression());
        expect_op(";");
        return s;
    }

    StmtPtr parse_if() {
        auto s = make_stmt(StmtKind::If);
        next();
        s->exprs.push_back(parse_par_expression());
        s->body.push_back(parse_statement());
        if (accept_kw("else")) s->body.push_back(parse_statement());
        return s;
    }

    ExprPtr parse_par_expression() {
        expect_op("(");
        auto e = parse_expression();
        expect_op(")");
        return e;
    }

    StmtPtr parse_for() {
        const int line = peek().line;
        next();
        expect_op("(");
        // Enhanced for: [modifiers] Type name :
        {
            const std::size_t saved = pos_;
            skip_modifiers();
            TypeRef t;
            if (try_type(t) && peek().ident() && peek(1).op(":")) {
                auto s = make_stmt(StmtKind::ForEach);
                s->line = line;
                s->var_type = std::move(t);
                Declarator d;
                d.line = peek().line;
                d.name = std::string(next().text);
                s->vars.push_back(std::move(d));
                expect_op(":");
                s->exprs.push_back(parse_expression());
                expect_op(")");
                s->body.push_back(parse_statement());
                return s;
            }
            pos_ = saved;
        }
        auto s = make_stmt(StmtKind::For);
        s->line = line;
        if (!peek().op(";")) {
            const std::size_t saved = pos_;
            if (at_modified_local_variable_declaration()) {
                pos_ = saved;
                s->init.push_back(parse_local_variable_declaration());
            } else {
                pos_ = saved;
                do {
                    auto es = make_stmt(StmtKind::Expression);
                    es->exprs.push_back(parse_expression());
                    s->init.push_back(std::move(es));
                } while (accept_op(","));
            }
        }
        expect_op(";");
        if (!peek().op(";")) s->exprs.push_back(parse_expression());
        expect_op(";");
        if (!peek().op(")")) {
            do {
                s->updates.push_back(parse_expression());
            } while (accept_op(","));
        }
        expect_op(")");
        s->body.push_back(parse_statement());
        return s;
    }

    StmtPtr parse_try() {
        auto s = make_stmt(StmtKind::Try);
        next();
        if (accept_op("(")) {
            while (!peek().op(")")) {
                const std::size_t saved = pos_;
                if (at_modified_local_variable_declaration()) {
                    pos_ = saved;
                    s->resources.push_back(parse_local_variable_declaration());
                } else {
                    pos_ = saved;
                    auto es = make_stmt(StmtKind::Expression);
                    es->exprs.push_back(parse_expression());
                    s->resources.push_back(std::move(es));
                }
                if (!accept_op(";")) break;
            }
            expect_op(")");
        }
        s->body.push_back(parse_block());
        while (accept_kw("catch")) {
            expect_op("(");
            skip_modifiers();
            CatchClause c;
            c.param.line = peek().line;
            c.param.type = parse_type();
            while (accept_op("|")) parse_type();
            c.param.name = expect_ident();
            expect_op(")");
            c.block = parse_block();
            s->catches.push_back(std::move(c));
        }
        if (accept_kw("finally")) s->finally_block = parse_block();
        if (s->catches.empty() && !s->finally_block && s->resources.empty()) fail("'try' without 'catch' or 'finally'");
        return s;
    }

    StmtPtr parse_switch_statement() {
        auto s = make_stmt(StmtKind::Switch);
        next();
        s->exprs.push_back(parse_par_expression());
        s->cases = parse_switch_body();
        return s;
    }

    std::vector<SwitchCase> parse_switch_body() {
        std::vector<SwitchCase> cases;
        expect_op("{");
        while (!peek().op("}")) {
            SwitchCase c;
            if (accept_kw("default")) {
                // default
            } else if (accept_kw("case")) {
                parse_case_labels(c);
            } else {
                fail("expected 'case' or 'default'");
            }
            if (accept_op("->")) {
                c.arrow = true;
                if (peek().op("{")) {
                    c.body.push_back(parse_block());
                } else if (peek().kw("throw")) {
                    c.body.push_back(parse_statement());
                } else {
                    auto es = make_stmt(StmtKind::Expression);
                    es->exprs.push_back(parse_expression());
                    expect_op(";");
                    c.body.push_back(std::move(es));
                }
            } else {
                expect_op(":");
                while (!peek().kw("case") && !peek().kw("default") && !peek().op("}")) {
                    if (peek().kind == TokenKind::End) fail("unterminated switch");
                    c.body.push_back(parse_block_statement());
                }
                // `default` may also start `default ->`/`default:` only.
            }
            cases.push_back(std::move(c));
        }
        next();
        return cases;
    }

    void parse_case_labels(SwitchCase& c) {
        do {
            if (peek().kw("default")) {
                next();
                continue;
            }
            Pattern p;
            if (try_pattern(p)) {
                c.patterns.push_back(std::move(p));
            } else {
                const bool saved = in_case_label_;
                in_case_label_ = true;
                c.labels.push_back(parse_ternary());
                in_case_label_ = saved;
            }
        } while (accept_op(","));
        if (peek().ident("when")) {
            next();
            c.guard = parse_expression();
        }
    }

    // `Type binding` or `Type(components...) [binding]`.
    bool try_pattern(Pattern& out) {
        const std::size_t saved = pos_;
        skip_modifiers();
        Pattern p;
        p.line = peek().line;
        if (!try_type(p.type)) {
            pos_ = saved;
            return false;
        }
        if (peek().op("(")) {
            next();
            while (!peek().op(")")) {
                Pattern sub;
                if (!try_pattern(sub)) {
                    pos_ = saved;
                    return false;
                }
                p.components.push_back(std::move(sub));
                if (!accept_op(",")) break;
            }
            if (!accept_op(")")) {
                pos_ = saved;
                return false;
            }
            if (peek().ident() && !peek().ident("when")) p.binding = std::string(next().text);
            out = std::move(p);
            return true;
        }
        if (peek().ident() && !peek().ident("when")) {
            p.binding = std::string(next().text);
            out = std::move(p);
            return true;
        }
        pos_ = saved;
        return false;
    }

    // ---- expressions ---------------------------------------------------------

    ExprPtr make(ExprKind kind) {
        auto e = std::make_unique<Expr>();
        e->kind = kind;
        e->line = peek().line;
        return e;
    }

    ExprPtr parse_expression() {
        auto lhs = parse_ternary();
        std::string op;
        std::size_t width = 0;
        if (assignment_operator(op, width)) {
            for (std::size_t i = 0; i < width; ++i) next();
            auto e = std::make_unique<Expr>();
            e->kind = ExprKind::Assign;
            e->line = lhs->line;
            e->name = op;
            e->target = std::move(lhs);
            e->args.push_back(parse_expression_or_initializer());
            return e;
        }
        return lhs;
    }

    ExprPtr parse_expression_or_initializer() {
        if (peek().op("{")) return parse_array_initializer();
        return parse_expression();
    }

    bool assignment_operator(std::string& op, std::size_t& width) const {
        const Token& t = peek();
        if (t.kind != TokenKind::Operator) return false;
        static constexpr std::array<std::string_view, 10> kSimple = {"=",  "+=", "-=", "*=", "/=",
                                                                     "%=", "&=", "|=", "^=", "<<="};
        if (std::find(kSimple.begin(), kSimple.end(), t.text) != kSimple.end()) {
            op = std::string(t.text);
            width = 1;
            return true;
        }
        if (t.text == ">" && adjacent(0)) {
            if (peek(1).op(">=")) {
                op = ">>=";
                width = 2;
                return true;
            }
            if (peek(1).op(">") && adjacent(1) && peek(2).op(">=")) {
                op = ">>>=";
                width = 3;
                return true;
            }
        }
        return false;
    }

    ExprPtr parse_ternary() {
        auto cond = parse_binary(0);
        if (!peek().op("?")) return cond;
        next();
        auto e = std::make_unique<Expr>();
        e->kind = ExprKind::Conditional;
        e->line = cond->line;
        e->args.push_back(std::move(cond));
        e->args.push_back(parse_ternary_branch());
        expect_op(":");
        e->args.push_back(parse_ternary_branch());
        return e;
    }

    ExprPtr parse_ternary_branch() {
        if (at_lambda()) return parse_lambda();
        return parse_ternary();
    }

    static int precedence(std::string_view op) {
        if (op == "||") return 1;
        if (op == "&&") return 2;
        if (op == "|") return 3;
        if (op == "^") return 4;
        if (op == "&") return 5;
        if (op == "==" || op == "!=") return 6;
        if (op == "<" || op == ">" || op == "<=" || op == ">=" || op == "instanceof") return 7;
        if (op == "<<" || op == ">>" || op == ">>>") return 8;
        if (op == "+" || op == "-") return 9;
        if (op == "*" || op == "/" || op == "%") return 10;
        return 0;
    }

    // Reads a binary operator at the cursor without consuming it.
    bool binary_operator(std::string& op, std::size_t& width) const {
        const Token& t = peek();
        if (t.kw("instanceof")) {
            op = "instanceof";
            width = 1;
            return true;
        }
        if (t.kind != TokenKind::Operator) return false;
        if (t.text == ">") {
            if (adjacent(0) && peek(1).op(">")) {
                if (adjacent(1) && peek(2).op(">")) {
                    op = ">>>";
                    width = 3;
                    return true;
                }
                if (adjacent(1) && peek(2).op(">=")) return false;  // >>>=
                op = ">>";
                width = 2;
                return true;
            }
            if (adjacent(0) && peek(1).op(">=")) return false;  // >>=
            op = ">";
            width = 1;
            return true;
        }
        if (precedence(t.text) > 0) {
            op = std::string(t.text);
            width = 1;
            return true;
        }
        return false;
    }

    ExprPtr parse_binary(int min_prec) {
        auto lhs = parse_unary();
        while (true) {
            std::string op;
            std::size_t width = 0;
            if (!binary_operator(op, width)) break;
            const int prec = precedence(op);
            if (prec <= min_prec) break;
            for (std::size_t i = 0; i < width; ++i) next();
            if (op == "instanceof") {
                auto e = std::make_unique<Expr>();
                e->kind = ExprKind::InstanceOf;
                e->line = lhs->line;
                e->target = std::move(lhs);
                Pattern p;
                if (try_pattern(p)) {
                    e->type = p.type;
                    e->pattern = std::move(p);
                } else {
                    accept_kw("final");
                    e->type = parse_type();
                }
                lhs = std::move(e);
                continue;
            }
            auto rhs = parse_binary(prec);
            auto e = std::make_unique<Expr>();
            e->kind = ExprKind::Binary;
            e->line = lhs->line;
            e->name = op;
            e->args.push_back(std::move(lhs));
            e->args.push_back(std::move(rhs));
            lhs = std::move(e);
        }
        return lhs;
    }

    bool cast_follower(const Token& t) const {
        switch (t.kind) {
        case TokenKind::Identifier:
        case TokenKind::Number:
        case TokenKind::Char:
        case TokenKind::String:
            return true;
        case TokenKind::Keyword:
            return t.text == "this" || t.text == "super" || t.text == "new" || t.text == "switch" ||
                   is_primitive(t) || t.text == "void";
        case TokenKind::Operator:
            return t.text == "(" || t.text == "!" || t.text == "~";
        default:
            return false;
        }
    }

    ExprPtr parse_unary() {
        const Token& t = peek();
        if (t.op("+") || t.op("-") || t.op("++") || t.op("--") || t.op("!") || t.op("~")) {
            auto e = make(ExprKind::Unary);
            e->name = std::string(next().text);
            e->target = parse_unary();
            return e;
        }
        if (t.op("(") && !at_lambda()) {
            const std::size_t saved = pos_;
            next();
            TypeRef type;
            if (try_type(type)) {
                while (peek().op("&")) {
                    next();
                    TypeRef extra;
                    if (!try_type(extra)) break;
                }
                if (peek().op(")")) {
                    const bool primitive_cast = type.primitive && type.dims == 0;
                    if (primitive_cast || cast_follower(peek(1)) || at_lambda(1)) {
                        auto e = make(ExprKind::Cast);
                        next();
                        e->type = std::move(type);
                        e->target = at_lambda() ? parse_lambda() : parse_unary();
                        return e;
                    }
                }
            }
            pos_ = saved;
        }
        return parse_postfix();
    }

    // Lambda starting k tokens ahead of the cursor.
    bool at_lambda(std::size_t k = 0) const {
        if (peek(k).ident() && peek(k + 1).op("->")) return !in_case_label_;
        if (!peek(k).op("(")) return false;
        int depth = 0;
        for (std::size_t i = k;; ++i) {
            const Token& t = peek(i);
            if (t.kind == TokenKind::End) return false;
            if (t.op("(")) ++depth;
            if (t.op(")") && --depth == 0) return peek(i + 1).op("->");
        }
    }

    ExprPtr parse_lambda() {
        auto e = make(ExprKind::Lambda);
        if (peek().ident()) {
            Param p;
            p.line = peek().line;
            p.name = std::string(next().text);
            e->params.push_back(std::move(p));
        } else {
            expect_op("(");
            if (!peek().op(")")) {
                if (peek().ident() && (peek(1).op(",") || peek(1).op(")"))) {
                    do {
                        Param p;
                        p.line = peek().line;
                        p.name = expect_ident();
                        e->params.push_back(std::move(p));
                    } while (accept_op(","));
                } else {
                    do {
                        e->params.push_back(parse_formal_parameter());
                    } while (accept_op(","));
                }
            }
            expect_op(")");
        }
        expect_op("->");
        if (peek().op("{")) {
            e->block = parse_block();
        } else {
            e->args.push_back(parse_expression());
        }
        return e;
    }

    std::vector<ExprPtr> parse_arguments() {
        std::vector<ExprPtr> args;
        expect_op("(");
        if (!peek().op(")")) {
            do {
                args.push_back(at_lambda() ? parse_lambda() : parse_expression());
            } while (accept_op(","));
        }
        expect_op(")");
        return args;
    }

    ExprPtr parse_postfix() {
        auto e = parse_primary();
        while (true) {
            if (peek().op(".")) {
                next();
                e = parse_dot_selector(std::move(e));
            } else if (peek().op("[")) {
                if (peek(1).op("]")) {
                    TypeRef type{dotted_name(*e), 0, false};
                    while (peek().op("[") && peek(1).op("]")) {
                        next();
                        next();
                        ++type.dims;
                    }
                    e = parse_type_suffix(std::move(type), e->line);
                } else {
                    auto idx = make(ExprKind::Index);
                    idx->line = e->line;
                    next();
                    idx->target = std::move(e);
                    idx->args.push_back(parse_expression());
                    expect_op("]");
                    e = std::move(idx);
                }
            } else if (peek().op("::")) {
                next();
                auto ref = make(ExprKind::MethodRef);
                ref->line = e->line;
                if (peek().op("<")) try_type_arguments();
                ref->name = peek().kw("new") ? std::string(next().text) : expect_ident();
                ref->target = std::move(e);
                e = std::move(ref);
            } else if (peek().op("++") || peek().op("--")) {
                auto u = make(ExprKind::Unary);
                u->line = e->line;
                u->name = std::string(next().text);
                u->postfix = true;
                u->target = std::move(e);
                e = std::move(u);
            } else {
                return e;
            }
        }
    }

    // After `Type[]...`: only `.class` and `::` may follow.
    ExprPtr parse_type_suffix(TypeRef type, int line) {
        if (accept_op("::")) {
            auto ref = make(ExprKind::MethodRef);
            ref->line = line;
            ref->type = std::move(type);
            ref->name = peek().kw("new") ? std::string(next().text) : expect_ident();
            return ref;
        }
        expect_op(".");
        if (!accept_kw("class")) fail("expected 'class'");
        auto lit = make(ExprKind::ClassLit);
        lit->line = line;
        lit->type = std::move(type);
        return lit;
    }

    static std::string dotted_name(const Expr& e) {
        if (e.kind == ExprKind::Name) return e.name;
        if (e.kind == ExprKind::FieldAccess && e.target) {
            std::string prefix = dotted_name(*e.target);
            return prefix.empty() ? std::string() : prefix + "." + e.name;
        }
        return {};
    }

    ExprPtr parse_dot_selector(ExprPtr target) {
        const int line = target->line;
        if (peek().op("<")) {
            if (!try_type_arguments()) fail("malformed type arguments");
        }
        if (peek().ident()) {
            std::string name(next().text);
            if (peek().op("(")) {
                auto call = make(ExprKind::Call);
                call->line = line;
                call->name = std::move(name);
                call->target = std::move(target);
                call->args = parse_arguments();
                return call;
            }
            auto fa = make(ExprKind::FieldAccess);
            fa->line = line;
            fa->name = std::move(name);
            fa->target = std::move(target);
            return fa;
        }
        if (accept_kw("this")) {
            auto e = make(ExprKind::This);
            e->line = line;
            e->qualifier = dotted_name(*target);
            return e;
        }
        if (accept_kw("super")) {
            if (peek().op("(")) {
                auto e = make(ExprKind::CtorCall);
                e->line = line;
                e->name = "super";
                e->target = std::move(target);
                e->args = parse_arguments();
                return e;
            }
            auto e = make(ExprKind::Super);
            e->line = line;
            e->qualifier = dotted_name(*target);
            return e;
        }
        if (accept_kw("new")) {
            auto e = parse_creator();
            e->target = std::move(target);
            return e;
        }
        if (accept_kw("class")) {
            auto e = make(ExprKind::ClassLit);
            e->line = line;
            e->type = TypeRef{dotted_name(*target), 0, false};
            return e;
        }
        fail("unexpected token after '.'");
    }

    ExprPtr parse_primary() {
        const Token& t = peek();
        switch (t.kind) {
        case TokenKind::Number:
        case TokenKind::Char:
        case TokenKind::String: {
            auto e = make(ExprKind::Literal);
            e->name = std::string(next().text);
            return e;
        }
        case TokenKind::Identifier: {
            if (is_literal_word(t.text)) {
                auto e = make(ExprKind::Literal);
                e->name = std::string(next().text);
                return e;
            }
            if (at_lambda()) return parse_lambda();
            std::string name(t.text);
            auto line = t.line;
            next();
            if (peek().op("(")) {
                auto call = make(ExprKind::Call);
                call->line = line;
                call->name = std::move(name);
                call->args = parse_arguments();
                return call;
            }
            // Generic type in a method reference: `List<String>::new`.
            if (peek().op("<")) {
                const std::size_t saved = pos_;
                if (try_type_arguments()) {
                    TypeRef type{name, 0, false};
                    while (peek().op(".") && peek(1).ident()) {
                        next();
                        type.name += ".";
                        type.name += next().text;
                        if (peek().op("<")) try_type_arguments();
                    }
                    while (peek().op("[") && peek(1).op("]")) {
                        next();
                        next();
                        ++type.dims;
                    }
                    if (peek().op("::")) return parse_type_suffix(std::move(type), line);
                }
                pos_ = saved;
            }
            auto e = make(ExprKind::Name);
            e->line = line;
            e->name = std::move(name);
            return e;
        }
        case TokenKind::Keyword: {
            if (t.text == "this") {
                auto e = make(ExprKind::This);
                next();
                if (peek().op("(")) {
                    e->kind = ExprKind::CtorCall;
                    e->name = "this";
                    e->args = parse_arguments();
                }
                return e;
            }
            if (t.text == "super") {
                auto e = make(ExprKind::Super);
                next();
                if (peek().op("(")) {
                    e->kind = ExprKind::CtorCall;
                    e->name = "super";
                    e->args = parse_arguments();
                }
                return e;
            }
            if (t.text == "new") {
                next();
                return parse_creator();
            }
            if (t.text == "switch") {
                auto e = make(ExprKind::Switch);
                next();
                e->target = parse_par_expression();
                e->cases = parse_switch_body();
                return e;
            }
            if (is_primitive(t) || t.text == "void") {
                const int line = t.line;
                TypeRef type = parse_result_type();
                while (peek().op("[") && peek(1).op("]")) {
                    next();
                    next();
                    ++type.dims;
                }
                return parse_type_suffix(std::move(type), line);
            }
            break;
        }
        case TokenKind::Operator: {
            if (t.op("(")) {
                if (at_lambda()) return parse_lambda();
                next();
                auto inner = parse_expression();
                expect_op(")");
                return inner;
            }
            if (t.op("@")) {
                // Type annotation before a method reference or class literal.
                skip_annotations();
                return parse_primary();
            }
            break;
        }
        default:
            break;
        }
        fail("expected expression");
    }

    // After `new`.
    ExprPtr parse_creator() {
        auto e = make(ExprKind::New);
        if (peek().op("<")) try_type_arguments();
        skip_annotations();
        TypeRef type;
        if (!try_type(type)) fail("expected type after 'new'");
        if (peek().op("[") || type.dims > 0) {
            e->kind = ExprKind::NewArray;
            while (peek().op("[")) {
                next();
                if (accept_op("]")) {
                    ++type.dims;
                    continue;
                }
                e->args.push_back(parse_expression());
                expect_op("]");
                ++type.dims;
            }
            e->type = std::move(type);
            if (peek().op("{")) e->args.push_back(parse_array_initializer());
            return e;
        }
        e->type = std::move(type);
        e->args = parse_arguments();
        if (peek().op("{")) {
            e->body = std::make_unique<ClassNode>();
            e->body->begin_line = peek().line;
            parse_class_body(*e->body);
        }
        return e;
    }

    bool is_module_declaration() {
        const std::size_t saved = pos_;
        skip_annotations();
        bool result = peek().ident("module") || (peek().ident("open") && peek(1).ident("module"));
        pos_ = saved;
        return result && (peek(1).ident() || peek(2).ident());
    }

    const std::vector<Token>& toks_;
    const std::string& path_;
    std::size_t pos_ = 0;
    bool in_case_label_ = false;
};

} // namespace

CompilationUnitSyntax parse(const LexedSource& lexed, const std::string& path) {
    return Parser(lexed, path).parse_unit();
}

} // namespace reusemine::java
