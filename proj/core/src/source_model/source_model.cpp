#include "reusemine/source_model.hpp"

#include <algorithm>

#include "binder.hpp"
#include "java_lexer.hpp"
#include "java_parser.hpp"

namespace reusemine {

std::string_view to_string(TypeKind kind) {
    switch (kind) {
    case TypeKind::Class:
        return "class";
    case TypeKind::Interface:
        return "interface";
    case TypeKind::Enum:
        return "enum";
    }
    return "class";
}

std::string_view to_string(UseKind kind) {
    switch (kind) {
    case UseKind::CallReceiver:
        return "call_receiver";
    case UseKind::FieldAccess:
        return "field_access";
    case UseKind::AssignmentTarget:
        return "assignment_target";
    case UseKind::Argument:
        return "argument";
    case UseKind::ReturnValue:
        return "return_value";
    case UseKind::Other:
        return "other";
    }
    return "other";
}

CompilationUnitModel parse_compilation_unit(std::string_view source_text, const std::string& path) {
    const java::LexedSource lexed = java::lex(source_text, path);
    const java::CompilationUnitSyntax syntax = java::parse(lexed, path);
    return java::bind(syntax, lexed, path);
}

std::size_t count_code_lines(std::string_view source_text) {
    const java::LexedSource lexed = java::lex(source_text, "<memory>");
    return static_cast<std::size_t>(std::count(lexed.code_lines.begin(), lexed.code_lines.end(), true));
}

} // namespace reusemine
