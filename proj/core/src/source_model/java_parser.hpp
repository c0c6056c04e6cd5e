#pragma once

#include <string>

#include "java_lexer.hpp"
#include "java_syntax.hpp"

namespace reusemine::java {

// Builds the syntax tree for one compilation unit. Throws ParseError.
CompilationUnitSyntax parse(const LexedSource& lexed, const std::string& path);

} // namespace reusemine::java
