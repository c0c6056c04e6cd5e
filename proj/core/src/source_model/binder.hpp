#pragma once

#include <string>

#include "java_lexer.hpp"
#include "java_syntax.hpp"
#include "reusemine/source_model.hpp"

namespace reusemine::java {

// Resolves local names against lexical scopes and flattens the syntax tree
// into the per-type model used by the metrics.
CompilationUnitModel bind(const CompilationUnitSyntax& unit, const LexedSource& lexed, const std::string& path);

} // namespace reusemine::java
