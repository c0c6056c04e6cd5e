#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace reusemine {

enum class TypeKind { Class, Interface, Enum };

std::string_view to_string(TypeKind kind);

// How the receiver of a method call was written.
enum class ReceiverKind {
    Implicit,   // bar()
    This,       // this.bar(), Outer.this.bar()
    Super,      // super.bar(), Outer.super.bar()
    Variable,   // v.bar() where v resolves to a field, local or parameter
    Name,       // Foo.bar() / pkg.Foo.bar() / unresolved simple name
    Expression  // anything else: a().bar(), (x).bar(), new A().bar()
};

struct CallSite {
    std::string name;
    std::size_t arity = 0;
    ReceiverKind receiver = ReceiverKind::Implicit;
    // Variable: the variable name. Name: the dotted name as written.
    std::string receiver_name;
    // Variable: the declared (erased) type of the variable.
    std::string receiver_type;
    int line = 0;

    std::string signature() const { return name + "/" + std::to_string(arity); }
    bool operator==(const CallSite&) const = default;
};

enum class UseKind { CallReceiver, FieldAccess, AssignmentTarget, Argument, ReturnValue, Other };

std::string_view to_string(UseKind kind);

struct UseSite {
    UseKind kind = UseKind::Other;
    int line = 0;
    // AssignmentTarget only: plain `=` (not `+=`, `++`, ...).
    bool simple_assignment = false;
    // Occurs in a constructor or initializer of the type that declares the
    // variable.
    bool in_initialization = false;

    bool operator==(const UseSite&) const = default;
};

enum class VarScope { Field, Local };

struct VarDecl {
    std::string name;
    // Erased type name as written ("List", "java.util.Map.Entry"); array
    // types carry one "[]" per dimension. "var" for inferred locals.
    std::string declared_type_name;
    VarScope scope = VarScope::Field;
    bool has_initializer = false;
    std::vector<UseSite> uses;
    int line = 0;

    bool operator==(const VarDecl&) const = default;
};

enum class MethodKind { Method, Constructor };

struct MethodDecl {
    std::string name;
    std::size_t arity = 0;
    MethodKind kind = MethodKind::Method;
    std::string return_type_name;  // empty for constructors
    std::vector<std::string> parameter_type_names;
    std::vector<CallSite> invocations;
    std::vector<std::string> accessed_fields;  // own fields; sorted, unique
    std::vector<VarDecl> locals;
    // Branch points in the body (if, loops, non-default cases, catch, ?:,
    // && and ||); feeds the cyclomatic WMC variant.
    std::size_t decision_points = 0;
    bool has_body = false;
    int line = 0;

    std::string signature() const { return name + "/" + std::to_string(arity); }
    bool operator==(const MethodDecl&) const = default;
};

struct TypeDecl {
    std::string qualified_name;
    // Name usable in source: "Inner" for member and local classes, the
    // synthesized "Outer$1" for anonymous ones.
    std::string simple_name;
    TypeKind kind = TypeKind::Class;
    std::optional<std::string> superclass_name;
    std::vector<std::string> interface_names;
    std::vector<VarDecl> fields;
    std::vector<MethodDecl> methods;
    // Locals declared in field initializers and initializer blocks.
    std::vector<VarDecl> initializer_locals;
    std::size_t loc_physical = 0;
    std::string enclosing_type;  // qualified name; empty for top-level types
    std::vector<std::string> member_types;  // simple names of member types
    bool anonymous = false;
    bool local = false;
    int begin_line = 0;
    int end_line = 0;

    bool operator==(const TypeDecl&) const = default;
};

struct CompilationUnitModel {
    std::string path;
    std::string package_name;
    std::vector<std::string> imports;           // single-type imports
    std::vector<std::string> wildcard_imports;  // `import a.b.*;` -> "a.b"
    std::vector<TypeDecl> types;                // all types, nested included, outer before inner

    bool operator==(const CompilationUnitModel&) const = default;
};

// Parses one Java compilation unit. Generics are erased to their raw base
// names and annotations are dropped. Throws ParseError on syntax failure; a
// unit without type declarations yields an empty `types` list.
CompilationUnitModel parse_compilation_unit(std::string_view source_text, const std::string& path);

// Counts lines carrying at least one token, ignoring blank and comment-only
// lines.
std::size_t count_code_lines(std::string_view source_text);

} // namespace reusemine
