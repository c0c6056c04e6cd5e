#pragma once

// Concrete syntax for the subset of Java the binder needs. Nodes carry only
// what the metric computations consume; everything else is parsed and
// dropped.

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "reusemine/source_model.hpp"

namespace reusemine::java {

struct TypeRef {
    std::string name;  // erased, dotted; "int" for primitives
    int dims = 0;
    bool primitive = false;

    bool empty() const { return name.empty(); }
    std::string erased() const {
        std::string s = name;
        for (int i = 0; i < dims; ++i) s += "[]";
        return s;
    }
};

struct Expr;
struct Stmt;
struct ClassNode;
using ExprPtr = std::unique_ptr<Expr>;
using StmtPtr = std::unique_ptr<Stmt>;
using ClassPtr = std::unique_ptr<ClassNode>;

struct Param {
    TypeRef type;  // empty for untyped lambda parameters
    std::string name;
    bool varargs = false;
    int line = 0;
};

struct Pattern {
    TypeRef type;
    std::string binding;  // may be empty
    std::vector<Pattern> components;  // record deconstruction
    int line = 0;
};

struct SwitchCase {
    std::vector<ExprPtr> labels;  // constant labels; empty for `default`
    std::vector<Pattern> patterns;
    ExprPtr guard;
    bool arrow = false;
    std::vector<StmtPtr> body;
};

enum class ExprKind {
    Name,         // name
    FieldAccess,  // target.name
    Call,         // [target.]name(args); target may be This/Super
    This,         // [qualifier.]this
    Super,        // [qualifier.]super
    Literal,
    New,          // [target.]new type(args) [body]
    NewArray,     // new type[args]... [init]
    ArrayInit,    // {args}
    Unary,        // name = operator; postfix flag
    Binary,
    Assign,       // name = operator
    Conditional,  // args = cond, then, else
    Cast,
    InstanceOf,
    Lambda,
    MethodRef,    // target::name (target null when a type)
    Index,        // target[args0]
    ClassLit,
    Switch,       // target = selector
    CtorCall      // this(args) / super(args) / outer.super(args)
};

struct Expr {
    ExprKind kind = ExprKind::Literal;
    int line = 0;
    std::string name;       // identifier, member or operator
    std::string qualifier;  // Outer in Outer.this / Outer.super
    bool postfix = false;
    TypeRef type;
    ExprPtr target;
    std::vector<ExprPtr> args;
    ClassPtr body;                   // anonymous class body
    std::vector<Param> params;       // lambda parameters
    StmtPtr block;                   // lambda block body
    std::vector<SwitchCase> cases;   // switch expression
    std::optional<Pattern> pattern;  // instanceof pattern
};

enum class StmtKind {
    Block,
    LocalVar,
    LocalClass,
    Expression,
    If,
    While,
    DoWhile,
    For,
    ForEach,
    Return,
    Throw,
    Break,
    Continue,
    Yield,
    Switch,
    Try,
    Synchronized,
    Labeled,
    Assert,
    Empty
};

struct Declarator {
    std::string name;
    int extra_dims = 0;
    ExprPtr init;
    int line = 0;
};

struct CatchClause {
    Param param;
    StmtPtr block;
};

struct Stmt {
    StmtKind kind = StmtKind::Empty;
    int line = 0;
    // Expression operands in source order: condition, value, selector, ...
    std::vector<ExprPtr> exprs;
    // Nested statements: block contents, then/else, loop body, try block.
    std::vector<StmtPtr> body;
    // LocalVar: declared type and declarators. ForEach: one declarator.
    TypeRef var_type;
    std::vector<Declarator> vars;
    ClassPtr local_class;
    // For: init statements and update expressions.
    std::vector<StmtPtr> init;
    std::vector<ExprPtr> updates;
    // Switch statement cases.
    std::vector<SwitchCase> cases;
    // Try: resources, catch clauses and optional finally block.
    std::vector<StmtPtr> resources;
    std::vector<CatchClause> catches;
    StmtPtr finally_block;
};

struct FieldNode {
    TypeRef type;
    std::vector<Declarator> declarators;
    int line = 0;
};

struct MethodNode {
    std::string name;
    bool constructor = false;
    TypeRef return_type;
    std::vector<Param> params;
    StmtPtr body;  // null for abstract/native/interface methods
    int line = 0;
};

struct EnumConstant {
    std::string name;
    std::vector<ExprPtr> args;
    ClassPtr body;
    int line = 0;
};

struct ClassNode {
    TypeKind kind = TypeKind::Class;
    std::string name;  // empty for anonymous bodies
    std::optional<TypeRef> superclass;
    std::vector<TypeRef> interfaces;
    std::vector<Param> record_components;
    std::vector<FieldNode> fields;
    std::vector<MethodNode> methods;
    std::vector<StmtPtr> initializers;
    std::vector<ClassPtr> member_types;
    std::vector<EnumConstant> constants;
    int begin_line = 0;
    int end_line = 0;
};

struct ImportDecl {
    std::string name;
    bool is_static = false;
    bool wildcard = false;
};

struct CompilationUnitSyntax {
    std::string package_name;
    std::vector<ImportDecl> imports;
    std::vector<ClassPtr> types;
};

} // namespace reusemine::java
