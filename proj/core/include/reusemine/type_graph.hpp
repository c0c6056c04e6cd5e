#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "reusemine/source_model.hpp"

namespace reusemine {

// A supertype reference. `target` is the qualified name when the reference
// resolved inside the snapshot and the name as written otherwise.
struct TypeEdge {
    std::string target;
    bool resolved = false;

    bool operator==(const TypeEdge&) const = default;
};

// Resolved declarations of one snapshot. Immutable once built.
class TypeGraph {
public:
    const std::map<std::string, TypeDecl, std::less<>>& types() const { return types_; }
    const TypeDecl* find(std::string_view qualified_name) const;
    bool contains(std::string_view qualified_name) const { return find(qualified_name) != nullptr; }

    // Extends-edge of a class; absent for interfaces and classes without an
    // extends clause.
    const std::optional<TypeEdge>& super_edge(std::string_view qualified_name) const;
    // Implements-edges of a class, extends-edges of an interface.
    const std::vector<TypeEdge>& impl_edges(std::string_view qualified_name) const;
    // Types whose super edge resolves to this type, sorted.
    const std::vector<std::string>& subclasses(std::string_view qualified_name) const;

    // Resolved ancestors, nearest first.
    std::vector<std::string> superclass_chain(std::string_view qualified_name) const;
    // True when the chain stops at an extends clause naming a type outside
    // the snapshot.
    bool chain_ends_external(std::string_view qualified_name) const;

    // Resolves a raw (erased, array-free) type name as seen from inside the
    // given type. Order: member types of the lexical context, same package,
    // single-type imports, on-demand imports, then a unique simple-name match
    // across the snapshot. Returns nullopt for names outside the snapshot.
    std::optional<std::string> resolve(std::string_view raw_name, std::string_view context_type) const;

    std::size_t resolved_super_edge_count() const;

    friend TypeGraph build_type_graph(const std::vector<CompilationUnitModel>& units);

private:
    struct UnitScope {
        std::string package_name;
        std::vector<std::string> imports;
        std::vector<std::string> wildcard_imports;
    };

    struct Links {
        std::size_t unit = 0;
        std::optional<TypeEdge> super;
        std::vector<TypeEdge> impls;
        std::vector<std::string> subclasses;
    };

    std::optional<std::string> resolve_first_segment(std::string_view name, std::string_view context_type) const;
    const Links& links(std::string_view qualified_name) const;

    std::map<std::string, TypeDecl, std::less<>> types_;
    std::map<std::string, Links, std::less<>> links_;
    std::map<std::string, std::vector<std::string>, std::less<>> by_simple_name_;
    std::vector<UnitScope> units_;
};

// Links the units of one snapshot. Throws DuplicateType when two
// declarations share a qualified name and CycleError on an extends cycle.
// The result does not depend on the order of `units`.
TypeGraph build_type_graph(const std::vector<CompilationUnitModel>& units);

} // namespace reusemine
