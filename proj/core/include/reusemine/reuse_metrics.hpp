#pragma once

#include <cstddef>
#include <string>
#include <string_view>

#include "reusemine/source_model.hpp"
#include "reusemine/type_graph.hpp"

namespace reusemine {

enum class DelegationScope { FieldsAndLocals, FieldsOnly };

std::string_view to_string(DelegationScope scope);
DelegationScope delegation_scope_from_string(std::string_view text);  // throws ConfigError

struct ReuseOptions {
    // Also seed the interface closure with interfaces implemented by the
    // resolved superclass chain.
    bool include_inherited_interfaces = false;
    DelegationScope delegation_scope = DelegationScope::FieldsAndLocals;

    bool operator==(const ReuseOptions&) const = default;
};

struct ReuseVector {
    std::string class_name;
    std::size_t spec_inheritance = 0;
    std::size_t impl_inheritance = 0;
    std::size_t delegation = 0;

    bool operator==(const ReuseVector&) const = default;
};

// Distinct interfaces reachable from the implements clause (extends clause
// for interfaces), following interface extends-edges transitively. External
// names count once each.
std::size_t specification_inheritance(const TypeDecl& cls, const TypeGraph& graph, const ReuseOptions& options = {});

// Distinct ancestor methods (name/arity) invoked by the class through an
// implicit receiver, `this` or `super`, excluding signatures the class
// declares itself. A `super.` call whose signature no resolved ancestor
// declares still counts when the chain ends at an external superclass.
std::size_t implementation_inheritance(const TypeDecl& cls, const TypeGraph& graph);

// Variables of snapshot-internal reference types that are used only as call
// receivers. Initializing assignments are exempt.
std::size_t delegation(const TypeDecl& cls, const TypeGraph& graph, const ReuseOptions& options = {});

// True when `type_name` can never denote a delegate: primitives, boxed
// primitives, String, `var` and arrays.
bool is_excluded_delegate_type(std::string_view type_name);

// Whether one variable qualifies under the delegation rule, given that its
// type already resolved inside the snapshot.
bool uses_only_as_receiver(const VarDecl& var);

ReuseVector reuse_vector(const TypeDecl& cls, const TypeGraph& graph, const ReuseOptions& options = {});

} // namespace reusemine
