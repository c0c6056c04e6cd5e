#include "reusemine/reuse_metrics.hpp"

#include <array>
#include <algorithm>
#include <deque>
#include <set>

#include "reusemine/errors.hpp"

namespace reusemine {

namespace {

constexpr std::array<std::string_view, 18> kValueTypes = {
    "boolean", "byte", "char", "short", "int", "long", "float", "double", "void",
    "Boolean", "Byte", "Character", "Short", "Integer", "Long", "Float", "Double", "String"};

std::string_view last_segment(std::string_view name) {
    const auto dot = name.rfind('.');
    return dot == std::string_view::npos ? name : name.substr(dot + 1);
}

} // namespace

std::string_view to_string(DelegationScope scope) {
    return scope == DelegationScope::FieldsOnly ? "fields_only" : "fields_and_locals";
}

DelegationScope delegation_scope_from_string(std::string_view text) {
    if (text == "fields_and_locals") return DelegationScope::FieldsAndLocals;
    if (text == "fields_only") return DelegationScope::FieldsOnly;
    throw ConfigError("unknown delegation scope '" + std::string(text) + "' (expected fields_and_locals or fields_only)");
}

std::size_t specification_inheritance(const TypeDecl& cls, const TypeGraph& graph, const ReuseOptions& options) {
    std::set<std::string> seen;
    std::deque<TypeEdge> pending;
    for (const TypeEdge& e : graph.impl_edges(cls.qualified_name)) pending.push_back(e);
    if (options.include_inherited_interfaces) {
        for (const std::string& ancestor : graph.superclass_chain(cls.qualified_name)) {
            for (const TypeEdge& e : graph.impl_edges(ancestor)) pending.push_back(e);
        }
    }
    while (!pending.empty()) {
        const TypeEdge e = pending.front();
        pending.pop_front();
        // Resolved and external names live in separate key spaces.
        const std::string key = (e.resolved ? "+" : "?") + e.target;
        if (!seen.insert(key).second) continue;
        if (e.resolved) {
            for (const TypeEdge& next : graph.impl_edges(e.target)) pending.push_back(next);
        }
    }
    return seen.size();
}

std::size_t implementation_inheritance(const TypeDecl& cls, const TypeGraph& graph) {
    if (cls.kind == TypeKind::Interface) return 0;
    std::set<std::string> own;
    for (const MethodDecl& m : cls.methods) {
        if (m.kind == MethodKind::Method) own.insert(m.signature());
    }
    std::set<std::string> inherited;
    for (const std::string& ancestor : graph.superclass_chain(cls.qualified_name)) {
        const TypeDecl* a = graph.find(ancestor);
        if (!a) continue;
        for (const MethodDecl& m : a->methods) {
            if (m.kind == MethodKind::Method) inherited.insert(m.signature());
        }
    }
    const bool external_base = graph.chain_ends_external(cls.qualified_name);

    std::set<std::string> used;
    for (const MethodDecl& m : cls.methods) {
        for (const CallSite& c : m.invocations) {
            const std::string sig = c.signature();
            switch (c.receiver) {
            case ReceiverKind::Implicit:
            case ReceiverKind::This:
                if (inherited.count(sig) && !own.count(sig)) used.insert(sig);
                break;
            case ReceiverKind::Super:
                if (inherited.count(sig)) {
                    used.insert(sig);
                } else if (external_base) {
                    used.insert("external:" + sig);
                }
                break;
            default:
                break;
            }
        }
    }
    return used.size();
}

bool is_excluded_delegate_type(std::string_view type_name) {
    if (type_name.empty() || type_name == "var") return true;
    if (type_name.find('[') != std::string_view::npos) return true;
    std::string_view base = type_name;
    if (base.starts_with("java.lang.")) base = last_segment(base);
    return std::find(kValueTypes.begin(), kValueTypes.end(), base) != kValueTypes.end();
}

bool uses_only_as_receiver(const VarDecl& var) {
    bool exempted_first_store = var.has_initializer;
    std::size_t counted = 0;
    for (const UseSite& u : var.uses) {
        if (u.kind == UseKind::AssignmentTarget && u.simple_assignment) {
            if (var.scope == VarScope::Field && !var.has_initializer && u.in_initialization) continue;
            if (var.scope == VarScope::Local && !exempted_first_store) {
                exempted_first_store = true;
                continue;
            }
        }
        if (u.kind != UseKind::CallReceiver) return false;
        ++counted;
    }
    return counted > 0;
}

std::size_t delegation(const TypeDecl& cls, const TypeGraph& graph, const ReuseOptions& options) {
    if (cls.kind == TypeKind::Interface) return 0;
    std::size_t n = 0;
    auto consider = [&](const VarDecl& v) {
        if (is_excluded_delegate_type(v.declared_type_name)) return;
        if (!graph.resolve(v.declared_type_name, cls.qualified_name)) return;
        if (uses_only_as_receiver(v)) ++n;
    };
    for (const VarDecl& f : cls.fields) consider(f);
    if (options.delegation_scope == DelegationScope::FieldsAndLocals) {
        for (const VarDecl& v : cls.initializer_locals) consider(v);
        for (const MethodDecl& m : cls.methods) {
            for (const VarDecl& v : m.locals) consider(v);
        }
    }
    return n;
}

ReuseVector reuse_vector(const TypeDecl& cls, const TypeGraph& graph, const ReuseOptions& options) {
    ReuseVector r;
    r.class_name = cls.qualified_name;
    r.spec_inheritance = specification_inheritance(cls, graph, options);
    r.impl_inheritance = implementation_inheritance(cls, graph);
    r.delegation = delegation(cls, graph, options);
    return r;
}

} // namespace reusemine
