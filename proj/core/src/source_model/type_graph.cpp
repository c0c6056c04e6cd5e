#include "reusemine/type_graph.hpp"

#include <algorithm>
#include <array>
#include <set>

#include "reusemine/errors.hpp"

namespace reusemine {

namespace {

// java.lang types are implicitly imported; a same-named declaration elsewhere
// in the snapshot must not capture them through the simple-name fallback.
constexpr std::array<std::string_view, 40> kJavaLang = {
    "Object",        "String",          "StringBuilder",  "StringBuffer",  "Integer",
    "Long",          "Short",           "Byte",           "Character",     "Boolean",
    "Float",         "Double",          "Number",         "Void",          "Math",
    "System",        "Thread",          "Runnable",       "Iterable",      "Comparable",
    "Cloneable",     "AutoCloseable",   "Enum",           "Record",        "Class",
    "ClassLoader",   "Throwable",       "Exception",      "RuntimeException", "Error",
    "Override",      "Deprecated",      "SuppressWarnings", "FunctionalInterface", "CharSequence",
    "Process",       "Runtime",         "ThreadLocal",    "IllegalArgumentException",
    "IllegalStateException"};

bool is_java_lang(std::string_view name) {
    return std::find(kJavaLang.begin(), kJavaLang.end(), name) != kJavaLang.end();
}

const std::optional<TypeEdge> kNoEdge;
const std::vector<TypeEdge> kNoEdges;
const std::vector<std::string> kNoNames;

std::string join(const std::vector<std::string>& parts, std::string_view sep) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out += sep;
        out += parts[i];
    }
    return out;
}

enum class Color { White, Grey, Black };

// Depth-first cycle search over resolved edges. Returns the members of the
// first cycle found in sorted-key order.
std::optional<std::vector<std::string>> find_cycle(const std::map<std::string, std::vector<std::string>>& adjacency) {
    std::map<std::string, Color> color;
    std::vector<std::string> stack;
    std::optional<std::vector<std::string>> found;

    auto dfs = [&](auto&& self, const std::string& node) -> void {
        color[node] = Color::Grey;
        stack.push_back(node);
        auto it = adjacency.find(node);
        if (it != adjacency.end()) {
            for (const std::string& next : it->second) {
                if (found) return;
                Color c = color.count(next) ? color[next] : Color::White;
                if (c == Color::Grey) {
                    auto start = std::find(stack.begin(), stack.end(), next);
                    found = std::vector<std::string>(start, stack.end());
                    return;
                }
                if (c == Color::White) self(self, next);
            }
        }
        stack.pop_back();
        color[node] = Color::Black;
    };

    for (const auto& [node, _] : adjacency) {
        if (found) break;
        if (!color.count(node) || color[node] == Color::White) dfs(dfs, node);
    }
    return found;
}

} // namespace

const TypeDecl* TypeGraph::find(std::string_view qualified_name) const {
    auto it = types_.find(qualified_name);
    return it == types_.end() ? nullptr : &it->second;
}

const TypeGraph::Links& TypeGraph::links(std::string_view qualified_name) const {
    static const Links kEmpty;
    auto it = links_.find(qualified_name);
    return it == links_.end() ? kEmpty : it->second;
}

const std::optional<TypeEdge>& TypeGraph::super_edge(std::string_view qualified_name) const {
    auto it = links_.find(qualified_name);
    return it == links_.end() ? kNoEdge : it->second.super;
}

const std::vector<TypeEdge>& TypeGraph::impl_edges(std::string_view qualified_name) const {
    auto it = links_.find(qualified_name);
    return it == links_.end() ? kNoEdges : it->second.impls;
}

const std::vector<std::string>& TypeGraph::subclasses(std::string_view qualified_name) const {
    auto it = links_.find(qualified_name);
    return it == links_.end() ? kNoNames : it->second.subclasses;
}

std::vector<std::string> TypeGraph::superclass_chain(std::string_view qualified_name) const {
    std::vector<std::string> chain;
    std::string current(qualified_name);
    while (true) {
        const auto& edge = super_edge(current);
        if (!edge || !edge->resolved) break;
        chain.push_back(edge->target);
        current = edge->target;
        if (chain.size() > types_.size()) break;  // unreachable: graph is acyclic
    }
    return chain;
}

bool TypeGraph::chain_ends_external(std::string_view qualified_name) const {
    std::string current(qualified_name);
    for (std::size_t guard = 0; guard <= types_.size(); ++guard) {
        const auto& edge = super_edge(current);
        if (!edge) return false;
        if (!edge->resolved) return true;
        current = edge->target;
    }
    return false;
}

std::size_t TypeGraph::resolved_super_edge_count() const {
    std::size_t n = 0;
    for (const auto& [_, l] : links_) {
        if (l.super && l.super->resolved) ++n;
    }
    return n;
}

std::optional<std::string> TypeGraph::resolve_first_segment(std::string_view name,
                                                            std::string_view context_type) const {
    const std::string simple(name);

    // Lexically enclosing types and their member types.
    std::string ctx(context_type);
    while (!ctx.empty()) {
        const TypeDecl* t = find(ctx);
        if (!t) break;
        if (t->simple_name == simple && !t->anonymous) return t->qualified_name;
        if (std::find(t->member_types.begin(), t->member_types.end(), simple) != t->member_types.end()) {
            return t->qualified_name + "." + simple;
        }
        ctx = t->enclosing_type;
    }

    const UnitScope* scope = nullptr;
    if (const TypeDecl* t = find(context_type)) {
        scope = &units_[links(context_type).unit];
        (void)t;
    }
    if (scope) {
        const std::string same_package = scope->package_name.empty() ? simple : scope->package_name + "." + simple;
        if (contains(same_package)) return same_package;
        for (const std::string& imp : scope->imports) {
            const auto dot = imp.rfind('.');
            const std::string_view last = dot == std::string::npos ? std::string_view(imp) : std::string_view(imp).substr(dot + 1);
            if (last == simple) {
                if (contains(imp)) return imp;
                return std::nullopt;  // explicitly imported from outside the snapshot
            }
        }
        for (const std::string& pkg : scope->wildcard_imports) {
            const std::string candidate = pkg + "." + simple;
            if (contains(candidate)) return candidate;
        }
    }
    if (is_java_lang(simple)) return std::nullopt;
    auto it = by_simple_name_.find(simple);
    if (it != by_simple_name_.end() && it->second.size() == 1) return it->second.front();
    return std::nullopt;
}

std::optional<std::string> TypeGraph::resolve(std::string_view raw_name, std::string_view context_type) const {
    if (raw_name.empty()) return std::nullopt;
    if (raw_name.find('.') != std::string_view::npos && contains(raw_name)) return std::string(raw_name);

    const auto dot = raw_name.find('.');
    const std::string_view first = raw_name.substr(0, dot);
    auto resolved = resolve_first_segment(first, context_type);
    if (!resolved) return std::nullopt;
    if (dot == std::string_view::npos) return resolved;

    std::string current = *resolved;
    std::string_view rest = raw_name.substr(dot + 1);
    while (!rest.empty()) {
        const auto next = rest.find('.');
        current += ".";
        current += rest.substr(0, next);
        if (!contains(current)) return std::nullopt;
        rest = next == std::string_view::npos ? std::string_view() : rest.substr(next + 1);
    }
    return current;
}

TypeGraph build_type_graph(const std::vector<CompilationUnitModel>& units) {
    TypeGraph g;

    // Canonical unit order keeps every derived structure independent of the
    // caller's ordering.
    std::vector<const CompilationUnitModel*> ordered;
    ordered.reserve(units.size());
    for (const auto& u : units) ordered.push_back(&u);
    std::sort(ordered.begin(), ordered.end(),
              [](const auto* a, const auto* b) { return a->path < b->path; });

    std::map<std::string, std::string> declared_in;
    for (std::size_t ui = 0; ui < ordered.size(); ++ui) {
        const CompilationUnitModel& u = *ordered[ui];
        g.units_.push_back({u.package_name, u.imports, u.wildcard_imports});
        for (const TypeDecl& t : u.types) {
            auto [it, inserted] = declared_in.emplace(t.qualified_name, u.path);
            if (!inserted) {
                std::vector<std::string> paths{it->second, u.path};
                std::sort(paths.begin(), paths.end());
                throw DuplicateType("type " + t.qualified_name + " declared twice (" + join(paths, ", ") + ")");
            }
            g.types_.emplace(t.qualified_name, t);
            g.links_[t.qualified_name].unit = ui;
            if (!t.anonymous) g.by_simple_name_[t.simple_name].push_back(t.qualified_name);
        }
    }
    for (auto& [_, names] : g.by_simple_name_) std::sort(names.begin(), names.end());

    auto make_edge = [&](const std::string& raw, const TypeDecl& from) {
        // Supertype clauses are resolved in the scope enclosing the declaration.
        const std::string context = from.enclosing_type.empty() ? from.qualified_name : from.enclosing_type;
        std::optional<std::string> target;
        if (from.enclosing_type.empty()) {
            // Top-level type: package/imports of its own unit, but not itself.
            target = g.resolve(raw, from.qualified_name);
            if (target && *target == from.qualified_name && raw.find('.') == std::string::npos) {
                target.reset();
            }
        } else {
            target = g.resolve(raw, context);
        }
        return target ? TypeEdge{*target, true} : TypeEdge{raw, false};
    };

    for (auto& [qn, decl] : g.types_) {
        auto& l = g.links_[qn];
        if (decl.superclass_name) l.super = make_edge(*decl.superclass_name, decl);
        for (const std::string& i : decl.interface_names) l.impls.push_back(make_edge(i, decl));
        // Anonymous bodies name a single base type; it is an interface when it
        // resolves to one.
        if (decl.anonymous && l.super && l.super->resolved) {
            const TypeDecl* base = g.find(l.super->target);
            if (base && base->kind == TypeKind::Interface) {
                l.impls.insert(l.impls.begin(), *l.super);
                decl.interface_names.insert(decl.interface_names.begin(), *decl.superclass_name);
                decl.superclass_name.reset();
                l.super.reset();
            }
        }
    }

    std::map<std::string, std::vector<std::string>> extends_graph;
    std::map<std::string, std::vector<std::string>> interface_graph;
    for (const auto& [qn, l] : g.links_) {
        if (l.super && l.super->resolved) {
            extends_graph[qn].push_back(l.super->target);
            g.links_[l.super->target].subclasses.push_back(qn);
        }
        if (g.types_.at(qn).kind == TypeKind::Interface) {
            for (const TypeEdge& e : l.impls) {
                if (e.resolved) interface_graph[qn].push_back(e.target);
            }
        }
    }
    for (auto& [_, l] : g.links_) std::sort(l.subclasses.begin(), l.subclasses.end());

    if (auto cycle = find_cycle(extends_graph)) {
        throw CycleError("extends cycle: " + join(*cycle, " -> ") + " -> " + cycle->front());
    }
    if (auto cycle = find_cycle(interface_graph)) {
        throw CycleError("interface extends cycle: " + join(*cycle, " -> ") + " -> " + cycle->front());
    }
    return g;
}

} // namespace reusemine
