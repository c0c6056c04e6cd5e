#include "reusemine/ck_metrics.hpp"

#include <algorithm>
#include <set>

#include "reusemine/errors.hpp"

namespace reusemine {

namespace {

std::string strip_dims(std::string_view type_name) {
    const auto bracket = type_name.find('[');
    return std::string(bracket == std::string_view::npos ? type_name : type_name.substr(0, bracket));
}

bool shares_field(const MethodDecl& a, const MethodDecl& b) {
    auto i = a.accessed_fields.begin();
    auto j = b.accessed_fields.begin();
    while (i != a.accessed_fields.end() && j != b.accessed_fields.end()) {
        if (*i == *j) return true;
        if (*i < *j) {
            ++i;
        } else {
            ++j;
        }
    }
    return false;
}

} // namespace

std::string_view to_string(WmcVariant variant) {
    return variant == WmcVariant::Cyclomatic ? "cyclomatic" : "method_count";
}

WmcVariant wmc_variant_from_string(std::string_view text) {
    if (text == "method_count") return WmcVariant::MethodCount;
    if (text == "cyclomatic") return WmcVariant::Cyclomatic;
    throw ConfigError("unknown WMC variant '" + std::string(text) + "' (expected method_count or cyclomatic)");
}

std::size_t compute_dit(const TypeDecl& cls, const TypeGraph& graph) {
    return graph.superclass_chain(cls.qualified_name).size();
}

std::size_t compute_noc(const TypeDecl& cls, const TypeGraph& graph) {
    return graph.subclasses(cls.qualified_name).size();
}

std::size_t compute_wmc(const TypeDecl& cls, const CKOptions& options) {
    if (options.wmc == WmcVariant::MethodCount) return cls.methods.size();
    std::size_t total = 0;
    for (const MethodDecl& m : cls.methods) total += 1 + m.decision_points;
    return total;
}

std::size_t compute_lcom(const TypeDecl& cls) {
    std::size_t p = 0;
    std::size_t q = 0;
    const auto& ms = cls.methods;
    for (std::size_t i = 0; i < ms.size(); ++i) {
        for (std::size_t j = i + 1; j < ms.size(); ++j) {
            if (shares_field(ms[i], ms[j])) {
                ++q;
            } else {
                ++p;
            }
        }
    }
    return p > q ? p - q : 0;
}

std::size_t compute_rfc(const TypeDecl& cls, const TypeGraph& graph) {
    std::set<std::string> own;
    for (const MethodDecl& m : cls.methods) own.insert(m.signature());

    std::set<std::string> response;
    for (const std::string& sig : own) response.insert("self:" + sig);
    for (const MethodDecl& m : cls.methods) {
        for (const CallSite& c : m.invocations) {
            const std::string sig = c.signature();
            std::string owner;
            switch (c.receiver) {
            case ReceiverKind::Implicit:
            case ReceiverKind::This:
                owner = own.count(sig) ? "self" : "inherited";
                break;
            case ReceiverKind::Super:
                owner = "super";
                break;
            case ReceiverKind::Variable: {
                const std::string t = strip_dims(c.receiver_type);
                owner = "type:" + graph.resolve(t, cls.qualified_name).value_or(t);
                break;
            }
            case ReceiverKind::Name:
                owner = "type:" + graph.resolve(c.receiver_name, cls.qualified_name).value_or(c.receiver_name);
                break;
            case ReceiverKind::Expression:
                owner = "expr";
                break;
            }
            response.insert(owner + ":" + sig);
        }
    }
    return response.size();
}

std::size_t compute_cbo(const TypeDecl& cls, const TypeGraph& graph) {
    std::set<std::string> coupled;
    auto add = [&](std::string_view raw) {
        if (raw.empty()) return;
        if (auto r = graph.resolve(strip_dims(raw), cls.qualified_name)) {
            if (*r != cls.qualified_name) coupled.insert(*r);
        }
    };
    for (const VarDecl& f : cls.fields) add(f.declared_type_name);
    for (const MethodDecl& m : cls.methods) {
        add(m.return_type_name);
        for (const std::string& p : m.parameter_type_names) add(p);
        for (const CallSite& c : m.invocations) {
            if (c.receiver == ReceiverKind::Variable) add(c.receiver_type);
            if (c.receiver == ReceiverKind::Name) add(c.receiver_name);
        }
    }
    if (const auto& e = graph.super_edge(cls.qualified_name); e && e->resolved) coupled.insert(e->target);
    for (const TypeEdge& e : graph.impl_edges(cls.qualified_name)) {
        if (e.resolved) coupled.insert(e.target);
    }
    coupled.erase(cls.qualified_name);
    return coupled.size();
}

CKVector compute_ck(const TypeDecl& cls, const TypeGraph& graph, const CKOptions& options) {
    CKVector v;
    v.class_name = cls.qualified_name;
    v.dit = compute_dit(cls, graph);
    v.noc = compute_noc(cls, graph);
    v.loc = cls.loc_physical;
    v.lcom = compute_lcom(cls);
    v.wmc = compute_wmc(cls, options);
    v.rfc = compute_rfc(cls, graph);
    v.cbo = compute_cbo(cls, graph);
    return v;
}

} // namespace reusemine
