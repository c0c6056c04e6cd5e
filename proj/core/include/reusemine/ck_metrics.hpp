#pragma once

#include <cstddef>
#include <string>
#include <string_view>

#include "reusemine/source_model.hpp"
#include "reusemine/type_graph.hpp"

namespace reusemine {

enum class WmcVariant {
    MethodCount,  // unit complexity per method
    Cyclomatic    // 1 + decision points per method
};

std::string_view to_string(WmcVariant variant);
WmcVariant wmc_variant_from_string(std::string_view text);  // throws ConfigError

struct CKOptions {
    WmcVariant wmc = WmcVariant::MethodCount;

    bool operator==(const CKOptions&) const = default;
};

struct CKVector {
    std::string class_name;
    std::size_t dit = 0;
    std::size_t noc = 0;
    std::size_t loc = 0;
    std::size_t lcom = 0;
    std::size_t wmc = 0;
    std::size_t rfc = 0;
    std::size_t cbo = 0;

    bool operator==(const CKVector&) const = default;
};

std::size_t compute_dit(const TypeDecl& cls, const TypeGraph& graph);
std::size_t compute_noc(const TypeDecl& cls, const TypeGraph& graph);
std::size_t compute_wmc(const TypeDecl& cls, const CKOptions& options = {});
// LCOM1: max(0, P - Q) over method pairs, P sharing no field, Q sharing one.
std::size_t compute_lcom(const TypeDecl& cls);
// Own methods plus distinct invoked methods; invoked methods are keyed by
// receiver type (when known) and name/arity.
std::size_t compute_rfc(const TypeDecl& cls, const TypeGraph& graph);
// Distinct other snapshot types referenced by field, parameter and return
// types, call receivers and supertype edges.
std::size_t compute_cbo(const TypeDecl& cls, const TypeGraph& graph);

CKVector compute_ck(const TypeDecl& cls, const TypeGraph& graph, const CKOptions& options = {});

} // namespace reusemine
