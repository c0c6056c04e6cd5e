#include "binder.hpp"

#include <algorithm>
#include <map>
#include <optional>

namespace reusemine::java {

namespace {

// Locates a VarDecl inside the flat type list. `method` is the owning
// method index, kFieldSlot for fields, kInitializerSlot for locals declared
// outside any method.
struct VarRef {
    std::size_t type = 0;
    int method = 0;
    std::size_t index = 0;
};

constexpr int kFieldSlot = -1;
constexpr int kInitializerSlot = -2;

struct Entry {
    std::string type_name;
    std::optional<VarRef> var;  // absent for parameters and enum constants
};

struct Layer {
    bool is_class = false;
    std::size_t type = 0;
    std::map<std::string, Entry, std::less<>> names;
};

struct Frame {
    std::size_t type = 0;
    int method = kInitializerSlot;  // method index, or kInitializerSlot
    bool initialization = false;    // constructor, initializer block, field initializer
};

class Binder {
public:
    Binder(const LexedSource& lexed, std::string path) : lexed_(lexed) { model_.path = std::move(path); }

    CompilationUnitModel run(const CompilationUnitSyntax& unit) {
        model_.package_name = unit.package_name;
        for (const ImportDecl& imp : unit.imports) {
            if (imp.is_static) continue;
            (imp.wildcard ? model_.wildcard_imports : model_.imports).push_back(imp.name);
        }
        for (const ClassPtr& cls : unit.types) {
            const std::string qn = model_.package_name.empty() ? cls->name : model_.package_name + "." + cls->name;
            bind_class(*cls, qn, cls->name, "", std::nullopt);
        }
        return std::move(model_);
    }

private:
    std::vector<TypeDecl>& types() { return model_.types; }

    VarDecl& var(const VarRef& ref) {
        TypeDecl& t = types()[ref.type];
        if (ref.method == kFieldSlot) return t.fields[ref.index];
        if (ref.method == kInitializerSlot) return t.initializer_locals[ref.index];
        return t.methods[static_cast<std::size_t>(ref.method)].locals[ref.index];
    }

    std::size_t count_lines(int first, int last) const {
        std::size_t n = 0;
        for (int l = std::max(first, 1); l <= last && l <= static_cast<int>(lexed_.code_lines.size()); ++l) {
            if (lexed_.code_lines[static_cast<std::size_t>(l - 1)]) ++n;
        }
        return n;
    }

    // ---- classes ---------------------------------------------------------

    // `anonymous_base` is set for anonymous class bodies and enum constant
    // bodies; it becomes the superclass name (the type graph reclassifies it
    // when it resolves to an interface).
    std::size_t bind_class(const ClassNode& node, const std::string& qualified, const std::string& simple,
                           const std::string& enclosing, std::optional<std::string> anonymous_base,
                           bool local = false) {
        const std::size_t idx = types().size();
        {
            TypeDecl t;
            t.qualified_name = qualified;
            t.simple_name = simple;
            t.kind = node.kind;
            t.enclosing_type = enclosing;
            t.anonymous = anonymous_base.has_value();
            t.local = local;
            t.begin_line = node.begin_line;
            t.end_line = node.end_line;
            t.loc_physical = count_lines(node.begin_line, node.end_line);
            if (anonymous_base) {
                t.superclass_name = *anonymous_base;
            } else if (node.superclass) {
                t.superclass_name = node.superclass->name;
            }
            for (const TypeRef& i : node.interfaces) t.interface_names.push_back(i.name);
            for (const ClassPtr& m : node.member_types) t.member_types.push_back(m->name);
            types().push_back(std::move(t));
        }

        Layer layer;
        layer.is_class = true;
        layer.type = idx;
        for (const Param& c : node.record_components) {
            VarDecl v;
            v.name = c.name;
            v.declared_type_name = c.type.erased();
            v.scope = VarScope::Field;
            v.has_initializer = true;
            v.line = c.line;
            layer.names[v.name] = Entry{v.declared_type_name, VarRef{idx, kFieldSlot, types()[idx].fields.size()}};
            types()[idx].fields.push_back(std::move(v));
        }
        for (const FieldNode& f : node.fields) {
            for (const Declarator& d : f.declarators) {
                VarDecl v;
                v.name = d.name;
                TypeRef t = f.type;
                t.dims += d.extra_dims;
                v.declared_type_name = t.erased();
                v.scope = VarScope::Field;
                v.has_initializer = d.init != nullptr;
                v.line = d.line;
                layer.names[v.name] = Entry{v.declared_type_name, VarRef{idx, kFieldSlot, types()[idx].fields.size()}};
                types()[idx].fields.push_back(std::move(v));
            }
        }
        for (const EnumConstant& c : node.constants) layer.names[c.name] = Entry{simple, std::nullopt};
        layers_.push_back(std::move(layer));

        frames_.push_back(Frame{idx, kInitializerSlot, true});
        for (const EnumConstant& c : node.constants) {
            for (const ExprPtr& a : c.args) visit(*a, UseKind::Argument);
            if (c.body) bind_anonymous(*c.body, simple);
        }
        for (const FieldNode& f : node.fields) {
            for (const Declarator& d : f.declarators) {
                if (d.init) visit(*d.init, UseKind::Other);
            }
        }
        for (const StmtPtr& s : node.initializers) bind_stmt(*s);
        frames_.pop_back();

        for (const MethodNode& m : node.methods) bind_method(idx, m);

        for (const ClassPtr& m : node.member_types) {
            bind_class(*m, qualified + "." + m->name, m->name, qualified, std::nullopt);
        }
        layers_.pop_back();
        return idx;
    }

    std::size_t innermost_class() const {
        for (auto it = layers_.rbegin(); it != layers_.rend(); ++it) {
            if (it->is_class) return it->type;
        }
        return 0;
    }

    std::string synthesized_name(std::size_t& counter_owner, std::string suffix) {
        counter_owner = innermost_class();
        // Anonymous classes share one sequence per enclosing class; each local
        // class name has its own, as javac numbers them.
        const int n = ++synthetic_counters_[{counter_owner, suffix}];
        return "$" + std::to_string(n) + suffix;
    }

    void bind_anonymous(const ClassNode& body, const std::string& base) {
        std::size_t owner = 0;
        const std::string suffix = synthesized_name(owner, "");
        const std::string qn = types()[owner].qualified_name + suffix;
        const std::string simple = types()[owner].simple_name + suffix;
        bind_class(body, qn, simple, types()[owner].qualified_name, base);
    }

    void bind_local_class(const ClassNode& node) {
        std::size_t owner = 0;
        const std::string suffix = synthesized_name(owner, node.name);
        const std::string qn = types()[owner].qualified_name + suffix;
        bind_class(node, qn, node.name, types()[owner].qualified_name, std::nullopt, true);
    }

    void bind_method(std::size_t idx, const MethodNode& m) {
        MethodDecl md;
        md.name = m.name;
        md.arity = m.params.size();
        md.kind = m.constructor ? MethodKind::Constructor : MethodKind::Method;
        if (!m.constructor) md.return_type_name = m.return_type.erased();
        for (const Param& p : m.params) md.parameter_type_names.push_back(p.type.erased());
        md.has_body = m.body != nullptr;
        md.line = m.line;
        const int mi = static_cast<int>(types()[idx].methods.size());
        types()[idx].methods.push_back(std::move(md));

        frames_.push_back(Frame{idx, mi, m.constructor});
        Layer params;
        params.type = idx;
        for (const Param& p : m.params) params.names[p.name] = Entry{p.type.erased(), std::nullopt};
        layers_.push_back(std::move(params));
        if (m.body) bind_stmt(*m.body);
        layers_.pop_back();
        frames_.pop_back();

        auto& fields = types()[idx].methods[static_cast<std::size_t>(mi)].accessed_fields;
        std::sort(fields.begin(), fields.end());
        fields.erase(std::unique(fields.begin(), fields.end()), fields.end());
    }

    // ---- scopes ----------------------------------------------------------

    void push_block() {
        Layer l;
        l.type = innermost_class();
        layers_.push_back(std::move(l));
    }

    void pop_block() { layers_.pop_back(); }

    const Entry* resolve(const std::string& name) const {
        for (auto it = layers_.rbegin(); it != layers_.rend(); ++it) {
            auto found = it->names.find(name);
            if (found != it->names.end()) return &found->second;
        }
        return nullptr;
    }

    // Field lookup for `this.name` / `Outer.this.name`.
    const Entry* resolve_member(const std::string& qualifier, const std::string& name) const {
        for (auto it = layers_.rbegin(); it != layers_.rend(); ++it) {
            if (!it->is_class) continue;
            const TypeDecl& t = model_.types[it->type];
            if (!qualifier.empty() && t.simple_name != qualifier && t.qualified_name != qualifier) continue;
            auto found = it->names.find(name);
            return found == it->names.end() ? nullptr : &found->second;
        }
        return nullptr;
    }

    void declare_local(const std::string& name, const std::string& type, bool has_initializer, int line) {
        const Frame& f = frames_.back();
        VarDecl v;
        v.name = name;
        v.declared_type_name = type;
        v.scope = VarScope::Local;
        v.has_initializer = has_initializer;
        v.line = line;
        VarRef ref{f.type, f.method, 0};
        if (f.method >= 0) {
            auto& locals = types()[f.type].methods[static_cast<std::size_t>(f.method)].locals;
            ref.index = locals.size();
            locals.push_back(std::move(v));
        } else {
            auto& locals = types()[f.type].initializer_locals;
            ref.index = locals.size();
            locals.push_back(std::move(v));
        }
        layers_.back().names[name] = Entry{type, ref};
    }

    void declare_unbound(const std::string& name, const std::string& type) {
        layers_.back().names[name] = Entry{type, std::nullopt};
    }

    void declare_pattern(const Pattern& p) {
        if (!p.binding.empty()) declare_local(p.binding, p.type.erased(), true, p.line);
        for (const Pattern& c : p.components) declare_pattern(c);
    }

    void record_use(const Entry& entry, UseKind kind, bool simple_assignment, int line) {
        if (!entry.var) return;
        const VarRef& ref = *entry.var;
        const Frame& f = frames_.back();
        UseSite use;
        use.kind = kind;
        use.line = line;
        use.simple_assignment = kind == UseKind::AssignmentTarget && simple_assignment;
        use.in_initialization = ref.method == kFieldSlot && f.type == ref.type && f.initialization;
        VarDecl& v = var(ref);
        v.uses.push_back(use);
        if (ref.method == kFieldSlot && f.type == ref.type && f.method >= 0) {
            types()[f.type].methods[static_cast<std::size_t>(f.method)].accessed_fields.push_back(v.name);
        }
    }

    void add_decision(std::size_t n = 1) {
        const Frame& f = frames_.back();
        if (f.method < 0) return;
        types()[f.type].methods[static_cast<std::size_t>(f.method)].decision_points += n;
    }

    void add_call(CallSite cs) {
        const Frame& f = frames_.back();
        if (f.method < 0) return;
        types()[f.type].methods[static_cast<std::size_t>(f.method)].invocations.push_back(std::move(cs));
    }

    // ---- statements --------------------------------------------------------

    void bind_stmts(const std::vector<StmtPtr>& stmts) {
        for (const StmtPtr& s : stmts) bind_stmt(*s);
    }

    void bind_local_vars(const Stmt& s) {
        for (const Declarator& d : s.vars) {
            if (d.init) visit(*d.init, UseKind::Other);
            TypeRef t = s.var_type;
            t.dims += d.extra_dims;
            declare_local(d.name, t.erased(), d.init != nullptr, d.line);
        }
    }

    void bind_cases(const std::vector<SwitchCase>& cases) {
        push_block();
        for (const SwitchCase& c : cases) {
            if (!c.labels.empty() || !c.patterns.empty()) add_decision();
            if (c.arrow) push_block();
            for (const ExprPtr& l : c.labels) {
                // Bare names in case labels are enum constants.
                if (l->kind != ExprKind::Name) visit(*l, UseKind::Other);
            }
            for (const Pattern& p : c.patterns) declare_pattern(p);
            if (c.guard) visit(*c.guard, UseKind::Other);
            bind_stmts(c.body);
            if (c.arrow) pop_block();
        }
        pop_block();
    }

    void bind_stmt(const Stmt& s) {
        switch (s.kind) {
        case StmtKind::Block:
            push_block();
            bind_stmts(s.body);
            pop_block();
            break;
        case StmtKind::LocalVar:
            bind_local_vars(s);
            break;
        case StmtKind::LocalClass:
            bind_local_class(*s.local_class);
            break;
        case StmtKind::If:
        case StmtKind::While:
        case StmtKind::DoWhile:
            add_decision();
            [[fallthrough]];
        case StmtKind::Expression:
        case StmtKind::Throw:
        case StmtKind::Yield:
        case StmtKind::Assert:
        case StmtKind::Synchronized:
        case StmtKind::Labeled:
            for (const ExprPtr& e : s.exprs) visit(*e, UseKind::Other);
            bind_stmts(s.body);
            break;
        case StmtKind::Return:
            for (const ExprPtr& e : s.exprs) visit(*e, UseKind::ReturnValue);
            break;
        case StmtKind::For:
            add_decision();
            push_block();
            bind_stmts(s.init);
            for (const ExprPtr& e : s.exprs) visit(*e, UseKind::Other);
            for (const ExprPtr& e : s.updates) visit(*e, UseKind::Other);
            bind_stmts(s.body);
            pop_block();
            break;
        case StmtKind::ForEach:
            add_decision();
            push_block();
            for (const ExprPtr& e : s.exprs) visit(*e, UseKind::Other);
            for (const Declarator& d : s.vars) declare_local(d.name, s.var_type.erased(), true, d.line);
            bind_stmts(s.body);
            pop_block();
            break;
        case StmtKind::Switch:
            for (const ExprPtr& e : s.exprs) visit(*e, UseKind::Other);
            bind_cases(s.cases);
            break;
        case StmtKind::Try:
            push_block();
            for (const StmtPtr& r : s.resources) bind_stmt(*r);
            bind_stmts(s.body);
            pop_block();
            for (const CatchClause& c : s.catches) {
                add_decision();
                push_block();
                declare_unbound(c.param.name, c.param.type.erased());
                bind_stmt(*c.block);
                pop_block();
            }
            if (s.finally_block) bind_stmt(*s.finally_block);
            break;
        case StmtKind::Break:
        case StmtKind::Continue:
        case StmtKind::Empty:
            break;
        }
    }

    // ---- expressions -------------------------------------------------------

    // Root variable of `name` or `this.name`, if any.
    const Entry* variable_of(const Expr& e) const {
        if (e.kind == ExprKind::Name) return resolve(e.name);
        if (e.kind == ExprKind::FieldAccess && e.target && e.target->kind == ExprKind::This) {
            return resolve_member(e.target->qualifier, e.name);
        }
        return nullptr;
    }

    // Dotted name when `e` is a chain of unresolved simple names.
    std::optional<std::string> unresolved_name(const Expr& e) const {
        if (e.kind == ExprKind::Name) {
            if (resolve(e.name)) return std::nullopt;
            return e.name;
        }
        if (e.kind == ExprKind::FieldAccess && e.target) {
            auto prefix = unresolved_name(*e.target);
            if (!prefix) return std::nullopt;
            return *prefix + "." + e.name;
        }
        return std::nullopt;
    }

    void visit(const Expr& e, UseKind ctx, bool simple_assignment = false) {
        switch (e.kind) {
        case ExprKind::Name:
            if (const Entry* entry = resolve(e.name)) record_use(*entry, ctx, simple_assignment, e.line);
            break;
        case ExprKind::FieldAccess:
            if (e.target->kind == ExprKind::This) {
                if (const Entry* entry = resolve_member(e.target->qualifier, e.name)) {
                    record_use(*entry, ctx, simple_assignment, e.line);
                }
            } else {
                visit(*e.target, UseKind::FieldAccess);
            }
            break;
        case ExprKind::Call: {
            CallSite cs;
            cs.name = e.name;
            cs.arity = e.args.size();
            cs.line = e.line;
            if (!e.target) {
                cs.receiver = ReceiverKind::Implicit;
            } else if (e.target->kind == ExprKind::This) {
                cs.receiver = ReceiverKind::This;
            } else if (e.target->kind == ExprKind::Super) {
                cs.receiver = ReceiverKind::Super;
            } else if (const Entry* entry = variable_of(*e.target)) {
                cs.receiver = ReceiverKind::Variable;
                cs.receiver_name = e.target->name;
                cs.receiver_type = entry->type_name;
                record_use(*entry, UseKind::CallReceiver, false, e.target->line);
            } else if (auto name = unresolved_name(*e.target)) {
                cs.receiver = ReceiverKind::Name;
                cs.receiver_name = *name;
            } else {
                cs.receiver = ReceiverKind::Expression;
                visit(*e.target, UseKind::CallReceiver);
            }
            add_call(std::move(cs));
            for (const ExprPtr& a : e.args) visit(*a, UseKind::Argument);
            break;
        }
        case ExprKind::New:
            if (e.target) visit(*e.target, UseKind::Other);
            for (const ExprPtr& a : e.args) visit(*a, UseKind::Argument);
            if (e.body) bind_anonymous(*e.body, e.type.name);
            break;
        case ExprKind::CtorCall:
            if (e.target) visit(*e.target, UseKind::Other);
            for (const ExprPtr& a : e.args) visit(*a, UseKind::Argument);
            break;
        case ExprKind::Unary:
            if (e.name == "++" || e.name == "--") {
                visit(*e.target, UseKind::AssignmentTarget, false);
            } else {
                visit(*e.target, UseKind::Other);
            }
            break;
        case ExprKind::Assign:
            visit(*e.target, UseKind::AssignmentTarget, e.name == "=");
            visit(*e.args[0], UseKind::Other);
            break;
        case ExprKind::Cast:
            visit(*e.target, UseKind::Other);
            break;
        case ExprKind::InstanceOf:
            visit(*e.target, UseKind::Other);
            if (e.pattern) declare_pattern(*e.pattern);
            break;
        case ExprKind::Lambda:
            push_block();
            for (const Param& p : e.params) declare_unbound(p.name, p.type.erased());
            if (e.block) {
                bind_stmt(*e.block);
            } else {
                for (const ExprPtr& a : e.args) visit(*a, UseKind::Other);
            }
            pop_block();
            break;
        case ExprKind::MethodRef:
            if (e.target) visit(*e.target, UseKind::CallReceiver);
            break;
        case ExprKind::Index:
            visit(*e.target, UseKind::Other);
            for (const ExprPtr& a : e.args) visit(*a, UseKind::Other);
            break;
        case ExprKind::Switch:
            visit(*e.target, UseKind::Other);
            bind_cases(e.cases);
            break;
        case ExprKind::Binary:
        case ExprKind::Conditional:
            if (e.kind == ExprKind::Conditional || e.name == "&&" || e.name == "||") add_decision();
            [[fallthrough]];
        case ExprKind::NewArray:
        case ExprKind::ArrayInit:
            if (e.target) visit(*e.target, UseKind::Other);
            for (const ExprPtr& a : e.args) visit(*a, UseKind::Other);
            break;
        case ExprKind::This:
        case ExprKind::Super:
        case ExprKind::Literal:
        case ExprKind::ClassLit:
            break;
        }
    }

    const LexedSource& lexed_;
    CompilationUnitModel model_;
    std::vector<Layer> layers_;
    std::vector<Frame> frames_;
    std::map<std::pair<std::size_t, std::string>, int> synthetic_counters_;
};

} // namespace

CompilationUnitModel bind(const CompilationUnitSyntax& unit, const LexedSource& lexed, const std::string& path) {
    return Binder(lexed, path).run(unit);
}

} // namespace reusemine::java
