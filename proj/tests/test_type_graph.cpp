#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "reusemine/errors.hpp"
#include "reusemine/type_graph.hpp"

namespace reusemine {
namespace {

std::vector<CompilationUnitModel> parse_all(const std::vector<std::pair<std::string, std::string>>& files) {
    std::vector<CompilationUnitModel> out;
    for (const auto& [path, text] : files) out.push_back(parse_compilation_unit(text, path));
    return out;
}

TEST(TypeGraph, SamePackageSuperclassResolves) {
    const auto g = build_type_graph(parse_all({{"p/A.java", "package p; class A extends B {}"},
                                               {"p/B.java", "package p; class B {}"}}));
    const auto& e = g.super_edge("p.A");
    ASSERT_TRUE(e.has_value());
    EXPECT_TRUE(e->resolved);
    EXPECT_EQ(e->target, "p.B");
    EXPECT_EQ(g.subclasses("p.B"), std::vector<std::string>{"p.A"});
    EXPECT_EQ(g.superclass_chain("p.A"), std::vector<std::string>{"p.B"});
}

TEST(TypeGraph, ExternalSuperclassIsKeptAndMarked) {
    const auto g = build_type_graph(parse_all({{"A.java", "import javax.swing.JFrame; class A extends JFrame {}"}}));
    const auto& e = g.super_edge("A");
    ASSERT_TRUE(e.has_value());
    EXPECT_FALSE(e->resolved);
    EXPECT_EQ(e->target, "JFrame");
    EXPECT_TRUE(g.chain_ends_external("A"));
    EXPECT_TRUE(g.superclass_chain("A").empty());
}

TEST(TypeGraph, FullyQualifiedExternalSuperclass) {
    const auto g = build_type_graph(parse_all({{"A.java", "class A extends javax.swing.JFrame {}"}}));
    EXPECT_FALSE(g.super_edge("A")->resolved);
    EXPECT_EQ(g.super_edge("A")->target, "javax.swing.JFrame");
}

TEST(TypeGraph, ExtendsCycleIsAnError) {
    const auto units = parse_all({{"A.java", "class A extends B {}"}, {"B.java", "class B extends A {}"}});
    try {
        build_type_graph(units);
        FAIL() << "expected CycleError";
    } catch (const CycleError& e) {
        EXPECT_NE(std::string(e.what()).find("A"), std::string::npos);
        EXPECT_EQ(e.exit_code(), 3);
    }
}

TEST(TypeGraph, InterfaceCycleIsAnError) {
    EXPECT_THROW(build_type_graph(parse_all({{"I.java", "interface I extends J {} interface J extends I {}"}})),
                 CycleError);
}

TEST(TypeGraph, DuplicateQualifiedNameIsAnError) {
    const auto units = parse_all({{"a/A.java", "package p; class A {}"}, {"b/A.java", "package p; class A {}"}});
    EXPECT_THROW(build_type_graph(units), DuplicateType);
}

TEST(TypeGraph, ImportsBeatSimpleNameFallback) {
    const auto g = build_type_graph(parse_all({{"a/Util.java", "package a; public class Util {}"},
                                               {"b/Util.java", "package b; public class Util {}"},
                                               {"c/X.java", "package c; import b.Util; class X extends Util {}"},
                                               {"c/Y.java", "package c; class Y extends Util {}"}}));
    EXPECT_EQ(g.super_edge("c.X")->target, "b.Util");
    // Ambiguous simple name without an import stays external.
    EXPECT_FALSE(g.super_edge("c.Y")->resolved);
}

TEST(TypeGraph, UniqueSimpleNameResolvesAcrossPackages) {
    const auto g = build_type_graph(parse_all({{"a/Base.java", "package a; public class Base {}"},
                                               {"b/X.java", "package b; class X extends Base {}"}}));
    EXPECT_EQ(g.super_edge("b.X")->target, "a.Base");
}

TEST(TypeGraph, WildcardImportResolves) {
    const auto g = build_type_graph(parse_all({{"a/Base.java", "package a; public class Base {}"},
                                               {"c/Base.java", "package c; public class Base {}"},
                                               {"b/X.java", "package b; import a.*; class X extends Base {}"}}));
    EXPECT_EQ(g.super_edge("b.X")->target, "a.Base");
}

TEST(TypeGraph, JavaLangNamesAreNotCapturedBySnapshotTypes) {
    const auto g = build_type_graph(parse_all({{"a/Exception.java", "package a; public class Exception {}"},
                                               {"b/E.java", "package b; class E extends Exception {}"}}));
    EXPECT_FALSE(g.super_edge("b.E")->resolved);
}

TEST(TypeGraph, MemberTypesResolveThroughTheEnclosingClass) {
    const auto g = build_type_graph(parse_all({{"O.java", R"(class Outer {
    static class Base {}
    static class Derived extends Base {}
}
class User extends Outer.Base {})"}}));
    EXPECT_EQ(g.super_edge("Outer.Derived")->target, "Outer.Base");
    EXPECT_EQ(g.super_edge("User")->target, "Outer.Base");
}

TEST(TypeGraph, AnonymousClassOfAnInterfaceBecomesAnImplementation) {
    const auto g = build_type_graph(parse_all({{"A.java", R"(interface Task { void run(); }
class A { Task t = new Task() { public void run() {} }; })"}}));
    EXPECT_FALSE(g.super_edge("A$1").has_value());
    ASSERT_EQ(g.impl_edges("A$1").size(), 1u);
    EXPECT_EQ(g.impl_edges("A$1")[0].target, "Task");
    EXPECT_EQ(g.find("A$1")->interface_names, std::vector<std::string>{"Task"});
}

TEST(TypeGraph, InterfaceExtendsAreImplEdges) {
    const auto g = build_type_graph(parse_all({{"I.java", "interface I extends J, java.io.Serializable {} interface J {}"}}));
    const auto& edges = g.impl_edges("I");
    ASSERT_EQ(edges.size(), 2u);
    EXPECT_EQ(edges[0], (TypeEdge{"J", true}));
    EXPECT_EQ(edges[1], (TypeEdge{"java.io.Serializable", false}));
    EXPECT_FALSE(g.super_edge("I").has_value());
}

TEST(TypeGraph, ResultDoesNotDependOnUnitOrder) {
    auto units = parse_all({{"p/A.java", "package p; class A extends B implements I {}"},
                            {"p/B.java", "package p; class B extends C {}"},
                            {"p/C.java", "package p; class C {}"},
                            {"p/I.java", "package p; interface I extends J {}"},
                            {"q/J.java", "package q; public interface J {}"},
                            {"p/D.java", "package p; class D extends B {}"}});
    const auto reference = build_type_graph(units);
    std::mt19937 rng(7);
    for (int round = 0; round < 10; ++round) {
        std::shuffle(units.begin(), units.end(), rng);
        const auto g = build_type_graph(units);
        ASSERT_EQ(g.types().size(), reference.types().size());
        for (const auto& [qn, t] : reference.types()) {
            EXPECT_EQ(*g.find(qn), t);
            EXPECT_EQ(g.super_edge(qn), reference.super_edge(qn));
            EXPECT_EQ(g.impl_edges(qn), reference.impl_edges(qn));
            EXPECT_EQ(g.subclasses(qn), reference.subclasses(qn));
        }
    }
    EXPECT_EQ(reference.subclasses("p.B"), (std::vector<std::string>{"p.A", "p.D"}));
}

TEST(TypeGraph, EveryResolvedEdgeTargetExists) {
    const auto g = build_type_graph(parse_all({{"A.java", "class A extends B implements I, Ext {} class B {} interface I {}"}}));
    for (const auto& [qn, _] : g.types()) {
        if (const auto& e = g.super_edge(qn); e && e->resolved) EXPECT_TRUE(g.contains(e->target));
        for (const TypeEdge& e : g.impl_edges(qn)) {
            if (e.resolved) EXPECT_TRUE(g.contains(e.target));
        }
    }
    EXPECT_EQ(g.impl_edges("A").size(), 2u);
}

} // namespace
} // namespace reusemine
