#include <random>

#include "doctest.h"
#include "fdmodule.hpp"

using alg::Algebra;
using fdmod::Module;
using fdmod::Submodule;
using gfp::Mat;

namespace {

Algebra ut2() { return alg::upper_triangular(2, 2).algebra; }

// Simple modules of UT2(F2): S1 has e11 acting as 1, S2 has e22 acting as 1.
Module simple1(const Algebra& s) {
    std::vector<Mat> act = {Mat::identity(1, 2), Mat(1, 1, 2), Mat(1, 1, 2)};
    return Module::from_action(s, 1, act);
}
Module simple2(const Algebra& s) {
    std::vector<Mat> act = {Mat(1, 1, 2), Mat(1, 1, 2), Mat::identity(1, 2)};
    return Module::from_action(s, 1, act);
}

Mat single_row(int n, int idx) {
    Mat m(1, n, 2);
    m.set(0, idx, 1);
    return m;
}

// Random submodule: closure of a few random vectors.
Mat random_submodule_rows(const Module& m, std::mt19937_64& g, int tries) {
    Mat rows(tries, m.dim(), m.algebra().p());
    for (int i = 0; i < tries; ++i)
        for (int c = 0; c < m.dim(); ++c) rows.set(i, c, static_cast<int>(g() % m.algebra().p()));
    return fdmod::submodule_closure(m, rows);
}

}  // namespace

TEST_CASE("radical and top of the regular module") {
    Algebra s = ut2();
    Module reg = fdmod::regular_module(s);
    Submodule rad = fdmod::radical_submodule(reg);
    CHECK(rad.dim() == 1);
    CHECK(rad.basis() == single_row(3, 1));  // span{e12}
    CHECK(fdmod::top(reg).dim() == 2);
    CHECK(fdmod::radical_submodule(fdmod::top(reg)).dim() == 0);  // top is semisimple

    CHECK(fdmod::top(simple1(s)).dim() == 1);
    CHECK(fdmod::top(fdmod::zero_module(s)).dim() == 0);
}

TEST_CASE("radical of a principal indecomposable") {
    Algebra s = ut2();
    Module reg = fdmod::regular_module(s);
    // e11 S = span{e11, e12}
    Mat rows = gfp::row_space(s.left_mul(s.basis_element(0)));
    auto sub = fdmod::submodule_module(reg, Submodule(reg, rows));
    CHECK(sub.module.dim() == 2);
    CHECK(fdmod::radical_submodule(sub.module).dim() == 1);
}

TEST_CASE("is_small basics and the brute referee") {
    Algebra s = ut2();
    Module reg = fdmod::regular_module(s);
    Submodule zero(reg, Mat(0, 3, 2));
    CHECK(fdmod::is_small(zero, reg));
    CHECK(fdmod::brute_small(zero, reg));

    Submodule all(reg, Mat::identity(3, 2));
    CHECK(!fdmod::is_small(all, reg));
    CHECK(!fdmod::brute_small(all, reg));

    Submodule j(reg, single_row(3, 1));
    CHECK(fdmod::is_small(j, reg));
    CHECK(fdmod::brute_small(j, reg));

    // A simple projective summand is not small: its complement is proper.
    Submodule soc(reg, single_row(3, 2));  // e22 S
    CHECK(!fdmod::is_small(soc, reg));
    CHECK(!fdmod::brute_small(soc, reg));
}

TEST_CASE("is_small agrees with brute_small on random instances") {
    Algebra s = ut2();
    std::mt19937_64 g(2024);
    int checked = 0;
    for (int trial = 0; trial < 60; ++trial) {
        Module m = fdmod::random_module(s, 1 + static_cast<int>(g() % 2), static_cast<int>(g() % 3), g());
        if (m.dim() > 6 || m.dim() == 0) continue;
        Submodule x(m, random_submodule_rows(m, g, 1 + static_cast<int>(g() % 2)));
        CHECK(fdmod::is_small(x, m) == fdmod::brute_small(x, m));
        ++checked;
    }
    CHECK(checked > 10);
}

TEST_CASE("hom spaces") {
    Algebra s = ut2();
    Module reg = fdmod::regular_module(s);
    Module s1 = simple1(s), s2 = simple2(s);

    // Hom(M, M) contains the identity (in the span of the returned basis).
    auto endos = fdmod::hom_space(reg, reg);
    Mat flat(static_cast<int>(endos.size()), 9, 2);
    for (size_t i = 0; i < endos.size(); ++i)
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c) flat.set(static_cast<int>(i), r * 3 + c, endos[i].matrix().at(r, c));
    Mat idflat(1, 9, 2);
    for (int r = 0; r < 3; ++r) idflat.set(0, r * 3 + r, 1);
    CHECK(gfp::rowspace_contains(gfp::row_space(flat), idflat));

    // dim Hom(A_A, M) = dim M.
    CHECK(fdmod::hom_space(reg, s1).size() == 1);
    CHECK(fdmod::hom_space(reg, reg).size() == 3);

    // Schur: no maps between the two distinct simples.
    CHECK(fdmod::hom_space(s1, s2).empty());
    CHECK(fdmod::hom_space(s2, s1).empty());
}

TEST_CASE("projective covers over UT2(F2)") {
    Algebra s = ut2();
    Module s1 = simple1(s), s2 = simple2(s);

    auto c1 = fdmod::projective_cover(s1);
    CHECK(c1.p.dim() == 2);
    CHECK(c1.pi.is_onto());
    CHECK(c1.pi.kernel().rows() == 1);
    CHECK(fdmod::is_right_minimal(c1.pi).minimal);

    auto c2 = fdmod::projective_cover(s2);
    CHECK(c2.p.dim() == 1);
    CHECK(fdmod::is_projective(s2));
    CHECK(!fdmod::is_projective(s1));

    Module both = fdmod::direct_sum(s1, s2).module;
    CHECK(fdmod::projective_cover(both).p.dim() == 3);

    // covering a projective is bijective
    Module reg = fdmod::regular_module(s);
    auto cr = fdmod::projective_cover(reg);
    CHECK(cr.p.dim() == 3);
    CHECK(cr.pi.is_bijective());
    CHECK(fdmod::is_projective(fdmod::zero_module(s)));
}

TEST_CASE("cover postconditions on random modules") {
    Algebra s = ut2();
    std::mt19937_64 g(99);
    for (int trial = 0; trial < 25; ++trial) {
        Module m = fdmod::random_module(s, 1 + static_cast<int>(g() % 2), static_cast<int>(g() % 3), g());
        auto c = fdmod::projective_cover(m);
        CHECK(c.pi.is_onto());
        CHECK(gfp::rowspace_contains(fdmod::radical_submodule(c.p).basis(), c.pi.kernel()));
        CHECK(fdmod::top(c.p).dim() == fdmod::top(m).dim());
        CHECK(fdmod::is_right_minimal(c.pi).minimal);
        // minimality matches smallness of the kernel for onto projective sources
        Submodule ker(c.p, c.pi.kernel());
        CHECK(fdmod::is_small(ker, c.p) == fdmod::is_right_minimal(c.pi).minimal);
    }
}

TEST_CASE("covers of isomorphic inputs agree in dimension and top") {
    Algebra s = ut2();
    Module s1 = simple1(s);
    // same module presented with a permuted direct-sum order
    Module m1 = fdmod::direct_sum(s1, fdmod::regular_module(s)).module;
    Module m2 = fdmod::direct_sum(fdmod::regular_module(s), s1).module;
    auto c1 = fdmod::projective_cover(m1), c2 = fdmod::projective_cover(m2);
    CHECK(c1.p.dim() == c2.p.dim());
    CHECK(fdmod::top(c1.p).dim() == fdmod::top(c2.p).dim());
    CHECK(fdmod::hom_space(c1.p, c2.p).size() == fdmod::hom_space(c2.p, c1.p).size());
}

TEST_CASE("right minimality") {
    Algebra s = ut2();
    Module reg = fdmod::regular_module(s);
    auto id = fdmod::Map(reg, reg, Mat::identity(3, 2));
    CHECK(fdmod::is_right_minimal(id).minimal);

    // projection P(S1) + S2 -> S1 killing the summand S2 is not minimal
    Module s1 = simple1(s);
    auto c1 = fdmod::projective_cover(s1);
    auto sum = fdmod::direct_sum(c1.p, simple2(s));
    fdmod::Map proj = fdmod::compose(sum.proj_a, c1.pi);
    CHECK(proj.is_onto());
    CHECK(!fdmod::is_right_minimal(proj).minimal);
}

TEST_CASE("ext1 over UT2(F2)") {
    Algebra s = ut2();
    Module s1 = simple1(s), s2 = simple2(s);
    CHECK(fdmod::ext1(s1, s2) == 1);
    CHECK(fdmod::ext1(s1, s1) == 0);
    CHECK(fdmod::ext1(s2, s1) == 0);
    CHECK(fdmod::ext1(s2, s2) == 0);
    // Ext^1(P, -) = 0 for projectives
    Module reg = fdmod::regular_module(s);
    CHECK(fdmod::ext1(reg, s1) == 0);
    CHECK(fdmod::ext1(reg, reg) == 0);
}

TEST_CASE("ext1 vanishes on projectives from the random battery") {
    Algebra s = ut2();
    std::mt19937_64 g(7);
    for (int trial = 0; trial < 10; ++trial) {
        Module m = fdmod::random_module(s, 1 + static_cast<int>(g() % 2), static_cast<int>(g() % 2), g());
        Module reg = fdmod::regular_module(s);
        CHECK(fdmod::ext1(reg, m) == 0);
    }
}

TEST_CASE("induction along UT2 -> M2") {
    auto [s, inc] = alg::upper_triangular(2, 2);
    Module reg = fdmod::regular_module(s);
    Module st = fdmod::induce_right(reg, inc);
    CHECK(st.dim() == 4);  // S tensor_S T = T

    Module s1 = simple1(s);
    CHECK(fdmod::induce_right(s1, inc).dim() == 0);  // collapses

    // additivity on direct sums
    Module s2 = simple2(s);
    Module sum = fdmod::direct_sum(s1, s2).module;
    CHECK(fdmod::induce_right(sum, inc).dim() ==
          fdmod::induce_right(s1, inc).dim() + fdmod::induce_right(s2, inc).dim());
}

TEST_CASE("restriction along morphisms") {
    auto [s, inc] = alg::upper_triangular(2, 2);
    Algebra m2 = inc.target();
    Module regt = fdmod::regular_module(m2);
    Module restricted = fdmod::restrict(inc, regt);
    CHECK(restricted.dim() == 4);  // dim unchanged
    CHECK(restricted.algebra().same(s));

    // restrict along the identity morphism keeps the action
    alg::Morphism id(s, s, Mat::identity(3, 2));
    Module reg = fdmod::regular_module(s);
    Module same = fdmod::restrict(id, reg);
    for (int i = 0; i < 3; ++i) CHECK(same.action(i) == reg.action(i));
}

TEST_CASE("random modules: determinism and edge cases") {
    Algebra s = ut2();
    Module a = fdmod::random_module(s, 2, 2, 42);
    Module b = fdmod::random_module(s, 2, 2, 42);
    CHECK(a.dim() == b.dim());
    for (int i = 0; i < 3; ++i) CHECK(a.action(i) == b.action(i));

    CHECK(fdmod::random_module(s, 2, 0, 1).dim() == 6);  // free
    // relations spanning everything gives 0; seed-independent because the
    // closure of enough random rows over 3 generators almost surely fills up,
    // so use an explicit full-row instance instead.
    Module f1 = fdmod::free_module(s, 1);
    Mat all = Mat::identity(3, 2);
    CHECK(fdmod::quotient_module(f1, Submodule(f1, all)).module.dim() == 0);
}

TEST_CASE("quotient and submodule views compose correctly") {
    Algebra s = ut2();
    Module reg = fdmod::regular_module(s);
    Submodule rad = fdmod::radical_submodule(reg);
    auto q = fdmod::quotient_module(reg, rad);
    CHECK(q.projection.is_onto());
    CHECK(q.projection.kernel() == rad.basis());

    auto sub = fdmod::submodule_module(reg, rad);
    CHECK(sub.embedding.is_injective());
    CHECK(gfp::row_space(sub.embedding.matrix()) == rad.basis());
}
