#include "doctest.h"

#include "supalg/sampling.hpp"
#include "supalg/vectorfield.hpp"

using namespace supalg;

TEST_CASE("vector field brackets") {
    auto ctx = VariableContext::make(1, 1);
    auto x = SuperPolynomial::even_var(ctx, 0);
    auto th = SuperPolynomial::odd_var(ctx, 0);

    // [d_x, x d_x] = d_x
    PolyVectorField dx(ctx), xdx(ctx);
    dx.set_component(0, SuperPolynomial::one(ctx));
    xdx.set_component(0, x);
    CHECK(vf_bracket(dx, xdx) == dx);

    // [d_th, th d_th] = d_th (anticommutator of odd fields)
    PolyVectorField dt(ctx), tdt(ctx);
    dt.set_component(1, SuperPolynomial::one(ctx));
    tdt.set_component(1, th);
    CHECK(vf_bracket(dt, tdt) == dt);

    // [X, X] = 0 for even X
    PolyVectorField even(ctx);
    even.set_component(0, x * x);
    even.set_component(1, x * th);
    CHECK(vf_bracket(even, even).is_zero());

    CHECK_THROWS_AS(vf_bracket(dx, PolyVectorField(VariableContext::make(0, 2))), input_error);
}

TEST_CASE("homological check") {
    CHECK(is_homological(ce_field(build_classical(Series::sl, 2, 0))).homological);

    // X = t1 t2 d_t3 on 0|3 squares to zero
    auto ctx = VariableContext::make(0, 3);
    PolyVectorField x(ctx);
    x.set_component(2, SuperPolynomial::odd_var(ctx, 0) * SuperPolynomial::odd_var(ctx, 1));
    CHECK(is_homological(x).homological);

    // X = (1 + t2 t3) d_t1 + t1 t2 d_t2 has [X, X] != 0
    PolyVectorField y(ctx);
    y.set_component(0, SuperPolynomial::one(ctx) +
                           SuperPolynomial::odd_var(ctx, 1) * SuperPolynomial::odd_var(ctx, 2));
    y.set_component(1, SuperPolynomial::odd_var(ctx, 0) * SuperPolynomial::odd_var(ctx, 1));
    auto rep = is_homological(y);
    CHECK_FALSE(rep.homological);
    CHECK_FALSE(rep.witness.empty());

    // even input rejected
    PolyVectorField even(ctx);
    even.set_component(0, SuperPolynomial::odd_var(ctx, 1));
    CHECK_THROWS_AS(is_homological(even), input_error);
}

TEST_CASE("ce field squares to zero exactly on valid algebras, both directions") {
    std::vector<std::pair<std::string, LieSuperAlgebra>> algebras;
    algebras.emplace_back("gl(2)", build_classical(Series::gl, 2, 0));
    algebras.emplace_back("sl(2)", build_classical(Series::sl, 2, 0));
    algebras.emplace_back("sl(3)", build_classical(Series::sl, 3, 0));
    algebras.emplace_back("gl(1|1)", build_classical(Series::gl, 1, 1));
    algebras.emplace_back("osp(1|2)", build_classical(Series::osp, 1, 1));
    algebras.emplace_back("q(2)", build_classical(Series::q, 2));
    algebras.emplace_back("pe(2)", build_classical(Series::pe, 2));
    algebras.emplace_back("sl(1|2)", build_classical(Series::sl, 1, 2));
    for (const auto& [name, g] : algebras) {
        CAPTURE(name);
        CHECK(g.check_axioms().ok);
        CHECK(is_homological(ce_field(g)).homological);
    }
    // perturbations break it, with a witness
    Rng rng(99);
    int broken = 0;
    for (const auto& [name, g] : algebras) {
        LieSuperAlgebra bad = g;
        int i = rng.uniform(0, g.dim() - 1), j = rng.uniform(0, g.dim() - 1);
        int k = rng.uniform(0, g.dim() - 1);
        // keep parities consistent so the ce coefficients stay homogeneous
        if (bad.parity(k) != bad.parity(i) + bad.parity(j)) continue;
        bad.perturb(i, j, k, Rational(1));
        bad.perturb(j, i, k,
                    (bad.parity(i) == Parity::Odd && bad.parity(j) == Parity::Odd) ? Rational(1)
                                                                                   : Rational(-1));
        if (bad.check_axioms().ok) continue;
        auto rep = is_homological(ce_field(bad));
        CHECK_FALSE(rep.homological);
        CHECK_FALSE(rep.witness.empty());
        ++broken;
    }
    CHECK(broken >= 4);
}

TEST_CASE("abelian ce field vanishes") {
    std::vector<BasisElement> basis{{"x", Parity::Even, std::nullopt}};
    LieSuperAlgebra g(basis, {{{}}});
    CHECK(ce_field(g).is_zero());
}

TEST_CASE("odd Poisson bracket: convention, Jacobi, homomorphism") {
    auto ctx = VariableContext::make(0, 4);
    auto po = OddPoissonContext::dual_pairing(ctx);
    auto t = [&](int i) { return SuperPolynomial::odd_var(ctx, i); };
    // dual pairing: t1 pairs with t3, t2 with t4
    CHECK(po.bracket(t(0), t(2)) == SuperPolynomial::one(ctx));
    CHECK(po.bracket(SuperPolynomial::one(ctx), t(0) * t(1)).is_zero());

    // exhaustive super Jacobi on monomials of Lambda(t1..t4)
    for (int a = 0; a < 16; ++a)
        for (int b = 0; b < 16; ++b)
            for (int c = 0; c < 16; ++c) {
                auto f = SuperPolynomial::monomial(ctx, Monomial{{}, (std::uint64_t)a}, Rational(1));
                auto g = SuperPolynomial::monomial(ctx, Monomial{{}, (std::uint64_t)b}, Rational(1));
                auto h = SuperPolynomial::monomial(ctx, Monomial{{}, (std::uint64_t)c}, Rational(1));
                bool flip = (__builtin_popcount(a) & 1) && (__builtin_popcount(b) & 1);
                auto lhs = po.bracket(f, po.bracket(g, h));
                auto rhs = po.bracket(po.bracket(f, g), h) +
                           (flip ? -po.bracket(g, po.bracket(f, h))
                                 : po.bracket(g, po.bracket(f, h)));
                REQUIRE(lhs == rhs);
            }

    // [H_f, H_g] = H_{f,g}
    Rng rng(5);
    for (int it = 0; it < 60; ++it) {
        Parity pf = rng.flip() ? Parity::Even : Parity::Odd;
        Parity pg = rng.flip() ? Parity::Even : Parity::Odd;
        auto f = random_homogeneous_poly(rng, ctx, pf, 3);
        auto g = random_homogeneous_poly(rng, ctx, pg, 3);
        CHECK(vf_bracket(po.hamiltonian_field(f), po.hamiltonian_field(g)) ==
              po.hamiltonian_field(po.bracket(f, g)));
    }

    // degenerate pairing rejected
    std::vector<std::vector<Rational>> w(2, std::vector<Rational>(2, Rational(0)));
    CHECK_THROWS_AS(OddPoissonContext(VariableContext::make(0, 2), w), input_error);
}

TEST_CASE("derived bracket") {
    // graded gl(1|1): p = E12 is odd, degree +1, [p,p] = 0
    auto g = build_classical(Series::gl, 1, 1);
    std::vector<Rational> h(4, Rational(0));
    int e11 = -1, e12 = -1;
    for (int i = 0; i < 4; ++i) {
        if (g.element(i).name == "E_1_1") e11 = i;
        if (g.element(i).name == "E_1_2") e12 = i;
    }
    h[e11] = 1;
    auto graded = grade_by_element(g, h, nullptr);
    std::vector<Rational> p(4, Rational(0));
    p[e12] = 1;
    auto derived = derived_bracket(graded, p);
    CHECK(derived.dim() == 1);
    CHECK(derived.check_axioms().ok);
    CHECK(derived.parity(0) == Parity::Even); // shifted from odd E21

    // p = 0 gives the abelian algebra
    auto ab = derived_bracket(graded, std::vector<Rational>(4, Rational(0)));
    CHECK(ab.bracket_basis(0, 0).empty());

    // an even p is rejected, and a non-homological p is rejected
    std::vector<Rational> peven(4, Rational(0));
    peven[e11] = 1; // degree 0 anyway
    CHECK_THROWS_AS(derived_bracket(graded, peven), input_error);
}

TEST_CASE("derived bracket from ce data passes super Jacobi") {
    // take g = sl(2) ce-context: build a graded algebra whose degree-(-1)
    // part is To the point: use gl(1|1) with the block grading and odd p
    auto g = build_classical(Series::gl, 2, 2);
    std::vector<Rational> h(g.dim(), Rational(0));
    for (int i = 0; i < g.dim(); ++i)
        if (g.element(i).name == "E_1_1" || g.element(i).name == "E_3_3") h[i] = 1;
    auto graded = grade_by_element(g, h, nullptr);
    // odd homological p of degree +1: E_1_4 (even-odd position, odd parity)
    std::vector<Rational> p(g.dim(), Rational(0));
    for (int i = 0; i < g.dim(); ++i)
        if (g.element(i).name == "E_1_4") p[i] = 1;
    // check degree: [h, E_1_4] = E_1_4 (col 4 has h = 0, row 1 has h = 1)
    auto derived = derived_bracket(graded, p);
    CHECK(derived.check_axioms().ok);
}

TEST_CASE("divergence") {
    auto ctx = VariableContext::make(0, 3);
    PolyVectorField dt(ctx);
    dt.set_component(0, SuperPolynomial::one(ctx));
    CHECK(divergence(dt).is_zero());

    PolyVectorField e(ctx);
    e.set_component(0, SuperPolynomial::odd_var(ctx, 0));
    auto d = divergence(e);
    CHECK((d == SuperPolynomial::one(ctx) || d == -SuperPolynomial::one(ctx)));

    CHECK(divergence(ce_field(build_classical(Series::sl, 2, 0))).is_zero());

    // divergence-free fields close under the bracket
    Rng rng(17);
    int tested = 0;
    for (int it = 0; it < 4000 && tested < 60; ++it) {
        PolyVectorField x(ctx), y(ctx);
        Parity px = rng.flip() ? Parity::Even : Parity::Odd;
        Parity py = rng.flip() ? Parity::Even : Parity::Odd;
        for (int c = 0; c < 3; ++c) {
            x.set_component(c, random_homogeneous_poly(rng, ctx, px + Parity::Odd, 2));
            y.set_component(c, random_homogeneous_poly(rng, ctx, py + Parity::Odd, 2));
        }
        if (!divergence(x).is_zero() || !divergence(y).is_zero()) continue;
        if (x.is_zero() || y.is_zero()) continue;
        ++tested;
        CHECK(divergence(vf_bracket(x, y)).is_zero());
    }
    CHECK(tested >= 30);

    // even variables present: rejected
    PolyVectorField bad(VariableContext::make(1, 1));
    CHECK_THROWS_AS(divergence(bad), input_error);
}

TEST_CASE("generating functions for sl2, sl3, gl2") {
    {
        auto g = build_classical(Series::sl, 2, 0);
        auto k = killing_form(g);
        int h = -1;
        for (int i = 0; i < g.dim(); ++i)
            if (g.element(i).name == "h_1") h = i;
        CHECK(k[h][h] == Rational(8));
        auto gf = generating_function(g, k);
        CHECK(gf.poisson.hamiltonian_field(gf.h) == ce_field(g));
        CHECK(gf.poisson.bracket(gf.h, gf.h).is_zero());
        // H is the single cubic in the three dual variables
        CHECK(gf.h.term_count() == 1);
    }
    {
        auto g = build_classical(Series::sl, 3, 0);
        auto gf = generating_function(g, killing_form(g));
        CHECK(gf.poisson.hamiltonian_field(gf.h) == ce_field(g));
        CHECK(gf.poisson.bracket(gf.h, gf.h).is_zero());
    }
    {
        auto g = build_classical(Series::gl, 2, 0);
        // trace form from the defining representation
        const auto& mats = *g.realization();
        std::vector<std::vector<Rational>> form(g.dim(), std::vector<Rational>(g.dim()));
        for (int i = 0; i < g.dim(); ++i)
            for (int j = 0; j < g.dim(); ++j)
                form[i][j] = (mats[i] * mats[j]).supertrace().body();
        auto gf = generating_function(g, form);
        CHECK(gf.poisson.hamiltonian_field(gf.h) == ce_field(g));
        CHECK(gf.poisson.bracket(gf.h, gf.h).is_zero());
    }
    // abelian: H = 0
    {
        std::vector<BasisElement> basis{{"x", Parity::Even, std::nullopt},
                                        {"y", Parity::Even, std::nullopt}};
        LieSuperAlgebra g(basis, std::vector<std::vector<std::map<int, Rational>>>(
                                     2, std::vector<std::map<int, Rational>>(2)));
        std::vector<std::vector<Rational>> id{{Rational(1), Rational(0)},
                                              {Rational(0), Rational(1)}};
        auto gf = generating_function(g, id);
        CHECK(gf.h.is_zero());
    }
    // a non-invariant form is rejected
    {
        auto g = build_classical(Series::sl, 2, 0);
        std::vector<std::vector<Rational>> id(3, std::vector<Rational>(3, Rational(0)));
        for (int i = 0; i < 3; ++i) id[i][i] = 1;
        CHECK_THROWS_AS(generating_function(g, id), input_error);
    }
}

TEST_CASE("kan of the unital one-dimensional algebra is sl(2)-like") {
    auto j = jordan_matrix(JordanKind::Mat, 1, 0);
    auto kan = kan_build(j);
    auto rep = kan.algebra.grading_report();
    CHECK(rep.dims.at(-1) == std::pair{1, 0});
    CHECK(rep.dims.at(0) == std::pair{1, 0});
    CHECK(rep.dims.at(1) == std::pair{1, 0});
    CHECK(kan.algebra.check_axioms().ok);
    // sl(2) relations: with X (deg -1), L (deg 0), P (deg +1):
    // [L, X] = c1 X, [L, P] = c2 P with opposite signs, [P, X] = L
    auto x = std::vector<Rational>{1, 0, 0};
    auto l = std::vector<Rational>{0, 1, 0};
    auto p = std::vector<Rational>{0, 0, 1};
    auto lx = kan.algebra.bracket(l, x);
    auto lp = kan.algebra.bracket(l, p);
    CHECK(!is_zero(lx[0]));
    CHECK(!is_zero(lp[2]));
    CHECK(lx[0] == -lp[2]);
    auto px = kan.algebra.bracket(p, x);
    CHECK(!is_zero(px[1]));
}

TEST_CASE("kan of the two-dimensional bilinear algebra has total dimension 6") {
    // by hand: kan_0 = span(Euler field, rotation), kan_1 = span(P, [L,P]),
    // so dims are (2|0), (2|0), (2|0) -- the o(4)-sized algebra sl2 + sl2
    auto kan = kan_build(jordan_bilinear(2, 0));
    auto rep = kan.algebra.grading_report();
    CHECK(kan.algebra.dim() == 6);
    CHECK(rep.dims.at(-1) == std::pair{2, 0});
    CHECK(rep.dims.at(0) == std::pair{2, 0});
    CHECK(rep.dims.at(1) == std::pair{2, 0});
}

TEST_CASE("kan roundtrip is the identity for the in-scope constructions") {
    std::vector<std::pair<std::string, JordanSuperAlgebra>> algebras;
    algebras.emplace_back("Mat(1|0)", jordan_matrix(JordanKind::Mat, 1, 0));
    algebras.emplace_back("Mat(1|1)", jordan_matrix(JordanKind::Mat, 1, 1));
    algebras.emplace_back("Mat(2|0)", jordan_matrix(JordanKind::Mat, 2, 0));
    algebras.emplace_back("Q(1)", jordan_matrix(JordanKind::Q, 1));
    algebras.emplace_back("Q(2)", jordan_matrix(JordanKind::Q, 2));
    algebras.emplace_back("OSp(1|2)", jordan_matrix(JordanKind::OSp, 1, 1));
    algebras.emplace_back("Pe(2)", jordan_matrix(JordanKind::Pe, 2));
    algebras.emplace_back("bilinear(2,0)", jordan_bilinear(2, 0));
    algebras.emplace_back("bilinear(2,1)", jordan_bilinear(2, 1));
    algebras.emplace_back("bilinear(1,1)", jordan_bilinear(1, 1));
    algebras.emplace_back("hk(2)", jordan_hamiltonian_odd(2));
    for (const auto& [name, j] : algebras) {
        CAPTURE(name);
        auto rep = kan_roundtrip(j);
        CHECK(rep.ok);
        if (!rep.ok) MESSAGE(rep.witness);
    }
    // the zero-product one-dimensional algebra: L_a = 0 and P = 0
    std::vector<BasisElement> basis{{"z", Parity::Even, std::nullopt}};
    JordanSuperAlgebra zero(basis, {{{}}});
    auto kz = kan_build(zero);
    auto rep = kz.algebra.grading_report();
    CHECK(rep.dims.at(-1) == std::pair{1, 0});
    CHECK(kz.algebra.dim() == 1); // no degree-0 or +1 fields survive
}

TEST_CASE("a non-homological odd p is rejected by derived_bracket") {
    // gl(2|2) graded by diag(2,0|1,1): p = E_1_3 + E_3_2 is odd of degree +1
    // and [p,p] = 2 E_1_2 != 0
    auto g = build_classical(Series::gl, 2, 2);
    std::vector<Rational> h(g.dim(), Rational(0)), p(g.dim(), Rational(0));
    for (int i = 0; i < g.dim(); ++i) {
        if (g.element(i).name == "E_1_1") h[i] = 2;
        if (g.element(i).name == "E_3_3" || g.element(i).name == "E_4_4") h[i] = 1;
        if (g.element(i).name == "E_1_3" || g.element(i).name == "E_3_2") p[i] = 1;
    }
    auto graded = grade_by_element(g, h, nullptr);
    auto pp = graded.bracket(p, p);
    bool nonzero = false;
    for (const auto& c : pp)
        if (!is_zero(c)) nonzero = true;
    REQUIRE(nonzero);
    CHECK_THROWS_AS(derived_bracket(graded, p), input_error);
}
