#include "doctest.h"

#include "supalg/crossratio.hpp"

using namespace supalg;

namespace {

SuperMatrix scalar_point(const VariableContext::Ptr& ctx, const Rational& v) {
    SuperMatrix m(BlockSignature{1, 0}, BlockSignature{1, 0}, ctx, Parity::Even);
    m.set(0, 0, SuperPolynomial::constant(ctx, v));
    return m;
}

PointQuadruple scalar_quadruple(const VariableContext::Ptr& ctx, int a, int b, int c, int d) {
    return PointQuadruple{scalar_point(ctx, Rational(a)), scalar_point(ctx, Rational(b)),
                          scalar_point(ctx, Rational(c)), scalar_point(ctx, Rational(d))};
}

} // namespace

TEST_CASE("scalar cross ratio of (0,1,2,3) is -1/3") {
    auto ctx = VariableContext::make(0, 0);
    auto q = scalar_quadruple(ctx, 0, 1, 2, 3);
    auto x = cross_ratio(q);
    CHECK(x.at(0, 0) == SuperPolynomial::constant(ctx, make_rational(-1, 3)));
    // det collection: {X, -1}
    auto inv = invariants_det(q);
    CHECK(inv.coeffs.size() == 2);
    CHECK(inv.coeffs[0] == SuperPolynomial::constant(ctx, make_rational(-1, 3)));
    CHECK(inv.coeffs[1] == SuperPolynomial::constant(ctx, Rational(-1)));
}

TEST_CASE("B = D gives the identity cross ratio") {
    auto ctx = VariableContext::make(0, 4);
    Rng rng(3);
    BlockSignature sig{1, 1};
    auto base = random_quadruple(rng, sig, ctx, false);
    PointQuadruple q{base.a, base.b, base.c, base.b}; // D = B; A-D = A-B invertible
    CHECK(cross_ratio(q) == SuperMatrix::identity(sig, ctx));
    // Ber((1 - lambda) 1_{1|1}) = 1: the series is 1 at order 0, then zero
    auto inv = invariants_ber(q);
    CHECK(inv.coeffs[0] == SuperPolynomial::one(ctx));
    for (size_t k = 1; k < inv.coeffs.size(); ++k) CHECK(inv.coeffs[k].is_zero());
}

TEST_CASE("degenerate quadruples are structured errors") {
    auto ctx = VariableContext::make(0, 0);
    auto q = scalar_quadruple(ctx, 0, 1, 1, 3); // C - B = 0
    CHECK_THROWS_AS(cross_ratio(q), input_error);
}

TEST_CASE("permutation identity in the scalar case") {
    auto ctx = VariableContext::make(0, 0);
    auto q1 = scalar_quadruple(ctx, 0, 1, 2, 3);
    auto q2 = scalar_quadruple(ctx, 0, 3, 2, 1); // (A, D, C, B)
    auto prod = cross_ratio(q1) * cross_ratio(q2);
    CHECK(prod == SuperMatrix::identity(BlockSignature{1, 0}, ctx));
}

TEST_CASE("1|1 cross ratio against a step-by-step oracle") {
    auto ctx = VariableContext::make(0, 4);
    Rng rng(7);
    BlockSignature sig{1, 1};
    for (int it = 0; it < 20; ++it) {
        PointQuadruple q = random_quadruple(rng, sig, ctx, false);
        auto x = cross_ratio(q);
        // multiply back through the two inverses:
        // X (A-D) = (A-B)(C-B)^{-1}(C-D)
        auto lhs = x * (q.a - q.d);
        auto rhs = (q.a - q.b) * (q.c - q.b).inverse() * (q.c - q.d);
        CHECK(lhs == rhs);
    }
}

TEST_CASE("invariants_ber on a purely even signature equals invariants_det") {
    auto ctx = VariableContext::make(0, 4);
    Rng rng(11);
    BlockSignature sig{2, 0};
    for (int it = 0; it < 10; ++it) {
        PointQuadruple q = random_quadruple(rng, sig, ctx, false);
        auto det = invariants_det(q);
        auto ber = invariants_ber(q, 2);
        REQUIRE(det.coeffs.size() == ber.coeffs.size());
        for (size_t k = 0; k < det.coeffs.size(); ++k) CHECK(det.coeffs[k] == ber.coeffs[k]);
    }
}

TEST_CASE("1|1 Berezinian series against the rational-function oracle") {
    // Ber(X - lambda) = ((a-lambda)(d-lambda) - bc) (d-lambda)^{-2} with
    // (d-lambda)^{-2} = sum (k+1) lambda^k d^{-(k+2)}
    auto ctx = VariableContext::make(0, 4);
    Rng rng(13);
    BlockSignature sig{1, 1};
    int done = 0;
    for (int it = 0; it < 40 && done < 15; ++it) {
        PointQuadruple q = random_quadruple(rng, sig, ctx, false);
        SuperMatrix x = SuperMatrix::identity(sig, ctx);
        InvariantCollection got{"", 0, {}};
        try {
            x = cross_ratio(q);
            got = invariants_ber(q, 2);
        } catch (const input_error&) {
            continue; // the D-block of X can still be singular
        }
        ++done;
        const SuperPolynomial& a = x.at(0, 0);
        const SuperPolynomial& b = x.at(0, 1);
        const SuperPolynomial& c = x.at(1, 0);
        const SuperPolynomial& d = x.at(1, 1);
        SuperPolynomial dinv = d.inverse();
        // numerator coefficients of (a-lambda)(d-lambda) - bc
        std::vector<SuperPolynomial> num{a * d - b * c, -(a + d), SuperPolynomial::one(ctx)};
        // denominator expansion coefficients of (d-lambda)^{-2}
        std::vector<SuperPolynomial> den;
        SuperPolynomial dpow = dinv * dinv;
        for (int k = 0; k <= 2; ++k) {
            den.push_back(dpow * Rational(k + 1));
            dpow = dpow * dinv;
        }
        for (int k = 0; k <= 2; ++k) {
            SuperPolynomial expect = SuperPolynomial::zero(ctx);
            for (int i = 0; i <= k && i < 3; ++i) expect += num[i] * den[k - i];
            CHECK(got.coeffs[k] == expect);
        }
    }
    CHECK(done >= 10);
}

TEST_CASE("qet collection: purely even vanishes, q(1) matches the log oracle") {
    auto ctx = VariableContext::make(0, 4);
    Rng rng(17);
    // purely even q-shaped quadruple -> all coefficients zero
    {
        BlockSignature sig{1, 1};
        auto mk = [&](const Rational& v) {
            SuperMatrix m(sig, sig, ctx, Parity::Even);
            m.set(0, 0, SuperPolynomial::constant(ctx, v));
            m.set(1, 1, SuperPolynomial::constant(ctx, v));
            return m;
        };
        PointQuadruple q{mk(Rational(0)), mk(Rational(1)), mk(Rational(2)), mk(Rational(3))};
        auto inv = invariants_qet(q, 2);
        for (const auto& c : inv.coeffs) CHECK(c.is_zero());
    }
    // q(1) oracle: qet(X - lambda) = b (a - lambda)^{-1} termwise
    int done = 0;
    for (int it = 0; it < 60 && done < 15; ++it) {
        PointQuadruple q = random_quadruple(rng, BlockSignature{1, 1}, ctx, true);
        SuperMatrix x = SuperMatrix::identity(BlockSignature{1, 1}, ctx);
        InvariantCollection got{"", 0, {}};
        try {
            x = cross_ratio(q);
            got = invariants_qet(q, 3);
        } catch (const input_error&) {
            continue;
        }
        ++done;
        const SuperPolynomial& a = x.at(0, 0);
        const SuperPolynomial& b = x.at(0, 1);
        SuperPolynomial apow = a.inverse();
        for (int k = 0; k <= 3; ++k) {
            CHECK(got.coeffs[k] == b * apow);
            apow = apow * a.inverse();
        }
    }
    CHECK(done >= 10);

    // B = D: X = 1, all coefficients vanish
    auto base = random_quadruple(rng, BlockSignature{1, 1}, ctx, true);
    auto inv = invariants_qet(PointQuadruple{base.a, base.b, base.c, base.b}, 2);
    for (const auto& c : inv.coeffs) CHECK(c.is_zero());
}

TEST_CASE("quadric cross ratio") {
    auto ctx = VariableContext::make(0, 2);
    // 1-dimensional form: CRQ is the square of the classical cross ratio
    {
        QuadricSpace space(1, 0, ctx);
        auto pt = [&](int v) { return QuadricPoint{SuperPolynomial::constant(ctx, Rational(v))}; };
        auto crq = cross_ratio_quadric(space, pt(0), pt(1), pt(2), pt(3));
        CHECK(crq == SuperPolynomial::constant(ctx, make_rational(1, 9))); // (-1/3)^2
    }
    // Euclidean square example: value 1
    {
        QuadricSpace space(2, 0, ctx);
        auto pt = [&](int x, int y) {
            return QuadricPoint{SuperPolynomial::constant(ctx, Rational(x)),
                                SuperPolynomial::constant(ctx, Rational(y))};
        };
        auto crq = cross_ratio_quadric(space, pt(0, 0), pt(1, 0), pt(1, 1), pt(0, 1));
        CHECK(crq == SuperPolynomial::one(ctx));
    }
    // B = D: value 1
    {
        QuadricSpace space(2, 1, ctx);
        Rng rng(5);
        auto rnd = [&]() {
            QuadricPoint p;
            for (int i = 0; i < space.dim(); ++i) {
                SuperPolynomial c =
                    random_homogeneous_poly(rng, ctx, space.basis_parity(i), 1);
                if (i < 2) c += SuperPolynomial::constant(ctx, rng.rational());
                p.push_back(std::move(c));
            }
            return p;
        };
        for (int it = 0; it < 20; ++it) {
            auto a = rnd(), b = rnd(), c = rnd();
            try {
                auto crq = cross_ratio_quadric(space, a, b, c, b);
                CHECK(crq == SuperPolynomial::one(ctx));
            } catch (const input_error&) {
                continue;
            }
        }
    }
    // isotropic denominators are structured errors
    {
        QuadricSpace space(1, 0, ctx);
        auto pt = [&](int v) { return QuadricPoint{SuperPolynomial::constant(ctx, Rational(v))}; };
        CHECK_THROWS_AS(cross_ratio_quadric(space, pt(0), pt(1), pt(1), pt(3)), input_error);
    }
}

TEST_CASE("invariance harness runs clean on small samples") {
    for (auto [variant, sig] : std::vector<std::pair<std::string, BlockSignature>>{
             {"det", {1, 0}}, {"det", {2, 0}}, {"ber", {1, 1}}, {"ber", {2, 1}}}) {
        CAPTURE(variant);
        CAPTURE(sig.even_dim);
        auto rep = invariance_harness(variant, sig, 4, 12, 2024);
        CHECK(rep.ok);
        CHECK(rep.verified >= 6);
        if (!rep.ok) MESSAGE(rep.witness);
    }
    auto qrep = invariance_harness("qet", BlockSignature{1, 1}, 4, 12, 4040);
    CHECK(qrep.ok);
    CHECK(qrep.verified >= 6);
    auto quad = quadric_invariance_harness(2, 1, 4, 12, 99);
    CHECK(quad.ok);
    CHECK(quad.verified >= 6);
}
