#include "doctest.h"

#include "supalg/sampling.hpp"
#include "supalg/superpoly.hpp"

using namespace supalg;

namespace {

VariableContext::Ptr ctx4() { return VariableContext::make(1, 4); }

SuperPolynomial theta(const VariableContext::Ptr& c, int i) {
    return SuperPolynomial::odd_var(c, i);
}

} // namespace

TEST_CASE("ring basics and anticommutation") {
    auto c = ctx4();
    auto t1 = theta(c, 0), t2 = theta(c, 1);
    CHECK(t1 * t2 == -(t2 * t1));
    CHECK((t1 * t1).is_zero());

    auto one = SuperPolynomial::one(c);
    auto p = one + t1 * t2;
    auto q = one - t1 * t2;
    CHECK(p * q == one); // (t1 t2)^2 = 0

    auto x = SuperPolynomial::even_var(c, 0);
    CHECK(x * t1 == t1 * x);
}

TEST_CASE("context mismatch is rejected") {
    auto a = SuperPolynomial::one(ctx4());
    auto b = SuperPolynomial::one(VariableContext::make(0, 2));
    CHECK_THROWS_AS(a * b, input_error);
    CHECK_THROWS_AS(a + b, input_error);
}

TEST_CASE("parity classification") {
    auto c = ctx4();
    auto t1 = theta(c, 0), t2 = theta(c, 1), t3 = theta(c, 2);
    CHECK(*(t1 * t2).parity() == Parity::Even);
    CHECK(*(t1 + t1 * t2 * t3).parity() == Parity::Odd);
    CHECK_FALSE((SuperPolynomial::one(c) + t1).parity().has_value());
    CHECK(*SuperPolynomial::zero(c).parity() == Parity::Even);
}

TEST_CASE("body-soul inverse") {
    auto c = ctx4();
    auto one = SuperPolynomial::one(c);
    auto t1 = theta(c, 0), t2 = theta(c, 1);

    CHECK((one + t1 * t2).inverse() == one - t1 * t2);
    CHECK(SuperPolynomial::constant(c, Rational(2)).inverse() ==
          SuperPolynomial::constant(c, make_rational(1, 2)));
    CHECK_THROWS_AS(t1.inverse(), input_error);

    auto x = SuperPolynomial::even_var(c, 0);
    CHECK_THROWS_AS((one + x).inverse(), unsupported_error);
}

TEST_CASE("inverse contract on random invertible elements") {
    auto c = ctx4();
    Rng rng(12345);
    auto one = SuperPolynomial::one(c);
    for (int it = 0; it < 200; ++it) {
        SuperPolynomial a = SuperPolynomial::constant(c, rng.nonzero_rational());
        a += random_homogeneous_poly(rng, c, Parity::Even, 3, false).soul();
        a += random_homogeneous_poly(rng, c, Parity::Odd, 2).soul();
        CHECK(a * a.inverse() == one);
    }
}

TEST_CASE("exp and log") {
    auto c = VariableContext::make(0, 4);
    auto one = SuperPolynomial::one(c);
    auto t = [&](int i) { return theta(c, i); };

    CHECK((t(0) * t(1)).exp() == one + t(0) * t(1));
    CHECK((one + t(0) * t(1)).log() == t(0) * t(1));

    // exp(t1 t2 + t3 t4) = 1 + t1 t2 + t3 t4 + t1 t2 t3 t4, by expanding the
    // series: the square is 2 t1 t2 t3 t4 and the cube vanishes.
    auto a = t(0) * t(1) + t(2) * t(3);
    CHECK(a.exp() == one + t(0) * t(1) + t(2) * t(3) + t(0) * t(1) * t(2) * t(3));

    CHECK_THROWS_AS(one.exp(), input_error);          // nonzero body
    CHECK_THROWS_AS((t(0) * t(1)).log(), input_error); // body != 1
    CHECK_THROWS_AS(t(0).exp(), input_error);          // odd
}

TEST_CASE("exp/log round trip on random nilpotent even elements") {
    auto c = VariableContext::make(0, 6);
    Rng rng(777);
    for (int it = 0; it < 100; ++it) {
        auto a = random_homogeneous_poly(rng, c, Parity::Even, 3, false).soul();
        CHECK(a.exp().log() == a);
        auto n = random_homogeneous_poly(rng, c, Parity::Even, 3, false).soul();
        CHECK((SuperPolynomial::one(c) + n).log().exp() == SuperPolynomial::one(c) + n);
    }
}

TEST_CASE("left partial derivatives") {
    auto c = ctx4();
    auto t1 = theta(c, 0), t2 = theta(c, 1);
    auto x = SuperPolynomial::even_var(c, 0);

    CHECK((t1 * t2).d_odd(0) == t2);
    CHECK((t1 * t2).d_odd(1) == -t1);
    CHECK((x * x * t1).d_even(0) == SuperPolynomial::constant(c, Rational(2)) * x * t1);
    CHECK((t1 * t2).d_odd(2).is_zero());
}

TEST_CASE("supercommutativity and associativity on random elements") {
    auto c = VariableContext::make(0, 6);
    Rng rng(999);
    for (int it = 0; it < 150; ++it) {
        Parity pa = rng.flip() ? Parity::Even : Parity::Odd;
        Parity pb = rng.flip() ? Parity::Even : Parity::Odd;
        auto a = random_homogeneous_poly(rng, c, pa, 3);
        auto b = random_homogeneous_poly(rng, c, pb, 3);
        auto d = random_homogeneous_poly(rng, c, rng.flip() ? Parity::Even : Parity::Odd, 3);
        int sign = (pa == Parity::Odd && pb == Parity::Odd) ? -1 : 1;
        CHECK(a * b == (sign < 0 ? -(b * a) : b * a));
        CHECK((a * b) * d == a * (b * d));
    }
}

TEST_CASE("supercommutativity exhaustively on monomials") {
    auto c = VariableContext::make(0, 4);
    for (std::uint64_t ma = 0; ma < 16; ++ma)
        for (std::uint64_t mb = 0; mb < 16; ++mb) {
            auto a = SuperPolynomial::monomial(c, Monomial{{}, ma}, Rational(1));
            auto b = SuperPolynomial::monomial(c, Monomial{{}, mb}, Rational(1));
            int sign = (__builtin_popcountll(ma) & 1) && (__builtin_popcountll(mb) & 1) ? -1 : 1;
            CHECK(a * b == (sign < 0 ? -(b * a) : b * a));
        }
}

TEST_CASE("Leibniz rule for the left derivative") {
    auto c = VariableContext::make(1, 5);
    Rng rng(31337);
    for (int it = 0; it < 150; ++it) {
        Parity pa = rng.flip() ? Parity::Even : Parity::Odd;
        auto a = random_homogeneous_poly(rng, c, pa, 3);
        auto b = random_homogeneous_poly(rng, c, rng.flip() ? Parity::Even : Parity::Odd, 3);
        int var = rng.uniform(0, 4);
        auto lhs = (a * b).d_odd(var);
        auto rhs = a.d_odd(var) * b + (pa == Parity::Odd ? -(a * b.d_odd(var)) : a * b.d_odd(var));
        CHECK(lhs == rhs);
    }
}

TEST_CASE("even degree cap is enforced") {
    auto c = VariableContext::make(1, 0, {}, {}, 4);
    auto x = SuperPolynomial::even_var(c, 0);
    auto p = x * x * x * x;
    CHECK_THROWS_AS(p * x, unsupported_error);
}

TEST_CASE("canonical printing is deterministic") {
    auto c = ctx4();
    auto t1 = theta(c, 0), t2 = theta(c, 1);
    auto x = SuperPolynomial::even_var(c, 0);
    auto p = x * t1 + t1 * t2 + SuperPolynomial::constant(c, make_rational(-1, 2));
    CHECK(p.str() == "-1/2 + t1*t2 + x1*t1");
}
