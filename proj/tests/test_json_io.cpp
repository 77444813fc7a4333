#include "doctest.h"

#include "supalg/json_io.hpp"
#include "supalg/sampling.hpp"

using namespace supalg;

TEST_CASE("polynomial round trip is bit-exact") {
    auto ctx = VariableContext::make(2, 5);
    Rng rng(42);
    for (int it = 0; it < 80; ++it) {
        SuperPolynomial p = SuperPolynomial::zero(ctx);
        for (int t = 0; t < 4; ++t) {
            Monomial m;
            if (rng.flip()) m.even = {static_cast<std::uint16_t>(rng.uniform(0, 3)),
                                      static_cast<std::uint16_t>(rng.uniform(0, 2))};
            m.odd = rng.next() & 0x1f;
            p += SuperPolynomial::monomial(ctx, std::move(m), rng.rational(20, 7));
        }
        Json j = poly_to_json(p);
        CHECK(poly_from_json(j, ctx) == p);
        // byte-stable serialization
        CHECK(poly_to_json(poly_from_json(j, ctx)).dump() == j.dump());
    }
}

TEST_CASE("matrix round trip, including mixed parity") {
    auto ctx = VariableContext::make(0, 4);
    Rng rng(7);
    for (int it = 0; it < 20; ++it) {
        BlockSignature sig{rng.uniform(1, 2), rng.uniform(1, 2)};
        auto m = random_homogeneous_matrix(rng, sig, ctx,
                                           rng.flip() ? Parity::Even : Parity::Odd);
        auto back = matrix_from_json(matrix_to_json(m));
        CHECK(back == m);
        CHECK(back.declared_parity() == m.declared_parity());
    }
    // mixed parity
    auto even = random_homogeneous_matrix(rng, BlockSignature{1, 1}, ctx, Parity::Even);
    auto odd = random_homogeneous_matrix(rng, BlockSignature{1, 1}, ctx, Parity::Odd);
    auto mixed = even + odd;
    auto back = matrix_from_json(matrix_to_json(mixed));
    CHECK(back == mixed);
    CHECK_FALSE(back.declared_parity().has_value());
}

TEST_CASE("algebra and jordan tables round trip") {
    auto g = build_classical(Series::gl, 2, 1);
    auto back = algebra_from_json(algebra_to_json(g));
    CHECK(back.dim() == g.dim());
    for (int i = 0; i < g.dim(); ++i) {
        CHECK(back.element(i).name == g.element(i).name);
        CHECK(back.parity(i) == g.parity(i));
        for (int j = 0; j < g.dim(); ++j) CHECK(back.bracket_basis(i, j) == g.bracket_basis(i, j));
    }
    CHECK(back.check_axioms().ok);

    auto j = jordan_hamiltonian_odd(2);
    auto jback = jordan_from_json(jordan_to_json(j));
    CHECK(jback.dim() == j.dim());
    for (int a = 0; a < j.dim(); ++a)
        for (int b = 0; b < j.dim(); ++b) CHECK(jback.product_basis(a, b) == j.product_basis(a, b));
}

TEST_CASE("field and quadruple round trips") {
    auto g = build_classical(Series::sl, 2, 0);
    auto p = ce_field(g);
    auto back = field_from_json(field_to_json(p));
    CHECK(back == p);

    auto ctx = VariableContext::make(0, 4);
    Rng rng(3);
    auto q = random_quadruple(rng, BlockSignature{1, 1}, ctx, false);
    auto qback = quadruple_from_json(quadruple_to_json(q));
    CHECK(qback.a == q.a);
    CHECK(qback.b == q.b);
    CHECK(qback.c == q.c);
    CHECK(qback.d == q.d);
}

TEST_CASE("strict parsing rejects malformed input") {
    auto ctx = VariableContext::make(1, 2);
    // unknown field
    CHECK_THROWS_AS(poly_from_json(Json::parse(R"([{"even":[],"odd":[],"c":"1","x":0}])"), ctx),
                    input_error);
    // malformed rational
    CHECK_THROWS_AS(poly_from_json(Json::parse(R"([{"even":[],"odd":[],"c":"1.5"}])"), ctx),
                    input_error);
    CHECK_THROWS_AS(poly_from_json(Json::parse(R"([{"even":[],"odd":[],"c":"1/0"}])"), ctx),
                    input_error);
    // unsorted odd indices
    CHECK_THROWS_AS(poly_from_json(Json::parse(R"([{"even":[],"odd":[1,0],"c":"1"}])"), ctx),
                    input_error);
    // odd index out of range
    CHECK_THROWS_AS(poly_from_json(Json::parse(R"([{"even":[],"odd":[5],"c":"1"}])"), ctx),
                    input_error);
    // context mismatch in matrix entries
    Json bad = Json::parse(R"({"context":{"even_vars":0,"odd_vars":1},
        "rows":[1,0],"cols":[1,0],"parity":"even","entries":[[[ ]], [[ ]]]})");
    CHECK_THROWS_AS(matrix_from_json(bad), input_error);
    // unknown algebra field
    CHECK_THROWS_AS(algebra_from_json(Json::parse(R"({"basis":[],"brackets":[],"extra":1})")),
                    input_error);
}

TEST_CASE("digest is stable") {
    CHECK(digest("supalg") == digest("supalg"));
    CHECK(digest("a") != digest("b"));
}

TEST_CASE("the degree-cap environment variable limits parsed contexts") {
    setenv("SUPALG_EVEN_DEGREE_CAP", "2", 1);
    auto ctx = context_from_json(Json::parse(R"({"even_vars":1,"odd_vars":0})"));
    unsetenv("SUPALG_EVEN_DEGREE_CAP");
    CHECK(ctx->even_degree_cap() == 2);
    auto x = SuperPolynomial::even_var(ctx, 0);
    CHECK_THROWS_AS(x * x * x, unsupported_error);

    setenv("SUPALG_EVEN_DEGREE_CAP", "bogus", 1);
    CHECK_THROWS_AS(context_from_json(Json::parse(R"({"even_vars":1,"odd_vars":0})")),
                    input_error);
    unsetenv("SUPALG_EVEN_DEGREE_CAP");
}
