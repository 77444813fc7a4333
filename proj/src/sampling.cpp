#include "supalg/sampling.hpp"

namespace supalg {

SuperPolynomial random_homogeneous_poly(Rng& rng, const VariableContext::Ptr& ctx, Parity parity,
                                        int max_terms, bool allow_constant) {
    SuperPolynomial p = SuperPolynomial::zero(ctx);
    const int gens = ctx->odd_count();
    int terms = rng.uniform(0, max_terms);
    if (parity == Parity::Even && allow_constant && rng.flip())
        p += SuperPolynomial::constant(ctx, rng.rational());
    for (int t = 0; t < terms; ++t) {
        int degree = parity == Parity::Even ? 2 * rng.uniform(1, std::max(1, gens / 2))
                                            : 2 * rng.uniform(0, std::max(0, (gens - 1) / 2)) + 1;
        if (degree > gens) continue;
        Monomial m;
        while (m.odd_degree() < degree) m.odd |= std::uint64_t(1) << rng.uniform(0, gens - 1);
        p += SuperPolynomial::monomial(ctx, m, rng.nonzero_rational());
    }
    return p;
}

SuperMatrix random_homogeneous_matrix(Rng& rng, const BlockSignature& sig,
                                      const VariableContext::Ptr& ctx, Parity parity) {
    SuperMatrix m(sig, sig, ctx, parity);
    for (int i = 0; i < sig.total(); ++i)
        for (int j = 0; j < sig.total(); ++j) {
            Parity want = parity + sig.index_parity(i) + sig.index_parity(j);
            m.set(i, j, random_homogeneous_poly(rng, ctx, want));
        }
    return m;
}

SuperMatrix random_invertible_even_matrix(Rng& rng, const BlockSignature& sig,
                                          const VariableContext::Ptr& ctx) {
    for (;;) {
        SuperMatrix m = random_homogeneous_matrix(rng, sig, ctx, Parity::Even);
        for (int i = 0; i < sig.total(); ++i)
            m.set(i, i, m.at(i, i) + SuperPolynomial::one(ctx));
        if (m.body_invertible()) return m;
    }
}

SuperMatrix random_nilpotent_even_matrix(Rng& rng, const BlockSignature& sig,
                                         const VariableContext::Ptr& ctx) {
    SuperMatrix m(sig, sig, ctx, Parity::Even);
    for (int i = 0; i < sig.total(); ++i)
        for (int j = 0; j < sig.total(); ++j) {
            Parity want = sig.index_parity(i) + sig.index_parity(j);
            SuperPolynomial v = random_homogeneous_poly(rng, ctx, want, 2, false);
            m.set(i, j, v.soul());
        }
    return m;
}

SuperMatrix random_q_matrix(Rng& rng, int n, const VariableContext::Ptr& ctx, Parity parity) {
    BlockSignature sig{n, n};
    SuperMatrix m(sig, sig, ctx, parity);
    const bool odd = parity == Parity::Odd;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            SuperPolynomial a = random_homogeneous_poly(rng, ctx, parity);
            SuperPolynomial b = random_homogeneous_poly(rng, ctx, parity + Parity::Odd);
            m.set(i, j, a);
            m.set(n + i, n + j, odd ? -a : a);
            m.set(i, n + j, b);
            m.set(n + i, j, odd ? -b : b);
        }
    return m;
}

SuperMatrix random_q_invertible(Rng& rng, int n, const VariableContext::Ptr& ctx) {
    for (;;) {
        SuperMatrix m = random_q_matrix(rng, n, ctx, Parity::Even);
        for (int i = 0; i < 2 * n; ++i) m.set(i, i, m.at(i, i) + SuperPolynomial::one(ctx));
        if (m.body_invertible()) return m;
    }
}

SuperMatrix random_q_nilpotent(Rng& rng, int n, const VariableContext::Ptr& ctx) {
    BlockSignature sig{n, n};
    SuperMatrix m(sig, sig, ctx, std::optional<Parity>{});
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            // even component of the q space ...
            SuperPolynomial a = random_homogeneous_poly(rng, ctx, Parity::Even, 2, false).soul();
            SuperPolynomial b = random_homogeneous_poly(rng, ctx, Parity::Odd).soul();
            // ... plus an odd component, with its sign-twisted shape
            SuperPolynomial p = random_homogeneous_poly(rng, ctx, Parity::Odd).soul();
            SuperPolynomial q = random_homogeneous_poly(rng, ctx, Parity::Even, 2, false).soul();
            m.set_unchecked(i, j, a + p);
            m.set_unchecked(n + i, n + j, a - p);
            m.set_unchecked(i, n + j, b + q);
            m.set_unchecked(n + i, j, b - q);
        }
    return m;
}

} // namespace supalg
