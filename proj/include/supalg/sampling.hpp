#pragma once

#include <cstdint>

#include "supalg/supermatrix.hpp"

namespace supalg {

// SplitMix64. Hand-rolled so that harness output is reproducible across
// platforms and standard-library versions.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // Uniform on [lo, hi] inclusive.
    int uniform(int lo, int hi) {
        return lo + static_cast<int>(next() % static_cast<std::uint64_t>(hi - lo + 1));
    }

    bool flip() { return next() & 1; }

    Rational rational(int max_abs_num = 3, int max_den = 2) {
        int num = uniform(-max_abs_num, max_abs_num);
        int den = uniform(1, max_den);
        return make_rational(num, den);
    }

    Rational nonzero_rational(int max_abs_num = 3, int max_den = 2) {
        Rational r = rational(max_abs_num, max_den);
        while (is_zero(r)) r = rational(max_abs_num, max_den);
        return r;
    }

private:
    std::uint64_t state_;
};

// Sparse random element of fixed parity: a few Grassmann monomials, no even
// variables (these feed the matrix harnesses, which stay within Lambda).
SuperPolynomial random_homogeneous_poly(Rng& rng, const VariableContext::Ptr& ctx, Parity parity,
                                        int max_terms = 2, bool allow_constant = true);

// Homogeneous random matrix of the given declared parity.
SuperMatrix random_homogeneous_matrix(Rng& rng, const BlockSignature& sig,
                                      const VariableContext::Ptr& ctx, Parity parity);

// Even matrix with invertible rational body (identity + perturbation).
SuperMatrix random_invertible_even_matrix(Rng& rng, const BlockSignature& sig,
                                          const VariableContext::Ptr& ctx);

// Even matrix with zero body and nilpotent entries.
SuperMatrix random_nilpotent_even_matrix(Rng& rng, const BlockSignature& sig,
                                         const VariableContext::Ptr& ctx);

// q(n)-shaped samples on signature (n|n).
SuperMatrix random_q_matrix(Rng& rng, int n, const VariableContext::Ptr& ctx, Parity parity);
SuperMatrix random_q_invertible(Rng& rng, int n, const VariableContext::Ptr& ctx);
SuperMatrix random_q_nilpotent(Rng& rng, int n, const VariableContext::Ptr& ctx);

} // namespace supalg
