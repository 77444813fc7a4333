#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "supalg/context.hpp"
#include "supalg/rational.hpp"

namespace supalg {

// One monomial: exponent vector for the even variables (trailing zeros
// trimmed, so the representation is canonical) and a bitmask over the odd
// generators. Ordered lexicographically; the order fixes the byte-stable
// term order of every printed polynomial.
struct Monomial {
    std::vector<std::uint16_t> even;
    std::uint64_t odd = 0;

    bool is_one() const { return even.empty() && odd == 0; }
    int even_degree() const {
        int d = 0;
        for (auto e : even) d += e;
        return d;
    }
    int odd_degree() const { return __builtin_popcountll(odd); }
    Parity parity() const { return static_cast<Parity>(odd_degree() & 1); }

    void trim() {
        while (!even.empty() && even.back() == 0) even.pop_back();
    }

    friend bool operator==(const Monomial& a, const Monomial& b) {
        return a.odd == b.odd && a.even == b.even;
    }
    friend bool operator<(const Monomial& a, const Monomial& b) {
        if (a.even != b.even) return a.even < b.even;
        return a.odd < b.odd;
    }
};

// Sign of merging two ascending Grassmann monomials, mask `a` on the left:
// (-1)^{#inversions}. Returns 0 when the masks overlap (theta^2 = 0).
inline int koszul_merge_sign(std::uint64_t a, std::uint64_t b) {
    if (a & b) return 0;
    int inversions = 0;
    std::uint64_t bb = b;
    while (bb) {
        int j = __builtin_ctzll(bb);
        bb &= bb - 1;
        inversions ^= __builtin_popcountll(a >> (j + 1)) & 1;
    }
    return inversions ? -1 : 1;
}

// Element of the free supercommutative algebra over a VariableContext.
// Invariants: no stored zero coefficients; monomials valid for the context.
class SuperPolynomial {
public:
    using Terms = std::map<Monomial, Rational>;

    SuperPolynomial() = default;
    explicit SuperPolynomial(VariableContext::Ptr ctx) : ctx_(std::move(ctx)) {}

    static SuperPolynomial constant(VariableContext::Ptr ctx, const Rational& c) {
        SuperPolynomial p(std::move(ctx));
        if (!supalg::is_zero(c)) p.terms_.emplace(Monomial{}, c);
        return p;
    }
    static SuperPolynomial zero(VariableContext::Ptr ctx) { return SuperPolynomial(std::move(ctx)); }
    static SuperPolynomial one(VariableContext::Ptr ctx) {
        return constant(std::move(ctx), Rational(1));
    }
    // x_i
    static SuperPolynomial even_var(VariableContext::Ptr ctx, int i);
    // theta_i
    static SuperPolynomial odd_var(VariableContext::Ptr ctx, int i);
    static SuperPolynomial monomial(VariableContext::Ptr ctx, Monomial m, const Rational& c);

    const VariableContext::Ptr& context() const { return ctx_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    int term_count() const { return static_cast<int>(terms_.size()); }

    // Coefficient of the constant monomial.
    Rational body() const {
        auto it = terms_.find(Monomial{});
        return it == terms_.end() ? Rational(0) : it->second;
    }
    SuperPolynomial soul() const;
    bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
    }
    Rational coefficient(const Monomial& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    // Even / odd            if every term has the same odd-degree parity,
    // std::nullopt          otherwise ("inhomogeneous"). Zero counts as even.
    std::optional<Parity> parity() const;
    bool is_homogeneous(Parity p) const {
        auto q = parity();
        return q.has_value() && (*q == p || is_zero());
    }
    SuperPolynomial parity_part(Parity p) const;

    // True when every term contains at least one odd generator; such
    // elements are nilpotent and all series below terminate on them.
    bool is_nilpotent() const;
    int max_even_degree() const;

    SuperPolynomial operator-() const;
    SuperPolynomial& operator+=(const SuperPolynomial& o);
    SuperPolynomial& operator-=(const SuperPolynomial& o);
    friend SuperPolynomial operator+(SuperPolynomial a, const SuperPolynomial& b) { return a += b; }
    friend SuperPolynomial operator-(SuperPolynomial a, const SuperPolynomial& b) { return a -= b; }
    friend SuperPolynomial operator*(const SuperPolynomial& a, const SuperPolynomial& b);
    SuperPolynomial& operator*=(const SuperPolynomial& o) { return *this = *this * o; }
    SuperPolynomial& operator*=(const Rational& c);
    friend SuperPolynomial operator*(SuperPolynomial a, const Rational& c) { return a *= c; }
    friend SuperPolynomial operator*(const Rational& c, SuperPolynomial a) { return a *= c; }

    friend bool operator==(const SuperPolynomial& a, const SuperPolynomial& b) {
        return a.terms_ == b.terms_;
    }
    friend bool operator!=(const SuperPolynomial& a, const SuperPolynomial& b) {
        return !(a == b);
    }

    // Left partial derivatives.
    SuperPolynomial d_even(int var) const;
    SuperPolynomial d_odd(int var) const;

    // Multiplicative inverse via the terminating geometric series on the
    // soul; requires nonzero body and nilpotent soul.
    SuperPolynomial inverse() const;
    // exp of a nilpotent even element / log of 1 + nilpotent even.
    SuperPolynomial exp() const;
    SuperPolynomial log() const;

    void set_coefficient(const Monomial& m, const Rational& c);
    std::string str() const;

private:
    void add_term(const Monomial& m, const Rational& c);

    VariableContext::Ptr ctx_;
    Terms terms_;

    friend class SuperMatrix;
};

} // namespace supalg
