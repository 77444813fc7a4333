#pragma once

#include "supalg/liealg.hpp"

namespace supalg {

struct JordanCheckReport {
    bool ok = true;
    std::string witness; // first failing coefficient, empty when ok
};

// Finite-dimensional Jordan superalgebra as an exact product-constant table.
// Super-commutativity and parity additivity hold on the basis by
// construction; the Jordan identity is checked separately on the Grassmann
// envelope.
class JordanSuperAlgebra {
public:
    JordanSuperAlgebra(std::vector<BasisElement> basis,
                       std::vector<std::vector<std::map<int, Rational>>> products);

    int dim() const { return static_cast<int>(basis_.size()); }
    const BasisElement& element(int i) const { return basis_.at(i); }
    Parity parity(int i) const { return basis_.at(i).parity; }
    const std::map<int, Rational>& product_basis(int i, int j) const { return q_.at(i).at(j); }

    std::vector<Rational> product(const std::vector<Rational>& x,
                                  const std::vector<Rational>& y) const;
    // Product with coefficients in a supercommutative algebra (the Grassmann
    // envelope); Koszul sign for moving a coefficient past a basis element.
    std::vector<SuperPolynomial> product_lambda(const std::vector<SuperPolynomial>& x,
                                                const std::vector<SuperPolynomial>& y) const;

    // x o y = (-1)^{p(x)p(y)} y o x on all basis pairs.
    bool supercommutative_on_basis(std::string* witness = nullptr) const;
    // p(x o y) = p(x) + p(y); holds for the matrix and bilinear kinds, fails
    // by design for the odd Hamiltonian algebra, whose product is an odd map.
    bool parity_additive() const;
    // Unit element, when one exists.
    const std::optional<std::vector<Rational>>& unit() const { return unit_; }

    void perturb(int i, int j, int k, const Rational& delta);

private:
    void find_unit();

    std::vector<BasisElement> basis_;
    std::vector<std::vector<std::map<int, Rational>>> q_;
    std::optional<std::vector<Rational>> unit_;
};

// x o y = [[p, x], y] on the degree -1 part of a depth-1 graded Lie
// superalgebra; p must be even of degree +1.
JordanSuperAlgebra jordan_from_graded(const LieSuperAlgebra& g, const std::vector<Rational>& p);

// The same double-bracket product on all of g_- = sum of degrees <= 0, for
// gradings of any depth; nothing is asserted, identities are just reported.
struct DepthDReport {
    JordanSuperAlgebra table;
    bool closed = true;          // false when products escaped g_- (projected)
    bool supercommutative = true;
    bool jordan_identity = true;
};
DepthDReport jordan_generalized_depth_d(const LieSuperAlgebra& g, const std::vector<Rational>& p);

enum class JordanKind { Mat, Q, OSp, Pe };

// Matrix Jordan superalgebras under the super-anticommutator; OSp and Pe are
// the +-sign supertranspose subspaces, with closure verified.
JordanSuperAlgebra jordan_matrix(JordanKind kind, int m, int n = 0);

// Unital algebra of a super-symmetric bilinear form on Q^{m|2n}:
// x o y = (e,x)y + (e,y)x - (x,y)e with e the first even basis vector.
JordanSuperAlgebra jordan_bilinear(int m, int n);

// Parity-shifted Grassmann algebra with f o g = (-1)^{p(f)+1}{f, g} for the
// odd Poisson bracket on m generators (m >= 2).
JordanSuperAlgebra jordan_hamiltonian_odd(int m);

// Super Jordan identity (x^2 o y) o x = x^2 o (y o x), expanded exactly on
// the Grassmann envelope with fresh formal coefficients.
JordanCheckReport check_jordan_identity(const JordanSuperAlgebra& j);

} // namespace supalg
