#pragma once

#include "supalg/jordan.hpp"
#include "supalg/liealg.hpp"

namespace supalg {

// Polynomial vector field sum_c comp[c] d/dz_c on a superspace; coordinates
// are the context's even variables followed by its odd ones.
class PolyVectorField {
public:
    explicit PolyVectorField(VariableContext::Ptr ctx);

    const VariableContext::Ptr& context() const { return ctx_; }
    int coord_count() const { return ctx_->even_count() + ctx_->odd_count(); }
    Parity coord_parity(int c) const {
        return c < ctx_->even_count() ? Parity::Even : Parity::Odd;
    }

    const SuperPolynomial& component(int c) const { return comp_.at(c); }
    void set_component(int c, SuperPolynomial p);

    bool is_zero() const;
    // Homogeneous iff every component c has parity p + parity(z_c).
    std::optional<Parity> parity() const;

    SuperPolynomial apply(const SuperPolynomial& f) const;
    SuperPolynomial coordinate_derivative(const SuperPolynomial& f, int c) const;

    PolyVectorField operator-() const;
    friend PolyVectorField operator+(const PolyVectorField& a, const PolyVectorField& b);
    friend PolyVectorField operator-(const PolyVectorField& a, const PolyVectorField& b);
    PolyVectorField scaled(const Rational& c) const;
    friend bool operator==(const PolyVectorField& a, const PolyVectorField& b) {
        return a.comp_ == b.comp_;
    }

    std::string str() const;

private:
    VariableContext::Ptr ctx_;
    std::vector<SuperPolynomial> comp_;
};

// [X,Y] = X Y - (-1)^{p(X)p(Y)} Y X as derivations; needs homogeneous fields.
PolyVectorField vf_bracket(const PolyVectorField& x, const PolyVectorField& y);

struct HomologicalReport {
    bool homological = false;
    std::string witness; // offending component of [X,X] when not
};
HomologicalReport is_homological(const PolyVectorField& x);

// Divergence on a purely odd superspace; sign fixed so that divergence-free
// fields close under the bracket.
SuperPolynomial divergence(const PolyVectorField& x);

// Odd Poisson structure {theta_i, theta_j} = w_ij on a purely odd context,
// w symmetric and invertible over Q.
class OddPoissonContext {
public:
    OddPoissonContext(VariableContext::Ptr ctx, std::vector<std::vector<Rational>> pairing);
    // xi_i paired with eta_i ({xi_i, eta_j} = delta_ij); for an odd number of
    // generators the last one is self-paired.
    static OddPoissonContext dual_pairing(VariableContext::Ptr ctx);

    const VariableContext::Ptr& context() const { return ctx_; }
    const std::vector<std::vector<Rational>>& pairing() const { return w_; }

    SuperPolynomial bracket(const SuperPolynomial& f, const SuperPolynomial& g) const;
    PolyVectorField hamiltonian_field(const SuperPolynomial& f) const;

private:
    VariableContext::Ptr ctx_;
    std::vector<std::vector<Rational>> w_;
};

// --- Chevalley-Eilenberg field ------------------------------------------------

// The odd field (1/2) sum c_ij^k xi_i xi_j d/d xi_k on dual variables of
// shifted parity; squares to zero exactly when the Jacobi identity holds.
PolyVectorField ce_field(const LieSuperAlgebra& g);
// Context shared by ce_field and derived constructions: variable c for basis
// element i, with parity p_i + 1.
VariableContext::Ptr ce_context(const LieSuperAlgebra& g);

// [x, y]' = [[p, x], y] on the parity shift of g_{-1}; p odd of degree +1
// with [p, p] = 0.
LieSuperAlgebra derived_bracket(const LieSuperAlgebra& g, const std::vector<Rational>& p);

// Cubic generating function H with hamiltonian_field(H) = ce_field(g), for an
// ordinary Lie algebra with an invariant symmetric nondegenerate form.
struct GeneratingFunction {
    SuperPolynomial h;
    OddPoissonContext poisson;
    bool inverted_form = false; // solved with w = B^{-1} instead of w = B
};
GeneratingFunction generating_function(const LieSuperAlgebra& g,
                                       const std::vector<std::vector<Rational>>& form);

// Killing form K(x,y) = str(ad x ad y) over the basis (brute force).
std::vector<std::vector<Rational>> killing_form(const LieSuperAlgebra& g);

// --- the kan (TKK) functor ----------------------------------------------------

struct KanResult {
    LieSuperAlgebra algebra;             // graded, degrees in {-1,0,1}
    std::vector<PolyVectorField> fields; // realization of each basis element
    int p_index;                         // position of the product field P
};
// Constant fields in degree -1 (one per basis element of J, in order), the
// structure fields L_a = [P, d_a] and their closure in degree 0, P and its
// closure in degree +1. Brackets landing outside [-1, 1] must vanish.
KanResult kan_build(const JordanSuperAlgebra& j, int dim_bound = 12);

struct RoundtripReport {
    bool ok = true;
    std::string witness;
};
// jordan_from_graded(kan(J), P) must reproduce J's table on the nose.
RoundtripReport kan_roundtrip(const JordanSuperAlgebra& j);

} // namespace supalg
