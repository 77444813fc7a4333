#pragma once

#include "supalg/sampling.hpp"
#include "supalg/supermatrix.hpp"

namespace supalg {

// Truncated polynomial in an external even parameter lambda, with
// SuperPolynomial coefficients. Everything is exact up to the fixed order.
class LambdaSeries {
public:
    LambdaSeries(VariableContext::Ptr ctx, int order);
    static LambdaSeries constant(const SuperPolynomial& c, int order);

    int order() const { return static_cast<int>(c_.size()) - 1; }
    const SuperPolynomial& coeff(int k) const { return c_.at(k); }
    void set_coeff(int k, SuperPolynomial p) { c_.at(k) = std::move(p); }
    const VariableContext::Ptr& context() const { return ctx_; }

    LambdaSeries operator-() const;
    friend LambdaSeries operator+(const LambdaSeries& a, const LambdaSeries& b);
    friend LambdaSeries operator-(const LambdaSeries& a, const LambdaSeries& b);
    friend LambdaSeries operator*(const LambdaSeries& a, const LambdaSeries& b);
    friend bool operator==(const LambdaSeries& a, const LambdaSeries& b) { return a.c_ == b.c_; }

    // Needs an invertible zero-order coefficient.
    LambdaSeries inverse() const;

private:
    VariableContext::Ptr ctx_;
    std::vector<SuperPolynomial> c_;
};

// Four even square matrices over a shared context: Lambda-points of a chart
// of the supergrassmannian.
struct PointQuadruple {
    SuperMatrix a, b, c, d;

    const BlockSignature& signature() const { return a.rows(); }
    const VariableContext::Ptr& context() const { return a.context(); }
    void validate() const;
};

// (A,B,C,D) = (A-B)(C-B)^{-1}(C-D)(A-D)^{-1}; degenerate quadruples are
// rejected with a structured error.
SuperMatrix cross_ratio(const PointQuadruple& q);

struct InvariantCollection {
    std::string variant; // det | ber | qet | quadric
    int order = 0;
    std::vector<SuperPolynomial> coeffs; // orders 0..order

    friend bool operator==(const InvariantCollection& x, const InvariantCollection& y) {
        return x.variant == y.variant && x.order == y.order && x.coeffs == y.coeffs;
    }
};

// Coefficients of det(X - lambda), purely even signatures only (exact, the
// full characteristic polynomial).
InvariantCollection invariants_det(const PointQuadruple& q);
// Power series of Ber(X - lambda) about lambda = 0 up to `order`
// (default m+n).
InvariantCollection invariants_ber(const PointQuadruple& q, int order = -1);
// Power series of qet(X - lambda) for q(n)-shaped quadruples (default
// order n).
InvariantCollection invariants_qet(const PointQuadruple& q, int order = -1);

// Fractional-linear action Z -> (aZ + b)(cZ + d)^{-1}.
SuperMatrix moebius_apply(const SuperMatrix& a, const SuperMatrix& b, const SuperMatrix& c,
                          const SuperMatrix& d, const SuperMatrix& z);

// --- quadric cross ratio -------------------------------------------------------

// Lambda-point of the quadratic space Q^{m|2n}: one coefficient per basis
// vector, aligned so the point is even.
using QuadricPoint = std::vector<SuperPolynomial>;

class QuadricSpace {
public:
    // identity form on the even part, standard symplectic pairs on the odd
    QuadricSpace(int m, int n, VariableContext::Ptr ctx);

    int even_dim() const { return m_; }
    int odd_pairs() const { return n_; }
    int dim() const { return m_ + 2 * n_; }
    const VariableContext::Ptr& context() const { return ctx_; }

    Rational form(int i, int j) const;
    Parity basis_parity(int i) const { return i < m_ ? Parity::Even : Parity::Odd; }
    // super-bilinear extension to Lambda-points
    SuperPolynomial pair(const QuadricPoint& x, const QuadricPoint& y) const;
    // x -> x / (x, x); anisotropic points only
    QuadricPoint invert(const QuadricPoint& x) const;
    // apply a rational matrix (isometry) to a point
    QuadricPoint apply(const std::vector<std::vector<Rational>>& g, const QuadricPoint& x) const;

private:
    int m_, n_;
    VariableContext::Ptr ctx_;
};

// (A,B,C,D) = (A-B,A-B)(C-B,C-B)^{-1} (C-D,C-D)(A-D,A-D)^{-1}.
SuperPolynomial cross_ratio_quadric(const QuadricSpace& space, const QuadricPoint& a,
                                    const QuadricPoint& b, const QuadricPoint& c,
                                    const QuadricPoint& d);

// --- invariance harnesses -------------------------------------------------------

struct InvarianceReport {
    int requested = 0;
    int verified = 0;
    int skipped = 0; // degenerate samples (invariance is generic)
    bool ok = true;
    std::string witness;
};

// Random quadruple with (C-B) and (A-D) invertible by construction.
PointQuadruple random_quadruple(Rng& rng, const BlockSignature& sig,
                                const VariableContext::Ptr& ctx, bool q_shape);

// Applies translation, block-linear and inversion generators to random
// quadruples and asserts the selected collection is exactly unchanged.
InvarianceReport invariance_harness(const std::string& variant, const BlockSignature& sig,
                                    int odd_generators, int samples, std::uint64_t seed,
                                    int order = -1);

// Isometries of the form and pointwise inversion for the quadric invariant.
InvarianceReport quadric_invariance_harness(int m, int n, int odd_generators, int samples,
                                            std::uint64_t seed);

} // namespace supalg
