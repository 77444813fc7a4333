#pragma once

#include <optional>
#include <vector>

#include "supalg/superpoly.hpp"

namespace supalg {

struct BlockSignature {
    int even_dim = 0;
    int odd_dim = 0;

    int total() const { return even_dim + odd_dim; }
    Parity index_parity(int i) const { return i < even_dim ? Parity::Even : Parity::Odd; }

    friend bool operator==(const BlockSignature& a, const BlockSignature& b) {
        return a.even_dim == b.even_dim && a.odd_dim == b.odd_dim;
    }
    friend bool operator!=(const BlockSignature& a, const BlockSignature& b) { return !(a == b); }
};

// Block-signed matrix over SuperPolynomial. A homogeneous matrix of declared
// parity pi has entry (i,j) of parity pi + rowparity(i) + colparity(j); the
// declared parity is nullopt for inhomogeneous matrices.
class SuperMatrix {
public:
    SuperMatrix(BlockSignature rows, BlockSignature cols, VariableContext::Ptr ctx,
                std::optional<Parity> parity = Parity::Even);

    static SuperMatrix identity(const BlockSignature& sig, VariableContext::Ptr ctx);

    const BlockSignature& rows() const { return rows_; }
    const BlockSignature& cols() const { return cols_; }
    int row_count() const { return rows_.total(); }
    int col_count() const { return cols_.total(); }
    bool is_square() const { return rows_ == cols_; }
    const VariableContext::Ptr& context() const { return ctx_; }
    std::optional<Parity> declared_parity() const { return parity_; }

    const SuperPolynomial& at(int i, int j) const { return e_[idx(i, j)]; }
    void set(int i, int j, SuperPolynomial v);
    void set_unchecked(int i, int j, SuperPolynomial v) { e_[idx(i, j)] = std::move(v); }

    // Re-checks the entry/parity invariant; throws on violation.
    void validate() const;

    bool is_zero() const;
    Parity entry_parity(int i, int j) const {
        if (!parity_) throw input_error("matrix has no declared parity");
        return *parity_ + rows_.index_parity(i) + cols_.index_parity(j);
    }

    SuperMatrix operator-() const;
    friend SuperMatrix operator+(const SuperMatrix& a, const SuperMatrix& b);
    friend SuperMatrix operator-(const SuperMatrix& a, const SuperMatrix& b);
    friend SuperMatrix operator*(const SuperMatrix& a, const SuperMatrix& b);
    friend bool operator==(const SuperMatrix& a, const SuperMatrix& b);
    friend bool operator!=(const SuperMatrix& a, const SuperMatrix& b) { return !(a == b); }

    // Left multiplication by a homogeneous scalar.
    SuperMatrix scaled(const SuperPolynomial& s) const;
    SuperMatrix scaled(const Rational& c) const;

    // [X,Y] = XY - (-1)^{p(X)p(Y)} YX; requires declared parities.
    static SuperMatrix superbracket(const SuperMatrix& x, const SuperMatrix& y);
    // X o Y = XY + (-1)^{p(X)p(Y)} YX.
    static SuperMatrix anticommutator(const SuperMatrix& x, const SuperMatrix& y);

    SuperMatrix supertranspose() const;
    SuperPolynomial supertrace() const;

    // Ber(X) = det(A - B D^{-1} C) det(D)^{-1}; X even.
    SuperPolynomial berezinian() const;
    // The other Schur form det(A) det(D - C A^{-1} B)^{-1}.
    SuperPolynomial berezinian_alt() const;

    // q(n) on signature (n|n): even component shaped [[a,b],[b,a]], odd
    // component shaped [[a,b],[-b,-a]] (the superbracket commutant of the
    // odd involution; qtr vanishes on brackets only with this odd shape).
    bool is_q_shape() const;
    SuperPolynomial queer_trace() const;
    SuperPolynomial queer_determinant() const;

    SuperMatrix inverse() const;
    SuperMatrix exp_nilpotent() const;
    SuperMatrix log_unipotent() const;

    SuperMatrix parity_component(Parity p) const;
    std::vector<std::vector<Rational>> body_matrix() const;
    bool body_invertible() const;

    SuperMatrix block(int r0, int r1, int c0, int c1, BlockSignature rsig, BlockSignature csig,
                      std::optional<Parity> parity) const;

    std::string str() const;

private:
    int idx(int i, int j) const { return i * cols_.total() + j; }

    BlockSignature rows_, cols_;
    VariableContext::Ptr ctx_;
    std::optional<Parity> parity_;
    std::vector<SuperPolynomial> e_;
};

// Determinant of a square grid of pairwise-commuting (even) entries:
// fraction-free elimination with body pivoting, cofactor fallback.
SuperPolynomial det_commutative(const std::vector<std::vector<SuperPolynomial>>& a,
                                const VariableContext::Ptr& ctx);

// Exact inverse of a rational matrix; throws input_error when singular.
std::vector<std::vector<Rational>> rational_inverse(std::vector<std::vector<Rational>> a);

} // namespace supalg
