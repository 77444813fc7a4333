#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "supalg/supermatrix.hpp"

namespace supalg {

struct BasisElement {
    std::string name;
    Parity parity = Parity::Even;
    std::optional<int> degree;
};

struct AxiomReport {
    bool ok = true;
    std::vector<std::string> violations;
};

struct GradingReport {
    int depth = 0;  // -min degree
    int length = 0; // max degree
    // degree -> (even dim, odd dim)
    std::map<int, std::pair<int, int>> dims;
};

// Exact solve of columns * x = target; nullopt when inconsistent.
std::optional<std::vector<Rational>> solve_linear(
    const std::vector<std::vector<Rational>>& columns, const std::vector<Rational>& target);

// Row space over Q maintained in reduced echelon form.
class RationalSpan {
public:
    explicit RationalSpan(int dim) : dim_(dim) {}

    int dim() const { return dim_; }
    int rank() const { return static_cast<int>(rows_.size()); }
    const std::vector<std::vector<Rational>>& rows() const { return rows_; }

    bool contains(std::vector<Rational> v) const;
    // Adds v to the span; returns true when v was independent.
    bool add(std::vector<Rational> v);

private:
    std::vector<Rational> reduce(std::vector<Rational> v) const;

    int dim_;
    std::vector<std::vector<Rational>> rows_;
    std::vector<int> lead_;
};

// Finite-dimensional Lie superalgebra given by exact structure constants.
class LieSuperAlgebra {
public:
    LieSuperAlgebra(std::vector<BasisElement> basis,
                    std::vector<std::vector<std::map<int, Rational>>> constants);

    int dim() const { return static_cast<int>(basis_.size()); }
    const BasisElement& element(int i) const { return basis_.at(i); }
    const std::vector<BasisElement>& basis() const { return basis_; }
    Parity parity(int i) const { return basis_.at(i).parity; }
    bool has_degrees() const;
    const std::map<int, Rational>& bracket_basis(int i, int j) const { return c_.at(i).at(j); }

    std::vector<Rational> bracket(const std::vector<Rational>& x,
                                  const std::vector<Rational>& y) const;
    // Lambda-point bracket: coefficients in a supercommutative algebra, with
    // the Koszul sign for moving a coefficient past a basis element.
    std::vector<SuperPolynomial> bracket_lambda(const std::vector<SuperPolynomial>& x,
                                                const std::vector<SuperPolynomial>& y) const;

    AxiomReport check_axioms() const;
    GradingReport grading_report() const;
    std::vector<int> indices_of_degree(int d) const;

    // Structure-constant mutation for perturbation experiments.
    void perturb(int i, int j, int k, const Rational& delta);

    void set_degrees(const std::vector<int>& degrees);

    const std::optional<std::vector<SuperMatrix>>& realization() const { return realization_; }
    void set_realization(std::vector<SuperMatrix> mats) { realization_ = std::move(mats); }

private:
    std::vector<BasisElement> basis_;
    std::vector<std::vector<std::map<int, Rational>>> c_;
    std::optional<std::vector<SuperMatrix>> realization_;
};

enum class Series { gl, sl, psl, q, sq, psq, pe, spe, osp, osp_split };

// Structure constants computed from the defining matrix representation.
// Parameters are kept small (m, n <= 4).
LieSuperAlgebra build_classical(Series s, int m, int n = 0);

// Builds a Lie superalgebra from a list of homogeneous matrices closed under
// the superbracket; throws when the span is not closed.
LieSuperAlgebra from_matrix_basis(std::vector<SuperMatrix> mats, std::vector<std::string> names);

// Subspace {X : X^{st} F = eps * (-1)^{p(X)*twist} F X} of gl(sig), solved per
// homogeneous parity; even basis elements first. The Lie series use eps = -1,
// the Jordan subspaces eps = +1.
std::vector<SuperMatrix> st_form_subspace(const BlockSignature& sig, const SuperMatrix& form,
                                          int eps, bool twist);
// diag(1_m, J_2n), or the split symmetric form when split = true.
SuperMatrix osp_form_matrix(int m, int n, bool split);
// The odd form J_2n on (n|n).
SuperMatrix pe_form_matrix(int n);

// Assigns deg(x_i) from ad(h) x_i = d_i x_i; rejects non-diagonal or
// non-integer actions. h is a coefficient vector over the basis of g.
LieSuperAlgebra grade_by_element(const LieSuperAlgebra& g, const std::vector<Rational>& h,
                                 GradingReport* report = nullptr);

// Same, but h is an ambient matrix acting on the stored realization (for
// gradings whose natural grading element lies outside g).
LieSuperAlgebra grade_by_ad_matrix(const LieSuperAlgebra& g, const SuperMatrix& h,
                                   GradingReport* report = nullptr);

// Span closure of the seed vectors under the bracket; returns an echelon
// basis of the generated subalgebra.
std::vector<std::vector<Rational>> subalgebra_closure(
    const LieSuperAlgebra& g, const std::vector<std::vector<Rational>>& seeds);

// g / (super)center, with a deterministic complement basis.
LieSuperAlgebra quotient_by_center(const LieSuperAlgebra& g);

// Depth-1 block gradings of the classical matrix series.
struct Table2Row {
    std::string name;
    LieSuperAlgebra algebra;
    GradingReport report;
};
// Rows: Gr(m,n,p,q) on sl; PGr(n,p,q) on psl; Q(m,n) and OLGr(m,n) on split
// osp; QGr(n,p) on sq; PQGr(n,p) on psq; PeQ(n) on pe; SPeQ(n) on spe;
// PeGrS(n,p) / PeGrL(n,p) on pe (the two sign choices).
Table2Row build_table2(const std::string& row, const std::vector<int>& params);

} // namespace supalg
