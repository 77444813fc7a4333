#include "supalg/jordan.hpp"

#include <sstream>

#include "supalg/vectorfield.hpp"

namespace supalg {

JordanSuperAlgebra::JordanSuperAlgebra(std::vector<BasisElement> basis,
                                       std::vector<std::vector<std::map<int, Rational>>> products)
    : basis_(std::move(basis)), q_(std::move(products)) {
    const size_t n = basis_.size();
    if (q_.size() != n) throw input_error("product table has wrong shape");
    for (size_t i = 0; i < n; ++i) {
        if (q_[i].size() != n) throw input_error("product table has wrong shape");
        for (size_t j = 0; j < n; ++j)
            for (const auto& [k, v] : q_[i][j])
                if (k < 0 || static_cast<size_t>(k) >= n)
                    throw input_error("product constant index out of range");
    }
    find_unit();
}

std::vector<Rational> JordanSuperAlgebra::product(const std::vector<Rational>& x,
                                                  const std::vector<Rational>& y) const {
    const int n = dim();
    if (static_cast<int>(x.size()) != n || static_cast<int>(y.size()) != n)
        throw input_error("product: coefficient vector dimension mismatch");
    std::vector<Rational> r(n, Rational(0));
    for (int i = 0; i < n; ++i) {
        if (is_zero(x[i])) continue;
        for (int j = 0; j < n; ++j) {
            if (is_zero(y[j])) continue;
            Rational f = x[i] * y[j];
            for (const auto& [k, v] : q_[i][j]) r[k] += f * v;
        }
    }
    return r;
}

std::vector<SuperPolynomial> JordanSuperAlgebra::product_lambda(
    const std::vector<SuperPolynomial>& x, const std::vector<SuperPolynomial>& y) const {
    const int n = dim();
    if (static_cast<int>(x.size()) != n || static_cast<int>(y.size()) != n)
        throw input_error("product: coefficient vector dimension mismatch");
    const VariableContext::Ptr& ctx = x.at(0).context();
    std::vector<SuperPolynomial> r(n, SuperPolynomial::zero(ctx));
    for (int i = 0; i < n; ++i) {
        if (x[i].is_zero()) continue;
        for (int j = 0; j < n; ++j) {
            if (y[j].is_zero()) continue;
            SuperPolynomial f = x[i] * y[j].parity_part(Parity::Even);
            SuperPolynomial odd = y[j].parity_part(Parity::Odd);
            if (!odd.is_zero()) {
                SuperPolynomial g = x[i] * odd;
                if (parity(i) == Parity::Odd) g = -g;
                f += g;
            }
            if (f.is_zero()) continue;
            for (const auto& [k, v] : q_[i][j]) r[k] += f * v;
        }
    }
    return r;
}

bool JordanSuperAlgebra::supercommutative_on_basis(std::string* witness) const {
    const int n = dim();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            int sign = (parity(i) == Parity::Odd && parity(j) == Parity::Odd) ? -1 : 1;
            std::map<int, Rational> want;
            for (const auto& [k, v] : q_[j][i]) want[k] = sign < 0 ? -v : v;
            if (q_[i][j] != want) {
                if (witness) *witness = "(" + basis_[i].name + ", " + basis_[j].name + ")";
                return false;
            }
        }
    return true;
}

bool JordanSuperAlgebra::parity_additive() const {
    const int n = dim();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (const auto& [k, v] : q_[i][j])
                if (!is_zero(v) && basis_[k].parity != basis_[i].parity + basis_[j].parity)
                    return false;
    return true;
}

void JordanSuperAlgebra::find_unit() {
    const int n = dim();
    if (n == 0) return;
    // u with u o e_j = e_j for all j
    std::vector<std::vector<Rational>> cols(n, std::vector<Rational>(n * n, Rational(0)));
    std::vector<Rational> target(n * n, Rational(0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (const auto& [k, v] : q_[i][j]) cols[i][j * n + k] = v;
    for (int j = 0; j < n; ++j) target[j * n + j] = 1;
    auto sol = solve_linear(cols, target);
    if (sol) unit_ = *sol;
}

void JordanSuperAlgebra::perturb(int i, int j, int k, const Rational& delta) {
    auto& cell = q_.at(i).at(j);
    cell[k] += delta;
    if (is_zero(cell[k])) cell.erase(k);
}

// --- constructions -----------------------------------------------------------

JordanSuperAlgebra jordan_from_graded(const LieSuperAlgebra& g, const std::vector<Rational>& p) {
    if (!g.has_degrees()) throw input_error("jordan_from_graded needs a graded algebra");
    auto rep = g.grading_report();
    if (rep.depth != 1) throw input_error("jordan_from_graded needs depth 1");
    if (static_cast<int>(p.size()) != g.dim()) throw input_error("p has the wrong dimension");
    for (int i = 0; i < g.dim(); ++i)
        if (!is_zero(p[i])) {
            if (*g.element(i).degree != 1) throw input_error("p must be homogeneous of degree +1");
            if (g.parity(i) != Parity::Even)
                throw input_error("p must be even (odd homological p belongs elsewhere)");
        }
    auto gm1 = g.indices_of_degree(-1);
    const int n = static_cast<int>(gm1.size());
    std::vector<BasisElement> basis;
    for (int idx : gm1) {
        BasisElement b = g.element(idx);
        b.degree = std::nullopt;
        basis.push_back(std::move(b));
    }
    std::vector<std::vector<std::map<int, Rational>>> q(n, std::vector<std::map<int, Rational>>(n));
    std::vector<Rational> xa(g.dim(), Rational(0)), xb(g.dim(), Rational(0));
    for (int a = 0; a < n; ++a) {
        xa.assign(g.dim(), Rational(0));
        xa[gm1[a]] = 1;
        auto px = g.bracket(p, xa);
        for (int b = 0; b < n; ++b) {
            xb.assign(g.dim(), Rational(0));
            xb[gm1[b]] = 1;
            auto prod = g.bracket(px, xb);
            for (int t = 0; t < n; ++t)
                if (!is_zero(prod[gm1[t]])) q[a][b][t] = prod[gm1[t]];
        }
    }
    JordanSuperAlgebra j(std::move(basis), std::move(q));
    std::string w;
    if (!j.supercommutative_on_basis(&w))
        throw input_error("graded product is not supercommutative at " + w);
    return j;
}

DepthDReport jordan_generalized_depth_d(const LieSuperAlgebra& g, const std::vector<Rational>& p) {
    if (!g.has_degrees()) throw input_error("needs a graded algebra");
    if (static_cast<int>(p.size()) != g.dim()) throw input_error("p has the wrong dimension");
    for (int i = 0; i < g.dim(); ++i)
        if (!is_zero(p[i]) && *g.element(i).degree != 1)
            throw input_error("p must be homogeneous of degree +1");
    std::vector<int> gm;
    for (int d = 0; d >= -g.grading_report().depth; --d)
        for (int idx : g.indices_of_degree(d)) gm.push_back(idx);
    const int n = static_cast<int>(gm.size());
    std::vector<BasisElement> basis;
    for (int idx : gm) {
        BasisElement b = g.element(idx);
        b.degree = std::nullopt;
        basis.push_back(std::move(b));
    }
    bool closed = true;
    std::vector<std::vector<std::map<int, Rational>>> q(n, std::vector<std::map<int, Rational>>(n));
    std::vector<Rational> xa(g.dim(), Rational(0)), xb(g.dim(), Rational(0));
    for (int a = 0; a < n; ++a) {
        xa.assign(g.dim(), Rational(0));
        xa[gm[a]] = 1;
        auto px = g.bracket(p, xa);
        for (int b = 0; b < n; ++b) {
            xb.assign(g.dim(), Rational(0));
            xb[gm[b]] = 1;
            auto prod = g.bracket(px, xb);
            for (int i = 0; i < g.dim(); ++i)
                if (!is_zero(prod[i]) && *g.element(i).degree > 0) closed = false;
            for (int t = 0; t < n; ++t)
                if (!is_zero(prod[gm[t]])) q[a][b][t] = prod[gm[t]];
        }
    }
    JordanSuperAlgebra table(std::move(basis), std::move(q));
    bool sc = table.supercommutative_on_basis();
    bool ji = sc ? check_jordan_identity(table).ok : false;
    return DepthDReport{std::move(table), closed, sc, ji};
}

namespace {

VariableContext::Ptr scalar_ctx() {
    static VariableContext::Ptr ctx = VariableContext::make(0, 0);
    return ctx;
}

std::vector<Rational> flatten_const(const SuperMatrix& m) {
    std::vector<Rational> v;
    v.reserve(static_cast<size_t>(m.row_count()) * m.col_count());
    for (int i = 0; i < m.row_count(); ++i)
        for (int j = 0; j < m.col_count(); ++j) v.push_back(m.at(i, j).body());
    return v;
}

JordanSuperAlgebra jordan_from_matrix_span(std::vector<SuperMatrix> mats,
                                           std::vector<std::string> names) {
    const int n = static_cast<int>(mats.size());
    std::vector<std::vector<Rational>> cols;
    std::vector<BasisElement> basis;
    for (int i = 0; i < n; ++i) {
        cols.push_back(flatten_const(mats[i]));
        basis.push_back(BasisElement{names[i], *mats[i].declared_parity(), std::nullopt});
    }
    std::vector<std::vector<std::map<int, Rational>>> q(n, std::vector<std::map<int, Rational>>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            SuperMatrix prod = SuperMatrix::anticommutator(mats[i], mats[j]);
            auto sol = solve_linear(cols, flatten_const(prod));
            if (!sol)
                throw input_error("span is not closed under the Jordan product at (" + names[i] +
                                  ", " + names[j] + ")");
            for (int k = 0; k < n; ++k)
                if (!is_zero((*sol)[k])) q[i][j][k] = (*sol)[k];
        }
    return JordanSuperAlgebra(std::move(basis), std::move(q));
}

} // namespace

JordanSuperAlgebra jordan_matrix(JordanKind kind, int m, int n) {
    if (m < 0 || n < 0 || m > 3 || n > 3)
        throw unsupported_error("jordan_matrix parameters outside the supported range (<= 3)");
    std::vector<SuperMatrix> mats;
    std::vector<std::string> names;
    switch (kind) {
        case JordanKind::Mat: {
            if (m + n < 1) throw unsupported_error("Mat needs m+n >= 1");
            BlockSignature sig{m, n};
            for (int i = 0; i < m + n; ++i)
                for (int j = 0; j < m + n; ++j) {
                    Parity p = sig.index_parity(i) + sig.index_parity(j);
                    SuperMatrix e(sig, sig, scalar_ctx(), p);
                    e.set(i, j, SuperPolynomial::one(scalar_ctx()));
                    mats.push_back(std::move(e));
                    names.push_back("E_" + std::to_string(i + 1) + "_" + std::to_string(j + 1));
                }
            break;
        }
        case JordanKind::Q: {
            if (m < 1) throw unsupported_error("Q needs n >= 1");
            BlockSignature sig{m, m};
            for (int i = 0; i < m; ++i)
                for (int j = 0; j < m; ++j) {
                    SuperMatrix a(sig, sig, scalar_ctx(), Parity::Even);
                    a.set(i, j, SuperPolynomial::one(scalar_ctx()));
                    a.set(m + i, m + j, SuperPolynomial::one(scalar_ctx()));
                    mats.push_back(std::move(a));
                    names.push_back("a_" + std::to_string(i + 1) + "_" + std::to_string(j + 1));
                }
            for (int i = 0; i < m; ++i)
                for (int j = 0; j < m; ++j) {
                    SuperMatrix b(sig, sig, scalar_ctx(), Parity::Odd);
                    b.set(i, m + j, SuperPolynomial::one(scalar_ctx()));
                    b.set(m + i, j, -SuperPolynomial::one(scalar_ctx()));
                    mats.push_back(std::move(b));
                    names.push_back("b_" + std::to_string(i + 1) + "_" + std::to_string(j + 1));
                }
            break;
        }
        case JordanKind::OSp: {
            if (m < 1) throw unsupported_error("OSp needs m >= 1");
            mats =
                st_form_subspace(BlockSignature{m, 2 * n}, osp_form_matrix(m, n, false), 1, false);
            break;
        }
        case JordanKind::Pe: {
            if (m < 2) throw unsupported_error("Pe needs n >= 2");
            mats = st_form_subspace(BlockSignature{m, m}, pe_form_matrix(m), 1, true);
            break;
        }
    }
    if (names.empty()) {
        int ev = 0, od = 0;
        for (const auto& mt : mats)
            names.push_back(*mt.declared_parity() == Parity::Even ? "e" + std::to_string(++ev)
                                                                  : "o" + std::to_string(++od));
    }
    return jordan_from_matrix_span(std::move(mats), std::move(names));
}

JordanSuperAlgebra jordan_bilinear(int m, int n) {
    if (m < 1) throw input_error("jordan_bilinear needs m >= 1 (no even vector for e)");
    if (m > 6 || n > 3) throw unsupported_error("jordan_bilinear parameters too large");
    const int dim = m + 2 * n;
    // form: identity on the even part, standard symplectic on the odd part
    auto form = [&](int i, int j) -> Rational {
        if (i < m || j < m) return i == j && i < m ? Rational(1) : Rational(0);
        int a = i - m, b = j - m;
        if (a < n && b == a + n) return Rational(1);
        if (a >= n && b == a - n) return Rational(-1);
        return Rational(0);
    };
    std::vector<BasisElement> basis;
    for (int i = 0; i < m; ++i)
        basis.push_back(BasisElement{"x" + std::to_string(i + 1), Parity::Even, std::nullopt});
    for (int i = 0; i < 2 * n; ++i)
        basis.push_back(BasisElement{"th" + std::to_string(i + 1), Parity::Odd, std::nullopt});
    std::vector<std::vector<std::map<int, Rational>>> q(dim,
                                                        std::vector<std::map<int, Rational>>(dim));
    auto add = [&](int i, int j, int k, const Rational& v) {
        if (is_zero(v)) return;
        q[i][j][k] += v;
        if (is_zero(q[i][j][k])) q[i][j].erase(k);
    };
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) {
            add(i, j, j, form(0, i));  // (e,x) y
            add(i, j, i, form(0, j));  // x (e,y)
            add(i, j, 0, -form(i, j)); // -(x,y) e
        }
    return JordanSuperAlgebra(std::move(basis), std::move(q));
}

// The product of two parity-shifted functions is a plain function, so the
// closed algebra is the Kantor double Lambda(theta) + Pi(Lambda(theta)): the
// Grassmann product within the first copy, multiplication into the shifted
// copy, and the (H,K) bracket product between two shifted elements.
JordanSuperAlgebra jordan_hamiltonian_odd(int m) {
    if (m < 2) throw input_error("jordan_hamiltonian_odd needs m >= 2");
    if (m > 4) throw unsupported_error("jordan_hamiltonian_odd supports m <= 4");
    auto ctx = VariableContext::make(0, m);
    OddPoissonContext poisson = OddPoissonContext::dual_pairing(ctx);
    const int half = 1 << m;
    const int dim = 2 * half; // masks 0..half-1 = functions, half..2*half-1 = shifted
    auto mono_name = [&](int mask) {
        if (mask == 0) return std::string("1");
        std::string name;
        std::uint64_t rest = static_cast<std::uint64_t>(mask);
        bool first = true;
        while (rest) {
            int t = __builtin_ctzll(rest);
            rest &= rest - 1;
            if (!first) name += "*";
            name += ctx->odd_name(t);
            first = false;
        }
        return name;
    };
    std::vector<BasisElement> basis;
    std::vector<SuperPolynomial> monos;
    for (int mask = 0; mask < half; ++mask) {
        Monomial mono;
        mono.odd = static_cast<std::uint64_t>(mask);
        monos.push_back(SuperPolynomial::monomial(ctx, mono, Rational(1)));
        Parity par = static_cast<Parity>(__builtin_popcount(static_cast<unsigned>(mask)) & 1);
        basis.push_back(BasisElement{mono_name(mask), par, std::nullopt});
    }
    for (int mask = 0; mask < half; ++mask) {
        Parity par = static_cast<Parity>((__builtin_popcount(static_cast<unsigned>(mask)) + 1) & 1);
        basis.push_back(BasisElement{"Pi(" + mono_name(mask) + ")", par, std::nullopt});
    }
    std::vector<std::vector<std::map<int, Rational>>> q(dim,
                                                        std::vector<std::map<int, Rational>>(dim));
    auto put = [&](int i, int j, const SuperPolynomial& val, int copy_shift) {
        for (const auto& [mono, coeff] : val.terms())
            q[i][j][static_cast<int>(mono.odd) + copy_shift] = coeff;
    };
    for (int i = 0; i < half; ++i)
        for (int j = 0; j < half; ++j) {
            int pi = __builtin_popcount(static_cast<unsigned>(i)) & 1;
            int pj = __builtin_popcount(static_cast<unsigned>(j)) & 1;
            // f o g = f g
            put(i, j, monos[i] * monos[j], 0);
            // f o Pi(g) = (-1)^{p(f)} Pi(f g): the shifted copy is a right
            // module; Pi(g) o f follows by supercommutativity
            SuperPolynomial fg = monos[i] * monos[j];
            if (pi) fg = -fg;
            put(i, half + j, fg, half);
            SuperPolynomial gf = fg;
            if (pi && !pj) gf = -gf;
            put(half + j, i, gf, half);
            // Pi(f) o Pi(g) = (-1)^{p(f)+1} {f, g}
            SuperPolynomial br = poisson.bracket(monos[i], monos[j]);
            if (!pi) br = -br;
            put(half + i, half + j, br, 0);
        }
    return JordanSuperAlgebra(std::move(basis), std::move(q));
}

// --- Jordan identity on the Grassmann envelope --------------------------------

JordanCheckReport check_jordan_identity(const JordanSuperAlgebra& j) {
    JordanCheckReport rep;
    const int n = j.dim();
    if (n == 0) return rep;
    std::string w;
    if (!j.supercommutative_on_basis(&w)) {
        rep.ok = false;
        rep.witness = "not supercommutative at " + w;
        return rep;
    }
    int evens = 0, odds = 0;
    for (int i = 0; i < n; ++i) (j.parity(i) == Parity::Even ? evens : odds) += 1;
    auto ctx = VariableContext::make(2 * evens, 2 * odds);
    // x uses the first block of formal variables, y the second
    std::vector<SuperPolynomial> x, y;
    int ei = 0, oi = 0;
    for (int i = 0; i < n; ++i) {
        if (j.parity(i) == Parity::Even) {
            x.push_back(SuperPolynomial::even_var(ctx, ei));
            y.push_back(SuperPolynomial::even_var(ctx, evens + ei));
            ++ei;
        } else {
            x.push_back(SuperPolynomial::odd_var(ctx, oi));
            y.push_back(SuperPolynomial::odd_var(ctx, odds + oi));
            ++oi;
        }
    }
    auto x2 = j.product_lambda(x, x);
    auto lhs = j.product_lambda(j.product_lambda(x2, y), x);
    auto rhs = j.product_lambda(x2, j.product_lambda(y, x));
    for (int k = 0; k < n; ++k) {
        if (lhs[k] == rhs[k]) continue;
        SuperPolynomial diff = lhs[k] - rhs[k];
        const auto& [mono, coeff] = *diff.terms().begin();
        std::ostringstream os;
        os << "coefficient of " << j.element(k).name << " differs at "
           << SuperPolynomial::monomial(ctx, mono, Rational(1)).str() << " by " << coeff.get_str();
        rep.ok = false;
        rep.witness = os.str();
        return rep;
    }
    return rep;
}

} // namespace supalg
