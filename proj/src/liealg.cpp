#include "supalg/liealg.hpp"

#include <algorithm>
#include <sstream>

namespace supalg {

// --- exact linear algebra ----------------------------------------------------

std::optional<std::vector<Rational>> solve_linear(
    const std::vector<std::vector<Rational>>& columns, const std::vector<Rational>& target) {
    const int nvars = static_cast<int>(columns.size());
    const int nrows = static_cast<int>(target.size());
    // Augmented matrix [columns | target], Gauss-Jordan.
    std::vector<std::vector<Rational>> m(nrows, std::vector<Rational>(nvars + 1, Rational(0)));
    for (int j = 0; j < nvars; ++j) {
        if (static_cast<int>(columns[j].size()) != nrows)
            throw input_error("solve_linear: ragged column");
        for (int i = 0; i < nrows; ++i) m[i][j] = columns[j][i];
    }
    for (int i = 0; i < nrows; ++i) m[i][nvars] = target[i];

    std::vector<int> lead_col;
    int row = 0;
    for (int col = 0; col < nvars && row < nrows; ++col) {
        int piv = -1;
        for (int r = row; r < nrows; ++r)
            if (!is_zero(m[r][col])) {
                piv = r;
                break;
            }
        if (piv < 0) continue;
        std::swap(m[row], m[piv]);
        Rational d = m[row][col];
        for (int j = col; j <= nvars; ++j) m[row][j] /= d;
        for (int r = 0; r < nrows; ++r) {
            if (r == row || is_zero(m[r][col])) continue;
            Rational f = m[r][col];
            for (int j = col; j <= nvars; ++j) m[r][j] -= f * m[row][j];
        }
        lead_col.push_back(col);
        ++row;
    }
    for (int r = row; r < nrows; ++r)
        if (!is_zero(m[r][nvars])) return std::nullopt;
    std::vector<Rational> x(nvars, Rational(0));
    for (int r = 0; r < row; ++r) x[lead_col[r]] = m[r][nvars];
    return x;
}

std::vector<Rational> RationalSpan::reduce(std::vector<Rational> v) const {
    for (size_t r = 0; r < rows_.size(); ++r) {
        const Rational& c = v[lead_[r]];
        if (is_zero(c)) continue;
        Rational f = c; // rows are normalized to leading 1
        for (int j = 0; j < dim_; ++j) v[j] -= f * rows_[r][j];
    }
    return v;
}

bool RationalSpan::contains(std::vector<Rational> v) const {
    v = reduce(std::move(v));
    for (const auto& c : v)
        if (!is_zero(c)) return false;
    return true;
}

bool RationalSpan::add(std::vector<Rational> v) {
    if (static_cast<int>(v.size()) != dim_) throw input_error("span: dimension mismatch");
    v = reduce(std::move(v));
    int lead = -1;
    for (int j = 0; j < dim_; ++j)
        if (!is_zero(v[j])) {
            lead = j;
            break;
        }
    if (lead < 0) return false;
    Rational d = v[lead];
    for (int j = 0; j < dim_; ++j) v[j] /= d;
    // back-substitute into existing rows to keep the reduced form
    for (size_t r = 0; r < rows_.size(); ++r) {
        Rational f = rows_[r][lead];
        if (is_zero(f)) continue;
        for (int j = 0; j < dim_; ++j) rows_[r][j] -= f * v[j];
    }
    size_t pos = 0;
    while (pos < lead_.size() && lead_[pos] < lead) ++pos;
    rows_.insert(rows_.begin() + pos, std::move(v));
    lead_.insert(lead_.begin() + pos, lead);
    return true;
}

namespace {

// Solves col-span systems repeatedly against one factorization: rows are the
// reduced generators, track[r] expresses reduced row r in the generators.
class LinearSolver {
public:
    explicit LinearSolver(const std::vector<std::vector<Rational>>& columns)
        : ncols_(static_cast<int>(columns.size())) {
        for (int g = 0; g < ncols_; ++g) {
            std::vector<Rational> v = columns[g];
            std::vector<Rational> t(ncols_, Rational(0));
            t[g] = 1;
            reduce(v, t);
            int lead = first_nonzero(v);
            if (lead < 0) throw input_error("solver: dependent generators");
            Rational d = v[lead];
            for (auto& x : v) x /= d;
            for (auto& x : t) x /= d;
            rows_.push_back(std::move(v));
            track_.push_back(std::move(t));
            lead_.push_back(lead);
        }
    }

    std::optional<std::vector<Rational>> solve(std::vector<Rational> v) const {
        std::vector<Rational> coeff(ncols_, Rational(0));
        for (size_t r = 0; r < rows_.size(); ++r) {
            const Rational& c = v[lead_[r]];
            if (is_zero(c)) continue;
            Rational f = c;
            for (size_t j = 0; j < v.size(); ++j) v[j] -= f * rows_[r][j];
            for (int g = 0; g < ncols_; ++g) coeff[g] += f * track_[r][g];
        }
        if (first_nonzero(v) >= 0) return std::nullopt;
        return coeff;
    }

private:
    static int first_nonzero(const std::vector<Rational>& v) {
        for (size_t j = 0; j < v.size(); ++j)
            if (!is_zero(v[j])) return static_cast<int>(j);
        return -1;
    }

    void reduce(std::vector<Rational>& v, std::vector<Rational>& t) const {
        for (size_t r = 0; r < rows_.size(); ++r) {
            const Rational& c = v[lead_[r]];
            if (is_zero(c)) continue;
            Rational f = c;
            for (size_t j = 0; j < v.size(); ++j) v[j] -= f * rows_[r][j];
            for (int g = 0; g < ncols_; ++g) t[g] -= f * track_[r][g];
        }
    }

    int ncols_;
    std::vector<std::vector<Rational>> rows_;
    std::vector<std::vector<Rational>> track_;
    std::vector<int> lead_;
};

} // namespace

// Canonical nullspace basis of rows * x = 0.
static std::vector<std::vector<Rational>> nullspace(std::vector<std::vector<Rational>> rows,
                                                    int nvars) {
    const int nrows = static_cast<int>(rows.size());
    std::vector<int> lead_col;
    int row = 0;
    for (int col = 0; col < nvars && row < nrows; ++col) {
        int piv = -1;
        for (int r = row; r < nrows; ++r)
            if (!is_zero(rows[r][col])) {
                piv = r;
                break;
            }
        if (piv < 0) continue;
        std::swap(rows[row], rows[piv]);
        Rational d = rows[row][col];
        for (int j = col; j < nvars; ++j) rows[row][j] /= d;
        for (int r = 0; r < nrows; ++r) {
            if (r == row || is_zero(rows[r][col])) continue;
            Rational f = rows[r][col];
            for (int j = col; j < nvars; ++j) rows[r][j] -= f * rows[row][j];
        }
        lead_col.push_back(col);
        ++row;
    }
    std::vector<bool> is_lead(nvars, false);
    for (int c : lead_col) is_lead[c] = true;
    std::vector<std::vector<Rational>> basis;
    for (int free = 0; free < nvars; ++free) {
        if (is_lead[free]) continue;
        std::vector<Rational> v(nvars, Rational(0));
        v[free] = 1;
        for (size_t r = 0; r < lead_col.size(); ++r) v[lead_col[r]] = -rows[r][free];
        basis.push_back(std::move(v));
    }
    return basis;
}

// --- LieSuperAlgebra ---------------------------------------------------------

LieSuperAlgebra::LieSuperAlgebra(std::vector<BasisElement> basis,
                                 std::vector<std::vector<std::map<int, Rational>>> constants)
    : basis_(std::move(basis)), c_(std::move(constants)) {
    const size_t n = basis_.size();
    if (c_.size() != n) throw input_error("structure constant table has wrong shape");
    for (auto& row : c_) {
        if (row.size() != n) throw input_error("structure constant table has wrong shape");
        for (auto& cell : row)
            for (auto& [k, v] : cell)
                if (k < 0 || static_cast<size_t>(k) >= n)
                    throw input_error("structure constant index out of range");
    }
}

bool LieSuperAlgebra::has_degrees() const {
    for (const auto& b : basis_)
        if (!b.degree) return false;
    return true;
}

std::vector<Rational> LieSuperAlgebra::bracket(const std::vector<Rational>& x,
                                               const std::vector<Rational>& y) const {
    const int n = dim();
    if (static_cast<int>(x.size()) != n || static_cast<int>(y.size()) != n)
        throw input_error("bracket: coefficient vector dimension mismatch");
    std::vector<Rational> r(n, Rational(0));
    for (int i = 0; i < n; ++i) {
        if (is_zero(x[i])) continue;
        for (int j = 0; j < n; ++j) {
            if (is_zero(y[j])) continue;
            Rational f = x[i] * y[j];
            for (const auto& [k, v] : c_[i][j]) r[k] += f * v;
        }
    }
    return r;
}

std::vector<SuperPolynomial> LieSuperAlgebra::bracket_lambda(
    const std::vector<SuperPolynomial>& x, const std::vector<SuperPolynomial>& y) const {
    const int n = dim();
    if (static_cast<int>(x.size()) != n || static_cast<int>(y.size()) != n)
        throw input_error("bracket: coefficient vector dimension mismatch");
    const VariableContext::Ptr& ctx = x.at(0).context();
    std::vector<SuperPolynomial> r(n, SuperPolynomial::zero(ctx));
    for (int i = 0; i < n; ++i) {
        if (x[i].is_zero()) continue;
        for (int j = 0; j < n; ++j) {
            if (y[j].is_zero()) continue;
            // Koszul sign for moving the coefficient of y past basis element i
            SuperPolynomial f = x[i] * y[j].parity_part(Parity::Even);
            SuperPolynomial odd = y[j].parity_part(Parity::Odd);
            if (!odd.is_zero()) {
                SuperPolynomial g = x[i] * odd;
                if (parity(i) == Parity::Odd) g = -g;
                f += g;
            }
            if (f.is_zero()) continue;
            for (const auto& [k, v] : c_[i][j]) r[k] += f * v;
        }
    }
    return r;
}

AxiomReport LieSuperAlgebra::check_axioms() const {
    AxiomReport rep;
    const int n = dim();
    auto fail = [&rep](const std::string& msg) {
        rep.ok = false;
        if (rep.violations.size() < 20) rep.violations.push_back(msg);
    };
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            int sign = (parity(i) == Parity::Odd && parity(j) == Parity::Odd) ? 1 : -1;
            std::map<int, Rational> want;
            for (const auto& [k, v] : c_[j][i]) want[k] = sign > 0 ? v : -v;
            if (c_[i][j] != want) {
                std::ostringstream os;
                os << "antisymmetry fails for (" << basis_[i].name << ", " << basis_[j].name
                   << ")";
                fail(os.str());
            }
        }
    if (has_degrees())
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (const auto& [k, v] : c_[i][j])
                    if (!is_zero(v) && *basis_[k].degree != *basis_[i].degree + *basis_[j].degree) {
                        std::ostringstream os;
                        os << "grading fails for (" << basis_[i].name << ", " << basis_[j].name
                           << ") -> " << basis_[k].name;
                        fail(os.str());
                    }
    // super Jacobi: (-1)^{p_i p_k}[x_i,[x_j,x_k]] + cyclic = 0
    auto basis_vec = [&](int i) {
        std::vector<Rational> v(n, Rational(0));
        v[i] = 1;
        return v;
    };
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j)
            for (int k = j; k < n; ++k) {
                auto term = [&](int a, int b, int c2) {
                    std::vector<Rational> inner(n, Rational(0));
                    for (const auto& [t, v] : c_[b][c2]) inner[t] += v;
                    std::vector<Rational> out = bracket(basis_vec(a), inner);
                    if (parity(a) == Parity::Odd && parity(c2) == Parity::Odd)
                        for (auto& x : out) x = -x;
                    return out;
                };
                std::vector<Rational> sum = term(i, j, k);
                std::vector<Rational> t2 = term(j, k, i);
                std::vector<Rational> t3 = term(k, i, j);
                bool zero = true;
                for (int t = 0; t < n; ++t) {
                    sum[t] += t2[t] + t3[t];
                    if (!is_zero(sum[t])) zero = false;
                }
                if (!zero) {
                    std::ostringstream os;
                    os << "Jacobi fails for (" << basis_[i].name << ", " << basis_[j].name << ", "
                       << basis_[k].name << ")";
                    fail(os.str());
                }
            }
    return rep;
}

GradingReport LieSuperAlgebra::grading_report() const {
    if (!has_degrees()) throw input_error("algebra carries no degrees");
    GradingReport rep;
    for (const auto& b : basis_) {
        auto& d = rep.dims[*b.degree];
        if (b.parity == Parity::Even)
            d.first += 1;
        else
            d.second += 1;
    }
    for (const auto& [deg, d] : rep.dims) {
        rep.depth = std::max(rep.depth, -deg);
        rep.length = std::max(rep.length, deg);
    }
    return rep;
}

std::vector<int> LieSuperAlgebra::indices_of_degree(int d) const {
    std::vector<int> out;
    for (int i = 0; i < dim(); ++i)
        if (basis_[i].degree && *basis_[i].degree == d) out.push_back(i);
    return out;
}

void LieSuperAlgebra::perturb(int i, int j, int k, const Rational& delta) {
    auto& cell = c_.at(i).at(j);
    cell[k] += delta;
    if (is_zero(cell[k])) cell.erase(k);
}

void LieSuperAlgebra::set_degrees(const std::vector<int>& degrees) {
    if (static_cast<int>(degrees.size()) != dim()) throw input_error("degree list size mismatch");
    for (int i = 0; i < dim(); ++i) basis_[i].degree = degrees[i];
}

// --- matrix realizations -----------------------------------------------------

namespace {

std::vector<Rational> flatten(const SuperMatrix& m) {
    std::vector<Rational> v;
    v.reserve(static_cast<size_t>(m.row_count()) * m.col_count());
    for (int i = 0; i < m.row_count(); ++i)
        for (int j = 0; j < m.col_count(); ++j) {
            const SuperPolynomial& p = m.at(i, j);
            if (!p.is_constant()) throw input_error("matrix basis entries must be constants");
            v.push_back(p.body());
        }
    return v;
}

} // namespace

LieSuperAlgebra from_matrix_basis(std::vector<SuperMatrix> mats, std::vector<std::string> names) {
    const int n = static_cast<int>(mats.size());
    if (names.size() != mats.size()) throw input_error("name list size mismatch");
    std::vector<std::vector<Rational>> cols;
    cols.reserve(n);
    std::vector<BasisElement> basis;
    for (int i = 0; i < n; ++i) {
        cols.push_back(flatten(mats[i]));
        auto p = mats[i].declared_parity();
        if (!p) throw input_error("matrix basis elements must be homogeneous");
        basis.push_back(BasisElement{names[i], *p, std::nullopt});
    }
    std::vector<std::vector<std::map<int, Rational>>> c(n,
                                                        std::vector<std::map<int, Rational>>(n));
    LinearSolver solver(cols);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            SuperMatrix br = SuperMatrix::superbracket(mats[i], mats[j]);
            auto sol = solver.solve(flatten(br));
            if (!sol)
                throw input_error("matrix span is not closed under the superbracket at (" +
                                  names[i] + ", " + names[j] + ")");
            for (int k = 0; k < n; ++k)
                if (!is_zero((*sol)[k])) c[i][j][k] = (*sol)[k];
        }
    LieSuperAlgebra g(std::move(basis), std::move(c));
    g.set_realization(std::move(mats));
    return g;
}

// --- classical series --------------------------------------------------------

namespace {

VariableContext::Ptr scalar_ctx() {
    static VariableContext::Ptr ctx = VariableContext::make(0, 0);
    return ctx;
}

SuperMatrix unit(const BlockSignature& sig, int i, int j) {
    Parity p = sig.index_parity(i) + sig.index_parity(j);
    SuperMatrix m(sig, sig, scalar_ctx(), p);
    m.set(i, j, SuperPolynomial::one(scalar_ctx()));
    return m;
}

std::string unit_name(const char* stem, int i, int j) {
    std::ostringstream os;
    os << stem << "_" << (i + 1) << "_" << (j + 1);
    return os.str();
}

SuperMatrix q_even_unit(int n, int i, int j) {
    BlockSignature sig{n, n};
    SuperMatrix m(sig, sig, scalar_ctx(), Parity::Even);
    m.set(i, j, SuperPolynomial::one(scalar_ctx()));
    m.set(n + i, n + j, SuperPolynomial::one(scalar_ctx()));
    return m;
}

SuperMatrix q_odd_unit(int n, int i, int j) {
    BlockSignature sig{n, n};
    SuperMatrix m(sig, sig, scalar_ctx(), Parity::Odd);
    m.set(i, n + j, SuperPolynomial::one(scalar_ctx()));
    m.set(n + i, j, -SuperPolynomial::one(scalar_ctx()));
    return m;
}

} // namespace

std::vector<SuperMatrix> st_form_subspace(const BlockSignature& sig, const SuperMatrix& form,
                                          int eps, bool twist) {
    std::vector<SuperMatrix> out;
    const int N = sig.total();
    for (Parity p : {Parity::Even, Parity::Odd}) {
        std::vector<std::pair<int, int>> units;
        for (int i = 0; i < N; ++i)
            for (int j = 0; j < N; ++j)
                if ((sig.index_parity(i) + sig.index_parity(j)) == p) units.emplace_back(i, j);
        std::vector<std::vector<Rational>> rows(N * N,
                                                std::vector<Rational>(units.size(), Rational(0)));
        int sign = eps * ((twist && p == Parity::Odd) ? -1 : 1);
        for (size_t u = 0; u < units.size(); ++u) {
            auto [i, j] = units[u];
            SuperMatrix e = unit(sig, i, j);
            SuperMatrix t = e.supertranspose() * form - (form * e).scaled(Rational(sign));
            auto flat = flatten(t);
            for (int cell = 0; cell < N * N; ++cell) rows[cell][u] = flat[cell];
        }
        auto null_basis = nullspace(std::move(rows), static_cast<int>(units.size()));
        for (const auto& coeffs : null_basis) {
            SuperMatrix m(sig, sig, scalar_ctx(), p);
            for (size_t u = 0; u < units.size(); ++u) {
                if (is_zero(coeffs[u])) continue;
                auto [i, j] = units[u];
                m.set(i, j, SuperPolynomial::constant(scalar_ctx(), coeffs[u]));
            }
            out.push_back(std::move(m));
        }
    }
    return out;
}

SuperMatrix osp_form_matrix(int m, int n, bool split) {
    BlockSignature sig{m, 2 * n};
    SuperMatrix b(sig, sig, scalar_ctx(), Parity::Even);
    auto one = SuperPolynomial::one(scalar_ctx());
    if (!split) {
        for (int i = 0; i < m; ++i) b.set(i, i, one);
    } else {
        int k = m / 2;
        for (int i = 0; i < k; ++i) {
            b.set(i, k + i, one);
            b.set(k + i, i, one);
        }
        if (m % 2) b.set(m - 1, m - 1, one);
    }
    for (int i = 0; i < n; ++i) {
        b.set(m + i, m + n + i, one);
        b.set(m + n + i, m + i, -one);
    }
    return b;
}

SuperMatrix pe_form_matrix(int n) {
    BlockSignature sig{n, n};
    SuperMatrix j(sig, sig, scalar_ctx(), Parity::Odd);
    auto one = SuperPolynomial::one(scalar_ctx());
    for (int i = 0; i < n; ++i) {
        j.set(i, n + i, one);
        j.set(n + i, i, -one);
    }
    return j;
}

namespace {

LieSuperAlgebra build_from_condition(const BlockSignature& sig, const SuperMatrix& form, int eps,
                                     bool twist) {
    auto mats = st_form_subspace(sig, form, eps, twist);
    std::vector<std::string> names;
    int ev = 0, od = 0;
    for (const auto& m : mats) {
        if (*m.declared_parity() == Parity::Even)
            names.push_back("e" + std::to_string(++ev));
        else
            names.push_back("o" + std::to_string(++od));
    }
    return from_matrix_basis(std::move(mats), std::move(names));
}

void check_params(int m, int n) {
    if (m < 0 || n < 0 || m > 4 || n > 4)
        throw unsupported_error("series parameters outside the supported range (<= 4)");
}

} // namespace

LieSuperAlgebra build_classical(Series s, int m, int n) {
    check_params(m, n);
    switch (s) {
        case Series::gl: {
            if (m + n < 1) throw unsupported_error("gl needs m+n >= 1");
            BlockSignature sig{m, n};
            std::vector<SuperMatrix> mats;
            std::vector<std::string> names;
            for (int i = 0; i < m + n; ++i)
                for (int j = 0; j < m + n; ++j) {
                    mats.push_back(unit(sig, i, j));
                    names.push_back(unit_name("E", i, j));
                }
            return from_matrix_basis(std::move(mats), std::move(names));
        }
        case Series::sl: {
            if (m + n < 2) throw unsupported_error("sl needs m+n >= 2");
            BlockSignature sig{m, n};
            const int N = m + n;
            std::vector<SuperMatrix> mats;
            std::vector<std::string> names;
            for (int i = 0; i < N; ++i)
                for (int j = 0; j < N; ++j)
                    if (i != j) {
                        mats.push_back(unit(sig, i, j));
                        names.push_back(unit_name("E", i, j));
                    }
            auto sgn = [&](int i) { return i < m ? 1 : -1; };
            for (int i = 0; i + 1 < N; ++i) {
                SuperMatrix d =
                    unit(sig, i, i) - unit(sig, N - 1, N - 1).scaled(Rational(sgn(i) * sgn(N - 1)));
                mats.push_back(std::move(d));
                names.push_back("h_" + std::to_string(i + 1));
            }
            return from_matrix_basis(std::move(mats), std::move(names));
        }
        case Series::psl: {
            if (m != n || n < 2) throw unsupported_error("psl needs m = n >= 2");
            return quotient_by_center(build_classical(Series::sl, m, n));
        }
        case Series::q: {
            if (m < 1) throw unsupported_error("q needs n >= 1");
            std::vector<SuperMatrix> mats;
            std::vector<std::string> names;
            for (int i = 0; i < m; ++i)
                for (int j = 0; j < m; ++j) {
                    mats.push_back(q_even_unit(m, i, j));
                    names.push_back(unit_name("a", i, j));
                }
            for (int i = 0; i < m; ++i)
                for (int j = 0; j < m; ++j) {
                    mats.push_back(q_odd_unit(m, i, j));
                    names.push_back(unit_name("b", i, j));
                }
            return from_matrix_basis(std::move(mats), std::move(names));
        }
        case Series::sq: {
            if (m < 2) throw unsupported_error("sq needs n >= 2");
            std::vector<SuperMatrix> mats;
            std::vector<std::string> names;
            for (int i = 0; i < m; ++i)
                for (int j = 0; j < m; ++j) {
                    mats.push_back(q_even_unit(m, i, j));
                    names.push_back(unit_name("a", i, j));
                }
            for (int i = 0; i < m; ++i)
                for (int j = 0; j < m; ++j)
                    if (i != j) {
                        mats.push_back(q_odd_unit(m, i, j));
                        names.push_back(unit_name("b", i, j));
                    }
            for (int i = 0; i + 1 < m; ++i) {
                mats.push_back(q_odd_unit(m, i, i) - q_odd_unit(m, m - 1, m - 1));
                names.push_back("bh_" + std::to_string(i + 1));
            }
            return from_matrix_basis(std::move(mats), std::move(names));
        }
        case Series::psq: {
            if (m < 2) throw unsupported_error("psq needs n >= 2");
            return quotient_by_center(build_classical(Series::sq, m));
        }
        case Series::pe:
            if (m < 2) throw unsupported_error("pe needs n >= 2");
            return build_from_condition(BlockSignature{m, m}, pe_form_matrix(m), -1, true);
        case Series::spe: {
            if (m < 2) throw unsupported_error("spe needs n >= 2");
            LieSuperAlgebra pe = build_classical(Series::pe, m);
            const auto& mats = *pe.realization();
            std::vector<std::vector<Rational>> rows(1, std::vector<Rational>(mats.size()));
            for (size_t i = 0; i < mats.size(); ++i) rows[0][i] = mats[i].supertrace().body();
            auto coeffs = nullspace(std::move(rows), static_cast<int>(mats.size()));
            std::vector<SuperMatrix> sub;
            std::vector<std::string> names;
            int ev = 0, od = 0;
            for (const auto& v : coeffs) {
                std::optional<SuperMatrix> acc;
                for (size_t i = 0; i < v.size(); ++i) {
                    if (is_zero(v[i])) continue;
                    SuperMatrix term = mats[i].scaled(v[i]);
                    acc = acc ? *acc + term : term;
                }
                if (!acc) continue;
                if (acc->declared_parity() && *acc->declared_parity() == Parity::Odd)
                    names.push_back("o" + std::to_string(++od));
                else
                    names.push_back("e" + std::to_string(++ev));
                sub.push_back(std::move(*acc));
            }
            return from_matrix_basis(std::move(sub), std::move(names));
        }
        case Series::osp:
            if (m < 1 || m + n < 2) throw unsupported_error("osp needs m >= 1 and m+n >= 2");
            return build_from_condition(BlockSignature{m, 2 * n}, osp_form_matrix(m, n, false), -1, false);
        case Series::osp_split:
            if (m < 1 || m + n < 2) throw unsupported_error("osp needs m >= 1 and m+n >= 2");
            return build_from_condition(BlockSignature{m, 2 * n}, osp_form_matrix(m, n, true), -1, false);
    }
    throw unsupported_error("unknown series");
}

// --- gradings ---------------------------------------------------------------

namespace {

LieSuperAlgebra graded_copy(const LieSuperAlgebra& g, const std::vector<Rational>& eigen,
                            GradingReport* report) {
    std::vector<int> degrees(g.dim());
    for (int i = 0; i < g.dim(); ++i) {
        const Rational& ev = eigen[i];
        if (ev.get_den() != 1)
            throw input_error("grading eigenvalue is not an integer for " + g.element(i).name);
        degrees[i] = static_cast<int>(ev.get_num().get_si());
    }
    LieSuperAlgebra out = g;
    out.set_degrees(degrees);
    auto rep = out.check_axioms();
    if (!rep.ok)
        throw input_error("grading incompatible with brackets: " + rep.violations.front());
    if (report) *report = out.grading_report();
    return out;
}

} // namespace

LieSuperAlgebra grade_by_element(const LieSuperAlgebra& g, const std::vector<Rational>& h,
                                 GradingReport* report) {
    const int n = g.dim();
    std::vector<Rational> eigen(n, Rational(0));
    std::vector<Rational> basis_vec(n, Rational(0));
    for (int j = 0; j < n; ++j) {
        basis_vec.assign(n, Rational(0));
        basis_vec[j] = 1;
        auto w = g.bracket(h, basis_vec);
        for (int i = 0; i < n; ++i)
            if (i != j && !is_zero(w[i]))
                throw input_error("ad(h) is not diagonal on the basis (at " + g.element(j).name +
                                  ")");
        eigen[j] = w[j];
    }
    return graded_copy(g, eigen, report);
}

LieSuperAlgebra grade_by_ad_matrix(const LieSuperAlgebra& g, const SuperMatrix& h,
                                   GradingReport* report) {
    if (!g.realization()) throw input_error("algebra carries no matrix realization");
    const auto& mats = *g.realization();
    const int n = g.dim();
    std::vector<Rational> eigen(n, Rational(0));
    for (int j = 0; j < n; ++j) {
        SuperMatrix br = SuperMatrix::superbracket(h, mats[j]);
        std::optional<Rational> lambda;
        bool ok = true;
        for (int r = 0; r < br.row_count() && ok; ++r)
            for (int c2 = 0; c2 < br.col_count() && ok; ++c2) {
                Rational b = br.at(r, c2).body();
                Rational a = mats[j].at(r, c2).body();
                if (is_zero(a)) {
                    if (!is_zero(b)) ok = false;
                } else {
                    Rational l = b / a;
                    if (!lambda)
                        lambda = l;
                    else if (*lambda != l)
                        ok = false;
                }
            }
        if (!ok)
            throw input_error("ad(h) is not diagonal on the basis (at " + g.element(j).name + ")");
        eigen[j] = lambda.value_or(Rational(0));
    }
    return graded_copy(g, eigen, report);
}

std::vector<std::vector<Rational>> subalgebra_closure(
    const LieSuperAlgebra& g, const std::vector<std::vector<Rational>>& seeds) {
    RationalSpan span(g.dim());
    std::vector<std::vector<Rational>> members;
    for (const auto& s : seeds)
        if (span.add(s)) members.push_back(s);
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<std::vector<Rational>> snapshot = members;
        for (size_t a = 0; a < snapshot.size(); ++a)
            for (size_t b = 0; b < snapshot.size(); ++b) {
                auto br = g.bracket(snapshot[a], snapshot[b]);
                if (span.add(br)) {
                    members.push_back(br);
                    grew = true;
                }
            }
    }
    return span.rows();
}

LieSuperAlgebra quotient_by_center(const LieSuperAlgebra& g) {
    const int n = g.dim();
    std::vector<std::vector<Rational>> rows;
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
            std::vector<Rational> row(n, Rational(0));
            for (int i = 0; i < n; ++i) {
                auto it = g.bracket_basis(i, j).find(k);
                if (it != g.bracket_basis(i, j).end()) row[i] = it->second;
            }
            rows.push_back(std::move(row));
        }
    auto center = nullspace(std::move(rows), n);
    if (center.empty()) return g;

    RationalSpan span(n);
    for (auto& z : center) span.add(z);
    std::vector<int> kept;
    for (int i = 0; i < n; ++i) {
        std::vector<Rational> v(n, Rational(0));
        v[i] = 1;
        if (span.add(v)) kept.push_back(i);
    }
    std::vector<std::vector<Rational>> cols = center;
    for (int i : kept) {
        std::vector<Rational> v(n, Rational(0));
        v[i] = 1;
        cols.push_back(std::move(v));
    }
    const int q = static_cast<int>(kept.size());
    const int zc = static_cast<int>(center.size());
    std::vector<BasisElement> basis;
    basis.reserve(q);
    for (int i : kept) basis.push_back(g.element(i));
    std::vector<std::vector<std::map<int, Rational>>> c(q, std::vector<std::map<int, Rational>>(q));
    for (int a = 0; a < q; ++a)
        for (int b = 0; b < q; ++b) {
            std::vector<Rational> xa(n, Rational(0)), xb(n, Rational(0));
            xa[kept[a]] = 1;
            xb[kept[b]] = 1;
            auto br = g.bracket(xa, xb);
            auto sol = solve_linear(cols, br);
            if (!sol) throw input_error("quotient bracket failed to resolve");
            for (int t = 0; t < q; ++t)
                if (!is_zero((*sol)[zc + t])) c[a][b][t] = (*sol)[zc + t];
        }
    LieSuperAlgebra out(std::move(basis), std::move(c));
    if (g.realization()) {
        std::vector<SuperMatrix> mats;
        for (int i : kept) mats.push_back((*g.realization())[i]);
        out.set_realization(std::move(mats));
    }
    return out;
}

// --- Table 2 ----------------------------------------------------------------

namespace {

SuperMatrix diag_matrix(const BlockSignature& sig, const std::vector<Rational>& d) {
    SuperMatrix m(sig, sig, scalar_ctx(), Parity::Even);
    for (int i = 0; i < sig.total(); ++i)
        if (!is_zero(d[i])) m.set(i, i, SuperPolynomial::constant(scalar_ctx(), d[i]));
    return m;
}

} // namespace

Table2Row build_table2(const std::string& row, const std::vector<int>& params) {
    auto need = [&](size_t k) {
        if (params.size() != k)
            throw input_error("table2 row " + row + " needs " + std::to_string(k) + " parameters");
    };
    auto finish = [&](LieSuperAlgebra g, const SuperMatrix& h) {
        GradingReport rep;
        LieSuperAlgebra graded = grade_by_ad_matrix(g, h, &rep);
        return Table2Row{row, std::move(graded), rep};
    };

    if (row == "Gr") { // sl(m|n), g0 = s(gl(p|q) + gl(m-p|n-q))
        need(4);
        int m = params[0], n = params[1], p = params[2], q = params[3];
        if (p < 0 || p > m || q < 0 || q > n || p + q == 0 || (p == m && q == n))
            throw input_error("Gr: need a proper nonzero (p|q)");
        LieSuperAlgebra g = build_classical(Series::sl, m, n);
        std::vector<Rational> d(m + n, Rational(0));
        for (int i = 0; i < p; ++i) d[i] = 1;
        for (int i = 0; i < q; ++i) d[m + i] = 1;
        return finish(std::move(g), diag_matrix(BlockSignature{m, n}, d));
    }
    if (row == "PGr") { // psl(m|m)
        need(2);
        int m = params[0], p = params[1];
        if (p < 1 || p >= m) throw input_error("PGr: need 0 < p < m");
        LieSuperAlgebra g = build_classical(Series::psl, m, m);
        std::vector<Rational> d(2 * m, Rational(0));
        for (int i = 0; i < p; ++i) d[i] = d[m + i] = 1;
        return finish(std::move(g), diag_matrix(BlockSignature{m, m}, d));
    }
    if (row == "Q") { // osp(m|2n) split, g0 = cosp(m-2|2n)
        need(2);
        int m = params[0], n = params[1];
        if (m < 2) throw input_error("Q: need m >= 2");
        LieSuperAlgebra g = build_classical(Series::osp_split, m, n);
        int k = m / 2;
        std::vector<Rational> d(m + 2 * n, Rational(0));
        d[0] = 1;
        d[k] = -1;
        return finish(std::move(g), diag_matrix(BlockSignature{m, 2 * n}, d));
    }
    if (row == "OLGr") { // osp(2m|2n) split, g0 = gl(m|n)
        need(2);
        int m = params[0], n = params[1];
        if (m < 1) throw input_error("OLGr: need m >= 1");
        LieSuperAlgebra g = build_classical(Series::osp_split, 2 * m, n);
        std::vector<Rational> d(2 * m + 2 * n, Rational(0));
        for (int i = 0; i < m; ++i) {
            d[i] = make_rational(1, 2);
            d[m + i] = make_rational(-1, 2);
        }
        for (int i = 0; i < n; ++i) {
            d[2 * m + i] = make_rational(1, 2);
            d[2 * m + n + i] = make_rational(-1, 2);
        }
        return finish(std::move(g), diag_matrix(BlockSignature{2 * m, 2 * n}, d));
    }
    if (row == "QGr" || row == "PQGr") { // sq(n) / psq(n)
        need(2);
        int n = params[0], p = params[1];
        if (p < 1 || p >= n) throw input_error(row + ": need 0 < p < n");
        LieSuperAlgebra g = build_classical(row == "QGr" ? Series::sq : Series::psq, n);
        BlockSignature sig{n, n};
        SuperMatrix h(sig, sig, scalar_ctx(), Parity::Even);
        for (int i = 0; i < p; ++i) {
            h.set(i, i, SuperPolynomial::one(scalar_ctx()));
            h.set(n + i, n + i, SuperPolynomial::one(scalar_ctx()));
        }
        return finish(std::move(g), h);
    }
    if (row == "PeQ" || row == "SPeQ") { // pe(n)/spe(n), g0 = c(s)pe(n-1)
        need(1);
        int n = params[0];
        if (n < 2) throw input_error(row + ": need n >= 2");
        LieSuperAlgebra g = build_classical(row == "PeQ" ? Series::pe : Series::spe, n);
        std::vector<Rational> d(2 * n, Rational(0));
        d[0] = 1;
        d[n] = -1;
        return finish(std::move(g), diag_matrix(BlockSignature{n, n}, d));
    }
    if (row == "PeGrP" || row == "PeGrM") { // pe(n), g0 = gl(p|n-p)
        need(2);
        int n = params[0], p = params[1];
        if (p < 1 || p >= n) throw input_error(row + ": need 0 < p < n");
        LieSuperAlgebra g = build_classical(Series::pe, n);
        Rational half = make_rational(row == "PeGrP" ? 1 : -1, 2);
        std::vector<Rational> d(2 * n, Rational(0));
        for (int i = 0; i < n; ++i) {
            Rational w = i < p ? half : -half;
            d[i] = w;
            d[n + i] = -w;
        }
        return finish(std::move(g), diag_matrix(BlockSignature{n, n}, d));
    }
    throw unsupported_error("unknown table2 row: " + row);
}

} // namespace supalg
