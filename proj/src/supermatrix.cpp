#include "supalg/supermatrix.hpp"

#include <sstream>

namespace supalg {

namespace {

int parity_bit(std::optional<Parity> p) {
    return p && *p == Parity::Odd ? 1 : 0;
}

std::optional<Parity> sum_parity(std::optional<Parity> a, std::optional<Parity> b) {
    if (a && b) return *a + *b;
    return std::nullopt;
}

} // namespace

SuperMatrix::SuperMatrix(BlockSignature rows, BlockSignature cols, VariableContext::Ptr ctx,
                         std::optional<Parity> parity)
    : rows_(rows), cols_(cols), ctx_(std::move(ctx)), parity_(parity) {
    if (rows_.even_dim < 0 || rows_.odd_dim < 0 || cols_.even_dim < 0 || cols_.odd_dim < 0)
        throw input_error("negative block dimension");
    e_.assign(static_cast<size_t>(rows_.total()) * cols_.total(), SuperPolynomial::zero(ctx_));
}

SuperMatrix SuperMatrix::identity(const BlockSignature& sig, VariableContext::Ptr ctx) {
    SuperMatrix m(sig, sig, std::move(ctx), Parity::Even);
    for (int i = 0; i < sig.total(); ++i)
        m.e_[m.idx(i, i)] = SuperPolynomial::one(m.ctx_);
    return m;
}

void SuperMatrix::set(int i, int j, SuperPolynomial v) {
    require_same_context(ctx_, v.context());
    if (parity_ && !v.is_zero()) {
        Parity want = entry_parity(i, j);
        if (!v.is_homogeneous(want))
            throw input_error("entry parity violates the declared matrix parity");
    }
    e_[idx(i, j)] = std::move(v);
}

void SuperMatrix::validate() const {
    if (!parity_) return;
    for (int i = 0; i < row_count(); ++i)
        for (int j = 0; j < col_count(); ++j)
            if (!at(i, j).is_zero() && !at(i, j).is_homogeneous(*parity_ + rows_.index_parity(i) +
                                                                cols_.index_parity(j)))
                throw input_error("entry parity violates the declared matrix parity");
}

bool SuperMatrix::is_zero() const {
    for (const auto& v : e_)
        if (!v.is_zero()) return false;
    return true;
}

SuperMatrix SuperMatrix::operator-() const {
    SuperMatrix r = *this;
    for (auto& v : r.e_) v = -v;
    return r;
}

SuperMatrix operator+(const SuperMatrix& a, const SuperMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw input_error("signature mismatch in add");
    require_same_context(a.ctx_, b.ctx_);
    SuperMatrix r(a.rows_, a.cols_, a.ctx_,
                  a.parity_ == b.parity_ ? a.parity_ : std::optional<Parity>{});
    for (size_t k = 0; k < r.e_.size(); ++k) r.e_[k] = a.e_[k] + b.e_[k];
    return r;
}

SuperMatrix operator-(const SuperMatrix& a, const SuperMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw input_error("signature mismatch in sub");
    require_same_context(a.ctx_, b.ctx_);
    SuperMatrix r(a.rows_, a.cols_, a.ctx_,
                  a.parity_ == b.parity_ ? a.parity_ : std::optional<Parity>{});
    for (size_t k = 0; k < r.e_.size(); ++k) r.e_[k] = a.e_[k] - b.e_[k];
    return r;
}

SuperMatrix operator*(const SuperMatrix& a, const SuperMatrix& b) {
    if (a.cols_ != b.rows_) throw input_error("signature mismatch in multiply");
    require_same_context(a.ctx_, b.ctx_);
    SuperMatrix r(a.rows_, b.cols_, a.ctx_, sum_parity(a.parity_, b.parity_));
    const int n = a.cols_.total();
    for (int i = 0; i < r.row_count(); ++i)
        for (int j = 0; j < r.col_count(); ++j) {
            SuperPolynomial acc = SuperPolynomial::zero(a.ctx_);
            for (int k = 0; k < n; ++k) {
                if (a.at(i, k).is_zero() || b.at(k, j).is_zero()) continue;
                acc += a.at(i, k) * b.at(k, j);
            }
            r.e_[r.idx(i, j)] = std::move(acc);
        }
    return r;
}

bool operator==(const SuperMatrix& a, const SuperMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.e_ == b.e_;
}

SuperMatrix SuperMatrix::scaled(const SuperPolynomial& s) const {
    auto sp = s.parity();
    SuperMatrix r(rows_, cols_, ctx_, sp && parity_ ? sum_parity(*sp, *parity_) : std::optional<Parity>{});
    for (size_t k = 0; k < e_.size(); ++k) r.e_[k] = s * e_[k];
    return r;
}

SuperMatrix SuperMatrix::scaled(const Rational& c) const {
    SuperMatrix r = *this;
    for (auto& v : r.e_) v *= c;
    return r;
}

SuperMatrix SuperMatrix::superbracket(const SuperMatrix& x, const SuperMatrix& y) {
    if (!x.parity_ || !y.parity_)
        throw input_error("superbracket needs homogeneous matrices");
    SuperMatrix xy = x * y;
    SuperMatrix yx = y * x;
    if (parity_bit(x.parity_) && parity_bit(y.parity_)) return xy + yx;
    return xy - yx;
}

SuperMatrix SuperMatrix::anticommutator(const SuperMatrix& x, const SuperMatrix& y) {
    if (!x.parity_ || !y.parity_)
        throw input_error("anticommutator needs homogeneous matrices");
    SuperMatrix xy = x * y;
    SuperMatrix yx = y * x;
    if (parity_bit(x.parity_) && parity_bit(y.parity_)) return xy - yx;
    return xy + yx;
}

SuperMatrix SuperMatrix::supertranspose() const {
    if (!parity_) throw input_error("supertranspose needs a homogeneous matrix");
    const int p = parity_bit(parity_);
    SuperMatrix r(cols_, rows_, ctx_, parity_);
    for (int i = 0; i < row_count(); ++i) {
        int ri = rows_.index_parity(i) == Parity::Odd ? 1 : 0;
        for (int j = 0; j < col_count(); ++j) {
            if (at(i, j).is_zero()) continue;
            int cj = cols_.index_parity(j) == Parity::Odd ? 1 : 0;
            int sign = ((ri + p) & 1) && ((ri + cj) & 1) ? -1 : 1;
            r.e_[r.idx(j, i)] = sign < 0 ? -at(i, j) : at(i, j);
        }
    }
    return r;
}

SuperPolynomial SuperMatrix::supertrace() const {
    if (!is_square()) throw input_error("supertrace needs a square signature");
    if (!parity_) {
        SuperPolynomial s = parity_component(Parity::Even).supertrace();
        s += parity_component(Parity::Odd).supertrace();
        return s;
    }
    SuperPolynomial s = SuperPolynomial::zero(ctx_);
    for (int i = 0; i < rows_.even_dim; ++i) s += at(i, i);
    const int sign = parity_bit(parity_) ? 1 : -1;
    for (int i = rows_.even_dim; i < row_count(); ++i)
        s += sign > 0 ? at(i, i) : -at(i, i);
    return s;
}

SuperMatrix SuperMatrix::parity_component(Parity p) const {
    SuperMatrix r(rows_, cols_, ctx_, p);
    for (int i = 0; i < row_count(); ++i)
        for (int j = 0; j < col_count(); ++j) {
            Parity want = p + rows_.index_parity(i) + cols_.index_parity(j);
            r.e_[r.idx(i, j)] = at(i, j).parity_part(want);
        }
    return r;
}

bool SuperMatrix::body_invertible() const {
    if (!is_square()) return false;
    try {
        rational_inverse(body_matrix());
        return true;
    } catch (const input_error&) {
        return false;
    }
}

std::vector<std::vector<Rational>> SuperMatrix::body_matrix() const {
    std::vector<std::vector<Rational>> b(row_count(), std::vector<Rational>(col_count()));
    for (int i = 0; i < row_count(); ++i)
        for (int j = 0; j < col_count(); ++j) b[i][j] = at(i, j).body();
    return b;
}

SuperMatrix SuperMatrix::block(int r0, int r1, int c0, int c1, BlockSignature rsig,
                               BlockSignature csig, std::optional<Parity> parity) const {
    SuperMatrix r(rsig, csig, ctx_, parity);
    for (int i = r0; i < r1; ++i)
        for (int j = c0; j < c1; ++j) r.e_[r.idx(i - r0, j - c0)] = at(i, j);
    return r;
}

// --- exact rational linear algebra -----------------------------------------

std::vector<std::vector<Rational>> rational_inverse(std::vector<std::vector<Rational>> a) {
    const int n = static_cast<int>(a.size());
    std::vector<std::vector<Rational>> inv(n, std::vector<Rational>(n, Rational(0)));
    for (int i = 0; i < n; ++i) inv[i][i] = 1;
    for (int col = 0; col < n; ++col) {
        int piv = -1;
        for (int r = col; r < n; ++r)
            if (!is_zero(a[r][col])) {
                piv = r;
                break;
            }
        if (piv < 0) throw input_error("matrix body is singular");
        std::swap(a[col], a[piv]);
        std::swap(inv[col], inv[piv]);
        Rational d = a[col][col];
        for (int j = 0; j < n; ++j) {
            a[col][j] /= d;
            inv[col][j] /= d;
        }
        for (int r = 0; r < n; ++r) {
            if (r == col || is_zero(a[r][col])) continue;
            Rational f = a[r][col];
            for (int j = 0; j < n; ++j) {
                a[r][j] -= f * a[col][j];
                inv[r][j] -= f * inv[col][j];
            }
        }
    }
    return inv;
}

// --- determinant over the commutative even subalgebra ----------------------

namespace {

SuperPolynomial det_cofactor(const std::vector<std::vector<SuperPolynomial>>& a,
                             std::vector<int> cols, int row, const VariableContext::Ptr& ctx) {
    if (cols.empty()) return SuperPolynomial::one(ctx);
    SuperPolynomial det = SuperPolynomial::zero(ctx);
    for (size_t k = 0; k < cols.size(); ++k) {
        const SuperPolynomial& p = a[row][cols[k]];
        if (p.is_zero()) continue;
        std::vector<int> rest;
        rest.reserve(cols.size() - 1);
        for (size_t t = 0; t < cols.size(); ++t)
            if (t != k) rest.push_back(cols[t]);
        SuperPolynomial minor = det_cofactor(a, std::move(rest), row + 1, ctx);
        minor = p * minor;
        det += (k % 2) ? -minor : minor;
    }
    return det;
}

} // namespace

SuperPolynomial det_commutative(const std::vector<std::vector<SuperPolynomial>>& a,
                                const VariableContext::Ptr& ctx) {
    const int n = static_cast<int>(a.size());
    if (n == 0) return SuperPolynomial::one(ctx);
    // Fraction-free elimination, pivoting on the lowest row whose pivot has a
    // nonzero body. Division by the previous pivot is exact: the pivot is
    // invertible, and the Bareiss quotient identity holds in any commutative
    // ring.
    std::vector<std::vector<SuperPolynomial>> m = a;
    int sign = 1;
    SuperPolynomial prev = SuperPolynomial::one(ctx);
    try {
        for (int k = 0; k < n - 1; ++k) {
            int piv = -1;
            for (int r = k; r < n; ++r)
                if (!is_zero(m[r][k].body())) {
                    piv = r;
                    break;
                }
            if (piv < 0) return det_cofactor(a, [&] {
                std::vector<int> cols(n);
                for (int i = 0; i < n; ++i) cols[i] = i;
                return cols;
            }(), 0, ctx);
            if (piv != k) {
                std::swap(m[piv], m[k]);
                sign = -sign;
            }
            SuperPolynomial prev_inv = prev.inverse();
            for (int i = k + 1; i < n; ++i) {
                for (int j = k + 1; j < n; ++j)
                    m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) * prev_inv;
                m[i][k] = SuperPolynomial::zero(ctx);
            }
            prev = m[k][k];
        }
    } catch (const unsupported_error&) {
        std::vector<int> cols(n);
        for (int i = 0; i < n; ++i) cols[i] = i;
        return det_cofactor(a, std::move(cols), 0, ctx);
    }
    return sign < 0 ? -m[n - 1][n - 1] : m[n - 1][n - 1];
}

namespace {

using Grid = std::vector<std::vector<SuperPolynomial>>;

Grid grid_mul(const Grid& x, const Grid& y, const VariableContext::Ptr& ctx) {
    const int n = static_cast<int>(x.size());
    const int m = static_cast<int>(y[0].size());
    const int k = static_cast<int>(y.size());
    Grid r(n, std::vector<SuperPolynomial>(m, SuperPolynomial::zero(ctx)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < m; ++j) {
            SuperPolynomial acc = SuperPolynomial::zero(ctx);
            for (int t = 0; t < k; ++t) {
                if (x[i][t].is_zero() || y[t][j].is_zero()) continue;
                acc += x[i][t] * y[t][j];
            }
            r[i][j] = std::move(acc);
        }
    return r;
}

bool grid_zero(const Grid& g) {
    for (const auto& row : g)
        for (const auto& v : row)
            if (!v.is_zero()) return false;
    return true;
}

// Inverse of a square grid whose body is invertible and whose soul is
// nilpotent: (B + S)^{-1} = (sum (-B^{-1}S)^k) B^{-1}.
Grid grid_inverse(const Grid& g, const VariableContext::Ptr& ctx) {
    const int n = static_cast<int>(g.size());
    std::vector<std::vector<Rational>> body(n, std::vector<Rational>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) body[i][j] = g[i][j].body();
    auto body_inv_q = rational_inverse(std::move(body));
    Grid body_inv(n, std::vector<SuperPolynomial>(n, SuperPolynomial::zero(ctx)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            body_inv[i][j] = SuperPolynomial::constant(ctx, body_inv_q[i][j]);
    Grid soul(n, std::vector<SuperPolynomial>(n, SuperPolynomial::zero(ctx)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) soul[i][j] = g[i][j].soul();
    if (grid_zero(soul)) return body_inv;
    // step = -B^{-1} S
    Grid step = grid_mul(body_inv, soul, ctx);
    for (auto& row : step)
        for (auto& v : row) v = -v;
    Grid acc = body_inv;
    Grid pow = step;
    const int guard = ctx->odd_count() + 1;
    int k = 0;
    while (!grid_zero(pow)) {
        if (++k > guard) throw unsupported_error("matrix soul is not nilpotent");
        Grid term = grid_mul(pow, body_inv, ctx);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) acc[i][j] += term[i][j];
        pow = grid_mul(pow, step, ctx);
    }
    return acc;
}

Grid to_grid(const SuperMatrix& m, int r0, int r1, int c0, int c1) {
    Grid g(r1 - r0, std::vector<SuperPolynomial>(c1 - c0, SuperPolynomial::zero(m.context())));
    for (int i = r0; i < r1; ++i)
        for (int j = c0; j < c1; ++j) g[i - r0][j - c0] = m.at(i, j);
    return g;
}

} // namespace

SuperPolynomial SuperMatrix::berezinian() const {
    if (!is_square()) throw input_error("Berezinian needs a square signature");
    if (!parity_ || *parity_ != Parity::Even)
        throw input_error("Berezinian needs an even homogeneous matrix");
    const int m = rows_.even_dim, n = rows_.odd_dim;
    if (n == 0) return det_commutative(to_grid(*this, 0, m, 0, m), ctx_);
    Grid d = to_grid(*this, m, m + n, m, m + n);
    SuperPolynomial det_d = det_commutative(d, ctx_);
    SuperPolynomial det_d_inv = det_d.inverse(); // throws when the D body is singular
    if (m == 0) return det_d_inv;
    Grid d_inv = grid_inverse(d, ctx_);
    Grid b = to_grid(*this, 0, m, m, m + n);
    Grid c = to_grid(*this, m, m + n, 0, m);
    Grid schur = grid_mul(grid_mul(b, d_inv, ctx_), c, ctx_);
    Grid a = to_grid(*this, 0, m, 0, m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) schur[i][j] = a[i][j] - schur[i][j];
    return det_commutative(schur, ctx_) * det_d_inv;
}

SuperPolynomial SuperMatrix::berezinian_alt() const {
    if (!is_square()) throw input_error("Berezinian needs a square signature");
    if (!parity_ || *parity_ != Parity::Even)
        throw input_error("Berezinian needs an even homogeneous matrix");
    const int m = rows_.even_dim, n = rows_.odd_dim;
    if (n == 0) return det_commutative(to_grid(*this, 0, m, 0, m), ctx_);
    if (m == 0) return det_commutative(to_grid(*this, 0, n, 0, n), ctx_).inverse();
    Grid a = to_grid(*this, 0, m, 0, m);
    SuperPolynomial det_a = det_commutative(a, ctx_);
    Grid a_inv = grid_inverse(a, ctx_);
    Grid b = to_grid(*this, 0, m, m, m + n);
    Grid c = to_grid(*this, m, m + n, 0, m);
    Grid d = to_grid(*this, m, m + n, m, m + n);
    Grid schur = grid_mul(grid_mul(c, a_inv, ctx_), b, ctx_);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) schur[i][j] = d[i][j] - schur[i][j];
    return det_a * det_commutative(schur, ctx_).inverse();
}

bool SuperMatrix::is_q_shape() const {
    if (!is_square() || rows_.even_dim != rows_.odd_dim) return false;
    const int n = rows_.even_dim;
    // Even component [[a,b],[b,a]], odd component [[a,b],[-b,-a]]: the two
    // super-commutants of the odd involution. Only this combination is
    // closed under the superbracket with qtr vanishing on it.
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (at(i, j).parity_part(Parity::Even) != at(n + i, n + j).parity_part(Parity::Even))
                return false;
            if (at(i, j).parity_part(Parity::Odd) != -at(n + i, n + j).parity_part(Parity::Odd))
                return false;
            if (at(i, n + j).parity_part(Parity::Odd) != at(n + i, j).parity_part(Parity::Odd))
                return false;
            if (at(i, n + j).parity_part(Parity::Even) != -at(n + i, j).parity_part(Parity::Even))
                return false;
        }
    return true;
}

SuperPolynomial SuperMatrix::queer_trace() const {
    if (!is_q_shape()) throw input_error("queer trace needs a q(n)-shaped matrix");
    const int n = rows_.even_dim;
    SuperPolynomial s = SuperPolynomial::zero(ctx_);
    for (int i = 0; i < n; ++i) s += at(i, n + i);
    return s;
}

SuperPolynomial SuperMatrix::queer_determinant() const {
    if (!is_q_shape()) throw input_error("queer determinant needs a q(n)-shaped matrix");
    const int n = rows_.even_dim;
    auto body = body_matrix();
    auto body_inv = rational_inverse(std::move(body)); // q-shape is closed under inverse
    // N = X0^{-1} X - 1 has soul entries; log(1+N) terminates.
    SuperMatrix nm(rows_, cols_, ctx_, std::optional<Parity>{});
    for (int i = 0; i < row_count(); ++i)
        for (int j = 0; j < col_count(); ++j) {
            SuperPolynomial acc = SuperPolynomial::zero(ctx_);
            for (int k = 0; k < row_count(); ++k) {
                if (supalg::is_zero(body_inv[i][k]) || at(k, j).is_zero()) continue;
                acc += at(k, j) * body_inv[i][k];
            }
            if (i == j) acc -= SuperPolynomial::one(ctx_);
            nm.e_[nm.idx(i, j)] = std::move(acc);
        }
    // log(1+N) = sum (-1)^{k+1} N^k / k
    SuperMatrix acc(rows_, cols_, ctx_, std::optional<Parity>{});
    SuperMatrix pow = nm;
    const int guard = ctx_->odd_count() + 1;
    int k = 1;
    while (!pow.is_zero()) {
        if (k > guard) throw unsupported_error("queer determinant: soul is not nilpotent");
        Rational c(k % 2 ? 1 : -1, k);
        c.canonicalize();
        acc = acc + pow.scaled(c);
        pow = pow * nm;
        ++k;
    }
    // acc is q-shaped; its queer trace is tr of the off-diagonal block.
    const int nn = rows_.even_dim;
    SuperPolynomial s = SuperPolynomial::zero(ctx_);
    for (int i = 0; i < nn; ++i) s += acc.at(i, nn + i);
    return s;
}

SuperMatrix SuperMatrix::inverse() const {
    if (!is_square()) throw input_error("inverse needs a square matrix");
    auto body_inv_q = rational_inverse(body_matrix());
    SuperMatrix body_inv(rows_, cols_, ctx_, Parity::Even);
    for (int i = 0; i < row_count(); ++i)
        for (int j = 0; j < col_count(); ++j)
            body_inv.e_[body_inv.idx(i, j)] = SuperPolynomial::constant(ctx_, body_inv_q[i][j]);
    SuperMatrix soul = *this;
    for (auto& v : soul.e_) v = v.soul();
    soul.parity_ = parity_;
    if (soul.is_zero()) {
        body_inv.parity_ = parity_;
        return body_inv;
    }
    SuperMatrix step = (body_inv * soul).scaled(Rational(-1));
    SuperMatrix acc = body_inv;
    SuperMatrix pow = step;
    const int guard = ctx_->odd_count() + 1;
    int k = 0;
    while (!pow.is_zero()) {
        if (++k > guard) throw unsupported_error("inverse: matrix soul is not nilpotent");
        acc = acc + pow * body_inv;
        pow = pow * step;
    }
    acc.parity_ = parity_;
    return acc;
}

SuperMatrix SuperMatrix::exp_nilpotent() const {
    if (!is_square()) throw input_error("exp needs a square matrix");
    for (const auto& v : e_)
        if (!supalg::is_zero(v.body())) throw input_error("exp needs a zero-body matrix");
    SuperMatrix acc = identity(rows_, ctx_);
    SuperMatrix pow = *this;
    Rational inv_fact(1);
    const int guard = ctx_->odd_count() + 1;
    int k = 0;
    while (!pow.is_zero()) {
        if (++k > guard) throw unsupported_error("exp: matrix is not nilpotent");
        inv_fact /= Rational(k);
        acc = acc + pow.scaled(inv_fact);
        pow = pow * *this;
    }
    if (parity_ && *parity_ == Parity::Even) acc.parity_ = Parity::Even;
    else acc.parity_ = std::nullopt;
    return acc;
}

SuperMatrix SuperMatrix::log_unipotent() const {
    if (!is_square()) throw input_error("log needs a square matrix");
    SuperMatrix n = *this - identity(rows_, ctx_);
    for (const auto& v : n.e_)
        if (!supalg::is_zero(v.body())) throw input_error("log needs a unipotent matrix (body = 1)");
    SuperMatrix acc(rows_, cols_, ctx_, std::optional<Parity>{});
    SuperMatrix pow = n;
    const int guard = ctx_->odd_count() + 1;
    int k = 1;
    while (!pow.is_zero()) {
        if (k > guard) throw unsupported_error("log: matrix is not unipotent");
        Rational c(k % 2 ? 1 : -1, k);
        c.canonicalize();
        acc = acc + pow.scaled(c);
        pow = pow * n;
        ++k;
    }
    if (parity_ && *parity_ == Parity::Even) acc.parity_ = Parity::Even;
    return acc;
}

std::string SuperMatrix::str() const {
    std::ostringstream os;
    for (int i = 0; i < row_count(); ++i) {
        os << (i == 0 ? "[" : " ");
        os << "[";
        for (int j = 0; j < col_count(); ++j) {
            if (j) os << ", ";
            os << at(i, j).str();
        }
        os << "]";
        if (i + 1 < row_count()) os << "\n";
    }
    os << "]";
    return os.str();
}

} // namespace supalg
