#include "supalg/crossratio.hpp"

#include <sstream>

namespace supalg {

// --- LambdaSeries --------------------------------------------------------------

LambdaSeries::LambdaSeries(VariableContext::Ptr ctx, int order) : ctx_(std::move(ctx)) {
    if (order < 0) throw input_error("series order must be >= 0");
    c_.assign(order + 1, SuperPolynomial::zero(ctx_));
}

LambdaSeries LambdaSeries::constant(const SuperPolynomial& c, int order) {
    LambdaSeries s(c.context(), order);
    s.c_[0] = c;
    return s;
}

LambdaSeries LambdaSeries::operator-() const {
    LambdaSeries r = *this;
    for (auto& p : r.c_) p = -p;
    return r;
}

LambdaSeries operator+(const LambdaSeries& a, const LambdaSeries& b) {
    if (a.order() != b.order()) throw input_error("series order mismatch");
    LambdaSeries r = a;
    for (int k = 0; k <= a.order(); ++k) r.c_[k] += b.c_[k];
    return r;
}

LambdaSeries operator-(const LambdaSeries& a, const LambdaSeries& b) {
    if (a.order() != b.order()) throw input_error("series order mismatch");
    LambdaSeries r = a;
    for (int k = 0; k <= a.order(); ++k) r.c_[k] -= b.c_[k];
    return r;
}

LambdaSeries operator*(const LambdaSeries& a, const LambdaSeries& b) {
    if (a.order() != b.order()) throw input_error("series order mismatch");
    LambdaSeries r(a.ctx_, a.order());
    for (int i = 0; i <= a.order(); ++i) {
        if (a.c_[i].is_zero()) continue;
        for (int j = 0; i + j <= a.order(); ++j) {
            if (b.c_[j].is_zero()) continue;
            r.c_[i + j] += a.c_[i] * b.c_[j];
        }
    }
    return r;
}

LambdaSeries LambdaSeries::inverse() const {
    // u = c0 (1 + v) with v = c0^{-1}(u - c0); v has no order-0 term, so the
    // Neumann series terminates at the truncation order.
    SuperPolynomial c0_inv = c_[0].inverse();
    LambdaSeries v(ctx_, order());
    for (int k = 1; k <= order(); ++k) v.c_[k] = c0_inv * c_[k];
    LambdaSeries acc = constant(SuperPolynomial::one(ctx_), order());
    LambdaSeries pow = v;
    for (int k = 1; k <= order(); ++k) {
        bool zero = true;
        for (int t = 0; t <= order(); ++t)
            if (!pow.c_[t].is_zero()) zero = false;
        if (zero) break;
        if (k % 2)
            acc = acc - pow;
        else
            acc = acc + pow;
        pow = pow * v;
    }
    for (auto& p : acc.c_) p = p * c0_inv;
    return acc;
}

// --- cross ratio ----------------------------------------------------------------

void PointQuadruple::validate() const {
    for (const SuperMatrix* m : {&a, &b, &c, &d}) {
        if (!m->is_square()) throw input_error("quadruple points must be square");
        if (m->rows() != a.rows()) throw input_error("quadruple points must share a signature");
        require_same_context(m->context(), a.context());
        if (!m->declared_parity() || *m->declared_parity() != Parity::Even)
            throw input_error("quadruple points must be even");
    }
}

SuperMatrix cross_ratio(const PointQuadruple& q) {
    q.validate();
    try {
        SuperMatrix cb_inv = (q.c - q.b).inverse();
        SuperMatrix ad_inv = (q.a - q.d).inverse();
        return (q.a - q.b) * cb_inv * (q.c - q.d) * ad_inv;
    } catch (const input_error&) {
        throw input_error("degenerate quadruple: a difference is not invertible");
    }
}

namespace {

using SeriesGrid = std::vector<std::vector<LambdaSeries>>;

SeriesGrid grid_mul(const SeriesGrid& x, const SeriesGrid& y) {
    const int n = static_cast<int>(x.size());
    const int m = static_cast<int>(y[0].size());
    const int k = static_cast<int>(y.size());
    SeriesGrid r(n, std::vector<LambdaSeries>(m, LambdaSeries(x[0][0].context(), x[0][0].order())));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < m; ++j)
            for (int t = 0; t < k; ++t) r[i][j] = r[i][j] + x[i][t] * y[t][j];
    return r;
}

LambdaSeries grid_det(const SeriesGrid& a) {
    if (a.empty()) throw input_error("empty determinant grid");
    const int n = static_cast<int>(a.size());
    std::vector<int> cols(n);
    for (int i = 0; i < n; ++i) cols[i] = i;
    // cofactor expansion; entries are even and commute
    struct Rec {
        const SeriesGrid& a;
        LambdaSeries run(std::vector<int> cs, int row) {
            const auto& ctx = a[0][0].context();
            const int order = a[0][0].order();
            if (cs.empty()) return LambdaSeries::constant(SuperPolynomial::one(ctx), order);
            LambdaSeries det(ctx, order);
            for (size_t k = 0; k < cs.size(); ++k) {
                std::vector<int> rest;
                for (size_t t = 0; t < cs.size(); ++t)
                    if (t != k) rest.push_back(cs[t]);
                LambdaSeries term = a[row][cs[k]] * run(std::move(rest), row + 1);
                det = (k % 2) ? det - term : det + term;
            }
            return det;
        }
    } rec{a};
    return rec.run(std::move(cols), 0);
}

// block of X, optionally with -lambda on the diagonal, as a series grid
SeriesGrid shifted_block(const SuperMatrix& x, int r0, int r1, int c0, int c1, int order,
                         bool subtract_lambda) {
    const auto& ctx = x.context();
    SeriesGrid g(r1 - r0, std::vector<LambdaSeries>(c1 - c0, LambdaSeries(ctx, order)));
    for (int i = r0; i < r1; ++i)
        for (int j = c0; j < c1; ++j) {
            LambdaSeries s = LambdaSeries::constant(x.at(i, j), order);
            if (subtract_lambda && i == j && order >= 1)
                s.set_coeff(1, -SuperPolynomial::one(ctx));
            g[i - r0][j - c0] = std::move(s);
        }
    return g;
}

} // namespace

InvariantCollection invariants_det(const PointQuadruple& q) {
    if (q.signature().odd_dim != 0)
        throw input_error("invariants_det needs a purely even signature");
    SuperMatrix x = cross_ratio(q);
    const int m = q.signature().even_dim;
    SeriesGrid g = shifted_block(x, 0, m, 0, m, m, true);
    LambdaSeries det = grid_det(g);
    InvariantCollection out{"det", m, {}};
    for (int k = 0; k <= m; ++k) out.coeffs.push_back(det.coeff(k));
    return out;
}

InvariantCollection invariants_ber(const PointQuadruple& q, int order) {
    const int m = q.signature().even_dim, n = q.signature().odd_dim;
    if (order < 0) order = m + n;
    SuperMatrix x = cross_ratio(q);
    const auto& ctx = q.context();
    if (n == 0) {
        SeriesGrid g = shifted_block(x, 0, m, 0, m, order, true);
        LambdaSeries det = grid_det(g);
        InvariantCollection out{"ber", order, {}};
        for (int k = 0; k <= order; ++k) out.coeffs.push_back(det.coeff(k));
        return out;
    }
    // (D - lambda)^{-1} = sum_k lambda^k D^{-(k+1)}
    SuperMatrix dblock(BlockSignature{n, 0}, BlockSignature{n, 0}, ctx, Parity::Even);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) dblock.set_unchecked(i, j, x.at(m + i, m + j));
    SuperMatrix dinv = dblock.inverse(); // throws when the body is singular
    SeriesGrid dlam_inv(n, std::vector<LambdaSeries>(n, LambdaSeries(ctx, order)));
    {
        SuperMatrix pow = dinv;
        for (int k = 0; k <= order; ++k) {
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) dlam_inv[i][j].set_coeff(k, pow.at(i, j));
            if (k < order) pow = pow * dinv;
        }
    }
    SeriesGrid b = shifted_block(x, 0, m, m, m + n, order, false);
    SeriesGrid c = shifted_block(x, m, m + n, 0, m, order, false);
    SeriesGrid schur = grid_mul(grid_mul(b, dlam_inv), c);
    SeriesGrid alam = shifted_block(x, 0, m, 0, m, order, true);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) schur[i][j] = alam[i][j] - schur[i][j];
    SeriesGrid dlam = shifted_block(x, m, m + n, m, m + n, order, true);
    LambdaSeries ber = grid_det(schur) * grid_det(dlam).inverse();
    InvariantCollection out{"ber", order, {}};
    for (int k = 0; k <= order; ++k) out.coeffs.push_back(ber.coeff(k));
    return out;
}

InvariantCollection invariants_qet(const PointQuadruple& q, int order) {
    const int n = q.signature().even_dim;
    if (q.signature().odd_dim != n) throw input_error("invariants_qet needs signature (n|n)");
    for (const SuperMatrix* p : {&q.a, &q.b, &q.c, &q.d})
        if (!p->is_q_shape()) throw input_error("invariants_qet needs q-shaped points");
    if (order < 0) order = n;
    SuperMatrix x = cross_ratio(q);
    if (!x.is_q_shape()) throw input_error("cross ratio left the q-shape");
    const auto& ctx = q.context();
    const int nn = 2 * n;
    // X0(lambda)^{-1} = sum_k lambda^k X0^{-(k+1)} with X0 = body(X)
    auto body_inv = rational_inverse(x.body_matrix());
    std::vector<std::vector<std::vector<Rational>>> powers(order + 1);
    powers[0] = body_inv;
    for (int k = 1; k <= order; ++k) {
        powers[k].assign(nn, std::vector<Rational>(nn, Rational(0)));
        for (int i = 0; i < nn; ++i)
            for (int j = 0; j < nn; ++j)
                for (int t = 0; t < nn; ++t)
                    powers[k][i][j] += powers[k - 1][i][t] * body_inv[t][j];
    }
    // N(lambda) = X0(lambda)^{-1} soul(X)
    SeriesGrid nmat(nn, std::vector<LambdaSeries>(nn, LambdaSeries(ctx, order)));
    for (int i = 0; i < nn; ++i)
        for (int j = 0; j < nn; ++j)
            for (int k = 0; k <= order; ++k) {
                SuperPolynomial acc = SuperPolynomial::zero(ctx);
                for (int t = 0; t < nn; ++t) {
                    if (is_zero(powers[k][i][t])) continue;
                    acc += x.at(t, j).soul() * powers[k][i][t];
                }
                nmat[i][j].set_coeff(k, std::move(acc));
            }
    // log(1 + N) = sum (-1)^{j+1} N^j / j; terminates by soul nilpotency
    SeriesGrid acc(nn, std::vector<LambdaSeries>(nn, LambdaSeries(ctx, order)));
    SeriesGrid pow = nmat;
    const int guard = ctx->odd_count() + 1;
    for (int j = 1;; ++j) {
        bool zero = true;
        for (int i = 0; i < nn && zero; ++i)
            for (int t = 0; t < nn && zero; ++t)
                for (int k = 0; k <= order && zero; ++k)
                    if (!pow[i][t].coeff(k).is_zero()) zero = false;
        if (zero) break;
        if (j > guard) throw unsupported_error("qet series did not terminate");
        Rational c(j % 2 ? 1 : -1, j);
        c.canonicalize();
        for (int i = 0; i < nn; ++i)
            for (int t = 0; t < nn; ++t)
                for (int k = 0; k <= order; ++k)
                    acc[i][t].set_coeff(k, acc[i][t].coeff(k) + pow[i][t].coeff(k) * c);
        pow = grid_mul(pow, nmat);
    }
    InvariantCollection out{"qet", order, {}};
    for (int k = 0; k <= order; ++k) {
        SuperPolynomial tr = SuperPolynomial::zero(ctx);
        for (int i = 0; i < n; ++i) tr += acc[i][n + i].coeff(k);
        out.coeffs.push_back(std::move(tr));
    }
    return out;
}

SuperMatrix moebius_apply(const SuperMatrix& a, const SuperMatrix& b, const SuperMatrix& c,
                          const SuperMatrix& d, const SuperMatrix& z) {
    SuperMatrix num = a * z + b;
    SuperMatrix den = c * z + d;
    return num * den.inverse();
}

// --- quadric --------------------------------------------------------------------

QuadricSpace::QuadricSpace(int m, int n, VariableContext::Ptr ctx)
    : m_(m), n_(n), ctx_(std::move(ctx)) {
    if (m < 1) throw input_error("quadric space needs m >= 1");
}

Rational QuadricSpace::form(int i, int j) const {
    if (i < m_ || j < m_) return i == j && i < m_ ? Rational(1) : Rational(0);
    int a = i - m_, b = j - m_;
    if (a < n_ && b == a + n_) return Rational(1);
    if (a >= n_ && b == a - n_) return Rational(-1);
    return Rational(0);
}

SuperPolynomial QuadricSpace::pair(const QuadricPoint& x, const QuadricPoint& y) const {
    if (static_cast<int>(x.size()) != dim() || static_cast<int>(y.size()) != dim())
        throw input_error("quadric point has the wrong dimension");
    SuperPolynomial r = SuperPolynomial::zero(ctx_);
    for (int i = 0; i < dim(); ++i) {
        if (x[i].is_zero()) continue;
        for (int j = 0; j < dim(); ++j) {
            Rational f = form(i, j);
            if (is_zero(f) || y[j].is_zero()) continue;
            // (x_i e_i, y_j e_j) = (-1)^{p(y_j) p(e_i)} x_i y_j (e_i, e_j)
            SuperPolynomial term = x[i] * y[j].parity_part(Parity::Even);
            SuperPolynomial odd = y[j].parity_part(Parity::Odd);
            if (!odd.is_zero()) {
                SuperPolynomial t2 = x[i] * odd;
                if (basis_parity(i) == Parity::Odd) t2 = -t2;
                term += t2;
            }
            r += term * f;
        }
    }
    return r;
}

QuadricPoint QuadricSpace::invert(const QuadricPoint& x) const {
    SuperPolynomial norm = pair(x, x);
    SuperPolynomial inv = norm.inverse(); // isotropic -> not invertible
    QuadricPoint r;
    r.reserve(x.size());
    for (const auto& c : x) r.push_back(inv * c);
    return r;
}

QuadricPoint QuadricSpace::apply(const std::vector<std::vector<Rational>>& g,
                                 const QuadricPoint& x) const {
    QuadricPoint r(dim(), SuperPolynomial::zero(ctx_));
    for (int i = 0; i < dim(); ++i)
        for (int j = 0; j < dim(); ++j) {
            if (is_zero(g[i][j]) || x[j].is_zero()) continue;
            r[i] += x[j] * g[i][j];
        }
    return r;
}

SuperPolynomial cross_ratio_quadric(const QuadricSpace& space, const QuadricPoint& a,
                                    const QuadricPoint& b, const QuadricPoint& c,
                                    const QuadricPoint& d) {
    auto diff = [&](const QuadricPoint& x, const QuadricPoint& y) {
        QuadricPoint r;
        r.reserve(x.size());
        for (size_t i = 0; i < x.size(); ++i) r.push_back(x[i] - y[i]);
        return r;
    };
    SuperPolynomial ab = space.pair(diff(a, b), diff(a, b));
    SuperPolynomial cb = space.pair(diff(c, b), diff(c, b));
    SuperPolynomial cd = space.pair(diff(c, d), diff(c, d));
    SuperPolynomial ad = space.pair(diff(a, d), diff(a, d));
    try {
        return ab * cb.inverse() * cd * ad.inverse();
    } catch (const input_error&) {
        throw input_error("degenerate quadruple: an isotropic denominator");
    }
}

// --- invariance harnesses --------------------------------------------------------

namespace {

SuperMatrix random_point(Rng& rng, const BlockSignature& sig, const VariableContext::Ptr& ctx,
                         bool q_shape) {
    if (q_shape) {
        const int n = sig.even_dim;
        SuperMatrix m = random_q_matrix(rng, n, ctx, Parity::Even);
        for (int i = 0; i < n; ++i) {
            SuperPolynomial c = SuperPolynomial::constant(ctx, rng.rational());
            m.set(i, i, m.at(i, i) + c);
            m.set(n + i, n + i, m.at(n + i, n + i) + c);
        }
        return m;
    }
    SuperMatrix m = random_homogeneous_matrix(rng, sig, ctx, Parity::Even);
    for (int i = 0; i < sig.total(); ++i)
        m.set(i, i, m.at(i, i) + SuperPolynomial::constant(ctx, rng.rational()));
    return m;
}

SuperMatrix random_invertible(Rng& rng, const BlockSignature& sig,
                              const VariableContext::Ptr& ctx, bool q_shape) {
    return q_shape ? random_q_invertible(rng, sig.even_dim, ctx)
                   : random_invertible_even_matrix(rng, sig, ctx);
}

} // namespace

PointQuadruple random_quadruple(Rng& rng, const BlockSignature& sig,
                                const VariableContext::Ptr& ctx, bool q_shape) {
    SuperMatrix a = random_point(rng, sig, ctx, q_shape);
    SuperMatrix u = random_invertible(rng, sig, ctx, q_shape);
    SuperMatrix v = random_invertible(rng, sig, ctx, q_shape);
    SuperMatrix w = random_invertible(rng, sig, ctx, q_shape);
    SuperMatrix b = a - u;       // A - B = U
    SuperMatrix c = b + v;       // C - B = V
    SuperMatrix d = a - w;       // A - D = W
    return PointQuadruple{std::move(a), std::move(b), std::move(c), std::move(d)};
}

InvarianceReport invariance_harness(const std::string& variant, const BlockSignature& sig,
                                    int odd_generators, int samples, std::uint64_t seed,
                                    int order) {
    InvarianceReport rep;
    rep.requested = samples;
    const bool qet = variant == "qet";
    const bool det = variant == "det";
    if (!det && !qet && variant != "ber") throw unsupported_error("unknown variant " + variant);
    if (det && sig.odd_dim != 0) throw input_error("det variant needs a purely even signature");
    if (qet && sig.even_dim != sig.odd_dim) throw input_error("qet variant needs (n|n)");
    auto ctx = VariableContext::make(0, odd_generators);
    auto collect = [&](const PointQuadruple& q) {
        if (det) return invariants_det(q);
        if (qet) return invariants_qet(q, order);
        return invariants_ber(q, order);
    };
    for (int s = 0; s < samples; ++s) {
        Rng rng(seed + static_cast<std::uint64_t>(s) * 0x9e3779b9u);
        PointQuadruple q = random_quadruple(rng, sig, ctx, qet);
        InvariantCollection base;
        try {
            base = collect(q);
        } catch (const input_error&) {
            ++rep.skipped;
            continue;
        }
        auto id = SuperMatrix::identity(sig, ctx);
        SuperMatrix zero(sig, sig, ctx, Parity::Even);
        SuperMatrix t = random_point(rng, sig, ctx, qet);
        SuperMatrix lin_a = qet ? random_q_invertible(rng, sig.even_dim, ctx)
                                : random_invertible_even_matrix(rng, sig, ctx);
        SuperMatrix lin_d = qet ? random_q_invertible(rng, sig.even_dim, ctx)
                                : random_invertible_even_matrix(rng, sig, ctx);
        struct Gen {
            const char* name;
            SuperMatrix a, b, c, d;
        };
        std::vector<Gen> gens;
        gens.push_back({"translation", id, t, zero, id});
        gens.push_back({"linear", lin_a, zero, zero, lin_d});
        gens.push_back({"inversion", zero, id, id, zero});
        bool used = false;
        for (const auto& gen : gens) {
            PointQuadruple moved{q.a, q.b, q.c, q.d};
            try {
                moved.a = moebius_apply(gen.a, gen.b, gen.c, gen.d, q.a);
                moved.b = moebius_apply(gen.a, gen.b, gen.c, gen.d, q.b);
                moved.c = moebius_apply(gen.a, gen.b, gen.c, gen.d, q.c);
                moved.d = moebius_apply(gen.a, gen.b, gen.c, gen.d, q.d);
                InvariantCollection after = collect(moved);
                if (!(after == base)) {
                    rep.ok = false;
                    std::ostringstream os;
                    os << "collection changed under " << gen.name << " at sample " << s;
                    rep.witness = os.str();
                    return rep;
                }
                used = true;
            } catch (const input_error&) {
                continue; // the generator degenerated this sample; invariance is generic
            }
        }
        if (used)
            ++rep.verified;
        else
            ++rep.skipped;
    }
    return rep;
}

InvarianceReport quadric_invariance_harness(int m, int n, int odd_generators, int samples,
                                            std::uint64_t seed) {
    InvarianceReport rep;
    rep.requested = samples;
    auto ctx = VariableContext::make(0, odd_generators);
    QuadricSpace space(m, n, ctx);
    const int dim = space.dim();
    auto random_qpoint = [&](Rng& rng) {
        QuadricPoint p;
        for (int i = 0; i < dim; ++i) {
            Parity want = space.basis_parity(i);
            SuperPolynomial c = random_homogeneous_poly(rng, ctx, want, 2);
            if (i < m) c += SuperPolynomial::constant(ctx, rng.rational());
            p.push_back(std::move(c));
        }
        return p;
    };
    auto identity = [&]() {
        std::vector<std::vector<Rational>> g(dim, std::vector<Rational>(dim, Rational(0)));
        for (int i = 0; i < dim; ++i) g[i][i] = 1;
        return g;
    };
    for (int s = 0; s < samples; ++s) {
        Rng rng(seed + static_cast<std::uint64_t>(s) * 0x9e3779b9u);
        QuadricPoint a = random_qpoint(rng), b = random_qpoint(rng);
        QuadricPoint c = random_qpoint(rng), d = random_qpoint(rng);
        SuperPolynomial base;
        try {
            base = cross_ratio_quadric(space, a, b, c, d);
        } catch (const input_error&) {
            ++rep.skipped;
            continue;
        }
        std::vector<std::vector<std::vector<Rational>>> gens;
        if (m >= 2) { // signed rotation of two even coordinates
            auto g = identity();
            int i = rng.uniform(0, m - 1), j = rng.uniform(0, m - 1);
            if (i != j) {
                g[i][i] = 0;
                g[j][j] = 0;
                g[i][j] = 1;
                g[j][i] = -1;
            } else {
                g[i][i] = -1;
            }
            gens.push_back(std::move(g));
        } else { // reflection of the single even coordinate
            auto g = identity();
            g[0][0] = -1;
            gens.push_back(std::move(g));
        }
        if (n >= 1) { // symplectic shear on an odd pair
            auto g = identity();
            int i = rng.uniform(0, n - 1);
            g[m + i][m + n + i] = Rational(rng.uniform(1, 3));
            gens.push_back(std::move(g));
        }
        bool used = false;
        for (const auto& g : gens) {
            SuperPolynomial after =
                cross_ratio_quadric(space, space.apply(g, a), space.apply(g, b),
                                    space.apply(g, c), space.apply(g, d));
            if (!(after == base)) {
                rep.ok = false;
                rep.witness = "changed under an isometry at sample " + std::to_string(s);
                return rep;
            }
            used = true;
        }
        try {
            SuperPolynomial after = cross_ratio_quadric(space, space.invert(a), space.invert(b),
                                                        space.invert(c), space.invert(d));
            if (!(after == base)) {
                rep.ok = false;
                rep.witness = "changed under inversion at sample " + std::to_string(s);
                return rep;
            }
            used = true;
        } catch (const input_error&) {
            // an isotropic point; inversion skipped for this sample
        }
        if (used)
            ++rep.verified;
        else
            ++rep.skipped;
    }
    return rep;
}

} // namespace supalg
