#include "supalg/vectorfield.hpp"

#include <sstream>

namespace supalg {

PolyVectorField::PolyVectorField(VariableContext::Ptr ctx) : ctx_(std::move(ctx)) {
    comp_.assign(coord_count(), SuperPolynomial::zero(ctx_));
}

void PolyVectorField::set_component(int c, SuperPolynomial p) {
    require_same_context(ctx_, p.context());
    comp_.at(c) = std::move(p);
}

bool PolyVectorField::is_zero() const {
    for (const auto& p : comp_)
        if (!p.is_zero()) return false;
    return true;
}

std::optional<Parity> PolyVectorField::parity() const {
    std::optional<Parity> result;
    for (int c = 0; c < coord_count(); ++c) {
        if (comp_[c].is_zero()) continue;
        auto p = comp_[c].parity();
        if (!p) return std::nullopt;
        Parity field_parity = *p + coord_parity(c);
        if (!result)
            result = field_parity;
        else if (*result != field_parity)
            return std::nullopt;
    }
    return result ? result : std::optional<Parity>{Parity::Even};
}

SuperPolynomial PolyVectorField::coordinate_derivative(const SuperPolynomial& f, int c) const {
    return c < ctx_->even_count() ? f.d_even(c) : f.d_odd(c - ctx_->even_count());
}

SuperPolynomial PolyVectorField::apply(const SuperPolynomial& f) const {
    SuperPolynomial r = SuperPolynomial::zero(ctx_);
    for (int c = 0; c < coord_count(); ++c) {
        if (comp_[c].is_zero()) continue;
        r += comp_[c] * coordinate_derivative(f, c);
    }
    return r;
}

PolyVectorField PolyVectorField::operator-() const {
    PolyVectorField r(ctx_);
    for (int c = 0; c < coord_count(); ++c) r.comp_[c] = -comp_[c];
    return r;
}

PolyVectorField operator+(const PolyVectorField& a, const PolyVectorField& b) {
    require_same_context(a.ctx_, b.ctx_);
    PolyVectorField r(a.ctx_);
    for (size_t c = 0; c < a.comp_.size(); ++c) r.comp_[c] = a.comp_[c] + b.comp_[c];
    return r;
}

PolyVectorField operator-(const PolyVectorField& a, const PolyVectorField& b) {
    require_same_context(a.ctx_, b.ctx_);
    PolyVectorField r(a.ctx_);
    for (size_t c = 0; c < a.comp_.size(); ++c) r.comp_[c] = a.comp_[c] - b.comp_[c];
    return r;
}

PolyVectorField PolyVectorField::scaled(const Rational& c) const {
    PolyVectorField r(ctx_);
    for (int i = 0; i < coord_count(); ++i) r.comp_[i] = comp_[i] * c;
    return r;
}

std::string PolyVectorField::str() const {
    std::ostringstream os;
    bool first = true;
    for (int c = 0; c < coord_count(); ++c) {
        if (comp_[c].is_zero()) continue;
        if (!first) os << " + ";
        first = false;
        std::string name = c < ctx_->even_count() ? ctx_->even_name(c)
                                                  : ctx_->odd_name(c - ctx_->even_count());
        os << "(" << comp_[c].str() << ")*d/d" << name;
    }
    return first ? "0" : os.str();
}

PolyVectorField vf_bracket(const PolyVectorField& x, const PolyVectorField& y) {
    require_same_context(x.context(), y.context());
    auto px = x.parity();
    auto py = y.parity();
    if (!px || !py) throw input_error("vf_bracket needs homogeneous fields");
    bool flip = *px == Parity::Odd && *py == Parity::Odd;
    PolyVectorField r(x.context());
    for (int c = 0; c < x.coord_count(); ++c) {
        SuperPolynomial t = x.apply(y.component(c));
        SuperPolynomial u = y.apply(x.component(c));
        r.set_component(c, flip ? t + u : t - u);
    }
    return r;
}

HomologicalReport is_homological(const PolyVectorField& x) {
    if (x.is_zero()) return HomologicalReport{true, ""};
    auto p = x.parity();
    if (!p || *p != Parity::Odd) throw input_error("is_homological needs an odd field");
    PolyVectorField sq = vf_bracket(x, x);
    HomologicalReport rep;
    rep.homological = sq.is_zero();
    if (!rep.homological) {
        for (int c = 0; c < sq.coord_count(); ++c)
            if (!sq.component(c).is_zero()) {
                std::string name = c < x.context()->even_count()
                                       ? x.context()->even_name(c)
                                       : x.context()->odd_name(c - x.context()->even_count());
                rep.witness = "[X,X] has component (" + sq.component(c).str() + ")*d/d" + name;
                break;
            }
    }
    return rep;
}

SuperPolynomial divergence(const PolyVectorField& x) {
    const auto& ctx = x.context();
    if (ctx->even_count() != 0) throw input_error("divergence is defined on purely odd contexts");
    SuperPolynomial d = SuperPolynomial::zero(ctx);
    for (int c = 0; c < ctx->odd_count(); ++c) {
        // term-wise sign (-1)^{p(component)}
        d += x.component(c).parity_part(Parity::Even).d_odd(c);
        d -= x.component(c).parity_part(Parity::Odd).d_odd(c);
    }
    return d;
}

// --- odd Poisson --------------------------------------------------------------

OddPoissonContext::OddPoissonContext(VariableContext::Ptr ctx,
                                     std::vector<std::vector<Rational>> pairing)
    : ctx_(std::move(ctx)), w_(std::move(pairing)) {
    if (ctx_->even_count() != 0) throw input_error("odd Poisson context must be purely odd");
    const int n = ctx_->odd_count();
    if (static_cast<int>(w_.size()) != n) throw input_error("pairing has the wrong size");
    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(w_[i].size()) != n) throw input_error("pairing has the wrong size");
        for (int j = 0; j < n; ++j)
            if (w_[i][j] != w_[j][i]) throw input_error("pairing must be symmetric");
    }
    rational_inverse(w_); // degenerate pairing -> input_error
}

OddPoissonContext OddPoissonContext::dual_pairing(VariableContext::Ptr ctx) {
    const int n = ctx->odd_count();
    std::vector<std::vector<Rational>> w(n, std::vector<Rational>(n, Rational(0)));
    int r = n / 2;
    for (int i = 0; i < r; ++i) w[i][r + i] = w[r + i][i] = 1;
    if (n % 2) w[n - 1][n - 1] = 1;
    return OddPoissonContext(std::move(ctx), std::move(w));
}

SuperPolynomial OddPoissonContext::bracket(const SuperPolynomial& f,
                                           const SuperPolynomial& g) const {
    require_same_context(ctx_, f.context());
    require_same_context(ctx_, g.context());
    const int n = ctx_->odd_count();
    SuperPolynomial r = SuperPolynomial::zero(ctx_);
    // {f,g} = -(-1)^{p(f)} sum_ij d_i f w_ij d_j g, applied per parity part
    for (Parity pf : {Parity::Even, Parity::Odd}) {
        SuperPolynomial part = f.parity_part(pf);
        if (part.is_zero()) continue;
        int sign = pf == Parity::Even ? -1 : 1;
        for (int i = 0; i < n; ++i) {
            SuperPolynomial di = part.d_odd(i);
            if (di.is_zero()) continue;
            for (int j = 0; j < n; ++j) {
                if (is_zero(w_[i][j])) continue;
                SuperPolynomial term = di * g.d_odd(j) * w_[i][j];
                r += sign < 0 ? -term : term;
            }
        }
    }
    return r;
}

PolyVectorField OddPoissonContext::hamiltonian_field(const SuperPolynomial& f) const {
    require_same_context(ctx_, f.context());
    const int n = ctx_->odd_count();
    PolyVectorField h(ctx_);
    for (int j = 0; j < n; ++j) {
        SuperPolynomial cj = SuperPolynomial::zero(ctx_);
        for (Parity pf : {Parity::Even, Parity::Odd}) {
            SuperPolynomial part = f.parity_part(pf);
            if (part.is_zero()) continue;
            int sign = pf == Parity::Even ? -1 : 1;
            for (int i = 0; i < n; ++i) {
                if (is_zero(w_[i][j])) continue;
                SuperPolynomial term = part.d_odd(i) * w_[i][j];
                cj += sign < 0 ? -term : term;
            }
        }
        h.set_component(j, std::move(cj));
    }
    return h;
}

// --- Chevalley-Eilenberg -------------------------------------------------------

VariableContext::Ptr ce_context(const LieSuperAlgebra& g) {
    // variable for basis element i has parity p_i + 1
    std::vector<std::string> even_names, odd_names;
    for (int i = 0; i < g.dim(); ++i) {
        std::string nm = g.element(i).name + "*";
        if (g.parity(i) == Parity::Odd)
            even_names.push_back(nm);
        else
            odd_names.push_back(nm);
    }
    return VariableContext::make(static_cast<int>(even_names.size()),
                                 static_cast<int>(odd_names.size()), even_names, odd_names);
}

namespace {

// coordinate index of the dual variable of basis element i
std::vector<int> ce_coords(const LieSuperAlgebra& g) {
    std::vector<int> coord(g.dim());
    int ev = 0, od = 0;
    for (int i = 0; i < g.dim(); ++i) {
        if (g.parity(i) == Parity::Odd)
            coord[i] = ev++;
        else
            ++od;
    }
    int even_total = ev;
    od = 0;
    for (int i = 0; i < g.dim(); ++i)
        if (g.parity(i) == Parity::Even) coord[i] = even_total + od++;
    return coord;
}

} // namespace

PolyVectorField ce_field(const LieSuperAlgebra& g) {
    auto ctx = ce_context(g);
    auto coord = ce_coords(g);
    const int n = g.dim();
    auto var = [&](int i) {
        int c = coord[i];
        return c < ctx->even_count() ? SuperPolynomial::even_var(ctx, c)
                                     : SuperPolynomial::odd_var(ctx, c - ctx->even_count());
    };
    PolyVectorField p(ctx);
    Rational half = make_rational(1, 2);
    for (int k = 0; k < n; ++k) {
        SuperPolynomial acc = SuperPolynomial::zero(ctx);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                auto it = g.bracket_basis(i, j).find(k);
                if (it == g.bracket_basis(i, j).end() || is_zero(it->second)) continue;
                // sign (-1)^{p_i} keeps the sum consistent under (i,j) swap
                Rational c = it->second * half;
                if (g.parity(i) == Parity::Odd) c = -c;
                acc += var(i) * var(j) * c;
            }
        p.set_component(coord[k], std::move(acc));
    }
    return p;
}

LieSuperAlgebra derived_bracket(const LieSuperAlgebra& g, const std::vector<Rational>& p) {
    if (!g.has_degrees()) throw input_error("derived_bracket needs a graded algebra");
    if (static_cast<int>(p.size()) != g.dim()) throw input_error("p has the wrong dimension");
    for (int i = 0; i < g.dim(); ++i)
        if (!is_zero(p[i])) {
            if (*g.element(i).degree != 1) throw input_error("p must have degree +1");
            if (g.parity(i) != Parity::Even)
                ; // odd entries are the point here
        }
    for (int i = 0; i < g.dim(); ++i)
        if (!is_zero(p[i]) && g.parity(i) != Parity::Odd)
            throw input_error("derived_bracket needs an odd p");
    auto pp = g.bracket(p, p);
    for (const auto& c : pp)
        if (!is_zero(c)) throw input_error("p is not homological: [p,p] != 0");
    auto gm1 = g.indices_of_degree(-1);
    const int n = static_cast<int>(gm1.size());
    std::vector<BasisElement> basis;
    for (int idx : gm1) {
        BasisElement b = g.element(idx);
        b.parity = b.parity + Parity::Odd; // parity shift
        b.name = "Pi(" + b.name + ")";
        b.degree = std::nullopt;
        basis.push_back(std::move(b));
    }
    std::vector<std::vector<std::map<int, Rational>>> c(n, std::vector<std::map<int, Rational>>(n));
    std::vector<Rational> xa(g.dim(), Rational(0)), xb(g.dim(), Rational(0));
    for (int a = 0; a < n; ++a) {
        xa.assign(g.dim(), Rational(0));
        xa[gm1[a]] = 1;
        auto px = g.bracket(p, xa);
        // the parity shift twists the bracket by (-1)^{p(x)}; without it the
        // shifted antisymmetry fails on mixed parities
        bool twist = g.parity(gm1[a]) == Parity::Odd;
        for (int b = 0; b < n; ++b) {
            xb.assign(g.dim(), Rational(0));
            xb[gm1[b]] = 1;
            auto prod = g.bracket(px, xb);
            for (int t = 0; t < n; ++t)
                if (!is_zero(prod[gm1[t]])) c[a][b][t] = twist ? -prod[gm1[t]] : prod[gm1[t]];
        }
    }
    LieSuperAlgebra out(std::move(basis), std::move(c));
    auto rep = out.check_axioms();
    if (!rep.ok)
        throw input_error("derived bracket violates the axioms: " + rep.violations.front());
    return out;
}

// --- generating functions ------------------------------------------------------

std::vector<std::vector<Rational>> killing_form(const LieSuperAlgebra& g) {
    const int n = g.dim();
    std::vector<std::vector<Rational>> k(n, std::vector<Rational>(n, Rational(0)));
    // ad(x_i) matrices
    std::vector<std::vector<std::vector<Rational>>> ad(
        n, std::vector<std::vector<Rational>>(n, std::vector<Rational>(n, Rational(0))));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (const auto& [t, v] : g.bracket_basis(i, j)) ad[i][t][j] = v;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            // str(ad x_i ad x_j) with the supertrace sign
            Rational acc(0);
            for (int a = 0; a < n; ++a) {
                Rational diag(0);
                for (int b = 0; b < n; ++b) diag += ad[i][a][b] * ad[j][b][a];
                if (g.parity(a) == Parity::Odd)
                    acc -= diag;
                else
                    acc += diag;
            }
            k[i][j] = acc;
        }
    return k;
}

namespace {

std::vector<Rational> flatten_field(const PolyVectorField& f,
                                    const std::vector<std::pair<int, Monomial>>& index) {
    std::vector<Rational> v;
    v.reserve(index.size());
    for (const auto& [c, m] : index) v.push_back(f.component(c).coefficient(m));
    return v;
}

} // namespace

GeneratingFunction generating_function(const LieSuperAlgebra& g,
                                       const std::vector<std::vector<Rational>>& form) {
    const int n = g.dim();
    for (int i = 0; i < n; ++i)
        if (g.parity(i) == Parity::Odd)
            throw input_error("generating_function expects an ordinary Lie algebra");
    if (static_cast<int>(form.size()) != n) throw input_error("form has the wrong size");
    for (const auto& row : form)
        if (static_cast<int>(row.size()) != n) throw input_error("form has the wrong size");
    // invariance <[x,y],z> = <x,[y,z]> on basis triples
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                Rational lhs(0), rhs(0);
                for (const auto& [t, v] : g.bracket_basis(i, j)) lhs += v * form[t][k];
                for (const auto& [t, v] : g.bracket_basis(j, k)) rhs += form[i][t] * v;
                if (lhs != rhs) throw input_error("form is not invariant");
            }

    PolyVectorField target = ce_field(g);
    auto ctx = target.context(); // purely odd since g is ordinary

    // coefficient index space of quadratic fields
    std::vector<std::pair<int, Monomial>> index;
    for (int c = 0; c < ctx->odd_count(); ++c)
        for (int a = 0; a < ctx->odd_count(); ++a)
            for (int b = a + 1; b < ctx->odd_count(); ++b) {
                Monomial m;
                m.odd = (std::uint64_t(1) << a) | (std::uint64_t(1) << b);
                index.emplace_back(c, m);
            }

    auto try_pairing = [&](std::vector<std::vector<Rational>> w)
        -> std::optional<std::pair<SuperPolynomial, OddPoissonContext>> {
        OddPoissonContext poisson(ctx, std::move(w));
        // columns: hamiltonian fields of the cubic monomials
        std::vector<Monomial> cubics;
        for (int a = 0; a < n; ++a)
            for (int b = a + 1; b < n; ++b)
                for (int c = b + 1; c < n; ++c) {
                    Monomial m;
                    m.odd = (std::uint64_t(1) << a) | (std::uint64_t(1) << b) |
                            (std::uint64_t(1) << c);
                    cubics.push_back(m);
                }
        std::vector<std::vector<Rational>> cols;
        cols.reserve(cubics.size());
        for (const auto& m : cubics) {
            SuperPolynomial mono = SuperPolynomial::monomial(ctx, m, Rational(1));
            cols.push_back(flatten_field(poisson.hamiltonian_field(mono), index));
        }
        auto sol = solve_linear(cols, flatten_field(target, index));
        if (!sol) return std::nullopt;
        SuperPolynomial h = SuperPolynomial::zero(ctx);
        for (size_t t = 0; t < cubics.size(); ++t)
            if (!is_zero((*sol)[t]))
                h += SuperPolynomial::monomial(ctx, cubics[t], (*sol)[t]);
        return std::pair{h, poisson};
    };

    if (auto res = try_pairing(form)) {
        GeneratingFunction out{res->first, res->second, false};
        if (!out.poisson.bracket(out.h, out.h).is_zero())
            throw input_error("generating function fails {H,H} = 0");
        return out;
    }
    if (auto res = try_pairing(rational_inverse(form))) {
        GeneratingFunction out{res->first, res->second, true};
        if (!out.poisson.bracket(out.h, out.h).is_zero())
            throw input_error("generating function fails {H,H} = 0");
        return out;
    }
    throw input_error("no cubic generating function for this form (convention clash)");
}

// --- kan ------------------------------------------------------------------------

namespace {

struct FieldSpace {
    // dense index of (coordinate, monomial of degree <= 2)
    std::vector<std::pair<int, Monomial>> slots;
    std::map<std::pair<int, std::string>, int> ids; // keyed by coord + monomial key

    static std::string key(const Monomial& m) {
        std::string s;
        for (auto e : m.even) s += std::to_string(e) + ",";
        s += "|" + std::to_string(m.odd);
        return s;
    }

    explicit FieldSpace(const VariableContext::Ptr& ctx) {
        const int nc = ctx->even_count() + ctx->odd_count();
        std::vector<Monomial> monos;
        monos.push_back(Monomial{});
        auto coord_mono = [&](int c) {
            Monomial m;
            if (c < ctx->even_count()) {
                m.even.assign(c + 1, 0);
                m.even[c] = 1;
            } else {
                m.odd = std::uint64_t(1) << (c - ctx->even_count());
            }
            return m;
        };
        for (int c = 0; c < nc; ++c) monos.push_back(coord_mono(c));
        for (int a = 0; a < nc; ++a)
            for (int b = a; b < nc; ++b) {
                if (a == b && a >= ctx->even_count()) continue; // theta^2 = 0
                Monomial m = coord_mono(a);
                Monomial mb = coord_mono(b);
                // merge (commutative on distinct slots)
                if (mb.even.size() > m.even.size()) m.even.resize(mb.even.size(), 0);
                for (size_t t = 0; t < mb.even.size(); ++t) m.even[t] += mb.even[t];
                m.odd |= mb.odd;
                monos.push_back(std::move(m));
            }
        for (int c = 0; c < nc; ++c)
            for (const auto& m : monos) {
                ids[{c, key(m)}] = static_cast<int>(slots.size());
                slots.emplace_back(c, m);
            }
    }

    std::vector<Rational> flatten(const PolyVectorField& f) const {
        std::vector<Rational> v(slots.size(), Rational(0));
        for (int c = 0; c < f.coord_count(); ++c)
            for (const auto& [m, coeff] : f.component(c).terms()) {
                auto it = ids.find({c, key(m)});
                if (it == ids.end())
                    throw unsupported_error("kan: coefficient degree exceeds the quadratic cap");
                v[it->second] = coeff;
            }
        return v;
    }
};

} // namespace

KanResult kan_build(const JordanSuperAlgebra& j, int dim_bound) {
    const int n = j.dim();
    if (n == 0) throw input_error("kan of the zero algebra");
    if (n > dim_bound) throw unsupported_error("kan: dimension exceeds the configured bound");
    // The construction represents the product by an even field P with
    // [[P, d_a], d_b] = d_{a o b}; an odd product map has no such P.
    if (!j.parity_additive())
        throw input_error("kan needs a parity-additive product (even product tensor)");
    int evens = 0, odds = 0;
    for (int i = 0; i < n; ++i) (j.parity(i) == Parity::Even ? evens : odds) += 1;
    std::vector<std::string> even_names, odd_names;
    for (int i = 0; i < n; ++i)
        if (j.parity(i) == Parity::Even) even_names.push_back("z_" + j.element(i).name);
    for (int i = 0; i < n; ++i)
        if (j.parity(i) == Parity::Odd) odd_names.push_back("z_" + j.element(i).name);
    auto ctx = VariableContext::make(evens, odds, even_names, odd_names, 8);
    // coordinate of basis element i
    std::vector<int> coord(n);
    {
        int ev = 0, od = 0;
        for (int i = 0; i < n; ++i)
            coord[i] = j.parity(i) == Parity::Even ? ev++ : evens + od++;
    }
    auto coord_var = [&](int c) {
        return c < evens ? SuperPolynomial::even_var(ctx, c)
                         : SuperPolynomial::odd_var(ctx, c - evens);
    };

    // P with [[P, d_a], d_b] = d_{a o b}: quadratic coefficients read off the
    // product table (signs from the two left derivatives).
    PolyVectorField p_field(ctx);
    for (int k = 0; k < n; ++k) {
        SuperPolynomial acc = SuperPolynomial::zero(ctx);
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) {
                auto it = j.product_basis(a, b).find(k);
                if (it == j.product_basis(a, b).end()) continue;
                if (a == b) {
                    if (j.parity(a) == Parity::Even)
                        acc += coord_var(coord[a]) * coord_var(coord[a]) * (it->second / 2);
                    // odd squares vanish; supercommutativity forces q[a][a] = 0
                } else if (coord[a] < coord[b]) {
                    // each unordered pair once; (b,a) is the same monomial by
                    // supercommutativity of the product table
                    Rational c = it->second;
                    if (j.parity(a) == Parity::Odd && j.parity(b) == Parity::Odd) c = -c;
                    acc += coord_var(coord[a]) * coord_var(coord[b]) * c;
                }
            }
        p_field.set_component(coord[k], std::move(acc));
    }

    // constant fields
    std::vector<PolyVectorField> x_fields;
    for (int a = 0; a < n; ++a) {
        PolyVectorField f(ctx);
        f.set_component(coord[a], SuperPolynomial::one(ctx));
        x_fields.push_back(std::move(f));
    }

    FieldSpace space(ctx);
    auto deg_of = [&](const PolyVectorField& f) -> std::optional<int> {
        std::optional<int> deg;
        for (int c = 0; c < f.coord_count(); ++c)
            for (const auto& [m, coeff] : f.component(c).terms()) {
                int d = m.even_degree() + m.odd_degree() - 1;
                if (!deg)
                    deg = d;
                else if (*deg != d)
                    return std::nullopt;
            }
        return deg;
    };

    // span bookkeeping per degree
    struct DegSpan {
        RationalSpan span;
        std::vector<PolyVectorField> fields;
        explicit DegSpan(int dim) : span(dim) {}
    };
    const int space_dim = static_cast<int>(space.slots.size());
    DegSpan d0(space_dim), d1(space_dim);

    std::vector<PolyVectorField> l_fields;
    for (int a = 0; a < n; ++a) l_fields.push_back(vf_bracket(p_field, x_fields[a]));
    for (const auto& f : l_fields)
        if (d0.span.add(space.flatten(f))) d0.fields.push_back(f);
    if (d1.span.add(space.flatten(p_field))) d1.fields.push_back(p_field);
    for (const auto& la : l_fields) {
        PolyVectorField f = vf_bracket(la, p_field);
        if (d1.span.add(space.flatten(f))) d1.fields.push_back(f);
    }

    // closure within degrees -1..1; anything of degree 2 must vanish
    bool grew = true;
    while (grew) {
        grew = false;
        // [0,0] -> 0
        for (size_t a = 0; a < d0.fields.size() && !grew; ++a)
            for (size_t b = 0; b < d0.fields.size() && !grew; ++b) {
                PolyVectorField f = vf_bracket(d0.fields[a], d0.fields[b]);
                if (d0.span.add(space.flatten(f))) {
                    d0.fields.push_back(f);
                    grew = true;
                }
            }
        // [1,-1] -> 0
        for (size_t a = 0; a < d1.fields.size() && !grew; ++a)
            for (int b = 0; b < n && !grew; ++b) {
                PolyVectorField f = vf_bracket(d1.fields[a], x_fields[b]);
                if (d0.span.add(space.flatten(f))) {
                    d0.fields.push_back(f);
                    grew = true;
                }
            }
        // [0,1] -> 1
        for (size_t a = 0; a < d0.fields.size() && !grew; ++a)
            for (size_t b = 0; b < d1.fields.size() && !grew; ++b) {
                PolyVectorField f = vf_bracket(d0.fields[a], d1.fields[b]);
                if (d1.span.add(space.flatten(f))) {
                    d1.fields.push_back(f);
                    grew = true;
                }
            }
    }
    // [1,1] must vanish identically
    for (size_t a = 0; a < d1.fields.size(); ++a)
        for (size_t b = 0; b < d1.fields.size(); ++b) {
            PolyVectorField f = vf_bracket(d1.fields[a], d1.fields[b]);
            if (!f.is_zero())
                throw input_error("kan closure failure: a degree-2 bracket does not vanish");
        }

    // assemble the abstract algebra: x fields, then degree 0, then P, then the
    // rest of degree 1
    std::vector<PolyVectorField> all = x_fields;
    for (const auto& f : d0.fields) all.push_back(f);
    int p_index = static_cast<int>(all.size());
    for (const auto& f : d1.fields) all.push_back(f);

    std::vector<std::vector<Rational>> cols;
    for (const auto& f : all) cols.push_back(space.flatten(f));
    std::vector<BasisElement> basis;
    for (int a = 0; a < n; ++a)
        basis.push_back(BasisElement{"X_" + j.element(a).name, j.parity(a), -1});
    for (size_t t = 0; t < d0.fields.size(); ++t) {
        auto p = d0.fields[t].parity();
        if (!p) throw input_error("kan: inhomogeneous structure field");
        basis.push_back(BasisElement{"L" + std::to_string(t + 1), *p, 0});
    }
    for (size_t t = 0; t < d1.fields.size(); ++t) {
        auto p = d1.fields[t].parity();
        if (!p) throw input_error("kan: inhomogeneous degree-1 field");
        basis.push_back(
            BasisElement{t == 0 ? std::string("P") : "K" + std::to_string(t), *p, 1});
    }
    const int dim = static_cast<int>(all.size());
    std::vector<std::vector<std::map<int, Rational>>> c(dim,
                                                        std::vector<std::map<int, Rational>>(dim));
    for (int a = 0; a < dim; ++a)
        for (int b = 0; b < dim; ++b) {
            PolyVectorField br = vf_bracket(all[a], all[b]);
            auto sol = solve_linear(cols, space.flatten(br));
            if (!sol) throw input_error("kan: bracket escaped the closed span");
            for (int t = 0; t < dim; ++t)
                if (!is_zero((*sol)[t])) c[a][b][t] = (*sol)[t];
        }
    LieSuperAlgebra algebra(std::move(basis), std::move(c));
    auto rep = algebra.check_axioms();
    if (!rep.ok) throw input_error("kan output fails the axioms: " + rep.violations.front());
    return KanResult{std::move(algebra), std::move(all), p_index};
}

RoundtripReport kan_roundtrip(const JordanSuperAlgebra& j) {
    RoundtripReport rep;
    KanResult kan = kan_build(j);
    std::vector<Rational> p(kan.algebra.dim(), Rational(0));
    p[kan.p_index] = 1;
    JordanSuperAlgebra back = jordan_from_graded(kan.algebra, p);
    if (back.dim() != j.dim()) {
        rep.ok = false;
        rep.witness = "dimension changed";
        return rep;
    }
    for (int a = 0; a < j.dim(); ++a)
        for (int b = 0; b < j.dim(); ++b)
            if (back.product_basis(a, b) != j.product_basis(a, b)) {
                rep.ok = false;
                rep.witness = "product (" + j.element(a).name + ", " + j.element(b).name +
                              ") does not match";
                return rep;
            }
    return rep;
}

} // namespace supalg
