#include "supalg/superpoly.hpp"

#include <sstream>

namespace supalg {

SuperPolynomial SuperPolynomial::even_var(VariableContext::Ptr ctx, int i) {
    if (i < 0 || i >= ctx->even_count()) throw input_error("even variable index out of range");
    Monomial m;
    m.even.assign(i + 1, 0);
    m.even[i] = 1;
    return monomial(std::move(ctx), std::move(m), Rational(1));
}

SuperPolynomial SuperPolynomial::odd_var(VariableContext::Ptr ctx, int i) {
    if (i < 0 || i >= ctx->odd_count()) throw input_error("odd variable index out of range");
    Monomial m;
    m.odd = std::uint64_t(1) << i;
    return monomial(std::move(ctx), std::move(m), Rational(1));
}

SuperPolynomial SuperPolynomial::monomial(VariableContext::Ptr ctx, Monomial m, const Rational& c) {
    m.trim();
    if (static_cast<int>(m.even.size()) > ctx->even_count())
        throw input_error("monomial references even variables outside the context");
    if (ctx->odd_count() < 64 && (m.odd >> ctx->odd_count()) != 0)
        throw input_error("monomial references odd generators outside the context");
    SuperPolynomial p(std::move(ctx));
    if (!supalg::is_zero(c)) p.terms_.emplace(std::move(m), c);
    return p;
}

SuperPolynomial SuperPolynomial::soul() const {
    SuperPolynomial s = *this;
    s.terms_.erase(Monomial{});
    return s;
}

std::optional<Parity> SuperPolynomial::parity() const {
    if (terms_.empty()) return Parity::Even;
    Parity p = terms_.begin()->first.parity();
    for (const auto& [m, c] : terms_)
        if (m.parity() != p) return std::nullopt;
    return p;
}

SuperPolynomial SuperPolynomial::parity_part(Parity p) const {
    SuperPolynomial r(ctx_);
    for (const auto& [m, c] : terms_)
        if (m.parity() == p) r.terms_.emplace(m, c);
    return r;
}

bool SuperPolynomial::is_nilpotent() const {
    for (const auto& [m, c] : terms_)
        if (m.odd == 0) return false;
    return true;
}

int SuperPolynomial::max_even_degree() const {
    int d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m.even_degree());
    return d;
}

SuperPolynomial SuperPolynomial::operator-() const {
    SuperPolynomial r(ctx_);
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
    return r;
}

void SuperPolynomial::add_term(const Monomial& m, const Rational& c) {
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (supalg::is_zero(it->second)) terms_.erase(it);
    } else if (supalg::is_zero(c)) {
        terms_.erase(it);
    }
}

void SuperPolynomial::set_coefficient(const Monomial& m, const Rational& c) {
    Monomial mm = m;
    mm.trim();
    if (supalg::is_zero(c))
        terms_.erase(mm);
    else
        terms_[mm] = c;
}

SuperPolynomial& SuperPolynomial::operator+=(const SuperPolynomial& o) {
    require_same_context(ctx_, o.ctx_);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

SuperPolynomial& SuperPolynomial::operator-=(const SuperPolynomial& o) {
    require_same_context(ctx_, o.ctx_);
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

SuperPolynomial& SuperPolynomial::operator*=(const Rational& c) {
    if (supalg::is_zero(c)) {
        terms_.clear();
        return *this;
    }
    for (auto& [m, v] : terms_) v *= c;
    return *this;
}

SuperPolynomial operator*(const SuperPolynomial& a, const SuperPolynomial& b) {
    require_same_context(a.ctx_, b.ctx_);
    SuperPolynomial r(a.ctx_);
    const int cap = a.ctx_ ? a.ctx_->even_degree_cap() : VariableContext::kDefaultDegreeCap;
    Rational prod;
    for (const auto& [ma, ca] : a.terms_) {
        for (const auto& [mb, cb] : b.terms_) {
            int sign = koszul_merge_sign(ma.odd, mb.odd);
            if (sign == 0) continue;
            Monomial m;
            m.odd = ma.odd | mb.odd;
            m.even.assign(std::max(ma.even.size(), mb.even.size()), 0);
            int deg = 0;
            for (size_t i = 0; i < m.even.size(); ++i) {
                int e = (i < ma.even.size() ? ma.even[i] : 0) + (i < mb.even.size() ? mb.even[i] : 0);
                m.even[i] = static_cast<std::uint16_t>(e);
                deg += e;
            }
            if (deg > cap)
                throw unsupported_error("even total degree exceeds the context cap");
            prod = ca * cb;
            if (sign < 0) prod = -prod;
            r.add_term(m, prod);
        }
    }
    return r;
}

SuperPolynomial SuperPolynomial::d_even(int var) const {
    if (var < 0 || var >= ctx_->even_count()) throw input_error("even variable index out of range");
    SuperPolynomial r(ctx_);
    for (const auto& [m, c] : terms_) {
        if (static_cast<size_t>(var) >= m.even.size() || m.even[var] == 0) continue;
        Monomial mm = m;
        Rational coeff = c * Rational(mm.even[var]);
        mm.even[var] -= 1;
        mm.trim();
        r.add_term(mm, coeff);
    }
    return r;
}

SuperPolynomial SuperPolynomial::d_odd(int var) const {
    if (var < 0 || var >= ctx_->odd_count()) throw input_error("odd variable index out of range");
    const std::uint64_t bit = std::uint64_t(1) << var;
    SuperPolynomial r(ctx_);
    for (const auto& [m, c] : terms_) {
        if (!(m.odd & bit)) continue;
        // Left derivative: move theta_var to the front past the lower bits.
        int below = __builtin_popcountll(m.odd & (bit - 1));
        Monomial mm = m;
        mm.odd &= ~bit;
        r.add_term(mm, (below & 1) ? -c : c);
    }
    return r;
}

SuperPolynomial SuperPolynomial::inverse() const {
    Rational b = body();
    if (supalg::is_zero(b)) throw input_error("not invertible: zero body");
    SuperPolynomial s = soul();
    if (!s.is_nilpotent())
        throw unsupported_error("inverse of an element with non-nilpotent soul");
    Rational binv = Rational(1) / b;
    // 1/(b+s) = (1/b) * sum_k (-s/b)^k; terminates because s is nilpotent.
    SuperPolynomial step = s * (-binv);
    SuperPolynomial acc = one(ctx_);
    SuperPolynomial pow = step;
    int guard = ctx_->odd_count();
    for (int k = 0; k < guard && !pow.is_zero(); ++k) {
        acc += pow;
        pow = pow * step;
    }
    return acc * binv;
}

SuperPolynomial SuperPolynomial::exp() const {
    if (!supalg::is_zero(body())) throw input_error("exp requires zero body");
    if (!is_homogeneous(Parity::Even)) throw input_error("exp requires an even element");
    if (!is_nilpotent()) throw unsupported_error("exp of a non-nilpotent element");
    SuperPolynomial acc = one(ctx_);
    SuperPolynomial pow = *this;
    Rational inv_fact(1);
    int guard = ctx_->odd_count();
    for (int k = 1; k <= guard && !pow.is_zero(); ++k) {
        inv_fact /= Rational(k);
        acc += pow * inv_fact;
        pow = pow * *this;
    }
    return acc;
}

SuperPolynomial SuperPolynomial::log() const {
    if (body() != Rational(1)) throw input_error("log requires body exactly 1");
    SuperPolynomial n = soul();
    if (!n.is_homogeneous(Parity::Even)) throw input_error("log requires an even element");
    if (!n.is_nilpotent()) throw unsupported_error("log of 1 + non-nilpotent element");
    SuperPolynomial acc = zero(ctx_);
    SuperPolynomial pow = n;
    int guard = ctx_->odd_count();
    for (int k = 1; k <= guard && !pow.is_zero(); ++k) {
        Rational c = Rational((k % 2) ? 1 : -1, k);
        c.canonicalize();
        acc += pow * c;
        pow = pow * n;
    }
    return acc;
}

std::string SuperPolynomial::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        Rational a = c;
        if (first) {
            if (sgn(a) < 0) {
                os << "-";
                a = -a;
            }
        } else {
            os << (sgn(a) < 0 ? " - " : " + ");
            if (sgn(a) < 0) a = -a;
        }
        first = false;
        bool coeff_one = (a == Rational(1));
        if (!coeff_one || m.is_one()) os << a.get_str();
        bool need_star = !coeff_one && !m.is_one();
        bool printed = false;
        for (size_t i = 0; i < m.even.size(); ++i) {
            if (m.even[i] == 0) continue;
            if (need_star || printed) os << "*";
            os << ctx_->even_name(static_cast<int>(i));
            if (m.even[i] > 1) os << "^" << m.even[i];
            printed = true;
            need_star = false;
        }
        std::uint64_t odd = m.odd;
        while (odd) {
            int j = __builtin_ctzll(odd);
            odd &= odd - 1;
            if (need_star || printed) os << "*";
            os << ctx_->odd_name(j);
            printed = true;
            need_star = false;
        }
    }
    return os.str();
}

} // namespace supalg
