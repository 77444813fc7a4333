#include "supalg/json_io.hpp"

#include <cstdlib>
#include <functional>

namespace supalg {

namespace {

void require_object(const Json& j, const char* what) {
    if (!j.is_object()) throw input_error(std::string(what) + ": expected a JSON object");
}

void reject_unknown(const Json& j, std::initializer_list<const char*> allowed,
                    const char* what) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const char* k : allowed)
            if (it.key() == k) ok = true;
        if (!ok) throw input_error(std::string(what) + ": unknown field '" + it.key() + "'");
    }
}

const Json& need(const Json& j, const char* key, const char* what) {
    auto it = j.find(key);
    if (it == j.end()) throw input_error(std::string(what) + ": missing field '" + key + "'");
    return *it;
}

int degree_cap_from_env() {
    const char* cap = std::getenv("SUPALG_EVEN_DEGREE_CAP");
    if (!cap) return VariableContext::kDefaultDegreeCap;
    int v = std::atoi(cap);
    if (v < 1) throw input_error("SUPALG_EVEN_DEGREE_CAP must be a positive integer");
    return v;
}

Parity parity_from_string(const std::string& s, const char* what) {
    if (s == "even") return Parity::Even;
    if (s == "odd") return Parity::Odd;
    throw input_error(std::string(what) + ": parity must be \"even\" or \"odd\"");
}

} // namespace

Json context_to_json(const VariableContext::Ptr& ctx) {
    Json j;
    j["even_vars"] = ctx->even_count();
    j["odd_vars"] = ctx->odd_count();
    j["even_names"] = ctx->even_names();
    j["odd_names"] = ctx->odd_names();
    return j;
}

VariableContext::Ptr context_from_json(const Json& j) {
    require_object(j, "context");
    reject_unknown(j, {"even_vars", "odd_vars", "even_names", "odd_names"}, "context");
    int even = need(j, "even_vars", "context").get<int>();
    int odd = need(j, "odd_vars", "context").get<int>();
    std::vector<std::string> even_names, odd_names;
    if (j.contains("even_names")) even_names = j["even_names"].get<std::vector<std::string>>();
    if (j.contains("odd_names")) odd_names = j["odd_names"].get<std::vector<std::string>>();
    return VariableContext::make(even, odd, std::move(even_names), std::move(odd_names),
                                 degree_cap_from_env());
}

Json poly_to_json(const SuperPolynomial& p) {
    Json terms = Json::array();
    for (const auto& [m, c] : p.terms()) {
        Json t;
        t["even"] = Json::array();
        for (auto e : m.even) t["even"].push_back(e);
        t["odd"] = Json::array();
        std::uint64_t rest = m.odd;
        while (rest) {
            int i = __builtin_ctzll(rest);
            rest &= rest - 1;
            t["odd"].push_back(i);
        }
        t["c"] = to_string(c);
        terms.push_back(std::move(t));
    }
    return terms;
}

SuperPolynomial poly_from_json(const Json& j, const VariableContext::Ptr& ctx) {
    if (!j.is_array()) throw input_error("term list: expected a JSON array");
    SuperPolynomial p = SuperPolynomial::zero(ctx);
    for (const auto& t : j) {
        require_object(t, "term");
        reject_unknown(t, {"even", "odd", "c"}, "term");
        Monomial m;
        if (t.contains("even"))
            for (const auto& e : t["even"]) {
                int v = e.get<int>();
                if (v < 0) throw input_error("term: negative even exponent");
                m.even.push_back(static_cast<std::uint16_t>(v));
            }
        int prev = -1;
        if (t.contains("odd"))
            for (const auto& e : t["odd"]) {
                int i = e.get<int>();
                if (i <= prev) throw input_error("term: odd indices must be strictly increasing");
                if (i < 0 || i >= ctx->odd_count())
                    throw input_error("term: odd index out of range");
                prev = i;
                m.odd |= std::uint64_t(1) << i;
            }
        m.trim();
        if (static_cast<int>(m.even.size()) > ctx->even_count())
            throw input_error("term: even exponent vector longer than the context");
        Rational c = rational_from_string(need(t, "c", "term").get<std::string>());
        SuperPolynomial mono = SuperPolynomial::monomial(ctx, std::move(m), c);
        p += mono;
    }
    return p;
}

Json matrix_to_json(const SuperMatrix& m) {
    Json j;
    j["context"] = context_to_json(m.context());
    j["rows"] = Json::array({m.rows().even_dim, m.rows().odd_dim});
    j["cols"] = Json::array({m.cols().even_dim, m.cols().odd_dim});
    if (m.declared_parity())
        j["parity"] = *m.declared_parity() == Parity::Even ? "even" : "odd";
    else
        j["parity"] = "mixed";
    Json rows = Json::array();
    for (int i = 0; i < m.row_count(); ++i) {
        Json row = Json::array();
        for (int jj = 0; jj < m.col_count(); ++jj) row.push_back(poly_to_json(m.at(i, jj)));
        rows.push_back(std::move(row));
    }
    j["entries"] = std::move(rows);
    return j;
}

SuperMatrix matrix_from_json(const Json& j) {
    require_object(j, "matrix");
    reject_unknown(j, {"context", "rows", "cols", "parity", "entries"}, "matrix");
    auto ctx = context_from_json(need(j, "context", "matrix"));
    auto rows = need(j, "rows", "matrix");
    auto cols = need(j, "cols", "matrix");
    if (!rows.is_array() || rows.size() != 2 || !cols.is_array() || cols.size() != 2)
        throw input_error("matrix: rows/cols must be pairs [even, odd]");
    BlockSignature rsig{rows[0].get<int>(), rows[1].get<int>()};
    BlockSignature csig{cols[0].get<int>(), cols[1].get<int>()};
    std::string pstr = need(j, "parity", "matrix").get<std::string>();
    std::optional<Parity> parity;
    if (pstr != "mixed") parity = parity_from_string(pstr, "matrix");
    SuperMatrix m(rsig, csig, ctx, parity);
    const Json& entries = need(j, "entries", "matrix");
    if (!entries.is_array() || static_cast<int>(entries.size()) != rsig.total())
        throw input_error("matrix: wrong number of entry rows");
    for (int i = 0; i < rsig.total(); ++i) {
        const Json& row = entries[i];
        if (!row.is_array() || static_cast<int>(row.size()) != csig.total())
            throw input_error("matrix: wrong number of entries in a row");
        for (int c = 0; c < csig.total(); ++c) m.set(i, c, poly_from_json(row[c], ctx));
    }
    return m;
}

namespace {

Json table_to_json(const std::vector<BasisElement>& basis,
                   const std::function<const std::map<int, Rational>&(int, int)>& cell,
                   const char* cell_key) {
    Json j;
    Json b = Json::array();
    for (const auto& e : basis) {
        Json be;
        be["name"] = e.name;
        be["parity"] = e.parity == Parity::Even ? "even" : "odd";
        if (e.degree) be["degree"] = *e.degree;
        b.push_back(std::move(be));
    }
    j["basis"] = std::move(b);
    Json cells = Json::array();
    const int n = static_cast<int>(basis.size());
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            const auto& m = cell(i, k);
            if (m.empty()) continue;
            Json c;
            c["i"] = i;
            c["j"] = k;
            Json coeffs;
            for (const auto& [t, v] : m) coeffs[std::to_string(t)] = to_string(v);
            c["coeffs"] = std::move(coeffs);
            cells.push_back(std::move(c));
        }
    j[cell_key] = std::move(cells);
    return j;
}

struct ParsedTable {
    std::vector<BasisElement> basis;
    std::vector<std::vector<std::map<int, Rational>>> cells;
};

ParsedTable table_from_json(const Json& j, const char* cell_key, const char* what) {
    require_object(j, what);
    for (auto it = j.begin(); it != j.end(); ++it)
        if (it.key() != "basis" && it.key() != cell_key)
            throw input_error(std::string(what) + ": unknown field '" + it.key() + "'");
    ParsedTable out;
    const Json& basis = need(j, "basis", what);
    if (!basis.is_array() || basis.empty())
        throw input_error(std::string(what) + ": basis must be a nonempty array");
    for (const auto& be : basis) {
        require_object(be, "basis element");
        reject_unknown(be, {"name", "parity", "degree"}, "basis element");
        BasisElement e;
        e.name = need(be, "name", "basis element").get<std::string>();
        e.parity = parity_from_string(need(be, "parity", "basis element").get<std::string>(),
                                      "basis element");
        if (be.contains("degree")) e.degree = be["degree"].get<int>();
        out.basis.push_back(std::move(e));
    }
    const int n = static_cast<int>(out.basis.size());
    out.cells.assign(n, std::vector<std::map<int, Rational>>(n));
    const Json& cells = need(j, cell_key, what);
    if (!cells.is_array()) throw input_error(std::string(what) + ": cells must be an array");
    for (const auto& c : cells) {
        require_object(c, "cell");
        reject_unknown(c, {"i", "j", "coeffs"}, "cell");
        int i = need(c, "i", "cell").get<int>();
        int k = need(c, "j", "cell").get<int>();
        if (i < 0 || i >= n || k < 0 || k >= n) throw input_error("cell: index out of range");
        const Json& coeffs = need(c, "coeffs", "cell");
        require_object(coeffs, "coeffs");
        for (auto it = coeffs.begin(); it != coeffs.end(); ++it) {
            int t = std::stoi(it.key());
            if (t < 0 || t >= n) throw input_error("cell: coefficient index out of range");
            out.cells[i][k][t] = rational_from_string(it.value().get<std::string>());
        }
    }
    return out;
}

} // namespace

Json algebra_to_json(const LieSuperAlgebra& g) {
    return table_to_json(
        g.basis(), [&](int i, int j) -> const std::map<int, Rational>& {
            return g.bracket_basis(i, j);
        },
        "brackets");
}

LieSuperAlgebra algebra_from_json(const Json& j) {
    ParsedTable t = table_from_json(j, "brackets", "algebra");
    return LieSuperAlgebra(std::move(t.basis), std::move(t.cells));
}

Json jordan_to_json(const JordanSuperAlgebra& j) {
    return table_to_json(
        [&]() {
            std::vector<BasisElement> b;
            for (int i = 0; i < j.dim(); ++i) b.push_back(j.element(i));
            return b;
        }(),
        [&](int i, int k) -> const std::map<int, Rational>& { return j.product_basis(i, k); },
        "products");
}

JordanSuperAlgebra jordan_from_json(const Json& j) {
    ParsedTable t = table_from_json(j, "products", "jordan algebra");
    return JordanSuperAlgebra(std::move(t.basis), std::move(t.cells));
}

Json field_to_json(const PolyVectorField& f) {
    Json j;
    j["context"] = context_to_json(f.context());
    Json comps = Json::array();
    for (int c = 0; c < f.coord_count(); ++c) comps.push_back(poly_to_json(f.component(c)));
    j["components"] = std::move(comps);
    return j;
}

PolyVectorField field_from_json(const Json& j) {
    require_object(j, "field");
    reject_unknown(j, {"context", "components"}, "field");
    auto ctx = context_from_json(need(j, "context", "field"));
    PolyVectorField f(ctx);
    const Json& comps = need(j, "components", "field");
    if (!comps.is_array() || static_cast<int>(comps.size()) != f.coord_count())
        throw input_error("field: one component per coordinate required");
    for (int c = 0; c < f.coord_count(); ++c) f.set_component(c, poly_from_json(comps[c], ctx));
    return f;
}

Json quadruple_to_json(const PointQuadruple& q) {
    Json j;
    j["a"] = matrix_to_json(q.a);
    j["b"] = matrix_to_json(q.b);
    j["c"] = matrix_to_json(q.c);
    j["d"] = matrix_to_json(q.d);
    return j;
}

PointQuadruple quadruple_from_json(const Json& j) {
    require_object(j, "quadruple");
    reject_unknown(j, {"a", "b", "c", "d"}, "quadruple");
    PointQuadruple q{matrix_from_json(need(j, "a", "quadruple")),
                     matrix_from_json(need(j, "b", "quadruple")),
                     matrix_from_json(need(j, "c", "quadruple")),
                     matrix_from_json(need(j, "d", "quadruple"))};
    q.validate();
    return q;
}

Json grading_report_to_json(const GradingReport& rep) {
    Json j;
    j["depth"] = rep.depth;
    j["length"] = rep.length;
    Json dims;
    for (const auto& [deg, d] : rep.dims)
        dims[std::to_string(deg)] = Json::array({d.first, d.second});
    j["dims"] = std::move(dims);
    return j;
}

std::string digest(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    char buf[32];
    std::snprintf(buf, sizeof(buf), "fnv1a:%016llx", static_cast<unsigned long long>(h));
    return buf;
}

} // namespace supalg
