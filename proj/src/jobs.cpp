#include "supalg/jobs.hpp"

#include <sstream>

namespace supalg {

namespace {

// --- params mini-grammar: name(int,int,...) and key=value lists ----------------

struct Call {
    std::string name;
    std::vector<int> args;
};

Call parse_call(const std::string& s) {
    Call c;
    auto open = s.find('(');
    if (open == std::string::npos) {
        c.name = s;
        return c;
    }
    if (s.back() != ')') throw input_error("params: expected name(args): " + s);
    c.name = s.substr(0, open);
    std::string args = s.substr(open + 1, s.size() - open - 2);
    std::string cur;
    for (char ch : args) {
        if (ch == ',' || ch == '|') {
            if (!cur.empty()) c.args.push_back(std::stoi(cur));
            cur.clear();
        } else if (ch == ' ') {
            continue;
        } else {
            cur += ch;
        }
    }
    if (!cur.empty()) c.args.push_back(std::stoi(cur));
    return c;
}

std::map<std::string, std::string> parse_kv(const std::string& s) {
    std::map<std::string, std::string> out;
    std::string cur;
    auto flush = [&]() {
        if (cur.empty()) return;
        auto eq = cur.find('=');
        if (eq == std::string::npos) throw input_error("params: expected key=value: " + cur);
        out[cur.substr(0, eq)] = cur.substr(eq + 1);
        cur.clear();
    };
    for (char ch : s) {
        if (ch == ';')
            flush();
        else
            cur += ch;
    }
    flush();
    return out;
}

LieSuperAlgebra build_series(const std::string& params, GradingReport* grading,
                             bool* graded_out) {
    if (graded_out) *graded_out = false;
    if (params.rfind("table2:", 0) == 0) {
        Call c = parse_call(params.substr(7));
        Table2Row row = build_table2(c.name, c.args);
        if (grading) *grading = row.report;
        if (graded_out) *graded_out = true;
        return std::move(row.algebra);
    }
    Call c = parse_call(params);
    auto arg = [&](size_t i) -> int {
        return i < c.args.size() ? c.args[i] : 0;
    };
    auto osp_pair = [&]() {
        int m = arg(0), k = arg(1);
        if (k % 2) throw input_error("osp(m|k): k must be even (k = 2n)");
        return std::pair{m, k / 2};
    };
    if (c.name == "gl") return build_classical(Series::gl, arg(0), arg(1));
    if (c.name == "sl") return build_classical(Series::sl, arg(0), arg(1));
    if (c.name == "psl") return build_classical(Series::psl, arg(0), arg(1));
    if (c.name == "q") return build_classical(Series::q, arg(0));
    if (c.name == "sq") return build_classical(Series::sq, arg(0));
    if (c.name == "psq") return build_classical(Series::psq, arg(0));
    if (c.name == "pe") return build_classical(Series::pe, arg(0));
    if (c.name == "spe") return build_classical(Series::spe, arg(0));
    if (c.name == "osp") {
        auto [m, n] = osp_pair();
        return build_classical(Series::osp, m, n);
    }
    if (c.name == "osp_split") {
        auto [m, n] = osp_pair();
        return build_classical(Series::osp_split, m, n);
    }
    throw unsupported_error("unknown series: " + c.name);
}

JordanSuperAlgebra build_jordan_kind(const std::string& params) {
    Call c = parse_call(params);
    auto arg = [&](size_t i) -> int { return i < c.args.size() ? c.args[i] : 0; };
    if (c.name == "Mat") return jordan_matrix(JordanKind::Mat, arg(0), arg(1));
    if (c.name == "Q") return jordan_matrix(JordanKind::Q, arg(0));
    if (c.name == "OSp") {
        int m = arg(0), k = arg(1);
        if (k % 2) throw input_error("OSp(m|k): k must be even (k = 2n)");
        return jordan_matrix(JordanKind::OSp, m, k / 2);
    }
    if (c.name == "Pe") return jordan_matrix(JordanKind::Pe, arg(0));
    if (c.name == "bilinear") return jordan_bilinear(arg(0), arg(1));
    if (c.name == "hk") return jordan_hamiltonian_odd(arg(0));
    throw unsupported_error("unknown Jordan kind: " + c.name);
}

// "p=NAME[+NAME...]" resolved against the basis
std::vector<Rational> parse_p(const std::string& params, const LieSuperAlgebra& g) {
    auto kv = parse_kv(params);
    auto it = kv.find("p");
    if (it == kv.end()) throw input_error("params must provide p=<basis names joined by +>");
    std::vector<Rational> p(g.dim(), Rational(0));
    std::string cur;
    auto add = [&]() {
        if (cur.empty()) return;
        for (int i = 0; i < g.dim(); ++i)
            if (g.element(i).name == cur) {
                p[i] += 1;
                cur.clear();
                return;
            }
        throw input_error("unknown basis element in p: " + cur);
    };
    for (char ch : it->second) {
        if (ch == '+')
            add();
        else
            cur += ch;
    }
    add();
    return p;
}

Json envelope(const JobSpec& spec) {
    Json j;
    j["tool"] = "supalg";
    j["version"] = kToolVersion;
    j["verb"] = spec.action.empty() ? spec.verb : spec.verb + " " + spec.action;
    if (!spec.variant.empty()) j["variant"] = spec.variant;
    j["seed"] = spec.seed;
    if (!spec.input_bytes.empty()) j["input_digest"] = digest(spec.input_bytes);
    return j;
}

// Reports from earlier runs are accepted directly: the payload object is
// unwrapped from the envelope by key.
const Json& need_input(const JobSpec& spec, const char* unwrap_key = nullptr) {
    if (!spec.input) throw input_error("this verb needs --in <file>");
    const Json& j = *spec.input;
    if (unwrap_key && j.is_object() && j.contains(unwrap_key)) return j[unwrap_key];
    return j;
}

Json dims_json(const LieSuperAlgebra& g) {
    int ev = 0, od = 0;
    for (int i = 0; i < g.dim(); ++i) (g.parity(i) == Parity::Even ? ev : od) += 1;
    return Json::array({ev, od});
}

// Constant coefficients print as "num/den" strings, anything else as a term
// list; keeps the scalar payloads human-readable.
Json coeff_json(const SuperPolynomial& p) {
    if (p.is_constant()) return to_string(p.body());
    return poly_to_json(p);
}

JobResult finish_ok(const JobSpec& spec, Json payload) {
    Json rep = envelope(spec);
    rep.update(payload);
    return JobResult{0, std::move(rep)};
}

JobResult finish_fail(const JobSpec& spec, Json payload) {
    Json rep = envelope(spec);
    rep.update(payload);
    rep["status"] = "check-failed";
    return JobResult{1, std::move(rep)};
}

JobResult run_algebra(const JobSpec& spec) {
    if (spec.action == "build") {
        GradingReport grading;
        bool graded = false;
        LieSuperAlgebra g = build_series(spec.params, &grading, &graded);
        auto axioms = g.check_axioms();
        if (!axioms.ok)
            return finish_fail(spec, Json{{"witness", axioms.violations}});
        Json payload;
        payload["dims"] = dims_json(g);
        if (graded) payload["grading"] = grading_report_to_json(grading);
        payload["algebra"] = algebra_to_json(g);
        return finish_ok(spec, std::move(payload));
    }
    if (spec.action == "check") {
        LieSuperAlgebra g = algebra_from_json(need_input(spec, "algebra"));
        auto rep = g.check_axioms();
        if (!rep.ok) return finish_fail(spec, Json{{"witness", rep.violations}});
        Json payload;
        payload["status"] = "ok";
        payload["dims"] = dims_json(g);
        return finish_ok(spec, std::move(payload));
    }
    throw input_error("algebra needs an action: build | check");
}

JobResult run_jordan(const JobSpec& spec) {
    if (spec.action == "build") {
        JordanSuperAlgebra j = [&]() {
            if (spec.variant == "from-graded") {
                LieSuperAlgebra g = algebra_from_json(need_input(spec, "algebra"));
                return jordan_from_graded(g, parse_p(spec.params, g));
            }
            if (!spec.variant.empty() && spec.variant != "kind")
                throw unsupported_error("unknown jordan build variant: " + spec.variant);
            return build_jordan_kind(spec.params);
        }();
        Json payload;
        payload["dim"] = j.dim();
        payload["unital"] = j.unit().has_value();
        payload["jordan"] = jordan_to_json(j);
        return finish_ok(spec, std::move(payload));
    }
    if (spec.action == "check") {
        JordanSuperAlgebra j = jordan_from_json(need_input(spec, "jordan"));
        std::string w;
        if (!j.supercommutative_on_basis(&w))
            return finish_fail(spec, Json{{"witness", "not supercommutative at " + w}});
        auto rep = check_jordan_identity(j);
        if (!rep.ok) return finish_fail(spec, Json{{"witness", rep.witness}});
        Json payload;
        payload["status"] = "ok";
        payload["dim"] = j.dim();
        return finish_ok(spec, std::move(payload));
    }
    throw input_error("jordan needs an action: build | check");
}

JobResult run_kan(const JobSpec& spec) {
    JordanSuperAlgebra j = jordan_from_json(need_input(spec, "jordan"));
    KanResult kan = kan_build(j);
    Json payload;
    payload["grading"] = grading_report_to_json(kan.algebra.grading_report());
    payload["p_index"] = kan.p_index;
    payload["algebra"] = algebra_to_json(kan.algebra);
    return finish_ok(spec, std::move(payload));
}

JobResult run_roundtrip(const JobSpec& spec) {
    JordanSuperAlgebra j = jordan_from_json(need_input(spec, "jordan"));
    auto rep = kan_roundtrip(j);
    if (!rep.ok) return finish_fail(spec, Json{{"witness", rep.witness}});
    return finish_ok(spec, Json{{"status", "ok"}, {"dim", j.dim()}});
}

JobResult run_ce(const JobSpec& spec) {
    LieSuperAlgebra g = algebra_from_json(need_input(spec, "algebra"));
    PolyVectorField p = ce_field(g);
    Json payload;
    payload["field"] = field_to_json(p);
    return finish_ok(spec, std::move(payload));
}

JobResult run_homological(const JobSpec& spec) {
    const Json& raw = need_input(spec);
    PolyVectorField field = [&]() {
        const Json& in = raw.is_object() && raw.contains("field")
                             ? raw["field"]
                             : (raw.is_object() && raw.contains("algebra") ? raw["algebra"] : raw);
        if (in.contains("components")) return field_from_json(in);
        return ce_field(algebra_from_json(in));
    }();
    auto rep = is_homological(field);
    if (!rep.homological) return finish_fail(spec, Json{{"witness", rep.witness}});
    return finish_ok(spec, Json{{"status", "ok"}});
}

JobResult run_derived_bracket(const JobSpec& spec) {
    LieSuperAlgebra g = algebra_from_json(need_input(spec, "algebra"));
    auto p = parse_p(spec.params, g);
    LieSuperAlgebra out = derived_bracket(g, p);
    Json payload;
    payload["dims"] = dims_json(out);
    payload["algebra"] = algebra_to_json(out);
    return finish_ok(spec, std::move(payload));
}

JobResult run_divergence(const JobSpec& spec) {
    PolyVectorField f = field_from_json(need_input(spec, "field"));
    return finish_ok(spec, Json{{"divergence", poly_to_json(divergence(f))}});
}

JobResult run_matrix_scalar(const JobSpec& spec) {
    SuperMatrix m = matrix_from_json(need_input(spec, "matrix"));
    SuperPolynomial v = [&]() {
        if (spec.verb == "str") return m.supertrace();
        if (spec.verb == "ber") return m.berezinian();
        if (spec.verb == "qtr") return m.queer_trace();
        return m.queer_determinant();
    }();
    return finish_ok(spec, Json{{"value", poly_to_json(v)}});
}

JobResult run_crossratio(const JobSpec& spec) {
    const Json& in = need_input(spec);
    std::string variant = spec.variant.empty() ? "ber" : spec.variant;
    if (variant == "quadric") {
        // {"space": {"m":..,"n":..}, "context": {...}, "points": {"a":[...],..}}
        if (!in.is_object()) throw input_error("quadric input must be an object");
        for (auto it = in.begin(); it != in.end(); ++it)
            if (it.key() != "space" && it.key() != "context" && it.key() != "points")
                throw input_error("quadric input: unknown field '" + it.key() + "'");
        if (!in.contains("space") || !in.contains("context") || !in.contains("points"))
            throw input_error("quadric input needs space, context and points");
        auto ctx = context_from_json(in["context"]);
        int m = in["space"].value("m", 0);
        int n = in["space"].value("n", 0);
        QuadricSpace space(m, n, ctx);
        auto point = [&](const char* key) {
            const Json& arr = in["points"].at(key);
            if (!arr.is_array() || static_cast<int>(arr.size()) != space.dim())
                throw input_error("quadric point has the wrong dimension");
            QuadricPoint p;
            for (const auto& t : arr) p.push_back(poly_from_json(t, ctx));
            return p;
        };
        SuperPolynomial v =
            cross_ratio_quadric(space, point("a"), point("b"), point("c"), point("d"));
        return finish_ok(spec, Json{{"value", coeff_json(v)}});
    }
    PointQuadruple q = quadruple_from_json(
        in.is_object() && in.contains("quadruple") ? in["quadruple"] : in);
    InvariantCollection coll = [&]() {
        if (variant == "det") return invariants_det(q);
        if (variant == "qet") return invariants_qet(q, spec.order);
        if (variant == "ber") return invariants_ber(q, spec.order);
        throw unsupported_error("unknown crossratio variant: " + variant);
    }();
    Json coeffs = Json::array();
    for (const auto& c : coll.coeffs) coeffs.push_back(coeff_json(c));
    Json payload;
    payload["order"] = coll.order;
    payload["coeffs"] = std::move(coeffs);
    return finish_ok(spec, std::move(payload));
}

JobResult run_invariance(const JobSpec& spec) {
    auto kv = parse_kv(spec.params);
    std::string variant = spec.variant.empty() ? "ber" : spec.variant;
    int samples = kv.count("samples") ? std::stoi(kv.at("samples")) : 50;
    int gens = kv.count("gens") ? std::stoi(kv.at("gens")) : 4;
    InvarianceReport rep;
    if (variant == "quadric") {
        int m = kv.count("m") ? std::stoi(kv.at("m")) : 2;
        int n = kv.count("n") ? std::stoi(kv.at("n")) : 1;
        rep = quadric_invariance_harness(m, n, gens, samples, spec.seed);
    } else {
        BlockSignature sig{1, 1};
        if (kv.count("sig")) {
            Call c = parse_call("sig(" + kv.at("sig") + ")");
            if (c.args.size() != 2) throw input_error("sig must be m|n");
            sig = BlockSignature{c.args[0], c.args[1]};
        }
        rep = invariance_harness(variant, sig, gens, samples, spec.seed, spec.order);
    }
    Json payload;
    payload["requested"] = rep.requested;
    payload["verified"] = rep.verified;
    payload["skipped"] = rep.skipped;
    if (!rep.ok) {
        payload["witness"] = rep.witness;
        return finish_fail(spec, std::move(payload));
    }
    payload["status"] = "ok";
    return finish_ok(spec, std::move(payload));
}

} // namespace

std::string usage_text() {
    return "usage: supalg <verb> [action] [--in FILE] [--out FILE] [--seed N] [--order N]\n"
           "              [--variant V] [--params P]\n"
           "verbs:\n"
           "  algebra build --params \"gl(2|1)|sl|psl|q|sq|psq|pe|spe|osp|osp_split|table2:Row(..)\"\n"
           "  algebra check --in algebra.json\n"
           "  jordan build --params \"Mat(1|1)|Q(2)|OSp(1|2)|Pe(2)|bilinear(2,1)|hk(2)\"\n"
           "  jordan build --variant from-graded --in graded.json --params \"p=NAME+NAME\"\n"
           "  jordan check --in jordan.json\n"
           "  kan --in jordan.json            roundtrip --in jordan.json\n"
           "  ce --in algebra.json            homological-check --in algebra|field.json\n"
           "  derived-bracket --in graded.json --params \"p=NAME\"\n"
           "  divergence --in field.json\n"
           "  str|ber|qtr|qet --in matrix.json\n"
           "  crossratio --variant det|ber|qet|quadric [--order N] --in quadruple.json\n"
           "  invariance --variant det|ber|qet|quadric --params \"sig=m|n;samples=N;gens=K\"\n";
}

JobResult run_job(const JobSpec& spec) {
    try {
        if (spec.verb == "algebra") return run_algebra(spec);
        if (spec.verb == "jordan") return run_jordan(spec);
        if (spec.verb == "kan") return run_kan(spec);
        if (spec.verb == "roundtrip") return run_roundtrip(spec);
        if (spec.verb == "ce") return run_ce(spec);
        if (spec.verb == "homological-check") return run_homological(spec);
        if (spec.verb == "derived-bracket") return run_derived_bracket(spec);
        if (spec.verb == "divergence") return run_divergence(spec);
        if (spec.verb == "str" || spec.verb == "ber" || spec.verb == "qtr" || spec.verb == "qet")
            return run_matrix_scalar(spec);
        if (spec.verb == "crossratio") return run_crossratio(spec);
        if (spec.verb == "invariance") return run_invariance(spec);
        throw input_error("unknown verb: " + spec.verb);
    } catch (const unsupported_error& e) {
        Json rep = envelope(spec);
        rep["error"] = e.what();
        return JobResult{3, std::move(rep)};
    } catch (const input_error& e) {
        Json rep = envelope(spec);
        rep["error"] = e.what();
        return JobResult{2, std::move(rep)};
    } catch (const nlohmann::json::exception& e) {
        Json rep = envelope(spec);
        rep["error"] = std::string("malformed JSON: ") + e.what();
        return JobResult{2, std::move(rep)};
    } catch (const std::exception& e) {
        Json rep = envelope(spec);
        rep["error"] = e.what();
        return JobResult{2, std::move(rep)};
    }
}

} // namespace supalg
