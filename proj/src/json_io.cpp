#include "deltaset/json_io.hpp"

#include <sstream>

namespace deltaset {

json set_to_json(const ElementSet& s) {
    json arr = json::array();
    s.for_each([&](int i) { arr.push_back(i); });
    return arr;
}

ElementSet set_from_json(const json& j, int universe) {
    if (!j.is_array()) throw invalid_input_error("set must be an integer array");
    ElementSet s(universe);
    for (const auto& e : j) {
        int v = e.get<int>();
        if (v < 0 || v >= universe)
            throw invalid_input_error("set element " + std::to_string(v) + " out of carrier");
        s.insert(v);
    }
    return s;
}

json rational_to_json(const Rational& r) {
    return json{{"num", r.num}, {"den", r.den}, {"value", r.to_double()}};
}

Semigroup semigroup_from_json(const json& j) {
    if (!j.is_object()) throw invalid_input_error("semigroup descriptor must be an object");
    if (j.contains("table") && !j.contains("kind")) {
        std::vector<std::vector<int>> table = j.at("table").get<std::vector<std::vector<int>>>();
        std::optional<int> identity;
        if (j.contains("identity") && !j.at("identity").is_null())
            identity = j.at("identity").get<int>();
        return Semigroup::from_table(j.value("name", "table"), std::move(table), identity);
    }
    std::string kind = j.value("kind", "");
    if (kind == "cyclic") return Semigroup::cyclic(j.at("n").get<int>());
    if (kind == "catalog") return Semigroup::catalog(j.at("name").get<std::string>());
    if (kind == "truncated_nat") return Semigroup::truncated_nat(j.at("horizon").get<int>());
    if (kind == "table") {
        std::vector<std::vector<int>> table = j.at("table").get<std::vector<std::vector<int>>>();
        std::optional<int> identity;
        if (j.contains("identity") && !j.at("identity").is_null())
            identity = j.at("identity").get<int>();
        return Semigroup::from_table(j.value("name", "table"), std::move(table), identity);
    }
    if (kind == "product") {
        const auto& factors = j.at("factors");
        if (!factors.is_array() || factors.size() < 2)
            throw invalid_input_error("product needs at least two factors");
        Semigroup acc = semigroup_from_json(factors[0]);
        for (size_t i = 1; i < factors.size(); ++i)
            acc = Semigroup::direct_product(acc, semigroup_from_json(factors[i]));
        return acc;
    }
    throw invalid_input_error("unknown semigroup kind: " + kind);
}

json semigroup_to_json(const Semigroup& s) {
    json j{{"name", s.name()}, {"size", s.size()}};
    if (s.identity())
        j["identity"] = *s.identity();
    else
        j["identity"] = nullptr;
    if (s.is_truncated_nat()) {
        j["kind"] = "truncated_nat";
        j["horizon"] = s.size();
    } else {
        json table = json::array();
        for (int a = 0; a < s.size(); ++a) {
            json row = json::array();
            for (int b = 0; b < s.size(); ++b) row.push_back(s.product(a, b));
            table.push_back(std::move(row));
        }
        j["table"] = std::move(table);
    }
    return j;
}

FilterOracle oracle_from_json(const json& j, const Semigroup& s, uint64_t default_budget) {
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "uniform") return uniform_oracle(s);
    if (kind == "frechet") return frechet_oracle(s.size(), j.at("k").get<int>());
    if (kind == "density") return density_oracle(s, j.at("theta").get<double>());
    if (kind == "ip_star")
        return ip_star_oracle(s, j.at("depth").get<int>(), j.value("budget", default_budget));
    if (kind == "principal") return principal_oracle(s.size(), j.at("point").get<int>());
    if (kind == "conull") return measure_conull_oracle(measure_from_json(j.at("measure"), s));
    throw invalid_input_error("unknown oracle kind: " + kind);
}

std::vector<ElementSet> windows_from_json(const json& j, int carrier) {
    if (!j.is_array()) throw invalid_input_error("windows must be an array");
    std::vector<ElementSet> out;
    for (const auto& w : j) {
        if (w.is_array() && w.size() == 2 && w[0].is_number()) {
            int lo = w[0].get<int>(), hi = w[1].get<int>();
            if (lo < 0 || hi > carrier || lo >= hi)
                throw invalid_input_error("window [" + std::to_string(lo) + "," +
                                          std::to_string(hi) + ") out of carrier");
            ElementSet s(carrier);
            for (int i = lo; i < hi; ++i) s.insert(i);
            out.push_back(std::move(s));
        } else {
            out.push_back(set_from_json(w, carrier));
        }
    }
    return out;
}

SubadditiveMeasure measure_from_json(const json& j, const Semigroup& s) {
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "counting") return counting_measure(s);
    if (kind == "upper_density")
        return upper_density_measure(s, windows_from_json(j.at("windows"), s.size()));
    throw invalid_input_error("unknown measure kind: " + kind);
}

Relation relation_from_json(const json& j) {
    int n = j.at("size").get<int>();
    if (n <= 0) throw invalid_input_error("relation size must be positive");
    if (j.contains("edges")) {
        Relation r(n);
        for (const auto& e : j.at("edges")) {
            if (!e.is_array() || e.size() != 2)
                throw invalid_input_error("edge must be a pair");
            r.set(e[0].get<int>(), e[1].get<int>(), true);
        }
        return r;
    }
    if (j.contains("matrix")) {
        const auto& m = j.at("matrix");
        if (int(m.size()) != n) throw invalid_input_error("matrix must have size rows");
        Relation r(n);
        for (int a = 0; a < n; ++a) {
            if (int(m[size_t(a)].size()) != n)
                throw invalid_input_error("matrix row length mismatch");
            for (int b = 0; b < n; ++b)
                r.set(a, b, m[size_t(a)][size_t(b)].get<int>() != 0);
        }
        return r;
    }
    throw invalid_input_error("relation needs edges or matrix");
}

json relation_to_json(const Relation& r) {
    json edges = json::array();
    for (int a = 0; a < r.size(); ++a)
        for (int b = 0; b < r.size(); ++b)
            if (r(a, b)) edges.push_back(json::array({a, b}));
    return json{{"size", r.size()}, {"edges", std::move(edges)}};
}

VectorFamily family_from_json(const json& j, int carrier) {
    VectorFamily f;
    f.dim = j.at("dim").get<int>();
    f.norm_bound = j.value("norm_bound", 1.0);
    f.vectors = j.at("vectors").get<std::vector<std::vector<double>>>();
    if (int(f.vectors.size()) != carrier)
        throw invalid_input_error("vector family must cover the carrier");
    f.validate();
    return f;
}

json family_to_json(const VectorFamily& f) {
    return json{{"dim", f.dim}, {"norm_bound", f.norm_bound}, {"vectors", f.vectors}};
}

FiniteAction action_from_json(const json& j) {
    if (j.contains("rotations")) {
        const json& r = j.at("rotations");
        return FiniteAction::rotations(r.at("space").get<int>(), r.at("group").get<int>(),
                                       r.at("right_stride").get<int>(),
                                       r.at("left_stride").get<int>());
    }
    FiniteAction a;
    a.space = j.at("space").get<int>();
    a.right = j.at("right").get<std::vector<std::vector<int>>>();
    if (j.contains("left") && !j.at("left").is_null())
        a.left = j.at("left").get<std::vector<std::vector<int>>>();
    if (j.contains("nu")) {
        for (const auto& e : j.at("nu"))
            a.nu.emplace_back(e.at("num").get<long long>(), e.at("den").get<long long>());
    } else {
        a.nu.assign(size_t(a.space), Rational(1, a.space));
    }
    return a;
}

json transcript_to_json(const RamseyTranscript& t) {
    json a = json::array(), h = json::array(), thick = json::array();
    for (const auto& s : t.a_seq) a.push_back(set_to_json(s));
    for (const auto& s : t.h_seq) h.push_back(set_to_json(s));
    for (const auto& d : t.thickness)
        thick.push_back(json{{"m", d.m},
                             {"evaluated", d.evaluated},
                             {"holds", d.holds},
                             {"exhaustive", d.exhaustive}});
    return json{{"n", t.n},          {"h", t.h},       {"A_seq", std::move(a)},
                {"H_seq", std::move(h)}, {"g", t.base_g}, {"witness", t.witness},
                {"thickness", std::move(thick)}};
}

json transcript_report_to_json(const TranscriptReport& r) {
    return json{{"ok", r.ok()}, {"violations", r.violations}};
}

json tree_to_json(const DerivationTree& t) {
    json nodes = json::array();
    for (const auto& n : t.nodes)
        nodes.push_back(json{{"path", n.path},
                             {"set", set_to_json(n.derived)},
                             {"ext", set_to_json(n.ext)},
                             {"leaf", n.leaf},
                             {"truncated", n.frontier}});
    return json{{"root", set_to_json(t.root)},
                {"max_depth", t.max_depth},
                {"budget_hit", t.budget_hit},
                {"Depth", t.depth_max},
                {"Depth_exact", t.depth_max_exact},
                {"depth", t.leaf_min},
                {"depth_exact", t.leaf_min_exact},
                {"nodes", std::move(nodes)}};
}

json profile_to_json(const RecurrenceProfile& p) {
    json degrees = json::array();
    for (size_t n = 0; n < p.delta_sets.size(); ++n)
        degrees.push_back(json{{"n", n},
                               {"delta", set_to_json(p.delta_sets[n])},
                               {"verdict", verdict_name(p.verdicts[n])},
                               {"recurrent", bool(p.recurrent[n])}});
    return json{{"set", set_to_json(p.set)}, {"degrees", std::move(degrees)}};
}

json respects_report_to_json(const RespectsReport& r) {
    json v = json::array();
    for (const auto& viol : r.violations)
        v.push_back(json{{"H", set_to_json(viol.large_h)},
                         {"A", set_to_json(viol.set_a)},
                         {"n", viol.degree}});
    return json{{"ok", r.ok()},
                {"exhaustive", r.exhaustive},
                {"checked", r.checked_pairs},
                {"violations", std::move(v)}};
}

json audit_report_to_json(const MeasureAuditReport& r) {
    return json{{"endpoints_ok", r.endpoints_ok},
                {"monotone_ok", r.monotone_ok},
                {"subadditive_ok", r.subadditive_ok},
                {"almost_invariant_ok", r.almost_invariant_ok},
                {"translate_additive_ok", r.translate_additive_ok},
                {"delta_measure", r.delta_measure()},
                {"exhaustive", r.exhaustive},
                {"pairs_checked", r.pairs_checked},
                {"violations", r.violations}};
}

json qrec_to_json(const QuantitativeRecurrence& q) {
    json per_h = json::array();
    for (size_t h = 0; h < q.per_h.size(); ++h)
        per_h.push_back(json{{"h", h}, {"mu_dA", rational_to_json(q.per_h[h])}});
    return json{{"good_h", set_to_json(q.good_h)},
                {"bound", rational_to_json(q.bound)},
                {"mu_A", rational_to_json(q.mu_a)},
                {"ramsey_n", q.ramsey_n},
                {"per_h", std::move(per_h)}};
}

json union_bound_to_json(const UnionBoundReport& r) {
    return json{{"lhs", rational_to_json(r.lhs)},
                {"sum_singles", rational_to_json(r.sum_singles)},
                {"sum_pairs", rational_to_json(r.sum_pairs)},
                {"rhs", rational_to_json(r.rhs)},
                {"slack", rational_to_json(r.slack)},
                {"holds", r.holds}};
}

json fp_certificate_to_json(const FpShiftCertificate& c) {
    return json{{"directions", c.directions},
                {"achieved", c.achieved},
                {"complete", c.complete},
                {"final_core", set_to_json(c.final_core)},
                {"shift_g", c.shift_g}};
}

json chain_report_to_json(const BesselChainReport& r) {
    json lines = json::array();
    for (const auto& l : r.lines)
        lines.push_back(json{{"label", l.label}, {"value", l.value}, {"ok", l.ok}});
    return json{{"n", r.n},
                {"eps", r.eps},
                {"delta", r.delta},
                {"norm_f_sq", r.norm_f_sq},
                {"lines", std::move(lines)},
                {"all_lines_ok", r.all_lines_ok},
                {"delta_premise_ok", r.delta_premise_ok},
                {"contradiction", r.contradiction},
                {"tolerance", r.tolerance}};
}

json triple_report_to_json(const TripleIdentityReport& r) {
    json lines = json::array();
    for (const auto& l : r.lines)
        lines.push_back(json{{"label", l.label}, {"value", l.value}, {"ok", l.ok}});
    return json{{"lines", std::move(lines)}, {"residual", r.residual}};
}

json extraction_to_json(const IpExtraction& e) {
    json sets = json::array();
    for (const auto& s : e.sets) sets.push_back(set_to_json(s));
    return json{{"generators", e.generators},
                {"sets", std::move(sets)},
                {"modes", e.step_modes}};
}

std::string json_fnv1a_hex(const json& j) {
    std::string dump = j.dump();
    uint64_t h = 1469598103934665603ull;
    for (unsigned char c : dump) {
        h ^= c;
        h *= 1099511628211ull;
    }
    std::ostringstream os;
    os << std::hex << h;
    return os.str();
}

}  // namespace deltaset
