#include "deltaset/runner.hpp"

#include <chrono>
#include <cstdlib>
#include <set>
#include <sstream>

#include "deltaset/generators.hpp"

namespace deltaset {

namespace {

const std::set<std::string> kTasks = {"derive", "delta", "recur", "tree",  "ramsey",
                                      "qrec",   "vdc",   "audit", "density"};

bool needs_oracle(const std::string& task) {
    return task == "delta" || task == "recur" || task == "tree" || task == "ramsey" ||
           task == "vdc";
}

bool needs_measure(const std::string& task) {
    return task == "qrec" || task == "audit";
}

ElementSet param_set(const json& params, const char* key, const Semigroup& sg) {
    if (!params.contains(key))
        throw invalid_input_error(std::string("missing param: ") + key);
    return set_from_json(params.at(key), sg.size());
}

Relation build_relation(const json& spec, const Semigroup& sg, uint64_t seed) {
    if (spec.contains("generator")) {
        const json& g = spec.at("generator");
        std::mt19937_64 rng(g.value("seed", seed));
        return random_hypothesis_relation(sg, rng, g.value("flip_prob", 0.5));
    }
    Relation r = relation_from_json(spec);
    if (r.size() != sg.size())
        throw invalid_input_error("relation size differs from the carrier");
    return r;
}

VectorFamily build_family(const json& spec, const Semigroup& sg, uint64_t seed) {
    if (spec.contains("generator")) {
        const json& g = spec.at("generator");
        std::mt19937_64 rng(g.value("seed", seed));
        return perturbed_orthonormal_family(sg.size(), g.at("dim").get<int>(),
                                            g.value("delta", 1e-3), rng);
    }
    return family_from_json(spec, sg.size());
}

json error_json(const std::string& type, const std::string& message) {
    return json{{"type", type}, {"message", message}};
}

}  // namespace

std::vector<std::string> validate_config(const json& config) {
    std::vector<std::string> problems;
    if (!config.is_object()) {
        problems.push_back("config must be a JSON object");
        return problems;
    }
    if (!config.contains("task") || !config.at("task").is_string())
        problems.push_back("config.task must be a string");
    else if (!kTasks.count(config.at("task").get<std::string>()))
        problems.push_back("unknown task: " + config.at("task").get<std::string>());
    if (!config.contains("semigroup") || !config.at("semigroup").is_object())
        problems.push_back("config.semigroup must be an object");
    if (config.contains("params") && !config.at("params").is_object())
        problems.push_back("config.params must be an object");
    if (config.contains("seed") &&
        (!config.at("seed").is_number_integer() ||
         (config.at("seed").is_number_integer() && config.at("seed").get<int64_t>() < 0)))
        problems.push_back("config.seed must be a nonnegative integer");
    if (config.contains("budgets") && !config.at("budgets").is_object())
        problems.push_back("config.budgets must be an object");
    if (problems.empty()) {
        std::string task = config.at("task").get<std::string>();
        if (needs_oracle(task) && !config.contains("oracle"))
            problems.push_back("task " + task + " needs config.oracle");
        if (needs_measure(task) && !config.contains("measure"))
            problems.push_back("task " + task + " needs config.measure");
        try {
            semigroup_from_json(config.at("semigroup"));
        } catch (const error& e) {
            problems.push_back(std::string("semigroup: ") + e.what());
        }
    }
    return problems;
}

uint64_t resolve_node_budget(const json& config, uint64_t fallback) {
    uint64_t budget = fallback;
    if (config.contains("budgets") && config.at("budgets").contains("nodes"))
        budget = config.at("budgets").at("nodes").get<uint64_t>();
    if (const char* env = std::getenv("TOOL_BUDGET_NODES")) {
        char* end = nullptr;
        uint64_t v = std::strtoull(env, &end, 10);
        if (end && *end == '\0' && v > 0) budget = v;
    }
    return budget;
}

namespace {

json execute(const json& config) {
    const std::string task = config.at("task").get<std::string>();
    const json params = config.value("params", json::object());
    const uint64_t seed = config.value("seed", uint64_t{0});
    Semigroup sg = semigroup_from_json(config.at("semigroup"));
    uint64_t budget = resolve_node_budget(config, kDefaultFpBudget);

    json out;
    json tables = json::object();

    if (task == "derive") {
        ElementSet a = param_set(params, "set", sg);
        if (params.contains("path")) {
            DerivativePath p{params.at("path").get<std::vector<int>>()};
            out["result"] = set_to_json(iterated_derivative(sg, a, p));
        } else {
            int g = params.at("direction").get<int>();
            out["translate_preimage"] = set_to_json(translate_preimage(sg, a, g));
            out["result"] = set_to_json(derivative(sg, a, g));
        }
    } else if (task == "delta") {
        FilterOracle oracle = oracle_from_json(config.at("oracle"), sg, budget);
        RecurrenceEngine eng(sg, oracle);
        ElementSet a = param_set(params, "set", sg);
        out["profile"] = profile_to_json(recurrence_profile(eng, a, params.value("max_n", 3)));
    } else if (task == "recur") {
        FilterOracle oracle = oracle_from_json(config.at("oracle"), sg, budget);
        RecurrenceEngine eng(sg, oracle);
        if (params.contains("set")) {
            ElementSet a = param_set(params, "set", sg);
            int n = params.value("n", 1);
            out["n"] = n;
            out["delta_n"] = set_to_json(eng.delta_set(a, n));
            out["recurrent"] = eng.is_recurrent(a, n);
        }
        if (params.contains("respects")) {
            const json& rp = params.at("respects");
            out["respects"] = respects_report_to_json(respects_recurrence_check(
                eng, rp.value("max_n", 2), rp.value("samples", 200), seed));
        }
        if (out.empty())
            throw invalid_input_error("recur task needs set or respects params");
    } else if (task == "tree") {
        FilterOracle oracle = oracle_from_json(config.at("oracle"), sg, budget);
        RecurrenceEngine eng(sg, oracle);
        ElementSet a = param_set(params, "set", sg);
        DerivationTree t = derivation_tree(eng, a, params.value("max_depth", 3),
                                           resolve_node_budget(config, kDefaultTreeBudget));
        out["tree"] = tree_to_json(t);
    } else if (task == "ramsey") {
        FilterOracle oracle = oracle_from_json(config.at("oracle"), sg, budget);
        RecurrenceEngine eng(sg, oracle);
        Relation r = build_relation(params.at("relation"), sg, seed);
        ElementSet a = params.contains("set") ? param_set(params, "set", sg) : sg.full_set();
        int n = params.value("n", 2);
        out["relation"] = relation_to_json(r);
        auto hyp = hypothesis_check(sg, r, oracle);
        out["hypothesis"] = json{{"H", set_to_json(hyp.h_set)}, {"large", hyp.large}};
        RamseyOptions opts;
        opts.thickness_diagnostics = params.value("thickness", false);
        try {
            RamseyTranscript t = delta_ramsey_witness(eng, r, a, n, opts);
            out["transcript"] = transcript_to_json(t);
            out["verify"] =
                transcript_report_to_json(verify_transcript(sg, r, a, t, oracle));
            out["found"] = true;
        } catch (const no_witness_error& e) {
            out["found"] = false;
            out["deepest"] = transcript_to_json(e.deepest);
        }
        if (params.value("brute_check", false)) {
            auto bf = brute_force_clique(r, a, n, budget);
            out["brute_force"] =
                bf ? json{{"found", true}, {"witness", *bf}} : json{{"found", false}};
        }
    } else if (task == "qrec") {
        SubadditiveMeasure mu = measure_from_json(config.at("measure"), sg);
        ElementSet a = param_set(params, "set", sg);
        auto q = quantitative_recurrence(sg, mu, a);
        out["qrec"] = qrec_to_json(q);
        json rows = json::array();
        for (size_t h = 0; h < q.per_h.size(); ++h)
            rows.push_back(json::array({json(h), json(q.per_h[h].str()),
                                        json(q.good_h.test(int(h)))}));
        tables["qrec_per_h"] = json{{"columns", json::array({"h", "mu_dA", "qualifies"})},
                                    {"rows", std::move(rows)}};
        if (params.contains("union_gs")) {
            out["union_bound"] = union_bound_to_json(
                union_bound_check(sg, mu, a, params.at("union_gs").get<std::vector<int>>()));
        }
        if (params.contains("fp_length")) {
            out["fp_certificate"] = fp_certificate_to_json(
                fp_shift_corollary_check(sg, mu, a, params.at("fp_length").get<int>()));
        }
    } else if (task == "vdc") {
        FilterOracle oracle = oracle_from_json(config.at("oracle"), sg, budget);
        if (params.contains("family")) {
            VectorFamily fam = build_family(params.at("family"), sg, seed);
            double eps = params.value("eps", 0.1);
            auto hyp = vdc_hypothesis(sg, fam, oracle, eps);
            out["hypothesis"] =
                json{{"good_h", set_to_json(hyp.good_h)}, {"satisfied", hyp.satisfied}};
            std::vector<double> f;
            if (params.contains("f")) {
                f = params.at("f").get<std::vector<double>>();
            } else {
                std::mt19937_64 rng(seed ^ 0x5eedf00dULL);
                f = random_vector(fam.dim, rng);
            }
            auto conc = vdc_conclusion(sg, fam, f, oracle, eps);
            out["conclusion"] = json{{"bad_set", set_to_json(conc.bad_set)},
                                     {"verdict", verdict_name(conc.verdict)},
                                     {"holds", conc.holds}};
            if (params.contains("chain")) {
                const json& c = params.at("chain");
                std::vector<std::vector<double>> picked;
                for (int idx : c.at("indices").get<std::vector<int>>())
                    picked.push_back(fam.vectors[size_t(idx)]);
                out["chain"] = chain_report_to_json(
                    bessel_error_chain(picked, f, c.value("delta", 1e-3)));
            }
            if (params.contains("gate")) {
                const json& g = params.at("gate");
                RecurrenceEngine eng(sg, oracle);
                auto gate = delta_measurability_gate(eng, fam, f, g.value("eps", eps),
                                                     g.value("max_n", 2));
                out["gate"] = json{{"level_set", set_to_json(gate.level_set)},
                                   {"small", gate.small},
                                   {"recurrent_up_to", gate.recurrent_up_to},
                                   {"passed", gate.passed}};
            }
        }
        if (params.contains("mixing")) {
            const json& m = params.at("mixing");
            FiniteAction act = action_from_json(m.at("action"));
            act.validate(sg);
            ElementSet a = set_from_json(m.at("a"), act.space);
            ElementSet b = set_from_json(m.at("b"), act.space);
            ElementSet window = m.contains("window")
                                    ? set_from_json(m.at("window"), sg.size())
                                    : sg.full_set();
            auto def = mixing_defect(act, a, b, window);
            json per_g = json::array();
            for (const auto& [g, v] : def.per_g)
                per_g.push_back(json{{"g", g}, {"defect", rational_to_json(v)}});
            out["mixing"] = json{{"max_defect", rational_to_json(def.max_defect)},
                                 {"per_g", std::move(per_g)}};
        }
        if (params.contains("triple")) {
            const json& t = params.at("triple");
            FiniteAction act = action_from_json(t.at("action"));
            auto f1 = t.at("f1").get<std::vector<double>>();
            auto f2 = t.at("f2").get<std::vector<double>>();
            out["triple"] = triple_report_to_json(triple_identity_check(
                sg, act, f1, f2, t.at("g").get<int>(), t.at("h").get<int>()));
        }
        if (out.empty())
            throw invalid_input_error("vdc task needs family, mixing or triple params");
    } else if (task == "audit") {
        SubadditiveMeasure mu = measure_from_json(config.at("measure"), sg);
        out["audit"] = audit_report_to_json(
            delta_measure_audit(sg, mu, params.value("samples", 400), seed));
    } else if (task == "density") {
        ElementSet a = param_set(params, "set", sg);
        auto wins = windows_from_json(params.at("windows"), sg.size());
        auto d = upper_density(a, wins);
        out["density"] = json{{"value", rational_to_json(d.value)},
                              {"windows_used", d.windows_used}};
        json rows = json::array();
        for (size_t k = 0; k < d.per_window.size(); ++k)
            rows.push_back(json::array({json(k), json(d.per_window[k].str())}));
        tables["density_per_window"] =
            json{{"columns", json::array({"window", "density"})}, {"rows", std::move(rows)}};
    }

    if (!tables.empty()) out["tables"] = std::move(tables);
    return out;
}

}  // namespace

RunResult run_experiment(json config, std::optional<uint64_t> seed_override) {
    RunResult res;
    auto start = std::chrono::steady_clock::now();
    if (seed_override) config["seed"] = *seed_override;

    auto problems = validate_config(config);
    if (!problems.empty()) {
        res.payload = json{{"status", "config_error"}, {"errors", problems}};
        res.exit_code = 2;
        return res;
    }

    res.payload = json{{"config_hash", json_fnv1a_hex(config)},
                       {"task", config.at("task")},
                       {"inputs", config},
                       {"diagnostics",
                        {{"node_budget", resolve_node_budget(config, kDefaultFpBudget)}}},
                       {"status", "ok"}};
    try {
        res.payload["outputs"] = execute(config);
    } catch (const out_of_window_error& e) {
        res.payload["status"] = "error";
        res.payload["error"] = error_json("out_of_window", e.what());
        res.exit_code = 1;
    } catch (const hypothesis_violated_error& e) {
        res.payload["status"] = "error";
        res.payload["error"] = error_json("hypothesis_violated", e.what());
        res.exit_code = 1;
    } catch (const precondition_error& e) {
        res.payload["status"] = "error";
        res.payload["error"] = error_json("precondition_violated", e.what());
        res.exit_code = 1;
    } catch (const indeterminate_error& e) {
        res.payload["status"] = "error";
        res.payload["error"] = error_json("indeterminate", e.what());
        res.exit_code = 1;
    } catch (const theorem_violation_error& e) {
        res.payload["status"] = "error";
        res.payload["error"] = error_json("theorem_violation", e.what());
        res.exit_code = 1;
    } catch (const error& e) {
        res.payload["status"] = "error";
        res.payload["error"] = error_json("error", e.what());
        res.exit_code = 1;
    } catch (const json::exception& e) {
        res.payload["status"] = "error";
        res.payload["error"] = error_json("config_error", e.what());
        res.exit_code = 1;
    }
    auto end = std::chrono::steady_clock::now();
    res.meta["elapsed_ms"] =
        std::chrono::duration_cast<std::chrono::milliseconds>(end - start).count();
    return res;
}

std::vector<std::pair<std::string, std::string>> payload_tables(const json& payload) {
    std::vector<std::pair<std::string, std::string>> out;
    if (!payload.contains("outputs") || !payload.at("outputs").contains("tables")) return out;
    for (auto& [name, table] : payload.at("outputs").at("tables").items()) {
        std::ostringstream csv;
        const auto& cols = table.at("columns");
        for (size_t i = 0; i < cols.size(); ++i)
            csv << cols[i].get<std::string>() << (i + 1 < cols.size() ? "," : "\n");
        for (const auto& row : table.at("rows")) {
            for (size_t i = 0; i < row.size(); ++i) {
                if (row[i].is_string())
                    csv << row[i].get<std::string>();
                else
                    csv << row[i].dump();
                csv << (i + 1 < row.size() ? "," : "\n");
            }
        }
        out.emplace_back(name, csv.str());
    }
    return out;
}

}  // namespace deltaset
