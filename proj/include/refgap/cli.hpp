#pragma once

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "refgap/condition.hpp"
#include "refgap/dimacs.hpp"
#include "refgap/encode.hpp"
#include "refgap/proof.hpp"
#include "refgap/reduce.hpp"
#include "refgap/restriction.hpp"
#include "refgap/rng.hpp"
#include "refgap/solver.hpp"
#include "refgap/structure.hpp"
#include "refgap/witness.hpp"

namespace refgap::cli {

using nlohmann::json;

// exit-code contract: 0 accepted/ok, 1 negative verdict, 2 usage or input
// error, 3 internal invariant breach
enum Exit : int { Ok = 0, Negative = 1, Usage = 2, Internal = 3 };

namespace detail {

inline void write_atomic(const std::filesystem::path& path, const std::string& content) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write " + tmp.string());
        out << content;
    }
    std::filesystem::rename(tmp, path);
}

inline Cnf load_cnf(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return parse_dimacs(in);
}

inline Proof load_proof(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return parse_trace(in);
}

struct Report {
    json body;
    std::string path; // empty: stdout
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

    explicit Report(const std::string& subcommand) {
        body["schema"] = 1;
        body["subcommand"] = subcommand;
        body["params"] = json::object();
        body["artifacts"] = json::array();
    }
    void param(const std::string& k, const json& v) { body["params"][k] = v; }
    void artifact(const std::string& p) { body["artifacts"].push_back(p); }
    void flush(const std::string& outcome) {
        body["outcome"] = outcome;
        auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - start)
                      .count();
        body["timings_ms"] = {{"total", ms}};
        std::string text = body.dump(2) + "\n";
        if (path.empty())
            std::cout << text;
        else
            write_atomic(path, text);
    }
};

inline uint64_t default_seed() {
    if (const char* env = std::getenv("REFGAP_SEED")) return std::strtoull(env, nullptr, 10);
    return 0;
}

} // namespace detail

inline int cli_main(std::vector<std::string> args) {
    using detail::Report;
    CLI::App app{"Resolution refutation encodings, checkers, and experiments"};
    app.require_subcommand(1);

    std::string report_path;
    app.add_option("--report", report_path, "write the JSON run report to this path")
        ->configurable(false);
    uint64_t seed = detail::default_seed();
    app.add_option("--seed", seed, "random seed (default: REFGAP_SEED or 0)");
    int jobs = 1;
    app.add_option("--jobs", jobs, "worker threads where a subcommand parallelizes");

    // ---- encode ----
    auto* encode = app.add_subcommand("encode", "emit REF(F,s), RREF(F,s) or the primed variant");
    std::string enc_kind, enc_cnf, enc_out, enc_map, enc_tags, enc_aset;
    int enc_s = 0;
    encode->add_option("kind", enc_kind, "ref | rref | rref-prime")
        ->required()
        ->check(CLI::IsMember({"ref", "rref", "rref-prime"}));
    encode->add_option("--cnf", enc_cnf, "input DIMACS file")->required();
    encode->add_option("-s", enc_s, "number of lines (with -A: the ambient bound t)")->required();
    encode->add_option("-A", enc_aset, "file with the active index set (REF only)");
    encode->add_option("-o", enc_out, "output DIMACS path")->required();
    encode->add_option("--map", enc_map, "variable map output path");
    encode->add_option("--tags", enc_tags, "clause family tags output path");

    // ---- fulltree ----
    auto* fulltree_cmd = app.add_subcommand("fulltree", "build the full-tree refutation structure");
    std::string ft_cnf, ft_out, ft_model;
    fulltree_cmd->add_option("--cnf", ft_cnf)->required();
    fulltree_cmd->add_option("-o", ft_out, "structure output path")->required();
    fulltree_cmd->add_option("--model", ft_model, "where to write the model if F is satisfiable");

    // ---- check-struct ----
    auto* check_struct = app.add_subcommand("check-struct", "validate a refutation structure");
    std::string cs_cnf, cs_struct;
    check_struct->add_option("--cnf", cs_cnf)->required();
    check_struct->add_option("--struct", cs_struct)->required();

    // ---- check-proof ----
    auto* check_cmd = app.add_subcommand("check-proof", "check a resolution proof trace");
    std::string cp_cnf, cp_proof;
    bool cp_refutation = false;
    check_cmd->add_option("--cnf", cp_cnf)->required();
    check_cmd->add_option("--proof", cp_proof)->required();
    check_cmd->add_flag("--refutation", cp_refutation, "require the empty clause at the end");

    // ---- witness ----
    auto* witness_cmd = app.add_subcommand("witness", "build the guided refutation of RREF(F,s)");
    std::string w_cnf, w_model, w_out;
    int w_s = 0;
    bool w_prime = false;
    witness_cmd->add_option("--cnf", w_cnf)->required();
    witness_cmd->add_option("--model", w_model, "satisfying assignment file")->required();
    witness_cmd->add_option("-s", w_s)->required();
    witness_cmd->add_option("-o", w_out, "proof trace output")->required();
    witness_cmd->add_flag("--rref-prime", w_prime, "index premises against the primed variant");

    // ---- restrict ----
    auto* restrict_cmd = app.add_subcommand("restrict", "run the random-restriction experiment");
    std::string r_cnf, r_out, r_proof;
    int r_t = 0, r_w = 0;
    restrict_cmd->add_option("--cnf", r_cnf)->required();
    restrict_cmd->add_option("-t", r_t, "ambient index bound")->required();
    restrict_cmd->add_option("-w", r_w, "width threshold for the proof report");
    restrict_cmd->add_option("--proof", r_proof, "refutation of RREF(F,t) to restrict");
    restrict_cmd->add_option("-o", r_out, "output directory")->required();

    // ---- audit ----
    auto* audit_cmd = app.add_subcommand("audit", "replay the falsified-clause walk on a proof");
    std::string a_cnf, a_proof;
    int a_s = 0, a_w = 0;
    bool a_force = false;
    audit_cmd->add_option("--cnf", a_cnf)->required();
    audit_cmd->add_option("-s", a_s)->required();
    audit_cmd->add_option("-w", a_w)->required();
    audit_cmd->add_option("--proof", a_proof)->required();
    audit_cmd->add_flag("--force", a_force, "walk even if regime or width checks fail");

    // ---- claims ----
    auto* claims_cmd = app.add_subcommand("claims", "randomized condition-game claim suites");
    int c_n = 0, c_w = 0, c_s = 0, c_trials = 1000, c_cpf = 1;
    claims_cmd->add_option("--n", c_n)->required();
    claims_cmd->add_option("--w", c_w)->required();
    claims_cmd->add_option("-s", c_s, "number of lines (default 6nw)");
    claims_cmd->add_option("--trials", c_trials);
    claims_cmd->add_option("--clauses-per-family", c_cpf);

    // ---- reduce ----
    auto* reduce_cmd = app.add_subcommand("reduce", "emit the gap instance for a 3-CNF");
    std::string g_cnf, g_out, g_map, g_params;
    int g_pad = 0;
    reduce_cmd->add_option("--cnf", g_cnf)->required();
    reduce_cmd->add_option("--pad", g_pad, "padding exponent (uses the primed variant)");
    reduce_cmd->add_option("-o", g_out)->required();
    reduce_cmd->add_option("--map", g_map);
    reduce_cmd->add_option("--params", g_params);

    // ---- decide ----
    auto* decide_cmd = app.add_subcommand("decide", "decide satisfiability via a searcher");
    std::string d_cnf, d_searcher = "witness";
    uint64_t d_budget = 1 << 20;
    decide_cmd->add_option("--cnf", d_cnf)->required();
    decide_cmd->add_option("--searcher", d_searcher, "witness | external:<command>");
    decide_cmd->add_option("--budget", d_budget, "step budget handed to the searcher");

    // ---- solve ----
    auto* solve_cmd = app.add_subcommand("solve", "run the DPLL oracle");
    std::string s_cnf, s_model;
    uint64_t s_budget = UINT64_MAX;
    solve_cmd->add_option("--cnf", s_cnf)->required();
    solve_cmd->add_option("--budget", s_budget, "decision budget");
    solve_cmd->add_option("--model", s_model, "model output path when satisfiable");

    std::vector<const char*> argv{"refgap"};
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? Ok : Usage;
    }

    try {
        if (*encode) {
            Report rep("encode");
            rep.path = report_path;
            Cnf f = detail::load_cnf(enc_cnf);
            IndexedCnf e;
            if (!enc_aset.empty()) {
                if (enc_kind != "ref")
                    throw std::invalid_argument("-A applies to the ref kind only");
                std::ifstream in(enc_aset);
                if (!in) throw std::runtime_error("cannot open " + enc_aset);
                std::vector<int> a;
                int x;
                while (in >> x) a.push_back(x);
                e = encode_ref_over(f, a, enc_s);
            } else if (enc_kind == "ref") {
                e = encode_ref(f, enc_s);
            } else {
                e = encode_rref(f, enc_s, enc_kind == "rref");
            }
            rep.param("kind", enc_kind);
            rep.param("n", e.dims.n);
            rep.param("m", e.dims.m);
            rep.param("s", e.dims.s);
            rep.param("vars", e.cnf.num_vars());
            rep.param("clauses", e.cnf.clause_count());
            detail::write_atomic(enc_out, emit_dimacs(e.cnf));
            rep.artifact(enc_out);
            if (!enc_map.empty()) {
                std::ostringstream map;
                emit_map(map, e.dims, e.relativized);
                detail::write_atomic(enc_map, map.str());
                rep.artifact(enc_map);
            }
            if (!enc_tags.empty()) {
                std::ostringstream tags;
                emit_tags(tags, e);
                detail::write_atomic(enc_tags, tags.str());
                rep.artifact(enc_tags);
            }
            rep.flush("ok");
            return Ok;
        }

        if (*fulltree_cmd) {
            Report rep("fulltree");
            rep.path = report_path;
            Cnf f = detail::load_cnf(ft_cnf);
            auto result = full_tree(f);
            if (std::holds_alternative<Assignment>(result)) {
                const Assignment& model = std::get<Assignment>(result);
                std::ostringstream out;
                emit_assignment(out, model);
                if (!ft_model.empty()) {
                    detail::write_atomic(ft_model, out.str());
                    rep.artifact(ft_model);
                } else {
                    rep.param("model", out.str());
                }
                rep.flush("satisfiable");
                return Negative;
            }
            const RefStructure& st = std::get<RefStructure>(result);
            std::ostringstream out;
            emit_structure(out, st);
            detail::write_atomic(ft_out, out.str());
            rep.artifact(ft_out);
            rep.param("s", st.s);
            rep.flush("ok");
            return Ok;
        }

        if (*check_struct) {
            Report rep("check-struct");
            rep.path = report_path;
            Cnf f = detail::load_cnf(cs_cnf);
            std::ifstream in(cs_struct);
            if (!in) throw std::runtime_error("cannot open " + cs_struct);
            RefStructure st = parse_structure(in);
            StructVerdict v = validate_structure(f, st);
            rep.param("s", st.s);
            if (v.valid) {
                rep.flush("valid");
                return Ok;
            }
            rep.param("rule", v.rule);
            rep.param("witness", v.witness);
            rep.flush("violation");
            return Negative;
        }

        if (*check_cmd) {
            Report rep("check-proof");
            rep.path = report_path;
            Cnf f = detail::load_cnf(cp_cnf);
            Proof p = detail::load_proof(cp_proof);
            ProofVerdict v = check_proof(f, p, cp_refutation);
            rep.param("length", p.length());
            if (v.accepted) {
                rep.flush("accepted");
                return Ok;
            }
            rep.param("line", v.line);
            rep.param("reason", std::string(reason_name(v.reason)));
            rep.flush("rejected");
            return Negative;
        }

        if (*witness_cmd) {
            Report rep("witness");
            rep.path = report_path;
            Cnf f = detail::load_cnf(w_cnf);
            std::ifstream in(w_model);
            if (!in) throw std::runtime_error("cannot open " + w_model);
            Assignment model = parse_assignment(in, f.num_vars());
            Witness w = build_witness(f, model, w_s, !w_prime);
            detail::write_atomic(w_out, emit_trace(w.proof));
            rep.artifact(w_out);
            rep.param("s", w_s);
            rep.param("variant", w_prime ? "rref-prime" : "rref");
            rep.param("length", w.proof.length());
            rep.param("resolvent_lines", w.stats.resolvent_lines);
            rep.param("a0_lines", w.stats.a0_lines);
            rep.param("premise_lines", w.stats.premise_lines);
            rep.param("cut_count", cut_count(w_s, f.num_vars(),
                                             static_cast<int>(f.clause_count())));
            rep.flush("ok");
            return Ok;
        }

        if (*restrict_cmd) {
            Report rep("restrict");
            rep.path = report_path;
            Cnf f = detail::load_cnf(r_cnf);
            IndexedCnf rref = encode_rref(f, r_t, true);
            RandomRestriction rr = sample_restriction(rref.dims, seed);
            rep.param("t", r_t);
            rep.param("seed", seed);
            rep.param("active_size", rr.active.size());
            rep.param("pt_active", rr.pt_active);
            std::string why;
            bool support_ok = check_restriction_support(rr, &why);
            rep.param("support_ok", support_ok);
            if (!support_ok) rep.param("support_violation", why);

            std::filesystem::path dir(r_out);
            std::ostringstream rho;
            emit_restriction(rho, rr);
            detail::write_atomic(dir / "restriction.txt", rho.str());
            rep.artifact((dir / "restriction.txt").string());

            Classification cl = classify_restricted_formula(rref, rr);
            rep.param("satisfied", cl.satisfied);
            rep.param("mapped", cl.mapped.clause_count());
            rep.param("falsified", cl.falsified);
            if (rr.pt_active && !rr.active.empty()) {
                IndexedCnf compact =
                    reindex_to_compact(encode_ref_over(f, rr.active, r_t));
                detail::write_atomic(dir / "ref_active.cnf", emit_dimacs(compact.cnf));
                rep.artifact((dir / "ref_active.cnf").string());
            }
            if (!r_proof.empty()) {
                Proof p = detail::load_proof(r_proof);
                RestrictionReport rr_rep = restriction_report(p, rr, r_w);
                rep.param("restricted_length", rr_rep.restricted_length);
                rep.param("max_index_width", rr_rep.max_index_width);
                if (r_w > 0) {
                    rep.param("index_width_ok", rr_rep.index_width_ok);
                    rep.param("a_size_ok", rr_rep.a_size_ok);
                }
                if (rr.pt_active) {
                    ReindexedProof rx = restrict_and_reindex_proof(p, rref, rr, f);
                    detail::write_atomic(dir / "proof_restricted.rtrace",
                                         emit_trace(rx.proof));
                    rep.artifact((dir / "proof_restricted.rtrace").string());
                    ProofVerdict v = check_proof(rx.premises.cnf, rx.proof, true);
                    rep.param("restricted_proof_accepted", v.accepted);
                }
            }
            rep.flush("ok");
            return Ok;
        }

        if (*audit_cmd) {
            Report rep("audit");
            rep.path = report_path;
            Cnf f = detail::load_cnf(a_cnf);
            Proof p = detail::load_proof(a_proof);
            AuditReport ar = audit_refutation(f, a_s, a_w, p, {a_force});
            rep.param("s", a_s);
            rep.param("w", a_w);
            rep.param("line", ar.line);
            rep.param("detail", ar.detail);
            rep.param("steps", ar.steps);
            switch (ar.outcome) {
            case AuditReport::Outcome::Contradiction:
                rep.flush("contradiction");
                return Ok;
            case AuditReport::Outcome::Stuck:
                rep.flush("stuck");
                return Negative;
            case AuditReport::Outcome::RegimeViolation:
                rep.flush("regime-violation");
                return Usage;
            case AuditReport::Outcome::PreconditionFailure:
                rep.flush("precondition-failure");
                return Usage;
            }
        }

        if (*claims_cmd) {
            Report rep("claims");
            rep.path = report_path;
            ClaimsConfig cfg;
            cfg.n = c_n;
            cfg.w = c_w;
            cfg.s = c_s > 0 ? c_s : 6 * c_n * c_w;
            cfg.trials = c_trials;
            cfg.seed = seed;
            cfg.jobs = jobs;
            cfg.clauses_per_family = c_cpf;
            ClaimsResult res = run_claims(cfg);
            auto line = [&](const char* name, const ClaimsResult::Counter& c) {
                std::cout << name << ": " << (c.violations == 0 ? "pass" : "FAIL") << " ("
                          << c.checks << " checks, " << c.violations << " violations)\n";
                rep.param(name, {{"checks", c.checks}, {"violations", c.violations}});
            };
            rep.param("n", cfg.n);
            rep.param("w", cfg.w);
            rep.param("s", cfg.s);
            rep.param("trials", cfg.trials);
            rep.param("seed", cfg.seed);
            line("preservation", res.preservation);
            line("restriction", res.restriction);
            line("extension", res.extension);
            line("axiom_consistency", res.axiom_consistency);
            line("size_bound", res.size_bound);
            line("monotone", res.monotone);
            rep.flush(res.ok() ? "pass" : "fail");
            return res.ok() ? Ok : Negative;
        }

        if (*reduce_cmd) {
            Report rep("reduce");
            rep.path = report_path;
            Cnf f = detail::load_cnf(g_cnf);
            GapInstance g = g_pad > 0 ? padded_gap_instance(f, g_pad) : gap_instance(f);
            detail::write_atomic(g_out, emit_dimacs(g.encoded.cnf));
            rep.artifact(g_out);
            json params = {{"n", g.n},         {"m", g.m},
                           {"s", g.s},         {"variant", g.prime ? "rref-prime" : "rref"},
                           {"pad_t", g.pad_t}, {"r_size", g.r_size},
                           {"vars", g.encoded.cnf.num_vars()},
                           {"clauses", g.encoded.cnf.clause_count()}};
            if (!g_map.empty()) {
                std::ostringstream map;
                emit_map(map, g.encoded.dims, true);
                detail::write_atomic(g_map, map.str());
                rep.artifact(g_map);
            }
            if (!g_params.empty()) {
                detail::write_atomic(g_params, params.dump(2) + "\n");
                rep.artifact(g_params);
            }
            rep.body["params"].update(params);
            rep.flush("ok");
            return Ok;
        }

        if (*decide_cmd) {
            Report rep("decide");
            rep.path = report_path;
            Cnf f = detail::load_cnf(d_cnf);
            GapInstance gap = gap_instance(f);
            rep.param("s", gap.s);
            rep.param("budget", d_budget);
            Searcher searcher;
            if (d_searcher == "witness") {
                searcher = witness_searcher();
            } else if (d_searcher.rfind("external:", 0) == 0) {
                std::string cmd = d_searcher.substr(9);
                searcher = [cmd](const GapInstance& g, uint64_t) -> std::optional<Proof> {
                    auto dir = std::filesystem::temp_directory_path();
                    auto cnf_path = dir / "refgap_gap.cnf";
                    auto proof_path = dir / "refgap_gap.rtrace";
                    detail::write_atomic(cnf_path, emit_dimacs(g.encoded.cnf));
                    std::error_code ec;
                    std::filesystem::remove(proof_path, ec);
                    std::string full = cmd + " " + cnf_path.string() + " " + proof_path.string();
                    if (std::system(full.c_str()) != 0) return std::nullopt;
                    std::ifstream in(proof_path);
                    if (!in) return std::nullopt;
                    return parse_trace(in);
                };
            } else {
                throw CLI::ValidationError("--searcher", "expected witness or external:<command>");
            }
            try {
                Decision dec = decide_via_automatizer(gap, searcher, d_budget);
                rep.flush(dec == Decision::Satisfiable ? "satisfiable" : "unsatisfiable");
                return dec == Decision::Satisfiable ? Ok : Negative;
            } catch (const CallbackFault& e) {
                rep.param("fault", e.what());
                rep.flush("callback-fault");
                return Usage;
            }
        }

        if (*solve_cmd) {
            Report rep("solve");
            rep.path = report_path;
            Cnf f = detail::load_cnf(s_cnf);
            SolveResult r = solve(f, s_budget);
            rep.param("decisions", r.decisions);
            rep.param("propagations", r.propagations);
            if (r.status == SolveStatus::Sat) {
                if (!s_model.empty()) {
                    std::ostringstream out;
                    emit_assignment(out, r.model);
                    detail::write_atomic(s_model, out.str());
                    rep.artifact(s_model);
                }
                rep.flush("sat");
                return Ok;
            }
            rep.flush(r.status == SolveStatus::Unsat ? "unsat" : "budget-exceeded");
            return Negative;
        }
    } catch (const CLI::Error& e) {
        std::cerr << "refgap: " << e.what() << '\n';
        return Usage;
    } catch (const ParseError& e) {
        std::cerr << "refgap: " << e.what() << '\n';
        return Usage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "refgap: " << e.what() << '\n';
        return Usage;
    } catch (const std::runtime_error& e) {
        std::cerr << "refgap: " << e.what() << '\n';
        return Usage;
    } catch (const std::logic_error& e) {
        std::cerr << "refgap: internal: " << e.what() << '\n';
        return Internal;
    }
    return Usage;
}

} // namespace refgap::cli
