#pragma once

#include <functional>
#include <optional>

#include "refgap/cnf.hpp"
#include "refgap/encode.hpp"
#include "refgap/proof.hpp"
#include "refgap/solver.hpp"
#include "refgap/witness.hpp"

namespace refgap {

struct GapInstance {
    Cnf source;
    IndexedCnf encoded;
    int n = 0, m = 0;
    int s = 0;
    bool prime = false; // the variant without (A7)/(A8)
    int pad_t = 0;      // padding exponent, 0 when unpadded
    uint64_t r_size = 0;
};

namespace detail {

inline void require_3cnf(const Cnf& f) {
    if (f.num_vars() < 1) throw std::invalid_argument("gap: F needs at least one variable");
    if (f.clause_count() < 1) throw std::invalid_argument("gap: F needs at least one clause");
    int64_t n = f.num_vars();
    if (static_cast<int64_t>(f.clause_count()) > 8 * n * n * n)
        throw std::invalid_argument("gap: m exceeds 8n^3");
    for (size_t j = 0; j < f.clause_count(); ++j) {
        Clause c = f.clause_at(j);
        if (c.size() > 3)
            throw std::invalid_argument("gap: clause " + std::to_string(j + 1) +
                                        " has more than 3 literals");
        if (c.tautological())
            throw std::invalid_argument("gap: clause " + std::to_string(j + 1) +
                                        " is tautological");
    }
}

inline GapInstance make_gap(const Cnf& f, int64_t s, bool prime, int pad_t,
                            uint64_t clause_limit) {
    if (s < 1 || s > 20000)
        throw std::invalid_argument("gap: target length " + std::to_string(s) +
                                    " outside the supported range");
    Layout lay(f, static_cast<int>(s), true, !prime);
    if (lay.clause_count() > clause_limit)
        throw std::invalid_argument("gap: instance would have " +
                                    std::to_string(lay.clause_count()) +
                                    " clauses, over the limit of " +
                                    std::to_string(clause_limit));
    GapInstance g;
    g.source = f;
    g.n = f.num_vars();
    g.m = static_cast<int>(f.clause_count());
    g.s = static_cast<int>(s);
    g.prime = prime;
    g.pad_t = pad_t;
    g.encoded = encode_rref(f, g.s, !prime);
    g.r_size = cnf_size(g.encoded.cnf);
    return g;
}

} // namespace detail

// The gap construction: the relativized encoding at length 13 n^2.
inline GapInstance gap_instance(const Cnf& f, uint64_t clause_limit = 80'000'000) {
    detail::require_3cnf(f);
    int64_t n = f.num_vars();
    return detail::make_gap(f, 13 * n * n, /*prime=*/false, /*pad_t=*/0, clause_limit);
}

// Padded variant: length 13 n^{t+1} with the (A7)/(A8) families dropped.
inline GapInstance padded_gap_instance(const Cnf& f, int t, uint64_t clause_limit = 80'000'000) {
    if (t < 1) throw std::invalid_argument("gap: padding exponent must be >= 1");
    detail::require_3cnf(f);
    int64_t n = f.num_vars();
    int64_t s = 13;
    for (int e = 0; e <= t; ++e) {
        s *= n;
        if (s > (int64_t{1} << 40)) throw std::invalid_argument("gap: 13 n^{t+1} overflows");
    }
    return detail::make_gap(f, s, /*prime=*/true, t, clause_limit);
}

enum class Decision : uint8_t { Satisfiable, Unsatisfiable };

struct CallbackFault : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A refutation searcher: given the gap instance and a step budget, either a
// proof or nothing.
using Searcher = std::function<std::optional<Proof>(const GapInstance&, uint64_t)>;

// The wrapper answers `satisfiable` exactly when the searcher hands back a
// refutation that the checker accepts; anything invalid is the callback's
// fault, not a verdict.
inline Decision decide_via_automatizer(const GapInstance& gap, const Searcher& search,
                                       uint64_t budget) {
    std::optional<Proof> proof = search(gap, budget);
    if (!proof) return Decision::Unsatisfiable;
    ProofVerdict v = check_proof(gap.encoded.cnf, *proof, true);
    if (!v.accepted)
        throw CallbackFault("searcher returned an invalid refutation: line " +
                            std::to_string(v.line) + ", " + std::string(reason_name(v.reason)));
    return Decision::Satisfiable;
}

inline Decision decide_via_automatizer(const Cnf& f, const Searcher& search, uint64_t budget) {
    return decide_via_automatizer(gap_instance(f), search, budget);
}

// Searcher that finds a model of the source with the DPLL oracle and plays
// the constructed witness refutation.
inline Searcher witness_searcher() {
    return [](const GapInstance& gap, uint64_t budget) -> std::optional<Proof> {
        SolveResult r = solve(gap.source, budget);
        if (r.status != SolveStatus::Sat) return std::nullopt;
        return build_witness(gap.source, r.model, gap.s, !gap.prime).proof;
    };
}

inline Searcher timeout_searcher() {
    return [](const GapInstance&, uint64_t) { return std::nullopt; };
}

} // namespace refgap
