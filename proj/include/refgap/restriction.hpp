#pragma once

#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <unordered_map>
#include <vector>

#include "refgap/cnf.hpp"
#include "refgap/dimacs.hpp"
#include "refgap/encode.hpp"
#include "refgap/proof.hpp"
#include "refgap/rng.hpp"

namespace refgap {

// The four-step experiment over the variables of RREF(F,t):
//  1. a coin per P[u], u ascending;
//  2. A := the u with P[u] -> 1;
//  3. L[u,v], R[u,v] -> 0 for u in A, v outside A;
//  4. for every u outside A, a coin per variable mentioning u, in kind
//     order D, V, I, L, R and index order within a kind.
// One generator draw per coin; the order above is the contract.
struct RandomRestriction {
    Dims dims; // dims.s plays the role of t
    uint64_t seed = 0;
    Assignment rho;          // over the RREF(F,t) universe
    std::vector<int> active; // A, ascending
    bool pt_active = false;
};

inline RandomRestriction sample_restriction(const Dims& dims, uint64_t seed) {
    const int t = dims.s;
    if (t < 1) throw std::invalid_argument("restriction: t must be >= 1");
    RandomRestriction rr;
    rr.dims = dims;
    rr.seed = seed;
    rr.rho = Assignment(static_cast<int>(rref_var_count(dims)));
    SplitMix64 rng(seed);

    std::vector<uint8_t> in_a(static_cast<size_t>(t) + 1, 0);
    for (int u = 1; u <= t; ++u) {
        bool value = rng.coin();
        rr.rho.set(var_id({VarKind::P, u}, dims), value);
        if (value) {
            in_a[u] = 1;
            rr.active.push_back(u);
        }
    }
    rr.pt_active = in_a[t] != 0;
    for (int u : rr.active)
        for (int v = 1; v <= t; ++v) {
            if (in_a[v]) continue;
            rr.rho.set(var_id({VarKind::L, u, v}, dims), false);
            rr.rho.set(var_id({VarKind::R, u, v}, dims), false);
        }
    for (int u = 1; u <= t; ++u) {
        if (in_a[u]) continue;
        for (int i = 1; i <= dims.n; ++i)
            for (int b = 0; b <= 1; ++b)
                rr.rho.set(var_id({VarKind::D, u, i, b}, dims), rng.coin());
        for (int i = 0; i <= dims.n; ++i) rr.rho.set(var_id({VarKind::V, u, i}, dims), rng.coin());
        for (int j = 0; j <= dims.m; ++j) rr.rho.set(var_id({VarKind::I, u, j}, dims), rng.coin());
        for (int v = 0; v <= t; ++v) rr.rho.set(var_id({VarKind::L, u, v}, dims), rng.coin());
        for (int v = 0; v <= t; ++v) rr.rho.set(var_id({VarKind::R, u, v}, dims), rng.coin());
    }
    return rr;
}

// In-support extremes, used by tests: every index active, or none (with all
// step-4 coins landing 0).
inline RandomRestriction all_active_restriction(const Dims& dims) {
    RandomRestriction rr;
    rr.dims = dims;
    rr.rho = Assignment(static_cast<int>(rref_var_count(dims)));
    for (int u = 1; u <= dims.s; ++u) {
        rr.rho.set(var_id({VarKind::P, u}, dims), true);
        rr.active.push_back(u);
    }
    rr.pt_active = true;
    return rr;
}

inline RandomRestriction all_inactive_restriction(const Dims& dims) {
    RandomRestriction rr;
    rr.dims = dims;
    rr.rho = Assignment(static_cast<int>(rref_var_count(dims)));
    for (int u = 1; u <= dims.s; ++u) {
        rr.rho.set(var_id({VarKind::P, u}, dims), false);
        for (int i = 1; i <= dims.n; ++i)
            for (int b = 0; b <= 1; ++b) rr.rho.set(var_id({VarKind::D, u, i, b}, dims), false);
        for (int i = 0; i <= dims.n; ++i) rr.rho.set(var_id({VarKind::V, u, i}, dims), false);
        for (int j = 0; j <= dims.m; ++j) rr.rho.set(var_id({VarKind::I, u, j}, dims), false);
        for (int v = 0; v <= dims.s; ++v) rr.rho.set(var_id({VarKind::L, u, v}, dims), false);
        for (int v = 0; v <= dims.s; ++v) rr.rho.set(var_id({VarKind::R, u, v}, dims), false);
    }
    return rr;
}

// Exhaustive support-invariant check over the whole variable universe.
inline bool check_restriction_support(const RandomRestriction& rr, std::string* why = nullptr) {
    const Dims& d = rr.dims;
    std::vector<uint8_t> in_a(static_cast<size_t>(d.s) + 1, 0);
    for (int u : rr.active) in_a[u] = 1;
    auto fail = [&](const RefVar& v, const char* msg) {
        if (why) *why = var_name(v) + ": " + msg;
        return false;
    };
    for (int64_t vid = 1; vid <= rref_var_count(d); ++vid) {
        RefVar v = var_of_id(vid, d);
        bool defined = rr.rho.defined(static_cast<int>(vid));
        if (v.kind == VarKind::P) {
            if (!defined) return fail(v, "every P must be assigned");
            if (rr.rho.value(static_cast<int>(vid)) != (in_a[v.u] != 0))
                return fail(v, "P value disagrees with A");
            continue;
        }
        bool u_inactive = in_a[v.u] == 0;
        bool step3 = (v.kind == VarKind::L || v.kind == VarKind::R) && !u_inactive &&
                     v.a >= 1 && in_a[v.a] == 0;
        if (u_inactive || step3) {
            if (!defined) return fail(v, "expected in the domain");
            if (step3 && rr.rho.value(static_cast<int>(vid)))
                return fail(v, "cross link must be 0");
        } else if (defined) {
            return fail(v, "assigned outside the support");
        }
    }
    return true;
}

enum class ClauseFate : uint8_t { Satisfied, Mapped, Falsified };

struct Classification {
    std::vector<ClauseFate> fate; // parallel to the input clauses
    Cnf mapped;                   // the surviving clauses, over REF(F,t) ids
    std::vector<uint8_t> mapped_tags;
    size_t satisfied = 0;
    size_t falsified = 0;
    bool pt_active = false;
};

// Every clause of RREF(F,t) either gets satisfied by rho or drops to a
// clause of REF(F,A). The one exception is (A24) when P[t] -> 0, which is
// falsified; the report records it.
inline Classification classify_restricted_formula(const IndexedCnf& rref,
                                                  const RandomRestriction& rr) {
    if (!rref.relativized || !rref.index_set.empty())
        throw std::invalid_argument("classify: expects a contiguous RREF encoding");
    Classification out;
    out.pt_active = rr.pt_active;
    out.fate.resize(rref.cnf.clause_count());
    out.mapped.set_num_vars(rref.cnf.num_vars());
    std::vector<int> buf;
    for (size_t i = 0; i < rref.cnf.clause_count(); ++i) {
        switch (restrict_span(rref.cnf.clause(i), rr.rho, &buf)) {
        case ClauseStatus::Satisfied:
            out.fate[i] = ClauseFate::Satisfied;
            ++out.satisfied;
            break;
        case ClauseStatus::Falsified:
            out.fate[i] = ClauseFate::Falsified;
            ++out.falsified;
            if (rref.tag(i) != Family::A24)
                throw std::logic_error("classify: only (A24) can be falsified in the support");
            break;
        case ClauseStatus::Reduced:
            out.fate[i] = ClauseFate::Mapped;
            out.mapped.add_canonical(buf);
            out.mapped_tags.push_back(rref.tags[i]);
            break;
        }
    }
    return out;
}

struct ReindexedProof {
    Proof proof;
    IndexedCnf premises; // REF(F,|A|)
};

// Restrict a refutation of RREF(F,t) by rho and rename the surviving lines
// through the order isomorphism A -> [|A|]; the result refutes REF(F,|A|).
inline ReindexedProof restrict_and_reindex_proof(const Proof& proof, const IndexedCnf& rref,
                                                 const RandomRestriction& rr, const Cnf& f) {
    if (!rr.pt_active)
        throw std::invalid_argument("restrict_and_reindex: rho maps P[t] to 0, the restricted "
                                    "premises are not REF-shaped");
    RestrictedProof rp = restrict_proof(proof, rref.cnf, rr.rho);

    const auto& a = rr.active;
    Dims from = rref.dims;
    Dims to{from.n, from.m, static_cast<int>(a.size())};
    std::vector<int> rank(static_cast<size_t>(from.s) + 1, 0);
    for (size_t i = 0; i < a.size(); ++i) rank[a[i]] = static_cast<int>(i) + 1;
    auto rename = [&](int lit) {
        RefVar v = var_of_id(lit_var(lit), from);
        if (v.kind == VarKind::P) throw std::logic_error("reindex: P variable survived");
        if (rank[v.u] == 0) throw std::logic_error("reindex: inactive line index survived");
        v.u = rank[v.u];
        if ((v.kind == VarKind::L || v.kind == VarKind::R) && v.a != 0) {
            if (rank[v.a] == 0)
                throw std::logic_error("reindex: inactive pointer value survived");
            v.a = rank[v.a];
        }
        return make_lit(var_id(v, to), lit_sign(lit));
    };

    ReindexedProof out;
    out.premises = encode_ref(f, to.s);
    std::unordered_map<std::string, int> premise_index;
    premise_index.reserve(out.premises.cnf.clause_count());
    auto key = [](std::span<const int> lits) {
        return std::string(reinterpret_cast<const char*>(lits.data()), lits.size() * sizeof(int));
    };
    for (size_t i = 0; i < out.premises.cnf.clause_count(); ++i)
        premise_index.emplace(key(out.premises.cnf.clause(i)), static_cast<int>(i) + 1);

    std::vector<int> buf;
    for (size_t u = 1; u <= rp.proof.length(); ++u) {
        const ProofLine& ln = rp.proof.line(u);
        buf.clear();
        for (int lit : ln.clause) buf.push_back(rename(lit));
        std::sort(buf.begin(), buf.end(), lit_less);
        Clause nc = Clause::from_sorted(buf);
        Justification nj = ln.just;
        if (nj.kind == Justification::Kind::Axiom) {
            std::vector<int> plits;
            for (int lit : rp.premises.clause(static_cast<size_t>(nj.axiom) - 1))
                plits.push_back(rename(lit));
            std::sort(plits.begin(), plits.end(), lit_less);
            auto it = premise_index.find(key(plits));
            if (it == premise_index.end())
                throw std::logic_error("reindex: restricted premise is not a REF(F,|A|) clause");
            nj = Justification::ax(it->second);
        } else {
            RefVar pv = var_of_id(nj.pivot, from);
            pv.u = rank[pv.u];
            if ((pv.kind == VarKind::L || pv.kind == VarKind::R) && pv.a != 0)
                pv.a = rank[pv.a];
            nj.pivot = var_id(pv, to);
        }
        out.proof.add_line(std::move(nc), nj);
    }
    return out;
}

struct RestrictionReport {
    int a_size = 0;
    bool pt_ok = false;
    bool a_size_ok = false;      // |A| >= 6nw
    int max_index_width = 0;     // over the clauses of the restricted proof
    bool index_width_ok = false; // max < w
    size_t restricted_length = 0;
};

inline RestrictionReport restriction_report(const Proof& proof, const RandomRestriction& rr,
                                            int w) {
    RestrictionReport rep;
    rep.a_size = static_cast<int>(rr.active.size());
    rep.pt_ok = rr.pt_active;
    rep.a_size_ok = rep.a_size >= 6 * rr.dims.n * w;
    std::vector<int> buf;
    for (size_t u = 1; u <= proof.length(); ++u) {
        if (restrict_span(proof.line(u).clause.lits(), rr.rho, &buf) == ClauseStatus::Satisfied)
            continue;
        ++rep.restricted_length;
        rep.max_index_width = std::max(rep.max_index_width, index_width(buf, rr.dims));
    }
    rep.index_width_ok = rep.max_index_width < w;
    return rep;
}

// Text form: a `t` line, the active set, then `<var-name> <0|1>` per
// assigned variable in ascending id order.
inline void emit_restriction(std::ostream& out, const RandomRestriction& rr) {
    out << "t " << rr.dims.s << '\n';
    out << "A:";
    for (int u : rr.active) out << ' ' << u;
    out << '\n';
    for (int64_t vid = 1; vid <= rref_var_count(rr.dims); ++vid)
        if (rr.rho.defined(static_cast<int>(vid)))
            out << var_name(var_of_id(vid, rr.dims)) << ' '
                << (rr.rho.value(static_cast<int>(vid)) ? 1 : 0) << '\n';
}

inline RandomRestriction parse_restriction(std::istream& in, const Dims& dims) {
    RandomRestriction rr;
    rr.dims = dims;
    rr.rho = Assignment(static_cast<int>(rref_var_count(dims)));
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        size_t first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        std::istringstream ls(line);
        std::string head;
        ls >> head;
        if (head == "t") {
            int t;
            if (!(ls >> t) || t != dims.s) throw ParseError(line_no, "t mismatch");
        } else if (head == "A:") {
            int u;
            while (ls >> u) rr.active.push_back(u);
        } else {
            int val;
            if (!(ls >> val) || (val != 0 && val != 1))
                throw ParseError(line_no, "expected `<var-name> <0|1>`");
            rr.rho.set(var_id(parse_var_name(head), dims), val == 1);
        }
    }
    rr.pt_active = !rr.active.empty() && rr.active.back() == dims.s;
    return rr;
}

} // namespace refgap
