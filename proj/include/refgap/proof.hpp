#pragma once

#include <cassert>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "refgap/cnf.hpp"
#include "refgap/dimacs.hpp"

namespace refgap {

// One justified proof line. Axiom lines are weakenings of premise clause
// C_j (1-based). Resolvent lines are weakenings of res on the pivot
// variable, with the pivot positive in line pos_parent and negative in line
// neg_parent (both 1-based, earlier lines).
struct Justification {
    enum class Kind : uint8_t { Axiom, Resolvent } kind = Kind::Axiom;
    int axiom = 0;
    int pos_parent = 0;
    int neg_parent = 0;
    int pivot = 0;

    static Justification ax(int j) { return {Kind::Axiom, j, 0, 0, 0}; }
    static Justification res(int v, int w, int pivot) {
        return {Kind::Resolvent, 0, v, w, pivot};
    }
    bool operator==(const Justification&) const = default;
};

struct ProofLine {
    Clause clause;
    Justification just;
    bool operator==(const ProofLine&) const = default;
};

class Proof {
public:
    Proof() = default;

    int add_line(Clause c, Justification j) {
        lines_.push_back({std::move(c), j});
        return static_cast<int>(lines_.size());
    }

    size_t length() const { return lines_.size(); }
    bool empty() const { return lines_.empty(); }
    const ProofLine& line(size_t u) const { return lines_[u - 1]; } // 1-based
    const std::vector<ProofLine>& lines() const { return lines_; }

    bool operator==(const Proof&) const = default;

private:
    std::vector<ProofLine> lines_;
};

enum class ProofReason : uint8_t {
    Accepted,
    BadAxiomIndex,
    BadWeakening,
    BadPivot,
    ForwardReference,
    TautologicalLine,
    NonEmptyFinal,
    EmptyProof,
};

inline std::string_view reason_name(ProofReason r) {
    switch (r) {
    case ProofReason::Accepted: return "accepted";
    case ProofReason::BadAxiomIndex: return "bad-axiom-index";
    case ProofReason::BadWeakening: return "bad-weakening";
    case ProofReason::BadPivot: return "bad-pivot";
    case ProofReason::ForwardReference: return "forward-reference";
    case ProofReason::TautologicalLine: return "tautological-line";
    case ProofReason::NonEmptyFinal: return "non-empty-final";
    case ProofReason::EmptyProof: return "empty-proof";
    }
    return "?";
}

struct ProofVerdict {
    bool accepted = false;
    size_t line = 0; // 1-based first offending line, 0 if proof-level
    ProofReason reason = ProofReason::Accepted;

    static ProofVerdict ok() { return {true, 0, ProofReason::Accepted}; }
    static ProofVerdict reject(size_t line, ProofReason r) { return {false, line, r}; }
};

inline ProofVerdict check_proof(const Cnf& premises, const Proof& proof,
                                bool require_refutation = false) {
    if (proof.empty()) return ProofVerdict::reject(0, ProofReason::EmptyProof);
    for (size_t u = 1; u <= proof.length(); ++u) {
        const ProofLine& ln = proof.line(u);
        if (ln.clause.tautological())
            return ProofVerdict::reject(u, ProofReason::TautologicalLine);
        if (ln.just.kind == Justification::Kind::Axiom) {
            int j = ln.just.axiom;
            if (j < 1 || static_cast<size_t>(j) > premises.clause_count())
                return ProofVerdict::reject(u, ProofReason::BadAxiomIndex);
            Clause cj = premises.clause_at(static_cast<size_t>(j) - 1);
            if (!cj.subset_of(ln.clause))
                return ProofVerdict::reject(u, ProofReason::BadWeakening);
        } else {
            int v = ln.just.pos_parent, w = ln.just.neg_parent, x = ln.just.pivot;
            if (v < 1 || w < 1 || static_cast<size_t>(v) >= u || static_cast<size_t>(w) >= u)
                return ProofVerdict::reject(u, ProofReason::ForwardReference);
            const Clause& cv = proof.line(v).clause;
            const Clause& cw = proof.line(w).clause;
            if (x < 1 || !cv.contains(x) || !cw.contains(-x))
                return ProofVerdict::reject(u, ProofReason::BadPivot);
            if (!resolve(cv, cw, x).subset_of(ln.clause))
                return ProofVerdict::reject(u, ProofReason::BadWeakening);
        }
    }
    if (require_refutation && !proof.line(proof.length()).clause.empty())
        return ProofVerdict::reject(proof.length(), ProofReason::NonEmptyFinal);
    return ProofVerdict::ok();
}

inline size_t proof_width(const Proof& proof) {
    size_t w = 0;
    for (const auto& ln : proof.lines()) w = std::max(w, ln.clause.size());
    return w;
}

struct RestrictedProof {
    Proof proof;
    Cnf premises;                 // premises restricted by alpha
    std::vector<int> premise_map; // old 1-based premise index -> new, 0 if dropped
    std::vector<int> line_map;    // old 1-based line -> new, 0 if removed
};

// Restriction of a proof by alpha: satisfied lines are removed, falsified
// lines become the empty clause, and every surviving line is re-justified
// against the restricted premises. A line whose resolvent parent vanished
// (pivot assigned) inherits the justification of the surviving parent,
// whose restricted clause it weakens.
inline RestrictedProof restrict_proof(const Proof& proof, const Cnf& premises,
                                      const Assignment& alpha) {
    RestrictedProof out;
    out.premises = Cnf(premises.num_vars());
    out.premise_map.assign(premises.clause_count() + 1, 0);
    std::vector<int> kept;
    for (size_t j = 1; j <= premises.clause_count(); ++j) {
        switch (restrict_span(premises.clause(j - 1), alpha, &kept)) {
        case ClauseStatus::Satisfied: break;
        case ClauseStatus::Falsified:
            out.premises.add_canonical({});
            out.premise_map[j] = static_cast<int>(out.premises.clause_count());
            break;
        case ClauseStatus::Reduced:
            out.premises.add_canonical(kept);
            out.premise_map[j] = static_cast<int>(out.premises.clause_count());
            break;
        }
    }

    out.line_map.assign(proof.length() + 1, 0);
    for (size_t u = 1; u <= proof.length(); ++u) {
        const ProofLine& ln = proof.line(u);
        RestrictedClause rc = restrict_clause(ln.clause, alpha);
        if (rc.status == ClauseStatus::Satisfied) continue;
        Clause nc = rc.status == ClauseStatus::Falsified ? Clause{} : std::move(rc.clause);

        Justification nj;
        if (ln.just.kind == Justification::Kind::Axiom) {
            int pj = out.premise_map[ln.just.axiom];
            assert(pj != 0 && "satisfied premise under a surviving weakening");
            nj = Justification::ax(pj);
        } else {
            int x = ln.just.pivot;
            if (alpha.defined(x)) {
                // One parent got satisfied by the pivot value; the other
                // restricted onto a subclause of this line.
                int sp = alpha.value(x) ? ln.just.neg_parent : ln.just.pos_parent;
                int nsp = out.line_map[sp];
                assert(nsp != 0 && "surviving parent expected");
                nj = out.proof.line(nsp).just;
            } else {
                int nv = out.line_map[ln.just.pos_parent];
                int nw = out.line_map[ln.just.neg_parent];
                assert(nv != 0 && nw != 0 && "pivot unassigned, both parents must survive");
                nj = Justification::res(nv, nw, x);
            }
        }
        out.line_map[u] = out.proof.add_line(std::move(nc), nj);
    }
    return out;
}

// Trace format, one line per proof step:
//   <u> | <lit> <lit> ... | ax <j>
//   <u> | <lit> <lit> ... | res <v> <w> <pivot-var>
// `|  |` encodes the empty clause.
inline void emit_trace(std::ostream& out, const Proof& proof) {
    for (size_t u = 1; u <= proof.length(); ++u) {
        const ProofLine& ln = proof.line(u);
        out << u << " | ";
        bool first = true;
        for (int l : ln.clause) {
            if (!first) out << ' ';
            out << l;
            first = false;
        }
        out << " | ";
        if (ln.just.kind == Justification::Kind::Axiom)
            out << "ax " << ln.just.axiom;
        else
            out << "res " << ln.just.pos_parent << ' ' << ln.just.neg_parent << ' '
                << ln.just.pivot;
        out << '\n';
    }
}

inline std::string emit_trace(const Proof& proof) {
    std::ostringstream out;
    emit_trace(out, proof);
    return out.str();
}

inline Proof parse_trace(std::istream& in) {
    Proof proof;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        size_t first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        if (line[first] == 'c') continue;
        size_t p1 = line.find('|');
        size_t p2 = p1 == std::string::npos ? std::string::npos : line.find('|', p1 + 1);
        if (p2 == std::string::npos) throw ParseError(line_no, "expected `<u> | <lits> | <just>`");
        std::istringstream head(line.substr(0, p1));
        size_t u;
        if (!(head >> u) || u != proof.length() + 1)
            throw ParseError(line_no, "line index must be sequential from 1");
        std::istringstream mid(line.substr(p1 + 1, p2 - p1 - 1));
        std::vector<int> lits;
        int l;
        while (mid >> l) lits.push_back(l);
        if (!mid.eof()) throw ParseError(line_no, "unreadable literal");
        std::istringstream just(line.substr(p2 + 1));
        std::string kind;
        if (!(just >> kind)) throw ParseError(line_no, "missing justification");
        Justification j;
        if (kind == "ax") {
            int a;
            if (!(just >> a)) throw ParseError(line_no, "ax needs a premise index");
            j = Justification::ax(a);
        } else if (kind == "res") {
            int v, w, x;
            if (!(just >> v >> w >> x)) throw ParseError(line_no, "res needs `<v> <w> <pivot>`");
            j = Justification::res(v, w, x);
        } else {
            throw ParseError(line_no, "unknown justification `" + kind + "`");
        }
        std::string rest;
        if (just >> rest) throw ParseError(line_no, "trailing tokens");
        proof.add_line(Clause(std::move(lits)), j);
    }
    return proof;
}

inline Proof parse_trace(const std::string& text) {
    std::istringstream in(text);
    return parse_trace(in);
}

} // namespace refgap
