#pragma once

#include <algorithm>
#include <array>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "refgap/cnf.hpp"
#include "refgap/dimacs.hpp"
#include "refgap/encode.hpp"
#include "refgap/proof.hpp"

namespace refgap {

// A refutation candidate as a structure (D, V, I, L, R): one ternary
// relation plus four total maps on [s].
struct RefStructure {
    int s = 0;
    std::vector<std::array<int, 3>> d; // sorted (u, i, b) triples
    std::vector<int> v, i, l, r;       // 1-based, size s+1, slot 0 unused

    static RefStructure blank(int s) {
        RefStructure st;
        st.s = s;
        st.v.assign(static_cast<size_t>(s) + 1, 0);
        st.i.assign(static_cast<size_t>(s) + 1, 0);
        st.l.assign(static_cast<size_t>(s) + 1, 0);
        st.r.assign(static_cast<size_t>(s) + 1, 0);
        return st;
    }

    void sort_d() { std::sort(d.begin(), d.end()); }

    bool has_d(int u, int ii, int b) const {
        return std::binary_search(d.begin(), d.end(), std::array<int, 3>{u, ii, b});
    }

    // the (i, b) pairs of line u; d must be sorted
    std::span<const std::array<int, 3>> d_row(int u) const {
        auto lo = std::lower_bound(d.begin(), d.end(), std::array<int, 3>{u, 0, 0});
        auto hi = std::lower_bound(lo, d.end(), std::array<int, 3>{u + 1, 0, 0});
        return {d.data() + (lo - d.begin()), static_cast<size_t>(hi - lo)};
    }

    Clause line_clause(int u) const {
        std::vector<int> lits;
        for (const auto& t : d_row(u)) lits.push_back(make_lit(t[1], t[2] == 1));
        return Clause(std::move(lits));
    }

    bool operator==(const RefStructure&) const = default;
};

struct StructVerdict {
    bool valid = true;
    std::string rule;         // "R1".."R8", "R4a".. or "dims"
    std::vector<int> witness; // the indices that break the rule
    std::string detail;

    static StructVerdict ok() { return {}; }
    static StructVerdict bad(std::string rule, std::vector<int> w, std::string detail = "") {
        return {false, std::move(rule), std::move(w), std::move(detail)};
    }
};

// (R1)-(R8) plus dimension checks against F.
inline StructVerdict validate_structure(const Cnf& f, const RefStructure& st) {
    const int n = f.num_vars(), m = static_cast<int>(f.clause_count()), s = st.s;
    if (s < 1) return StructVerdict::bad("dims", {}, "s must be >= 1");
    if (st.v.size() != static_cast<size_t>(s) + 1 || st.i.size() != static_cast<size_t>(s) + 1 ||
        st.l.size() != static_cast<size_t>(s) + 1 || st.r.size() != static_cast<size_t>(s) + 1)
        return StructVerdict::bad("dims", {}, "V,I,L,R must be total on [s]");
    for (int u = 1; u <= s; ++u) {
        if (st.v[u] < 0 || st.v[u] > n) return StructVerdict::bad("dims", {u}, "V out of range");
        if (st.i[u] < 0 || st.i[u] > m) return StructVerdict::bad("dims", {u}, "I out of range");
        if (st.l[u] < 0 || st.l[u] > s) return StructVerdict::bad("dims", {u}, "L out of range");
        if (st.r[u] < 0 || st.r[u] > s) return StructVerdict::bad("dims", {u}, "R out of range");
    }
    for (const auto& t : st.d)
        if (t[0] < 1 || t[0] > s || t[1] < 1 || t[1] > n || t[2] < 0 || t[2] > 1)
            return StructVerdict::bad("dims", {t[0], t[1], t[2]}, "D triple out of range");

    // rules in order: the verdict reports the first broken rule over all lines
    for (int u = 1; u <= s; ++u)
        if ((st.v[u] == 0) == (st.i[u] == 0)) return StructVerdict::bad("R1", {u});
    for (int u = 1; u <= s; ++u)
        if (st.i[u] == 0 && (st.r[u] == 0 || st.l[u] == 0)) return StructVerdict::bad("R2", {u});
    for (int u = 1; u <= s; ++u) {
        if (st.l[u] >= u) return StructVerdict::bad("R3", {u, st.l[u]});
        if (st.r[u] >= u) return StructVerdict::bad("R3", {u, st.r[u]});
    }
    for (int u = 1; u <= s; ++u)
        if (st.v[u] != 0 && st.l[u] != 0 && !st.has_d(st.l[u], st.v[u], 0))
            return StructVerdict::bad("R4a", {u, st.l[u]});
    for (int u = 1; u <= s; ++u)
        if (st.v[u] != 0 && st.r[u] != 0 && !st.has_d(st.r[u], st.v[u], 1))
            return StructVerdict::bad("R4b", {u, st.r[u]});
    for (int u = 1; u <= s; ++u)
        if (st.v[u] != 0 && st.l[u] != 0)
            for (const auto& t : st.d_row(st.l[u]))
                if (t[1] != st.v[u] && !st.has_d(u, t[1], t[2]))
                    return StructVerdict::bad("R5a", {u, st.l[u], t[1], t[2]});
    for (int u = 1; u <= s; ++u)
        if (st.v[u] != 0 && st.r[u] != 0)
            for (const auto& t : st.d_row(st.r[u]))
                if (t[1] != st.v[u] && !st.has_d(u, t[1], t[2]))
                    return StructVerdict::bad("R5b", {u, st.r[u], t[1], t[2]});
    for (int u = 1; u <= s; ++u)
        if (st.i[u] != 0)
            for (int lit : f.clause(st.i[u] - 1))
                if (!st.has_d(u, lit_var(lit), lit_sign(lit) ? 1 : 0))
                    return StructVerdict::bad("R6", {u, st.i[u], lit});
    for (int u = 1; u <= s; ++u)
        for (const auto& t : st.d_row(u))
            if (t[2] == 0 && st.has_d(u, t[1], 1)) return StructVerdict::bad("R7", {u, t[1]});
    if (!st.d_row(s).empty()) {
        auto t = st.d_row(s)[0];
        return StructVerdict::bad("R8", {s, t[1], t[2]});
    }
    return StructVerdict::ok();
}

// Full binary tree of branch clauses, Example-style: one node per bit string
// a of length h <= n, labelled with the clause falsified by X_i -> 1-a_i.
// Nodes are numbered level by level from the leaves up, lexicographically
// within a level, so leaves are [2^n] and the root is 2^{n+1}-1.
namespace fulltree {

inline int level_offset(int n, int h) {
    // nodes at levels h+1..n come first
    return (1 << (n + 1)) - (1 << (h + 1));
}

inline int node_number(int n, std::span<const int> a) {
    int h = static_cast<int>(a.size());
    int rank = 0;
    for (int x : a) rank = rank * 2 + x;
    return level_offset(n, h) + rank + 1;
}

} // namespace fulltree

// Either the full-tree refutation structure of F (length 2^{n+1}-1), or a
// satisfying assignment of F obtained from a leaf whose branch clause is no
// weakening of any clause of F.
inline std::variant<RefStructure, Assignment> full_tree(const Cnf& f) {
    const int n = f.num_vars(), m = static_cast<int>(f.clause_count());
    if (n < 1 || m < 1) throw std::invalid_argument("full_tree: need n >= 1 and m >= 1");
    for (size_t j = 0; j < f.clause_count(); ++j)
        if (f.clause_at(j).tautological())
            throw std::invalid_argument("full_tree: tautological clause in F");
    const int s_star = (1 << (n + 1)) - 1;
    RefStructure st = RefStructure::blank(s_star);

    std::vector<int> a;
    // leaves first: check weakening and pick the smallest witness clause
    for (int rank = 0; rank < (1 << n); ++rank) {
        a.assign(static_cast<size_t>(n), 0);
        for (int i = 0; i < n; ++i) a[i] = (rank >> (n - 1 - i)) & 1;
        int best = 0;
        for (int j = 1; j <= m && best == 0; ++j) {
            bool weakening = true;
            for (int lit : f.clause(j - 1)) {
                int i = lit_var(lit);
                if ((lit_sign(lit) ? 1 : 0) != a[i - 1]) {
                    weakening = false;
                    break;
                }
            }
            if (weakening) best = j;
        }
        if (best == 0) {
            Assignment model(n);
            for (int i = 1; i <= n; ++i) model.set(i, a[i - 1] == 0);
            return model;
        }
        st.i[rank + 1] = best;
    }
    // all nodes: D rows, and V/L/R for the internal ones
    for (int h = 0; h <= n; ++h) {
        for (int rank = 0; rank < (1 << h); ++rank) {
            a.assign(static_cast<size_t>(h), 0);
            for (int i = 0; i < h; ++i) a[i] = (rank >> (h - 1 - i)) & 1;
            int u = fulltree::node_number(n, a);
            for (int i = 1; i <= h; ++i) st.d.push_back({u, i, a[i - 1]});
            if (h < n) {
                st.v[u] = h + 1; // pivot of the children cut
                std::vector<int> child(a.begin(), a.end());
                child.push_back(0);
                st.l[u] = fulltree::node_number(n, child);
                child.back() = 1;
                st.r[u] = fulltree::node_number(n, child);
            }
        }
    }
    st.sort_d();
    return st;
}

// The assignment over the REF(F,s) variables that describes the structure.
inline Assignment structure_to_assignment(const RefStructure& st, const Cnf& f) {
    Dims d{f.num_vars(), static_cast<int>(f.clause_count()), st.s};
    Assignment a(static_cast<int>(ref_var_count(d)));
    for (int u = 1; u <= st.s; ++u) {
        for (int i = 1; i <= d.n; ++i)
            for (int b = 0; b <= 1; ++b)
                a.set(var_id({VarKind::D, u, i, b}, d), st.has_d(u, i, b));
        for (int i = 0; i <= d.n; ++i) a.set(var_id({VarKind::V, u, i}, d), st.v[u] == i);
        for (int j = 0; j <= d.m; ++j) a.set(var_id({VarKind::I, u, j}, d), st.i[u] == j);
        for (int v = 0; v <= st.s; ++v) a.set(var_id({VarKind::L, u, v}, d), st.l[u] == v);
        for (int v = 0; v <= st.s; ++v) a.set(var_id({VarKind::R, u, v}, d), st.r[u] == v);
    }
    return a;
}

// Decode a total assignment over the REF(F,s) variables. Rows of V, I, L, R
// must contain exactly one set variable each.
inline RefStructure assignment_to_structure(const Assignment& a, const Cnf& f, int s) {
    Dims d{f.num_vars(), static_cast<int>(f.clause_count()), s};
    if (a.num_vars() < ref_var_count(d))
        throw std::invalid_argument("decode: assignment universe too small");
    RefStructure st = RefStructure::blank(s);
    auto row = [&](VarKind k, int u, int top, std::string_view name) {
        int found = -1;
        for (int x = 0; x <= top; ++x) {
            int id = var_id({k, u, x}, d);
            if (!a.defined(id))
                throw std::invalid_argument("decode: assignment not total at " +
                                            var_name({k, u, x}));
            if (a.value(id)) {
                if (found >= 0)
                    throw std::invalid_argument("decode: non-functional row " +
                                                std::string(name) + "[" + std::to_string(u) +
                                                ",.]");
                found = x;
            }
        }
        if (found < 0)
            throw std::invalid_argument("decode: non-functional row " + std::string(name) + "[" +
                                        std::to_string(u) + ",.] (all zero)");
        return found;
    };
    for (int u = 1; u <= s; ++u) {
        for (int i = 1; i <= d.n; ++i)
            for (int b = 0; b <= 1; ++b)
                if (a.value(var_id({VarKind::D, u, i, b}, d))) st.d.push_back({u, i, b});
        st.v[u] = row(VarKind::V, u, d.n, "V");
        st.i[u] = row(VarKind::I, u, d.m, "I");
        st.l[u] = row(VarKind::L, u, s, "L");
        st.r[u] = row(VarKind::R, u, s, "R");
    }
    st.sort_d();
    return st;
}

// Length s+1 witness from a length s one: duplicate the first line (always
// an axiom weakening) and shift every index up by one.
inline RefStructure pad_structure(const RefStructure& st, const Cnf& f) {
    StructVerdict v = validate_structure(f, st);
    if (!v.valid) throw std::invalid_argument("pad_structure: input invalid (" + v.rule + ")");
    RefStructure out = RefStructure::blank(st.s + 1);
    for (int u = 1; u <= st.s; ++u) {
        out.v[u + 1] = st.v[u];
        out.i[u + 1] = st.i[u];
        out.l[u + 1] = st.l[u] == 0 ? 0 : st.l[u] + 1;
        out.r[u + 1] = st.r[u] == 0 ? 0 : st.r[u] + 1;
    }
    for (const auto& t : st.d) out.d.push_back({t[0] + 1, t[1], t[2]});
    // position 1 repeats old line 1, which has I != 0 by (R1)-(R3)
    out.v[1] = st.v[1];
    out.i[1] = st.i[1];
    for (const auto& t : st.d_row(1)) out.d.push_back({1, t[1], t[2]});
    out.sort_d();
    return out;
}

// Read the structure back as a checkable proof: line u carries the clause
// of its D row; resolvent lines cut with the pivot positive in R(u).
inline Proof structure_to_proof(const RefStructure& st, const Cnf&) {
    Proof p;
    for (int u = 1; u <= st.s; ++u) {
        Justification j = st.i[u] != 0 ? Justification::ax(st.i[u])
                                       : Justification::res(st.r[u], st.l[u], st.v[u]);
        p.add_line(st.line_clause(u), j);
    }
    return p;
}

// Text form: an `s` line, then sections D: (triples) and V: I: L: R: (pairs).
inline void emit_structure(std::ostream& out, const RefStructure& st) {
    out << "s " << st.s << '\n';
    out << "D:\n";
    for (const auto& t : st.d) out << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
    auto section = [&](const char* name, const std::vector<int>& f) {
        out << name << ":\n";
        for (int u = 1; u <= st.s; ++u) out << u << ' ' << f[u] << '\n';
    };
    section("V", st.v);
    section("I", st.i);
    section("L", st.l);
    section("R", st.r);
}

inline RefStructure parse_structure(std::istream& in) {
    std::string line;
    int line_no = 0;
    RefStructure st;
    int section = -1; // 0=D 1=V 2=I 3=L 4=R
    bool have_s = false;
    while (std::getline(in, line)) {
        ++line_no;
        size_t first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        if (line[first] == 'c') continue;
        std::string tok = line.substr(first);
        while (!tok.empty() && (tok.back() == '\r' || tok.back() == ' ')) tok.pop_back();
        if (tok == "D:") { section = 0; continue; }
        if (tok == "V:") { section = 1; continue; }
        if (tok == "I:") { section = 2; continue; }
        if (tok == "L:") { section = 3; continue; }
        if (tok == "R:") { section = 4; continue; }
        std::istringstream ls(tok);
        if (!have_s) {
            std::string key;
            int s;
            if (!(ls >> key >> s) || key != "s" || s < 1)
                throw ParseError(line_no, "expected `s <length>` first");
            st = RefStructure::blank(s);
            have_s = true;
            continue;
        }
        if (section == 0) {
            int u, i, b;
            if (!(ls >> u >> i >> b)) throw ParseError(line_no, "expected `u i b`");
            st.d.push_back({u, i, b});
        } else if (section >= 1 && section <= 4) {
            int u, x;
            if (!(ls >> u >> x)) throw ParseError(line_no, "expected `u value`");
            if (u < 1 || u > st.s) throw ParseError(line_no, "index out of range");
            (section == 1 ? st.v : section == 2 ? st.i : section == 3 ? st.l : st.r)[u] = x;
        } else {
            throw ParseError(line_no, "entry before any section header");
        }
    }
    if (!have_s) throw ParseError(line_no, "missing `s <length>`");
    st.sort_d();
    return st;
}

} // namespace refgap
