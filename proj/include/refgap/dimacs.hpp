#pragma once

#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "refgap/cnf.hpp"

namespace refgap {

struct ParseError : std::runtime_error {
    ParseError(int line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_no(line) {}
    int line_no;
};

// DIMACS CNF reader. Header `p cnf <n> <m>`, one zero-terminated clause per
// line, comment lines starting with 'c' allowed. Clause order is preserved.
inline Cnf parse_dimacs(std::istream& in) {
    std::string line;
    int line_no = 0;
    long n = -1, m = -1;
    Cnf cnf;
    size_t clauses_read = 0;
    while (std::getline(in, line)) {
        ++line_no;
        size_t first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        if (line[first] == 'c') continue;
        std::istringstream ls(line);
        if (n < 0) {
            std::string p, fmt;
            if (!(ls >> p >> fmt >> n >> m) || p != "p" || fmt != "cnf" || n < 0 || m < 0)
                throw ParseError(line_no, "malformed header, expected `p cnf <n> <m>`");
            std::string rest;
            if (ls >> rest) throw ParseError(line_no, "trailing tokens after header");
            cnf.set_num_vars(static_cast<int>(n));
            continue;
        }
        std::vector<int> lits;
        long lit;
        bool terminated = false;
        while (ls >> lit) {
            if (terminated) throw ParseError(line_no, "tokens after clause terminator");
            if (lit == 0) {
                terminated = true;
                continue;
            }
            long v = lit < 0 ? -lit : lit;
            if (v > n)
                throw ParseError(line_no, "variable " + std::to_string(v) +
                                              " exceeds declared n=" + std::to_string(n));
            lits.push_back(static_cast<int>(lit));
        }
        if (!ls.eof()) throw ParseError(line_no, "unreadable literal");
        if (!terminated) throw ParseError(line_no, "clause missing 0 terminator");
        if (++clauses_read > static_cast<size_t>(m))
            throw ParseError(line_no, "more clauses than declared m=" + std::to_string(m));
        cnf.add_clause(std::span<const int>(lits));
    }
    if (n < 0) throw ParseError(line_no, "missing `p cnf` header");
    if (clauses_read != static_cast<size_t>(m))
        throw ParseError(line_no, "expected " + std::to_string(m) + " clauses, got " +
                                      std::to_string(clauses_read));
    return cnf;
}

inline Cnf parse_dimacs(const std::string& text) {
    std::istringstream in(text);
    return parse_dimacs(in);
}

// Canonical writer: no comments, literals in canonical clause order.
inline void emit_dimacs(std::ostream& out, const Cnf& f) {
    out << "p cnf " << f.num_vars() << ' ' << f.clause_count() << '\n';
    for (size_t i = 0; i < f.clause_count(); ++i) {
        for (int l : f.clause(i)) out << l << ' ';
        out << "0\n";
    }
}

inline std::string emit_dimacs(const Cnf& f) {
    std::ostringstream out;
    emit_dimacs(out, f);
    return out.str();
}

// Model/assignment files: one `<var> <0|1>` pair per line.
inline Assignment parse_assignment(std::istream& in, int num_vars) {
    Assignment a(num_vars);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        size_t first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        if (line[first] == 'c') continue;
        std::istringstream ls(line);
        int var, val;
        if (!(ls >> var >> val) || (val != 0 && val != 1))
            throw ParseError(line_no, "expected `<var> <0|1>`");
        if (var < 1 || var > num_vars)
            throw ParseError(line_no, "variable " + std::to_string(var) + " out of range");
        a.set(var, val == 1);
    }
    return a;
}

inline void emit_assignment(std::ostream& out, const Assignment& a) {
    for (int v = 1; v <= a.num_vars(); ++v)
        if (a.defined(v)) out << v << ' ' << (a.value(v) ? 1 : 0) << '\n';
}

} // namespace refgap
