#pragma once

#include <cassert>
#include <optional>
#include <unordered_map>
#include <vector>

#include "refgap/cnf.hpp"
#include "refgap/encode.hpp"
#include "refgap/proof.hpp"

namespace refgap {

struct WitnessError : std::runtime_error {
    explicit WitnessError(const std::string& what, int clause = 0)
        : std::runtime_error(what), violated_clause(clause) {}
    int violated_clause; // 1-based index into F when the model misses a clause
};

// True(u): the activity guard plus the literal of each variable that alpha
// makes true on line u.
inline Clause true_clause(int u, const Assignment& alpha, const Dims& d) {
    std::vector<int> lits{-var_id({VarKind::P, u}, d)};
    for (int i = 1; i <= d.n; ++i)
        lits.push_back(var_id({VarKind::D, u, i, alpha.value(i) ? 1 : 0}, d));
    return Clause(std::move(lits));
}

// Exact number of resolution steps in the constructed refutation:
// (s+2+m) for True(1), (n+1) for closing, and per line u = 2..s
// n(n+2)(u-1) + ns cuts for the helper clauses plus n+m+4 to combine.
inline uint64_t cut_count(int s, int n, int m) {
    uint64_t su = s, nu = n, mu = m;
    uint64_t total = (su + 2 + mu) + (nu + 1);
    total += nu * (nu + 2) * (su * (su - 1) / 2);
    total += (su - 1) * (nu * su + nu + mu + 4);
    return total;
}

struct WitnessStats {
    uint64_t premise_lines = 0;   // axiom lines copying a premise verbatim
    uint64_t a0_lines = 0;        // the weakened (A19) helper lines
    uint64_t resolvent_lines = 0; // cuts
};

struct Witness {
    Proof proof;
    WitnessStats stats;
};

namespace detail {

class WitnessBuilder {
public:
    WitnessBuilder(const Cnf& f, const Assignment& alpha, int s, bool with_a7a8)
        : f_(f), alpha_(alpha), lay_(f, s, true, with_a7a8),
          d_{f.num_vars(), static_cast<int>(f.clause_count()), s}, s_(s) {
        if (alpha.num_vars() < d_.n)
            throw WitnessError("witness: assignment universe smaller than F");
        for (int i = 1; i <= d_.n; ++i)
            if (!alpha.defined(i))
                throw WitnessError("witness: assignment not total, X" + std::to_string(i) +
                                   " unset");
        for (size_t j = 0; j < f.clause_count(); ++j)
            if (!clause_satisfied_by(f.clause(j), alpha))
                throw WitnessError("witness: assignment does not satisfy clause " +
                                       std::to_string(j + 1) + " of F",
                                   static_cast<int>(j + 1));
    }

    Witness run() {
        derive_a0();
        true_line_.assign(static_cast<size_t>(s_) + 1, 0);
        true_line_[1] = derive_true_1();
        for (int u = 2; u <= s_; ++u) true_line_[u] = derive_true(u);
        close();
        assert(stats_.resolvent_lines == cut_count(s_, d_.n, d_.m));
        return {std::move(proof_), stats_};
    }

private:
    int id(VarKind k, int u, int a = 0, int b = 0) const { return var_id({k, u, a, b}, d_); }
    int alpha_bit(int i) const { return alpha_.value(i) ? 1 : 0; }

    int premise(uint64_t ordinal, Clause content) {
        auto it = premise_line_.find(ordinal);
        if (it != premise_line_.end()) return it->second;
        ++stats_.premise_lines;
        int ln = proof_.add_line(std::move(content), Justification::ax(static_cast<int>(ordinal)));
        premise_line_.emplace(ordinal, ln);
        return ln;
    }

    int cut(int pos_line, int neg_line, int pivot, std::optional<Clause> weaken_to = {}) {
        Clause res = resolve(proof_.line(pos_line).clause, proof_.line(neg_line).clause, pivot);
        if (weaken_to) {
            assert(res.subset_of(*weaken_to));
            res = std::move(*weaken_to);
        }
        ++stats_.resolvent_lines;
        return proof_.add_line(std::move(res), Justification::res(pos_line, neg_line, pivot));
    }

    // ---- premise clause contents (relativized table) ----
    Clause a1_c(int u) {
        std::vector<int> l{-id(VarKind::P, u)};
        for (int i = 0; i <= d_.n; ++i) l.push_back(id(VarKind::V, u, i));
        return Clause(std::move(l));
    }
    Clause a2_c(int u) {
        std::vector<int> l{-id(VarKind::P, u)};
        for (int j = 0; j <= d_.m; ++j) l.push_back(id(VarKind::I, u, j));
        return Clause(std::move(l));
    }
    Clause a34_c(VarKind k, int u) {
        std::vector<int> l{-id(VarKind::P, u)};
        for (int v = 0; v <= s_; ++v) l.push_back(id(k, u, v));
        return Clause(std::move(l));
    }
    Clause a9_c(int u) { return Clause{-id(VarKind::P, u), -id(VarKind::I, u, 0), -id(VarKind::V, u, 0)}; }
    Clause a11_c(int u) { return Clause{-id(VarKind::P, u), -id(VarKind::I, u, 0), -id(VarKind::L, u, 0)}; }
    Clause a12_c(int u) { return Clause{-id(VarKind::P, u), -id(VarKind::I, u, 0), -id(VarKind::R, u, 0)}; }
    Clause a1314_c(VarKind k, int u, int v) { return Clause{-id(VarKind::P, u), -id(k, u, v)}; }
    Clause a1516_c(VarKind k, int u, int v, int i) {
        return Clause{-id(VarKind::P, u), -id(VarKind::P, v), -id(k, u, v), -id(VarKind::V, u, i),
                      id(VarKind::D, v, i, k == VarKind::L ? 0 : 1)};
    }
    Clause a1718_c(VarKind k, int u, int v, int i, int i2, int b) {
        return Clause{-id(VarKind::P, u), -id(VarKind::P, v), -id(k, u, v),
                      -id(VarKind::V, u, i), -id(VarKind::D, v, i2, b), id(VarKind::D, u, i2, b)};
    }
    Clause a20_c(int u, int i) {
        return Clause{-id(VarKind::P, u), -id(VarKind::D, u, i, 0), -id(VarKind::D, u, i, 1)};
    }
    Clause a21_c(int i, int b) {
        return Clause{-id(VarKind::P, s_), -id(VarKind::D, s_, i, b)};
    }
    Clause a2223_c(VarKind k, int u, int v) {
        return Clause{-id(VarKind::P, u), -id(k, u, v), id(VarKind::P, v)};
    }

    // ---- phase 1: A0(j,u) as weakenings of (A19), s*m lines ----
    void derive_a0() {
        a0_line_.assign(static_cast<size_t>(s_) * d_.m + 1, 0);
        for (int u = 1; u <= s_; ++u) {
            Clause tu = true_clause(u, alpha_, d_);
            for (int j = 1; j <= d_.m; ++j) {
                auto cj = f_.clause(j - 1);
                int pos = -1;
                for (size_t k = 0; k < cj.size(); ++k)
                    if (alpha_.satisfies(cj[k])) {
                        pos = static_cast<int>(k);
                        break;
                    }
                assert(pos >= 0); // alpha satisfies C_j, checked on entry
                std::vector<int> lits(tu.begin(), tu.end());
                lits.push_back(-id(VarKind::I, u, j));
                ++stats_.a0_lines;
                int ln = proof_.add_line(
                    Clause(std::move(lits)),
                    Justification::ax(static_cast<int>(lay_.a19(u, j, pos))));
                a0_line_[(static_cast<size_t>(u) - 1) * d_.m + j] = ln;
            }
        }
    }

    int a0(int u, int j) const { return a0_line_[(static_cast<size_t>(u) - 1) * d_.m + j]; }

    // ---- True(1): s + m + 2 cuts ----
    int derive_true_1() {
        int c = premise(lay_.a4(1), a34_c(VarKind::R, 1));
        for (int v = 1; v <= s_; ++v)
            c = cut(c, premise(lay_.a14(1, v), a1314_c(VarKind::R, 1, v)), id(VarKind::R, 1, v));
        c = cut(c, premise(lay_.a12(1), a12_c(1)), id(VarKind::R, 1, 0));
        c = cut(premise(lay_.a2(1), a2_c(1)), c, id(VarKind::I, 1, 0));
        for (int j = 1; j <= d_.m; ++j) c = cut(c, a0(1, j), id(VarKind::I, 1, j));
        assert(proof_.line(c).clause == true_clause(1, alpha_, d_));
        return c;
    }

    // ---- helper A1(i,u), (n+2)(u-1) + s cuts ----
    int derive_a1(int i, int u) {
        const bool one = alpha_.value(i);
        const VarKind lr = one ? VarKind::L : VarKind::R;
        const int b = one ? 1 : 0;
        std::vector<int> aa1(static_cast<size_t>(u), 0);
        for (int v = 1; v < u; ++v) {
            uint64_t start = one ? lay_.a15(u, v, i) : lay_.a16(u, v, i);
            int c = cut(premise(start, a1516_c(lr, u, v, i)),
                        premise(lay_.a20(v, i), a20_c(v, i)), id(VarKind::D, v, i, 1 - b));
            c = cut(true_line_[v], c, id(VarKind::D, v, i, b));
            for (int i2 = 1; i2 <= d_.n; ++i2) {
                if (i2 == i) continue;
                int b2 = alpha_bit(i2);
                uint64_t ord = one ? lay_.a17(u, v, i, i2, b2) : lay_.a18(u, v, i, i2, b2);
                c = cut(c, premise(ord, a1718_c(lr, u, v, i, i2, b2)), id(VarKind::D, v, i2, b2));
            }
            uint64_t link = one ? lay_.a22(u, v) : lay_.a23(u, v);
            c = cut(premise(link, a2223_c(lr, u, v)), c, id(VarKind::P, v));
            aa1[v] = c;
        }
        // fold into (A3)/(A4); the last step is weakened to the full helper
        Clause full = [&] {
            Clause tu = true_clause(u, alpha_, d_);
            std::vector<int> l(tu.begin(), tu.end());
            l.push_back(-id(VarKind::V, u, i));
            l.push_back(id(lr, u, 0));
            return Clause(std::move(l));
        }();
        int c = premise(one ? lay_.a3(u) : lay_.a4(u), a34_c(lr, u));
        for (int v = 1; v < u; ++v) c = cut(c, aa1[v], id(lr, u, v));
        for (int v = u; v <= s_; ++v) {
            uint64_t ord = one ? lay_.a13(u, v) : lay_.a14(u, v);
            std::optional<Clause> weaken;
            if (v == s_) weaken = full;
            c = cut(c, premise(ord, a1314_c(lr, u, v)), id(lr, u, v), std::move(weaken));
        }
        return c;
    }

    // ---- True(u) for u >= 2: n + m + 4 cuts after the helpers ----
    int derive_true(int u) {
        std::vector<int> a1_line(static_cast<size_t>(d_.n) + 1, 0);
        for (int i = 1; i <= d_.n; ++i) a1_line[i] = derive_a1(i, u);

        Clause mid = [&] { // V[u,0] v L[u,0] v R[u,0] v True(u)
            Clause tu = true_clause(u, alpha_, d_);
            std::vector<int> l(tu.begin(), tu.end());
            l.push_back(id(VarKind::V, u, 0));
            l.push_back(id(VarKind::L, u, 0));
            l.push_back(id(VarKind::R, u, 0));
            return Clause(std::move(l));
        }();
        int c = premise(lay_.a1(u), a1_c(u));
        for (int i = 1; i <= d_.n; ++i) {
            std::optional<Clause> weaken;
            if (i == d_.n) weaken = mid;
            c = cut(c, a1_line[i], id(VarKind::V, u, i), std::move(weaken));
        }
        c = cut(c, premise(lay_.a9(u), a9_c(u)), id(VarKind::V, u, 0));
        c = cut(c, premise(lay_.a11(u), a11_c(u)), id(VarKind::L, u, 0));
        c = cut(c, premise(lay_.a12(u), a12_c(u)), id(VarKind::R, u, 0));
        c = cut(premise(lay_.a2(u), a2_c(u)), c, id(VarKind::I, u, 0));
        for (int j = 1; j <= d_.m; ++j) c = cut(c, a0(u, j), id(VarKind::I, u, j));
        assert(proof_.line(c).clause == true_clause(u, alpha_, d_));
        return c;
    }

    // ---- closing: n cuts with (A21), one with (A24) ----
    void close() {
        int c = true_line_[s_];
        for (int i = 1; i <= d_.n; ++i) {
            int b = alpha_bit(i);
            c = cut(c, premise(lay_.a21(i, b), a21_c(i, b)), id(VarKind::D, s_, i, b));
        }
        c = cut(premise(lay_.a24(), Clause{id(VarKind::P, s_)}), c, id(VarKind::P, s_));
        assert(proof_.line(c).clause.empty());
    }

    const Cnf& f_;
    const Assignment& alpha_;
    Layout lay_;
    Dims d_;
    int s_;
    Proof proof_;
    WitnessStats stats_;
    std::unordered_map<uint64_t, int> premise_line_;
    std::vector<int> a0_line_;
    std::vector<int> true_line_;
};

} // namespace detail

// The explicit refutation of RREF(F,s) guided by a satisfying assignment of
// F. With with_a7a8 = false the premise indices refer to the primed variant;
// the construction touches no (A7)/(A8) clause either way.
inline Witness build_witness(const Cnf& f, const Assignment& alpha, int s,
                             bool with_a7a8 = true) {
    if (s < 1) throw WitnessError("witness: s must be >= 1");
    return detail::WitnessBuilder(f, alpha, s, with_a7a8).run();
}

} // namespace refgap
