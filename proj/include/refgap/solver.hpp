#pragma once

#include <cstdint>
#include <vector>

#include "refgap/cnf.hpp"

namespace refgap {

enum class SolveStatus : uint8_t { Sat, Unsat, BudgetExceeded };

struct SolveResult {
    SolveStatus status = SolveStatus::Unsat;
    Assignment model; // total when Sat (unassigned variables default to 0)
    uint64_t decisions = 0;
    uint64_t propagations = 0;
};

// Plain DPLL with unit propagation and pure-literal elimination. Branching
// order is fixed: lowest unassigned variable first, value true first, so
// results and models are reproducible. Complete within the decision budget;
// running out of budget is its own outcome, never reported as UNSAT.
class DpllSolver {
public:
    explicit DpllSolver(const Cnf& f, uint64_t decision_budget = UINT64_MAX)
        : f_(f), budget_(decision_budget) {}

    SolveResult run() {
        const int n = f_.num_vars();
        val_.assign(static_cast<size_t>(n) + 1, -1);
        pos_occ_.assign(static_cast<size_t>(n) + 1, {});
        neg_occ_.assign(static_cast<size_t>(n) + 1, {});
        const size_t m = f_.clause_count();
        sat_count_.assign(m, 0);
        open_lits_.assign(m, 0);
        for (size_t i = 0; i < m; ++i) {
            auto c = f_.clause(i);
            open_lits_[i] = static_cast<int>(c.size());
            for (int l : c)
                (l > 0 ? pos_occ_[l] : neg_occ_[-l]).push_back(static_cast<int>(i));
        }
        for (size_t i = 0; i < m; ++i)
            if (f_.clause(i).empty()) return {SolveStatus::Unsat, Assignment(n), 0, 0};

        SolveResult res;
        bool sat = search(res);
        if (out_of_budget_) {
            res.status = SolveStatus::BudgetExceeded;
            res.model = Assignment(n);
            return res;
        }
        res.status = sat ? SolveStatus::Sat : SolveStatus::Unsat;
        res.model = Assignment(n);
        if (sat) {
            for (int v = 1; v <= n; ++v) res.model.set(v, val_[v] == 1);
            for (size_t i = 0; i < m; ++i)
                if (!clause_satisfied_by(f_.clause(i), res.model))
                    throw std::logic_error("solver: model self-check failed");
        }
        return res;
    }

private:
    bool assign(int lit) { // false on conflict
        int v = lit_var(lit);
        val_[v] = lit > 0 ? 1 : 0;
        trail_.push_back(v);
        for (int ci : lit > 0 ? pos_occ_[v] : neg_occ_[v]) ++sat_count_[ci];
        bool ok = true;
        for (int ci : lit > 0 ? neg_occ_[v] : pos_occ_[v]) {
            if (--open_lits_[ci] == 0 && sat_count_[ci] == 0) ok = false;
        }
        return ok;
    }

    void undo_to(size_t mark) {
        while (trail_.size() > mark) {
            int v = trail_.back();
            trail_.pop_back();
            bool was_true = val_[v] == 1;
            for (int ci : was_true ? pos_occ_[v] : neg_occ_[v]) --sat_count_[ci];
            for (int ci : was_true ? neg_occ_[v] : pos_occ_[v]) ++open_lits_[ci];
            val_[v] = -1;
        }
    }

    // Propagate units, then assign pure literals; false on conflict.
    bool propagate(SolveResult& res) {
        bool changed = true;
        while (changed) {
            changed = false;
            for (size_t i = 0; i < f_.clause_count(); ++i) {
                if (sat_count_[i] > 0 || open_lits_[i] != 1) continue;
                int unit = 0;
                for (int l : f_.clause(i))
                    if (val_[lit_var(l)] < 0) {
                        unit = l;
                        break;
                    }
                ++res.propagations;
                if (!assign(unit)) return false;
                changed = true;
            }
            if (changed) continue;
            // pure literals: variables with a single polarity among open clauses
            std::vector<uint8_t> seen(static_cast<size_t>(f_.num_vars()) + 1, 0);
            for (size_t i = 0; i < f_.clause_count(); ++i) {
                if (sat_count_[i] > 0) continue;
                for (int l : f_.clause(i))
                    if (val_[lit_var(l)] < 0) seen[lit_var(l)] |= l > 0 ? 1 : 2;
            }
            for (int v = 1; v <= f_.num_vars(); ++v) {
                if (val_[v] >= 0 || seen[v] == 0 || seen[v] == 3) continue;
                ++res.propagations;
                if (!assign(seen[v] == 1 ? v : -v)) return false;
                changed = true;
            }
        }
        return true;
    }

    bool all_satisfied() const {
        for (size_t i = 0; i < f_.clause_count(); ++i)
            if (sat_count_[i] == 0) return false;
        return true;
    }

    bool search(SolveResult& res) {
        size_t mark = trail_.size();
        if (!propagate(res)) {
            undo_to(mark);
            return false;
        }
        if (all_satisfied()) return true;
        int var = 0;
        for (int v = 1; v <= f_.num_vars(); ++v)
            if (val_[v] < 0) {
                var = v;
                break;
            }
        if (var == 0) {
            undo_to(mark);
            return false; // all assigned but some clause open: conflict
        }
        if (++res.decisions > budget_) {
            out_of_budget_ = true;
            undo_to(mark);
            return false;
        }
        for (bool phase : {true, false}) {
            size_t inner = trail_.size();
            if (assign(make_lit(var, phase)) && search(res)) return true;
            undo_to(inner);
            if (out_of_budget_) break;
        }
        undo_to(mark);
        return false;
    }

    const Cnf& f_;
    uint64_t budget_;
    bool out_of_budget_ = false;
    std::vector<int8_t> val_;
    std::vector<int> trail_;
    std::vector<std::vector<int>> pos_occ_, neg_occ_;
    std::vector<int> sat_count_, open_lits_;
};

inline SolveResult solve(const Cnf& f, uint64_t decision_budget = UINT64_MAX) {
    return DpllSolver(f, decision_budget).run();
}

} // namespace refgap
