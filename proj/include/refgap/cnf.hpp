#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace refgap {

// A literal is a signed nonzero int: +v is X_v, -v is the negation of X_v.
inline int lit_var(int lit) { return lit < 0 ? -lit : lit; }
inline bool lit_sign(int lit) { return lit > 0; } // true = positive
inline int make_lit(int var, bool sign) { return sign ? var : -var; }

// Canonical literal order: by variable, negative phase first.
inline bool lit_less(int a, int b) {
    int va = lit_var(a), vb = lit_var(b);
    if (va != vb) return va < vb;
    return a < b;
}

namespace detail {
inline void canonicalize(std::vector<int>& lits) {
    for (int l : lits)
        if (l == 0) throw std::invalid_argument("literal 0 in clause");
    std::sort(lits.begin(), lits.end(), lit_less);
    lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
}
} // namespace detail

// A clause is a set of literals; stored sorted and duplicate-free.
class Clause {
public:
    Clause() = default;
    Clause(std::initializer_list<int> lits) : lits_(lits) { detail::canonicalize(lits_); }
    explicit Clause(std::vector<int> lits) : lits_(std::move(lits)) { detail::canonicalize(lits_); }
    explicit Clause(std::span<const int> lits) : lits_(lits.begin(), lits.end()) {
        detail::canonicalize(lits_);
    }

    // Trusted constructor for literals already in canonical order.
    static Clause from_sorted(std::vector<int> lits) {
        Clause c;
        c.lits_ = std::move(lits);
        return c;
    }

    bool empty() const { return lits_.empty(); }
    size_t size() const { return lits_.size(); }

    bool contains(int lit) const {
        return std::binary_search(lits_.begin(), lits_.end(), lit, lit_less);
    }

    bool tautological() const {
        for (size_t i = 0; i + 1 < lits_.size(); ++i)
            if (lits_[i] == -lits_[i + 1]) return true;
        return false;
    }

    bool subset_of(const Clause& other) const { return subset_of(other.lits()); }

    bool subset_of(std::span<const int> other) const {
        size_t j = 0;
        for (int l : lits_) {
            while (j < other.size() && lit_less(other[j], l)) ++j;
            if (j == other.size() || other[j] != l) return false;
            ++j;
        }
        return true;
    }

    std::span<const int> lits() const { return lits_; }
    auto begin() const { return lits_.begin(); }
    auto end() const { return lits_.end(); }

    bool operator==(const Clause&) const = default;
    auto operator<=>(const Clause&) const = default;

private:
    std::vector<int> lits_;
};

// Resolvent of pos and neg on variable pivot: pivot must occur positively in
// pos and negatively in neg. Callers check occurrence; this just merges.
inline Clause resolve(const Clause& pos, const Clause& neg, int pivot) {
    std::vector<int> out;
    out.reserve(pos.size() + neg.size());
    for (int l : pos)
        if (l != pivot) out.push_back(l);
    for (int l : neg)
        if (l != -pivot) out.push_back(l);
    detail::canonicalize(out);
    return Clause::from_sorted(std::move(out));
}

// Partial map from variables [1..num_vars] to {0,1}. Dense storage: the
// formulas in this project have contiguous variable universes.
class Assignment {
public:
    Assignment() = default;
    explicit Assignment(int num_vars) : val_(static_cast<size_t>(num_vars) + 1, -1) {}

    int num_vars() const { return static_cast<int>(val_.size()) - 1; }

    bool defined(int var) const {
        return var >= 1 && var < static_cast<int>(val_.size()) && val_[var] >= 0;
    }

    bool value(int var) const { return val_[var] == 1; }

    void set(int var, bool b) {
        if (var < 1 || var >= static_cast<int>(val_.size()))
            throw std::out_of_range("assignment: variable " + std::to_string(var) +
                                    " outside universe");
        if (val_[var] >= 0 && val_[var] != (b ? 1 : 0))
            throw std::logic_error("assignment: variable " + std::to_string(var) +
                                   " set twice with different values");
        if (val_[var] < 0) ++count_;
        val_[var] = b ? 1 : 0;
    }

    size_t defined_count() const { return count_; }

    bool satisfies(int lit) const { return defined(lit_var(lit)) && value(lit_var(lit)) == lit_sign(lit); }
    bool falsifies(int lit) const { return defined(lit_var(lit)) && value(lit_var(lit)) != lit_sign(lit); }

    bool subset_of(const Assignment& other) const {
        for (int v = 1; v < static_cast<int>(val_.size()); ++v)
            if (val_[v] >= 0 && (!other.defined(v) || other.value(v) != (val_[v] == 1)))
                return false;
        return true;
    }

    bool operator==(const Assignment&) const = default;

private:
    std::vector<int8_t> val_;
    size_t count_ = 0;
};

enum class ClauseStatus : uint8_t { Satisfied, Falsified, Reduced };

struct RestrictedClause {
    ClauseStatus status;
    Clause clause; // meaningful only when status == Reduced
};

// C restricted by alpha: 1 if some literal satisfied, 0 if all falsified,
// otherwise C minus its falsified literals. The empty clause is falsified
// under every assignment.
inline ClauseStatus restrict_span(std::span<const int> clause, const Assignment& alpha,
                                  std::vector<int>* out) {
    if (out) out->clear();
    bool all_falsified = true;
    for (int l : clause) {
        if (alpha.satisfies(l)) return ClauseStatus::Satisfied;
        if (!alpha.falsifies(l)) {
            all_falsified = false;
            if (out) out->push_back(l);
        }
    }
    return all_falsified ? ClauseStatus::Falsified : ClauseStatus::Reduced;
}

inline RestrictedClause restrict_clause(const Clause& clause, const Assignment& alpha) {
    std::vector<int> kept;
    ClauseStatus st = restrict_span(clause.lits(), alpha, &kept);
    if (st == ClauseStatus::Reduced) return {st, Clause::from_sorted(std::move(kept))};
    return {st, Clause{}};
}

// CNF over variables [1..num_vars]. Clause order is significant: it fixes
// the indices C_1..C_m. Stored packed (shared literal buffer + offsets).
class Cnf {
public:
    Cnf() = default;
    explicit Cnf(int num_vars) : num_vars_(num_vars) {}

    int num_vars() const { return num_vars_; }
    void set_num_vars(int n) {
        if (n < num_vars_) throw std::invalid_argument("cnf: cannot shrink variable universe");
        num_vars_ = n;
    }

    void add_clause(const Clause& c) { add_canonical(c.lits()); }
    void add_clause(std::initializer_list<int> lits) { add_clause(Clause(lits)); }
    void add_clause(std::span<const int> lits) { add_clause(Clause(lits)); }

    // For generators that emit literals already sorted and deduplicated.
    void add_canonical(std::span<const int> lits) {
        for (int l : lits) {
            int v = lit_var(l);
            if (v < 1 || v > num_vars_)
                throw std::out_of_range("cnf: variable " + std::to_string(v) +
                                        " exceeds declared universe " + std::to_string(num_vars_));
        }
        lits_.insert(lits_.end(), lits.begin(), lits.end());
        off_.push_back(static_cast<uint64_t>(lits_.size()));
    }

    size_t clause_count() const { return off_.size() - 1; }

    std::span<const int> clause(size_t i) const {
        return {lits_.data() + off_[i], lits_.data() + off_[i + 1]};
    }

    Clause clause_at(size_t i) const {
        auto sp = clause(i);
        return Clause::from_sorted(std::vector<int>(sp.begin(), sp.end()));
    }

    // r(F): total number of literals.
    uint64_t size() const { return lits_.size(); }

    void reserve(uint64_t clauses, uint64_t lits) {
        off_.reserve(clauses + 1);
        lits_.reserve(lits);
    }

    bool operator==(const Cnf&) const = default;

private:
    int num_vars_ = 0;
    std::vector<int> lits_;
    std::vector<uint64_t> off_{0};
};

inline uint64_t cnf_size(const Cnf& f) { return f.size(); }

// F restricted by alpha: satisfied clauses are dropped, falsified clauses
// become the empty clause in place, the rest are reduced in place. Surviving
// clauses keep their relative order.
inline Cnf restrict_cnf(const Cnf& f, const Assignment& alpha) {
    Cnf out(f.num_vars());
    std::vector<int> kept;
    for (size_t i = 0; i < f.clause_count(); ++i) {
        switch (restrict_span(f.clause(i), alpha, &kept)) {
        case ClauseStatus::Satisfied: break;
        case ClauseStatus::Falsified: out.add_canonical({}); break;
        case ClauseStatus::Reduced: out.add_canonical(kept); break;
        }
    }
    return out;
}

inline bool clause_satisfied_by(std::span<const int> clause, const Assignment& alpha) {
    for (int l : clause)
        if (alpha.satisfies(l)) return true;
    return false;
}

} // namespace refgap
