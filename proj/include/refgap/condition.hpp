#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "refgap/cnf.hpp"
#include "refgap/encode.hpp"
#include "refgap/proof.hpp"
#include "refgap/rng.hpp"
#include "refgap/structure.hpp"

namespace refgap {

struct RegimeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct CapacityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Interval partitions of [s] and [s*] into n-k+1 blocks, where k is the
// integer with 2^k < 3w <= 2^{k+1}. Block 0 is the top 2^{k+1}-1 indices on
// both sides; star blocks i >= 1 are the full-tree levels k+i; plain blocks
// i in [n-k-1] have 2^{k+1} indices each and the last block takes the rest.
struct BlockContext {
    int n = 0, w = 0, s = 0, s_star = 0, k = 0;
    // inclusive [lo, hi] per block, index 0..n-k
    std::vector<std::pair<int, int>> blocks, star_blocks;

    static BlockContext make(int n, int w, int s, bool enforce_regime = true) {
        if (n < 1 || w < 1 || s < 1) throw RegimeError("blocks: n, w, s must be positive");
        if (n > 24) throw RegimeError("blocks: n too large for the full tree");
        BlockContext ctx;
        ctx.n = n;
        ctx.w = w;
        ctx.s = s;
        ctx.s_star = (1 << (n + 1)) - 1;
        int k = 0;
        while ((1 << (k + 1)) < 3 * w) ++k;
        ctx.k = k;
        if (enforce_regime) {
            if (static_cast<int64_t>(s) > (int64_t{1} << n))
                throw RegimeError("blocks: need 2^n >= s");
            if (static_cast<int64_t>(s) < int64_t{6} * n * w)
                throw RegimeError("blocks: need s >= 6nw");
        }
        if (!(k >= 1 && k < n)) throw RegimeError("blocks: need 1 <= k < n");

        const int top = 1 << (k + 1); // 2^{k+1}
        ctx.star_blocks.resize(n - k + 1);
        ctx.star_blocks[0] = {ctx.s_star - top + 2, ctx.s_star};
        for (int i = 1; i <= n - k; ++i)
            ctx.star_blocks[i] = {ctx.s_star - (1 << (k + 1 + i)) + 2,
                                  ctx.s_star - (1 << (k + i)) + 1};
        ctx.blocks.resize(n - k + 1);
        ctx.blocks[0] = {s - top + 2, s};
        for (int i = 1; i <= n - k - 1; ++i)
            ctx.blocks[i] = {s - top * (i + 1) + 2, s - top * i + 1};
        ctx.blocks[n - k] = {1, s - top * (n - k) + 1};
        if (ctx.blocks[n - k].second < ctx.blocks[n - k].first)
            throw RegimeError("blocks: last block empty, s too small for this n, w");
        return ctx;
    }

    int num_blocks() const { return n - k + 1; }

    int block_of(int u) const {
        for (int i = 0; i < num_blocks(); ++i)
            if (u >= blocks[i].first && u <= blocks[i].second) return i;
        throw std::out_of_range("block_of: index outside [s]");
    }
    int star_block_of(int x) const {
        for (int i = 0; i < num_blocks(); ++i)
            if (x >= star_blocks[i].first && x <= star_blocks[i].second) return i;
        throw std::out_of_range("star_block_of: index outside [s*]");
    }

    int t_map(int u) const { return u - s + s_star; }
    int t_inv(int x) const { return x - s_star + s; }
};

// A partial injection as explicit pairs, with the inverse kept alongside.
class PartialInj {
public:
    bool contains_dom(int x) const { return fwd_.count(x) != 0; }
    bool contains_img(int y) const { return inv_.count(y) != 0; }
    int at(int x) const { return fwd_.at(x); }
    int inv_at(int y) const { return inv_.at(y); }
    size_t dom_size() const { return fwd_.size(); }
    const std::map<int, int>& pairs() const { return fwd_; }

    void insert(int x, int y) {
        if (contains_dom(x))
            throw std::logic_error("partial map: domain element bound twice");
        if (contains_img(y)) throw std::logic_error("partial map: image element hit twice");
        fwd_.emplace(x, y);
        inv_.emplace(y, x);
    }

    bool subset_of(const PartialInj& other) const {
        for (auto [x, y] : fwd_)
            if (!other.contains_dom(x) || other.at(x) != y) return false;
        return true;
    }

    std::set<int> image() const {
        std::set<int> img;
        for (auto [x, y] : fwd_) img.insert(y);
        return img;
    }

    bool operator==(const PartialInj&) const = default;

private:
    std::map<int, int> fwd_, inv_;
};

struct Condition {
    PartialInj g, h;
    bool operator==(const Condition&) const = default;
};

inline Condition condition_root() {
    Condition p;
    p.g.insert(0, 0);
    p.h.insert(0, 0);
    return p;
}

// boundary of I inside [s*]: the children under the full-tree maps
inline std::set<int> boundary(const std::set<int>& img, const RefStructure& star) {
    std::set<int> out;
    for (int x : img) {
        if (x == 0) continue;
        out.insert(star.l[x]);
        out.insert(star.r[x]);
    }
    return out;
}

struct MapVerdict {
    bool ok = true;
    std::string rule; // H1..H4, C1, C2, sizeh
    std::vector<int> witness;

    static MapVerdict bad(std::string rule, std::vector<int> w) {
        return {false, std::move(rule), std::move(w)};
    }
};

// (H1)-(H4) on a raw pair list, so adversarial maps are checkable too.
inline MapVerdict check_script_h(const std::map<int, int>& h, const BlockContext& ctx) {
    std::map<int, int> seen_img;
    for (auto [u, x] : h) {
        if (u < 0 || u > ctx.s || x < 0 || x > ctx.s_star)
            return MapVerdict::bad("H1", {u, x}); // outside the universes
        auto [it, fresh] = seen_img.emplace(x, u);
        if (!fresh) return MapVerdict::bad("H1", {it->second, u, x});
    }
    auto it0 = h.find(0);
    if (it0 == h.end() || it0->second != 0) return MapVerdict::bad("H2", {});
    for (auto [u, x] : h) {
        if (u == 0) continue;
        int b = ctx.block_of(u);
        if (b == 0) {
            if (x != ctx.t_map(u)) return MapVerdict::bad("H3", {u, x});
        } else if (x < ctx.star_blocks[b].first || x > ctx.star_blocks[b].second) {
            return MapVerdict::bad("H4", {u, x});
        }
    }
    return {};
}

inline MapVerdict check_script_h(const PartialInj& h, const BlockContext& ctx) {
    return check_script_h(h.pairs(), ctx);
}

// full condition check: both maps in the family, (C1), (C2), and the size
// bound |Dom(h)| <= 3|Dom(g)| - 2
inline MapVerdict check_condition(const Condition& p, const BlockContext& ctx,
                                  const RefStructure& star) {
    MapVerdict v = check_script_h(p.g, ctx);
    if (!v.ok) return v;
    v = check_script_h(p.h, ctx);
    if (!v.ok) return v;
    if (!p.g.subset_of(p.h)) return MapVerdict::bad("C1", {});
    std::set<int> want = p.g.image();
    for (int x : boundary(p.g.image(), star)) want.insert(x);
    if (p.h.image() != want) return MapVerdict::bad("C2", {});
    if (p.h.dom_size() > 3 * p.g.dom_size() - 2)
        return MapVerdict::bad("sizeh",
                               {static_cast<int>(p.g.dom_size()), static_cast<int>(p.h.dom_size())});
    return {};
}

struct PreservationReport {
    bool ok = true;
    int item = 0; // 1..3, first violated
    std::vector<int> witness;
};

// For u, v in Dom(h) minus zero: images avoid 0, and the full-tree children
// of images pull back below v.
inline PreservationReport claim_preservation(const PartialInj& h, int u, int v,
                                             const RefStructure& star) {
    if (!h.contains_dom(u) || !h.contains_dom(v) || u == 0 || v == 0)
        throw std::invalid_argument("claim_preservation: u, v must be in Dom(h) minus 0");
    if (h.at(u) == 0 || h.at(v) == 0) return {false, 1, {u, v}};
    int lv = star.l[h.at(v)];
    if (h.contains_img(lv) && !(h.inv_at(lv) < v)) return {false, 2, {v, lv, h.inv_at(lv)}};
    int rv = star.r[h.at(v)];
    if (h.contains_img(rv) && !(h.inv_at(rv) < v)) return {false, 3, {v, rv, h.inv_at(rv)}};
    return {};
}

// The partial assignment alpha(p) over the REF(F,s) variables: D, V, I rows
// are pulled back from the full-tree assignment through g; the L and R rows
// point at the h-preimages of the full-tree children.
inline Assignment condition_assignment(const Condition& p, const Cnf& f, const BlockContext& ctx,
                                       const RefStructure& star) {
    Dims d{f.num_vars(), static_cast<int>(f.clause_count()), ctx.s};
    Assignment a(static_cast<int>(ref_var_count(d)));
    for (auto [u, gu] : p.g.pairs()) {
        if (u == 0) continue;
        for (int i = 1; i <= d.n; ++i)
            for (int b = 0; b <= 1; ++b)
                a.set(var_id({VarKind::D, u, i, b}, d), star.has_d(gu, i, b));
        for (int i = 0; i <= d.n; ++i) a.set(var_id({VarKind::V, u, i}, d), star.v[gu] == i);
        for (int j = 0; j <= d.m; ++j) a.set(var_id({VarKind::I, u, j}, d), star.i[gu] == j);
        int lstar = star.l[gu], rstar = star.r[gu];
        if (!p.h.contains_img(lstar) || !p.h.contains_img(rstar))
            throw std::logic_error("alpha(p): boundary image missing from h");
        int lv = p.h.inv_at(lstar), rv = p.h.inv_at(rstar);
        for (int v = 0; v <= ctx.s; ++v) a.set(var_id({VarKind::L, u, v}, d), v == lv);
        for (int v = 0; v <= ctx.s; ++v) a.set(var_id({VarKind::R, u, v}, d), v == rv);
    }
    return a;
}

// p restricted to I: keep g on I plus zero, then shrink h to the image
// demanded by (C2).
inline Condition restrict_condition(const Condition& p, const std::set<int>& keep,
                                    const RefStructure& star) {
    Condition out;
    for (auto [u, gu] : p.g.pairs())
        if (u == 0 || keep.count(u)) out.g.insert(u, gu);
    std::set<int> want = out.g.image();
    for (int x : boundary(out.g.image(), star)) want.insert(x);
    for (auto [u, hu] : p.h.pairs())
        if (want.count(hu)) out.h.insert(u, hu);
    return out;
}

// One extension step: put u into Dom(g), landing on t(u) in block 0 or on
// the smallest free slot of the matching star block, then supply h with
// preimages for the two new boundary values. Needs |Dom(g)| <= w headroom.
inline Condition extend_condition(const Condition& p, int u, const BlockContext& ctx,
                                  const RefStructure& star) {
    if (u < 1 || u > ctx.s) throw std::invalid_argument("extend: u outside [s]");
    if (p.g.contains_dom(u)) return p;
    if (p.g.dom_size() > static_cast<size_t>(ctx.w))
        throw CapacityError("extend: |Dom(g)| exceeds the width budget");

    Condition out = p;
    int u_img;
    if (p.h.contains_dom(u)) {
        u_img = p.h.at(u); // forced by (C1): g' must stay inside h'
    } else if (ctx.block_of(u) == 0) {
        u_img = ctx.t_map(u);
        if (p.h.contains_img(u_img))
            throw std::logic_error("extend: t(u) taken although u is fresh");
    } else {
        int bi = ctx.block_of(u);
        u_img = 0;
        for (int x = ctx.star_blocks[bi].first; x <= ctx.star_blocks[bi].second; ++x)
            if (!p.h.contains_img(x)) {
                u_img = x;
                break;
            }
        if (u_img == 0) throw CapacityError("extend: star block exhausted");
    }
    out.g.insert(u, u_img);
    if (!out.h.contains_dom(u)) out.h.insert(u, u_img);

    for (int child : {star.l[u_img], star.r[u_img]}) {
        if (out.h.contains_img(child)) continue; // includes the leaf case, child = 0
        int bi = ctx.star_block_of(child);
        int pre;
        if (bi == 0) {
            pre = ctx.t_inv(child);
            if (out.h.contains_dom(pre))
                throw std::logic_error("extend: t-preimage taken for a fresh child");
        } else {
            pre = 0;
            for (int x = ctx.blocks[bi].first; x <= ctx.blocks[bi].second; ++x)
                if (!out.h.contains_dom(x)) {
                    pre = x;
                    break;
                }
            if (pre == 0) throw CapacityError("extend: block exhausted for boundary preimage");
        }
        out.h.insert(pre, child);
    }
    return out;
}

inline std::set<int> mentioned_indices(std::span<const int> clause, const Dims& d) {
    std::set<int> out;
    for (int l : clause) out.insert(var_of_id(lit_var(l), d).u);
    return out;
}

// ---------------------------------------------------------------------------
// the audit: replay the earliest-falsified-clause walk over an alleged
// narrow refutation of REF(F,s)
// ---------------------------------------------------------------------------

struct AuditReport {
    enum class Outcome : uint8_t {
        Contradiction,       // an axiom step was pinned: no genuine proof does this
        Stuck,               // the walk could not continue: malformed input
        RegimeViolation,     // parameter regime does not hold
        PreconditionFailure, // input shape broken (satisfiable F, widths, last line)
    };
    Outcome outcome = Outcome::Stuck;
    size_t line = 0;
    std::string detail;
    std::vector<std::string> steps;
};

struct AuditOptions {
    bool force = false; // attempt the walk even if regime or width checks fail
};

inline AuditReport audit_refutation(const Cnf& f, int s, int w, const Proof& proof,
                                    AuditOptions opt = {}) {
    AuditReport rep;
    const Dims d{f.num_vars(), static_cast<int>(f.clause_count()), s};

    auto star_or_model = full_tree(f);
    if (std::holds_alternative<Assignment>(star_or_model)) {
        rep.outcome = AuditReport::Outcome::PreconditionFailure;
        rep.detail = "F is satisfiable; the walk needs the full-tree refutation";
        return rep;
    }
    const RefStructure& star = std::get<RefStructure>(star_or_model);

    BlockContext ctx;
    try {
        ctx = BlockContext::make(d.n, w, s, /*enforce_regime=*/!opt.force);
    } catch (const RegimeError& e) {
        rep.outcome = AuditReport::Outcome::RegimeViolation;
        rep.detail = e.what();
        return rep;
    }

    if (proof.empty() || !proof.line(proof.length()).clause.empty()) {
        rep.outcome = AuditReport::Outcome::PreconditionFailure;
        rep.detail = "proof must end with the empty clause";
        return rep;
    }
    if (!opt.force)
        for (size_t u = 1; u <= proof.length(); ++u)
            if (index_width(proof.line(u).clause.lits(), d) >= w) {
                rep.outcome = AuditReport::Outcome::PreconditionFailure;
                rep.line = u;
                rep.detail = "line has index-width >= w";
                return rep;
            }

    IndexedCnf premises = encode_ref(f, s);
    auto falsified = [&](const Clause& c, const Assignment& a) {
        return restrict_clause(c, a).status == ClauseStatus::Falsified;
    };

    size_t cur = proof.length();
    Condition p = condition_root();
    for (;;) {
        const ProofLine& ln = proof.line(cur);
        Assignment alpha = condition_assignment(p, f, ctx, star);
        if (!falsified(ln.clause, alpha)) {
            rep.outcome = AuditReport::Outcome::Stuck;
            rep.line = cur;
            rep.detail = "walk invariant lost: current clause not falsified";
            return rep;
        }
        if (ln.just.kind == Justification::Kind::Axiom) {
            rep.outcome = AuditReport::Outcome::Contradiction;
            rep.line = cur;
            int j = ln.just.axiom;
            if (j < 1 || static_cast<size_t>(j) > premises.cnf.clause_count()) {
                rep.detail = "axiom step names no clause of REF(F,s)";
            } else if (!premises.cnf.clause_at(static_cast<size_t>(j) - 1).subset_of(ln.clause)) {
                rep.detail = "axiom step is no weakening of its premise";
            } else {
                rep.detail = "a condition falsifies a premise weakening, which "
                             "axiom-consistency rules out";
            }
            rep.steps.push_back("line " + std::to_string(cur) + ": axiom step pinned");
            return rep;
        }

        int v = ln.just.pos_parent, w2 = ln.just.neg_parent, x = ln.just.pivot;
        if (v < 1 || w2 < 1 || static_cast<size_t>(v) >= cur || static_cast<size_t>(w2) >= cur ||
            x < 1 || x > ref_var_count(d)) {
            rep.outcome = AuditReport::Outcome::Stuck;
            rep.line = cur;
            rep.detail = "malformed resolvent justification";
            return rep;
        }
        int pivot_index = var_of_id(x, d).u;
        Condition ext;
        try {
            ext = extend_condition(p, pivot_index, ctx, star);
        } catch (const CapacityError& e) {
            rep.outcome = AuditReport::Outcome::Stuck;
            rep.line = cur;
            rep.detail = std::string("extension failed: ") + e.what();
            return rep;
        }
        Assignment alpha_ext = condition_assignment(ext, f, ctx, star);
        if (!alpha_ext.defined(x) || !falsified(ln.clause, alpha_ext)) {
            rep.outcome = AuditReport::Outcome::Stuck;
            rep.line = cur;
            rep.detail = "extension did not pin the pivot";
            return rep;
        }
        size_t parent = alpha_ext.value(x) ? static_cast<size_t>(w2) : static_cast<size_t>(v);
        const Clause& pc = proof.line(parent).clause;
        if (!falsified(pc, alpha_ext)) {
            rep.outcome = AuditReport::Outcome::Stuck;
            rep.line = cur;
            rep.detail = "no parent falsified: the resolvent claim is not genuine";
            return rep;
        }
        Condition next = restrict_condition(ext, mentioned_indices(pc.lits(), d), star);
        if (next.g.dom_size() > static_cast<size_t>(w) + 1) {
            rep.outcome = AuditReport::Outcome::Stuck;
            rep.line = cur;
            rep.detail = "restriction left too wide a condition";
            return rep;
        }
        rep.steps.push_back("line " + std::to_string(cur) + " -> parent " +
                            std::to_string(parent) + " via index " +
                            std::to_string(pivot_index));
        cur = parent;
        p = std::move(next);
    }
}

// ---------------------------------------------------------------------------
// randomized claim suites
// ---------------------------------------------------------------------------

// all full clauses over min(n, 3) of the n variables: a small canonical
// unsatisfiable input with some clause variety
inline Cnf canonical_unsat_cnf(int n) {
    if (n < 1) throw std::invalid_argument("canonical_unsat_cnf: n >= 1");
    int q = std::min(n, 3);
    Cnf f(n);
    for (int bits = 0; bits < (1 << q); ++bits) {
        std::vector<int> lits;
        for (int i = 1; i <= q; ++i) lits.push_back(make_lit(i, (bits >> (i - 1)) & 1));
        f.add_clause(std::span<const int>(lits));
    }
    return f;
}

// uniform sample from one clause family of REF(F,s)
inline Clause sample_ref_clause(Family fam, const Dims& d, const Cnf& f, SplitMix64& rng) {
    auto U = [&] { return 1 + static_cast<int>(rng.below(d.s)); };
    auto id = [&](VarKind k, int u, int a = 0, int b = 0) { return var_id({k, u, a, b}, d); };
    auto pair_below = [&](int top) { // two distinct values in 0..top
        int x = static_cast<int>(rng.below(top + 1));
        int y = static_cast<int>(rng.below(top));
        if (y >= x) ++y;
        return std::pair{std::min(x, y), std::max(x, y)};
    };
    std::vector<int> l;
    int u = U();
    switch (fam) {
    case Family::A1:
        for (int i = 0; i <= d.n; ++i) l.push_back(id(VarKind::V, u, i));
        break;
    case Family::A2:
        for (int j = 0; j <= d.m; ++j) l.push_back(id(VarKind::I, u, j));
        break;
    case Family::A3:
        for (int v = 0; v <= d.s; ++v) l.push_back(id(VarKind::L, u, v));
        break;
    case Family::A4:
        for (int v = 0; v <= d.s; ++v) l.push_back(id(VarKind::R, u, v));
        break;
    case Family::A5: {
        auto [i, i2] = pair_below(d.n);
        l = {-id(VarKind::V, u, i), -id(VarKind::V, u, i2)};
        break;
    }
    case Family::A6: {
        auto [j, j2] = pair_below(d.m);
        l = {-id(VarKind::I, u, j), -id(VarKind::I, u, j2)};
        break;
    }
    case Family::A7: {
        auto [v, v2] = pair_below(d.s);
        l = {-id(VarKind::L, u, v), -id(VarKind::L, u, v2)};
        break;
    }
    case Family::A8: {
        auto [v, v2] = pair_below(d.s);
        l = {-id(VarKind::R, u, v), -id(VarKind::R, u, v2)};
        break;
    }
    case Family::A9: l = {-id(VarKind::I, u, 0), -id(VarKind::V, u, 0)}; break;
    case Family::A10: l = {id(VarKind::I, u, 0), id(VarKind::V, u, 0)}; break;
    case Family::A11: l = {-id(VarKind::I, u, 0), -id(VarKind::L, u, 0)}; break;
    case Family::A12: l = {-id(VarKind::I, u, 0), -id(VarKind::R, u, 0)}; break;
    case Family::A13: {
        int v = u + static_cast<int>(rng.below(d.s - u + 1));
        l = {-id(VarKind::L, u, v)};
        break;
    }
    case Family::A14: {
        int v = u + static_cast<int>(rng.below(d.s - u + 1));
        l = {-id(VarKind::R, u, v)};
        break;
    }
    case Family::A15: {
        int v = U(), i = 1 + static_cast<int>(rng.below(d.n));
        l = {-id(VarKind::L, u, v), -id(VarKind::V, u, i), id(VarKind::D, v, i, 0)};
        break;
    }
    case Family::A16: {
        int v = U(), i = 1 + static_cast<int>(rng.below(d.n));
        l = {-id(VarKind::R, u, v), -id(VarKind::V, u, i), id(VarKind::D, v, i, 1)};
        break;
    }
    case Family::A17:
    case Family::A18: {
        int v = U(), i = 1 + static_cast<int>(rng.below(d.n));
        int i2 = 1 + static_cast<int>(rng.below(d.n - 1));
        if (i2 >= i) ++i2;
        int b = rng.coin() ? 1 : 0;
        VarKind lr = fam == Family::A17 ? VarKind::L : VarKind::R;
        l = {-id(lr, u, v), -id(VarKind::V, u, i), -id(VarKind::D, v, i2, b),
             id(VarKind::D, u, i2, b)};
        break;
    }
    case Family::A19: {
        uint64_t r = f.size();
        uint64_t pos = rng.below(r);
        size_t j = 0;
        while (pos >= f.clause(j).size()) {
            pos -= f.clause(j).size();
            ++j;
        }
        int lit = f.clause(j)[pos];
        l = {-id(VarKind::I, u, static_cast<int>(j) + 1),
             id(VarKind::D, u, lit_var(lit), lit_sign(lit) ? 1 : 0)};
        break;
    }
    case Family::A20: {
        int i = 1 + static_cast<int>(rng.below(d.n));
        l = {-id(VarKind::D, u, i, 0), -id(VarKind::D, u, i, 1)};
        break;
    }
    case Family::A21: {
        int i = 1 + static_cast<int>(rng.below(d.n));
        l = {-id(VarKind::D, d.s, i, rng.coin() ? 1 : 0)};
        break;
    }
    default: throw std::invalid_argument("sample_ref_clause: REF has families A1..A21");
    }
    return Clause(std::move(l));
}

struct ClaimsConfig {
    int n = 0, w = 0, s = 0;
    int trials = 1000;
    uint64_t seed = 0;
    int jobs = 1;
    int clauses_per_family = 1; // axiom-consistency samples per family per trial
};

struct ClaimsResult {
    struct Counter {
        uint64_t checks = 0, violations = 0;
        void merge(const Counter& o) {
            checks += o.checks;
            violations += o.violations;
        }
    };
    Counter preservation;       // items 1-3 on every pair of Dom(h)
    Counter restriction;        // restriction closure and sub-assignment
    Counter extension;          // extension feasibility and validity
    Counter axiom_consistency;  // no clause of REF gets falsified
    Counter size_bound;         // |Dom(h)| <= 3|Dom(g)| - 2 along the way
    Counter monotone;           // alpha grows along extension chains
    std::array<uint64_t, 25> family_checks{};
    int trials = 0;

    bool ok() const {
        return preservation.violations == 0 && restriction.violations == 0 &&
               extension.violations == 0 && axiom_consistency.violations == 0 &&
               size_bound.violations == 0 && monotone.violations == 0;
    }
    void merge(const ClaimsResult& o) {
        preservation.merge(o.preservation);
        restriction.merge(o.restriction);
        extension.merge(o.extension);
        axiom_consistency.merge(o.axiom_consistency);
        size_bound.merge(o.size_bound);
        monotone.merge(o.monotone);
        for (size_t i = 0; i < family_checks.size(); ++i) family_checks[i] += o.family_checks[i];
        trials += o.trials;
    }
};

namespace detail {

inline void claims_trial(const ClaimsConfig& cfg, const Cnf& f, const BlockContext& ctx,
                         const RefStructure& star, uint64_t trial, ClaimsResult& out) {
    SplitMix64 rng(SplitMix64::derive(cfg.seed, trial));
    Dims d{ctx.n, static_cast<int>(f.clause_count()), ctx.s};

    // random extension chain from the root, length <= w
    Condition p = condition_root();
    Assignment prev_alpha = condition_assignment(p, f, ctx, star);
    int len = static_cast<int>(rng.below(static_cast<uint64_t>(ctx.w) + 1));
    for (int step = 0; step < len; ++step) {
        int u;
        do
            u = 1 + static_cast<int>(rng.below(ctx.s));
        while (p.g.contains_dom(u));
        ++out.extension.checks;
        Condition np;
        try {
            np = extend_condition(p, u, ctx, star);
        } catch (const std::exception&) {
            ++out.extension.violations;
            break;
        }
        MapVerdict mv = check_condition(np, ctx, star);
        if (!mv.ok || !np.g.contains_dom(u)) ++out.extension.violations;
        ++out.size_bound.checks;
        if (np.h.dom_size() > 3 * np.g.dom_size() - 2) ++out.size_bound.violations;
        Assignment na = condition_assignment(np, f, ctx, star);
        ++out.monotone.checks;
        if (!prev_alpha.subset_of(na)) ++out.monotone.violations;
        p = std::move(np);
        prev_alpha = std::move(na);
    }
    const Assignment alpha = std::move(prev_alpha);

    // claim: preservation, all pairs over Dom(h) minus zero
    std::vector<int> dom_h;
    for (auto [u, x] : p.h.pairs())
        if (u != 0) dom_h.push_back(u);
    for (int u : dom_h)
        for (int v : dom_h) {
            ++out.preservation.checks;
            if (!claim_preservation(p.h, u, v, star).ok) ++out.preservation.violations;
        }

    // claim: restriction to a random set stays a condition below alpha
    std::set<int> keep;
    int ksz = static_cast<int>(rng.below(static_cast<uint64_t>(ctx.w) + 2));
    for (int i = 0; i < ksz; ++i) keep.insert(1 + static_cast<int>(rng.below(ctx.s)));
    Condition q = restrict_condition(p, keep, star);
    ++out.restriction.checks;
    if (!check_condition(q, ctx, star).ok ||
        !condition_assignment(q, f, ctx, star).subset_of(alpha))
        ++out.restriction.violations;

    // claim: axiom consistency, sampled clauses of every family
    std::vector<int> buf;
    for (int fam = 1; fam <= 21; ++fam)
        for (int rep = 0; rep < cfg.clauses_per_family; ++rep) {
            Clause c = sample_ref_clause(static_cast<Family>(fam), d, f, rng);
            ++out.axiom_consistency.checks;
            ++out.family_checks[fam];
            if (restrict_span(c.lits(), alpha, &buf) == ClauseStatus::Falsified)
                ++out.axiom_consistency.violations;
        }
}

} // namespace detail

inline ClaimsResult run_claims(const ClaimsConfig& cfg) {
    Cnf f = canonical_unsat_cnf(cfg.n);
    BlockContext ctx = BlockContext::make(cfg.n, cfg.w, cfg.s);
    auto star_or_model = full_tree(f);
    const RefStructure& star = std::get<RefStructure>(star_or_model);

    int jobs = std::max(1, cfg.jobs);
    std::vector<ClaimsResult> partial(static_cast<size_t>(jobs));
    auto work = [&](int worker) {
        for (uint64_t t = worker; t < static_cast<uint64_t>(cfg.trials); t += jobs)
            detail::claims_trial(cfg, f, ctx, star, t, partial[worker]);
        partial[worker].trials = 0;
    };
    if (jobs == 1) {
        work(0);
    } else {
        std::vector<std::thread> threads;
        for (int i = 0; i < jobs; ++i) threads.emplace_back(work, i);
        for (auto& th : threads) th.join();
    }
    ClaimsResult total;
    for (auto& pr : partial) total.merge(pr);
    total.trials = cfg.trials;
    return total;
}

} // namespace refgap
