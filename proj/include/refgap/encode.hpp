#pragma once

#include <array>
#include <cassert>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "refgap/cnf.hpp"

namespace refgap {

// Structured variables of the REF/RREF encodings. `a` holds the second
// index (i, j or v depending on kind); `b` is the polarity slot of D.
enum class VarKind : uint8_t { D, V, I, L, R, P };

struct RefVar {
    VarKind kind;
    int u = 0;
    int a = 0;
    int b = 0;

    bool operator==(const RefVar&) const = default;
};

struct Dims {
    int n = 0; // variables of F
    int m = 0; // clauses of F
    int s = 0; // ambient line-index bound

    bool operator==(const Dims&) const = default;
};

inline int64_t ref_var_count(const Dims& d) {
    int64_t n = d.n, m = d.m, s = d.s;
    return 2 * n * s + s * (n + 1) + s * (m + 1) + 2 * s * (s + 1);
}

inline int64_t rref_var_count(const Dims& d) { return ref_var_count(d) + d.s; }

// Deterministic numbering, blocks in order D, V, I, L, R, P; lexicographic
// by (u, second index, b) within a block. These closed forms are normative
// for all DIMACS output.
inline int var_id(const RefVar& v, const Dims& d) {
    int64_t n = d.n, m = d.m, s = d.s;
    int64_t id = 0;
    switch (v.kind) {
    case VarKind::D:
        if (v.u < 1 || v.u > s || v.a < 1 || v.a > n || v.b < 0 || v.b > 1)
            throw std::out_of_range("var_id: D index out of range");
        id = 2 * n * (v.u - 1) + 2 * (v.a - 1) + v.b + 1;
        break;
    case VarKind::V:
        if (v.u < 1 || v.u > s || v.a < 0 || v.a > n)
            throw std::out_of_range("var_id: V index out of range");
        id = 2 * n * s + (n + 1) * (v.u - 1) + v.a + 1;
        break;
    case VarKind::I:
        if (v.u < 1 || v.u > s || v.a < 0 || v.a > m)
            throw std::out_of_range("var_id: I index out of range");
        id = 2 * n * s + s * (n + 1) + (m + 1) * (v.u - 1) + v.a + 1;
        break;
    case VarKind::L:
        if (v.u < 1 || v.u > s || v.a < 0 || v.a > s)
            throw std::out_of_range("var_id: L index out of range");
        id = 2 * n * s + s * (n + 1) + s * (m + 1) + (s + 1) * (v.u - 1) + v.a + 1;
        break;
    case VarKind::R:
        if (v.u < 1 || v.u > s || v.a < 0 || v.a > s)
            throw std::out_of_range("var_id: R index out of range");
        id = 2 * n * s + s * (n + 1) + s * (m + 1) + s * (s + 1) + (s + 1) * (v.u - 1) + v.a + 1;
        break;
    case VarKind::P:
        if (v.u < 1 || v.u > s) throw std::out_of_range("var_id: P index out of range");
        id = ref_var_count(d) + v.u;
        break;
    }
    return static_cast<int>(id);
}

inline RefVar var_of_id(int64_t id, const Dims& d) {
    int64_t n = d.n, m = d.m, s = d.s;
    int64_t x = id - 1;
    if (x < 0) throw std::out_of_range("var_of_id: nonpositive id");
    if (x < 2 * n * s)
        return {VarKind::D, static_cast<int>(x / (2 * n)) + 1,
                static_cast<int>(x % (2 * n) / 2) + 1, static_cast<int>(x % 2)};
    x -= 2 * n * s;
    if (x < s * (n + 1))
        return {VarKind::V, static_cast<int>(x / (n + 1)) + 1, static_cast<int>(x % (n + 1)), 0};
    x -= s * (n + 1);
    if (x < s * (m + 1))
        return {VarKind::I, static_cast<int>(x / (m + 1)) + 1, static_cast<int>(x % (m + 1)), 0};
    x -= s * (m + 1);
    if (x < s * (s + 1))
        return {VarKind::L, static_cast<int>(x / (s + 1)) + 1, static_cast<int>(x % (s + 1)), 0};
    x -= s * (s + 1);
    if (x < s * (s + 1))
        return {VarKind::R, static_cast<int>(x / (s + 1)) + 1, static_cast<int>(x % (s + 1)), 0};
    x -= s * (s + 1);
    if (x < s) return {VarKind::P, static_cast<int>(x) + 1, 0, 0};
    throw std::out_of_range("var_of_id: id beyond RREF universe");
}

inline std::string var_name(const RefVar& v) {
    switch (v.kind) {
    case VarKind::D:
        return "D[" + std::to_string(v.u) + ',' + std::to_string(v.a) + ',' +
               std::to_string(v.b) + ']';
    case VarKind::V: return "V[" + std::to_string(v.u) + ',' + std::to_string(v.a) + ']';
    case VarKind::I: return "I[" + std::to_string(v.u) + ',' + std::to_string(v.a) + ']';
    case VarKind::L: return "L[" + std::to_string(v.u) + ',' + std::to_string(v.a) + ']';
    case VarKind::R: return "R[" + std::to_string(v.u) + ',' + std::to_string(v.a) + ']';
    case VarKind::P: return "P[" + std::to_string(v.u) + ']';
    }
    return "?";
}

inline RefVar parse_var_name(std::string_view s) {
    auto fail = [&] { throw std::invalid_argument("bad variable name: " + std::string(s)); };
    if (s.size() < 4 || s[1] != '[' || s.back() != ']') fail();
    VarKind k;
    switch (s[0]) {
    case 'D': k = VarKind::D; break;
    case 'V': k = VarKind::V; break;
    case 'I': k = VarKind::I; break;
    case 'L': k = VarKind::L; break;
    case 'R': k = VarKind::R; break;
    case 'P': k = VarKind::P; break;
    default: fail(); return {};
    }
    std::string body(s.substr(2, s.size() - 3));
    std::array<int, 3> idx{0, 0, 0};
    size_t want = k == VarKind::D ? 3 : k == VarKind::P ? 1 : 2;
    size_t pos = 0;
    for (size_t f = 0; f < want; ++f) {
        size_t comma = body.find(',', pos);
        std::string tok = body.substr(pos, comma == std::string::npos ? comma : comma - pos);
        if (tok.empty()) fail();
        idx[f] = std::stoi(tok);
        if (comma == std::string::npos) {
            if (f + 1 != want) fail();
            pos = body.size();
        } else {
            pos = comma + 1;
        }
    }
    if (pos != body.size() && pos != body.size() + 1) fail();
    return {k, idx[0], idx[1], idx[2]};
}

// The index u is mentioned by D[u,..], V[u,..], I[u,..], L[u,v], R[u,v] and
// P[u]; v is not mentioned by L[u,v] or R[u,v].
inline int mentioned_index(const RefVar& v) { return v.u; }

inline int index_width(std::span<const int> clause, const Dims& d) {
    std::vector<int> us;
    us.reserve(clause.size());
    for (int l : clause) us.push_back(var_of_id(lit_var(l), d).u);
    std::sort(us.begin(), us.end());
    us.erase(std::unique(us.begin(), us.end()), us.end());
    return static_cast<int>(us.size());
}

enum class Family : uint8_t {
    A1 = 1, A2, A3, A4, A5, A6, A7, A8, A9, A10, A11, A12,
    A13, A14, A15, A16, A17, A18, A19, A20, A21, A22, A23, A24,
};

inline std::string family_name(Family f) { return "A" + std::to_string(static_cast<int>(f)); }

struct IndexedCnf {
    Cnf cnf;
    std::vector<uint8_t> tags; // Family per clause, parallel to cnf
    Dims dims;
    bool relativized = false;
    bool with_a7a8 = true;
    std::vector<int> index_set; // empty = contiguous [1..dims.s]

    Family tag(size_t i) const { return static_cast<Family>(tags[i]); }
    const std::vector<int>& indices() const { return index_set; }
};

// Clause ordinals (1-based positions in the emitted formula) for contiguous
// encodings. The generator and this table share one emission order; the
// witness construction relies on it to address premises without holding the
// whole formula.
struct Layout {
    Dims dims;
    bool relativized = false;
    bool with_a7a8 = true;
    std::array<uint64_t, 26> off{}; // off[family] = 0-based start ordinal
    std::vector<uint64_t> cj_prefix; // prefix sums of |C_j|

    Layout() = default;
    Layout(const Cnf& f, int s, bool relativized_, bool with_a7a8_)
        : dims{f.num_vars(), static_cast<int>(f.clause_count()), s}, relativized(relativized_),
          with_a7a8(with_a7a8_) {
        if (s < 1) throw std::invalid_argument("encode: s must be >= 1");
        if (dims.n < 1 || dims.m < 1)
            throw std::invalid_argument("encode: F needs n >= 1 and m >= 1");
        for (size_t j = 0; j < f.clause_count(); ++j)
            if (f.clause_at(j).tautological())
                throw std::invalid_argument("encode: clause " + std::to_string(j + 1) +
                                            " of F is tautological");
        cj_prefix.assign(f.clause_count() + 1, 0);
        for (size_t j = 0; j < f.clause_count(); ++j)
            cj_prefix[j + 1] = cj_prefix[j] + f.clause(j).size();

        uint64_t n = dims.n, m = dims.m, su = s;
        uint64_t r = cj_prefix.back();
        uint64_t counts[25] = {};
        counts[1] = counts[2] = counts[3] = counts[4] = su;
        counts[5] = su * ((n + 1) * n / 2);
        counts[6] = su * ((m + 1) * m / 2);
        counts[7] = counts[8] = with_a7a8 ? su * ((su + 1) * su / 2) : 0;
        counts[9] = counts[10] = counts[11] = counts[12] = su;
        counts[13] = counts[14] = su * (su + 1) / 2;
        counts[15] = counts[16] = su * su * n;
        counts[17] = counts[18] = su * su * n * (n - 1) * 2;
        counts[19] = su * r;
        counts[20] = su * n;
        counts[21] = 2 * n;
        counts[22] = counts[23] = relativized ? su * su : 0;
        counts[24] = relativized ? 1 : 0;
        uint64_t acc = 0;
        for (int fam = 1; fam <= 24; ++fam) {
            off[fam] = acc;
            acc += counts[fam];
        }
        off[25] = acc;
    }

    uint64_t clause_count() const { return off[25]; }
    uint64_t family_count(Family f) const {
        int i = static_cast<int>(f);
        return off[i + 1] - off[i];
    }

    uint64_t a1(int u) const { return off[1] + u; }
    uint64_t a2(int u) const { return off[2] + u; }
    uint64_t a3(int u) const { return off[3] + u; }
    uint64_t a4(int u) const { return off[4] + u; }
    // pairs x < y over {0..K-1}, lexicographic
    static uint64_t pair_rank(int x, int y, int k) {
        return static_cast<uint64_t>(x) * (k - 1) - static_cast<uint64_t>(x) * (x - 1) / 2 +
               (y - x - 1);
    }
    uint64_t a5(int u, int i, int i2) const {
        uint64_t per = static_cast<uint64_t>(dims.n + 1) * dims.n / 2;
        return off[5] + (u - 1) * per + pair_rank(i, i2, dims.n + 1) + 1;
    }
    uint64_t a6(int u, int j, int j2) const {
        uint64_t per = static_cast<uint64_t>(dims.m + 1) * dims.m / 2;
        return off[6] + (u - 1) * per + pair_rank(j, j2, dims.m + 1) + 1;
    }
    uint64_t a7(int u, int v, int v2) const {
        uint64_t per = static_cast<uint64_t>(dims.s + 1) * dims.s / 2;
        return off[7] + (u - 1) * per + pair_rank(v, v2, dims.s + 1) + 1;
    }
    uint64_t a8(int u, int v, int v2) const {
        uint64_t per = static_cast<uint64_t>(dims.s + 1) * dims.s / 2;
        return off[8] + (u - 1) * per + pair_rank(v, v2, dims.s + 1) + 1;
    }
    uint64_t a9(int u) const { return off[9] + u; }
    uint64_t a10(int u) const { return off[10] + u; }
    uint64_t a11(int u) const { return off[11] + u; }
    uint64_t a12(int u) const { return off[12] + u; }
    // (u, v) with u <= v <= s, lexicographic
    uint64_t a13(int u, int v) const {
        uint64_t s = dims.s;
        uint64_t before = static_cast<uint64_t>(u - 1) * (s + 1) -
                          static_cast<uint64_t>(u - 1) * u / 2;
        return off[13] + before + (v - u) + 1;
    }
    uint64_t a14(int u, int v) const { return off[14] + a13(u, v) - off[13]; }
    uint64_t a15(int u, int v, int i) const {
        return off[15] +
               (static_cast<uint64_t>(u - 1) * dims.s + (v - 1)) * dims.n + (i - 1) + 1;
    }
    uint64_t a16(int u, int v, int i) const { return off[16] + a15(u, v, i) - off[15]; }
    uint64_t a17(int u, int v, int i, int i2, int b) const {
        uint64_t ir = static_cast<uint64_t>(i2 - 1) - (i2 > i ? 1 : 0);
        uint64_t base =
            ((static_cast<uint64_t>(u - 1) * dims.s + (v - 1)) * dims.n + (i - 1)) *
                (dims.n - 1) +
            ir;
        return off[17] + base * 2 + b + 1;
    }
    uint64_t a18(int u, int v, int i, int i2, int b) const {
        return off[18] + a17(u, v, i, i2, b) - off[17];
    }
    // pos = 0-based position of the literal in the canonical order of C_j
    uint64_t a19(int u, int j, int pos) const {
        return off[19] + static_cast<uint64_t>(u - 1) * cj_prefix.back() + cj_prefix[j - 1] +
               pos + 1;
    }
    uint64_t a20(int u, int i) const {
        return off[20] + static_cast<uint64_t>(u - 1) * dims.n + (i - 1) + 1;
    }
    uint64_t a21(int i, int b) const { return off[21] + static_cast<uint64_t>(i - 1) * 2 + b + 1; }
    uint64_t a22(int u, int v) const {
        return off[22] + static_cast<uint64_t>(u - 1) * dims.s + (v - 1) + 1;
    }
    uint64_t a23(int u, int v) const { return off[23] + a22(u, v) - off[22]; }
    uint64_t a24() const { return off[24] + 1; }
};

namespace detail {

class RefGenerator {
public:
    RefGenerator(const Cnf& f, std::vector<int> index_set, int t, bool relativized,
                 bool with_a7a8)
        : f_(f), a_(std::move(index_set)), relativized_(relativized), with_a7a8_(with_a7a8) {
        if (a_.empty()) throw std::invalid_argument("encode: empty index set");
        for (size_t i = 0; i + 1 < a_.size(); ++i)
            if (a_[i] >= a_[i + 1])
                throw std::invalid_argument("encode: index set must be strictly ascending");
        if (a_.front() < 1 || a_.back() > t)
            throw std::invalid_argument("encode: index set not within [1..t]");
        dims_ = {f.num_vars(), static_cast<int>(f.clause_count()), t};
        layout_ = Layout(f, t, relativized, with_a7a8); // validates F, n, m, s
        contiguous_ = static_cast<int>(a_.size()) == t;
    }

    IndexedCnf run() {
        IndexedCnf out;
        out.dims = dims_;
        out.relativized = relativized_;
        out.with_a7a8 = with_a7a8_;
        if (!contiguous_) out.index_set = a_;
        int64_t nv = relativized_ ? rref_var_count(dims_) : ref_var_count(dims_);
        out.cnf.set_num_vars(static_cast<int>(nv));
        if (contiguous_) out.cnf.reserve(layout_.clause_count(), layout_.clause_count() * 5);
        c_ = &out.cnf;
        tags_ = &out.tags;
        emit_all();
        c_ = nullptr;
        tags_ = nullptr;
        if (contiguous_) assert(out.cnf.clause_count() == layout_.clause_count());
        return out;
    }

private:
    int id(VarKind k, int u, int a = 0, int b = 0) const {
        return var_id({k, u, a, b}, dims_);
    }

    void push(Family fam) {
        std::sort(buf_.begin(), buf_.end(), lit_less);
        buf_.erase(std::unique(buf_.begin(), buf_.end()), buf_.end());
        c_->add_canonical(buf_);
        tags_->push_back(static_cast<uint8_t>(fam));
        buf_.clear();
    }

    void lit(int l) { buf_.push_back(l); }
    // relativization: negative activity literal for a mentioned index
    void pbar(int u) {
        if (relativized_) buf_.push_back(-id(VarKind::P, u));
    }

    void emit_all() {
        const int n = dims_.n, m = static_cast<int>(f_.clause_count());
        const int u_max = a_.back();
        for (int u : a_) { // A1
            pbar(u);
            for (int i = 0; i <= n; ++i) lit(id(VarKind::V, u, i));
            push(Family::A1);
        }
        for (int u : a_) { // A2
            pbar(u);
            for (int j = 0; j <= m; ++j) lit(id(VarKind::I, u, j));
            push(Family::A2);
        }
        for (int u : a_) { // A3
            pbar(u);
            lit(id(VarKind::L, u, 0));
            for (int v : a_) lit(id(VarKind::L, u, v));
            push(Family::A3);
        }
        for (int u : a_) { // A4
            pbar(u);
            lit(id(VarKind::R, u, 0));
            for (int v : a_) lit(id(VarKind::R, u, v));
            push(Family::A4);
        }
        for (int u : a_) // A5
            for (int i = 0; i <= n; ++i)
                for (int i2 = i + 1; i2 <= n; ++i2) {
                    pbar(u);
                    lit(-id(VarKind::V, u, i));
                    lit(-id(VarKind::V, u, i2));
                    push(Family::A5);
                }
        for (int u : a_) // A6
            for (int j = 0; j <= m; ++j)
                for (int j2 = j + 1; j2 <= m; ++j2) {
                    pbar(u);
                    lit(-id(VarKind::I, u, j));
                    lit(-id(VarKind::I, u, j2));
                    push(Family::A6);
                }
        if (with_a7a8_) {
            std::vector<int> a0;
            a0.push_back(0);
            a0.insert(a0.end(), a_.begin(), a_.end());
            for (int u : a_) // A7
                for (size_t x = 0; x < a0.size(); ++x)
                    for (size_t y = x + 1; y < a0.size(); ++y) {
                        pbar(u);
                        lit(-id(VarKind::L, u, a0[x]));
                        lit(-id(VarKind::L, u, a0[y]));
                        push(Family::A7);
                    }
            for (int u : a_) // A8
                for (size_t x = 0; x < a0.size(); ++x)
                    for (size_t y = x + 1; y < a0.size(); ++y) {
                        pbar(u);
                        lit(-id(VarKind::R, u, a0[x]));
                        lit(-id(VarKind::R, u, a0[y]));
                        push(Family::A8);
                    }
        }
        for (int u : a_) { // A9
            pbar(u);
            lit(-id(VarKind::I, u, 0));
            lit(-id(VarKind::V, u, 0));
            push(Family::A9);
        }
        for (int u : a_) { // A10
            pbar(u);
            lit(id(VarKind::I, u, 0));
            lit(id(VarKind::V, u, 0));
            push(Family::A10);
        }
        for (int u : a_) { // A11
            pbar(u);
            lit(-id(VarKind::I, u, 0));
            lit(-id(VarKind::L, u, 0));
            push(Family::A11);
        }
        for (int u : a_) { // A12
            pbar(u);
            lit(-id(VarKind::I, u, 0));
            lit(-id(VarKind::R, u, 0));
            push(Family::A12);
        }
        for (int u : a_) // A13
            for (int v : a_) {
                if (u > v) continue;
                pbar(u);
                lit(-id(VarKind::L, u, v));
                push(Family::A13);
            }
        for (int u : a_) // A14
            for (int v : a_) {
                if (u > v) continue;
                pbar(u);
                lit(-id(VarKind::R, u, v));
                push(Family::A14);
            }
        for (int u : a_) // A15
            for (int v : a_)
                for (int i = 1; i <= n; ++i) {
                    pbar(u);
                    pbar(v);
                    lit(-id(VarKind::L, u, v));
                    lit(-id(VarKind::V, u, i));
                    lit(id(VarKind::D, v, i, 0));
                    push(Family::A15);
                }
        for (int u : a_) // A16
            for (int v : a_)
                for (int i = 1; i <= n; ++i) {
                    pbar(u);
                    pbar(v);
                    lit(-id(VarKind::R, u, v));
                    lit(-id(VarKind::V, u, i));
                    lit(id(VarKind::D, v, i, 1));
                    push(Family::A16);
                }
        for (int u : a_) // A17
            for (int v : a_)
                for (int i = 1; i <= n; ++i)
                    for (int i2 = 1; i2 <= n; ++i2) {
                        if (i2 == i) continue;
                        for (int b = 0; b <= 1; ++b) {
                            pbar(u);
                            pbar(v);
                            lit(-id(VarKind::L, u, v));
                            lit(-id(VarKind::V, u, i));
                            lit(-id(VarKind::D, v, i2, b));
                            lit(id(VarKind::D, u, i2, b));
                            push(Family::A17);
                        }
                    }
        for (int u : a_) // A18
            for (int v : a_)
                for (int i = 1; i <= n; ++i)
                    for (int i2 = 1; i2 <= n; ++i2) {
                        if (i2 == i) continue;
                        for (int b = 0; b <= 1; ++b) {
                            pbar(u);
                            pbar(v);
                            lit(-id(VarKind::R, u, v));
                            lit(-id(VarKind::V, u, i));
                            lit(-id(VarKind::D, v, i2, b));
                            lit(id(VarKind::D, u, i2, b));
                            push(Family::A18);
                        }
                    }
        for (int u : a_) // A19
            for (int j = 1; j <= m; ++j)
                for (int l : f_.clause(j - 1)) {
                    pbar(u);
                    lit(-id(VarKind::I, u, j));
                    lit(id(VarKind::D, u, lit_var(l), lit_sign(l) ? 1 : 0));
                    push(Family::A19);
                }
        for (int u : a_) // A20
            for (int i = 1; i <= n; ++i) {
                pbar(u);
                lit(-id(VarKind::D, u, i, 0));
                lit(-id(VarKind::D, u, i, 1));
                push(Family::A20);
            }
        for (int i = 1; i <= n; ++i) // A21, at the top index
            for (int b = 0; b <= 1; ++b) {
                pbar(u_max);
                lit(-id(VarKind::D, u_max, i, b));
                push(Family::A21);
            }
        if (relativized_) {
            for (int u : a_) // A22
                for (int v : a_) {
                    lit(-id(VarKind::P, u));
                    lit(-id(VarKind::L, u, v));
                    lit(id(VarKind::P, v));
                    push(Family::A22);
                }
            for (int u : a_) // A23
                for (int v : a_) {
                    lit(-id(VarKind::P, u));
                    lit(-id(VarKind::R, u, v));
                    lit(id(VarKind::P, v));
                    push(Family::A23);
                }
            lit(id(VarKind::P, u_max)); // A24
            push(Family::A24);
        }
    }

    const Cnf& f_;
    std::vector<int> a_;
    bool relativized_, with_a7a8_, contiguous_ = true;
    Dims dims_;
    Layout layout_;
    Cnf* c_ = nullptr;
    std::vector<uint8_t>* tags_ = nullptr;
    std::vector<int> buf_;
};

inline std::vector<int> iota_set(int s) {
    std::vector<int> a(s);
    for (int i = 0; i < s; ++i) a[i] = i + 1;
    return a;
}

} // namespace detail

// REF(F,s): satisfiable exactly by the assignments describing refutations
// of F of length s.
inline IndexedCnf encode_ref(const Cnf& f, int s) {
    return detail::RefGenerator(f, detail::iota_set(s), s, false, true).run();
}

// REF(F,A): REF with index set A in place of [s] and t as the ambient bound;
// (A21) sits at max(A), (A13)/(A14) use the integer order on A.
inline IndexedCnf encode_ref_over(const Cnf& f, std::vector<int> a, int t) {
    return detail::RefGenerator(f, std::move(a), t, false, true).run();
}

// RREF(F,s): REF plus activity variables P[u]. With with_a7a8 = false the
// functionality clauses for L and R are dropped (the primed variant).
inline IndexedCnf encode_rref(const Cnf& f, int s, bool with_a7a8 = true) {
    return detail::RefGenerator(f, detail::iota_set(s), s, true, with_a7a8).run();
}

// Rename REF(F,A) through the order isomorphism A -> [|A|].
inline IndexedCnf reindex_to_compact(const IndexedCnf& in) {
    if (in.relativized) throw std::invalid_argument("reindex: only REF supported");
    if (in.index_set.empty()) return in;
    const auto& a = in.index_set;
    Dims nd{in.dims.n, in.dims.m, static_cast<int>(a.size())};
    std::vector<int> rank(static_cast<size_t>(in.dims.s) + 1, 0);
    for (size_t i = 0; i < a.size(); ++i) rank[a[i]] = static_cast<int>(i) + 1;

    IndexedCnf out;
    out.dims = nd;
    out.relativized = false;
    out.with_a7a8 = in.with_a7a8;
    out.tags = in.tags;
    out.cnf.set_num_vars(static_cast<int>(ref_var_count(nd)));
    std::vector<int> buf;
    for (size_t c = 0; c < in.cnf.clause_count(); ++c) {
        buf.clear();
        for (int l : in.cnf.clause(c)) {
            RefVar v = var_of_id(lit_var(l), in.dims);
            v.u = rank[v.u];
            if (v.kind == VarKind::L || v.kind == VarKind::R) v.a = v.a == 0 ? 0 : rank[v.a];
            buf.push_back(make_lit(var_id(v, nd), lit_sign(l)));
        }
        std::sort(buf.begin(), buf.end(), lit_less);
        out.cnf.add_canonical(buf);
    }
    return out;
}

inline void emit_map(std::ostream& out, const Dims& d, bool relativized) {
    int64_t count = relativized ? rref_var_count(d) : ref_var_count(d);
    out << "c n=" << d.n << " m=" << d.m << " s=" << d.s
        << " kind=" << (relativized ? "rref" : "ref") << " vars=" << count << '\n';
    for (int64_t id = 1; id <= count; ++id)
        out << id << ' ' << var_name(var_of_id(id, d)) << '\n';
}

inline void emit_tags(std::ostream& out, const IndexedCnf& e) {
    for (size_t i = 0; i < e.tags.size(); ++i)
        out << i + 1 << ' ' << family_name(e.tag(i)) << '\n';
}

} // namespace refgap
