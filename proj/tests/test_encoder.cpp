#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <set>

#include "refgap/encode.hpp"
#include "refgap/structure.hpp"

using namespace refgap;

namespace {

Cnf x1_nx1() {
    Cnf f(1);
    f.add_clause({1});
    f.add_clause({-1});
    return f;
}

std::vector<std::vector<int>> clause_multiset(const Cnf& c) {
    std::vector<std::vector<int>> out;
    out.reserve(c.clause_count());
    for (size_t i = 0; i < c.clause_count(); ++i) {
        auto sp = c.clause(i);
        out.emplace_back(sp.begin(), sp.end());
    }
    std::sort(out.begin(), out.end());
    return out;
}

size_t tag_count(const IndexedCnf& e, Family f) {
    size_t k = 0;
    for (uint8_t t : e.tags)
        if (t == static_cast<uint8_t>(f)) ++k;
    return k;
}

Clause sorted(std::vector<int> lits) { return Clause(std::move(lits)); }

} // namespace

TEST_CASE("variable numbering closed forms") {
    Dims d{1, 2, 2};
    CHECK(var_id({VarKind::D, 1, 1, 0}, d) == 1);
    CHECK(var_id({VarKind::D, 2, 1, 1}, d) == 4);
    CHECK(var_id({VarKind::V, 1, 0}, d) == 2 * d.n * d.s + 1);
    CHECK(ref_var_count(d) == 26);
    CHECK(rref_var_count(d) == 28);

    // id <-> var bijection over the whole universe
    for (Dims dims : {Dims{1, 2, 2}, Dims{2, 3, 4}, Dims{3, 1, 5}}) {
        std::set<int> seen;
        for (int id = 1; id <= rref_var_count(dims); ++id) {
            RefVar v = var_of_id(id, dims);
            CHECK(var_id(v, dims) == id);
            seen.insert(id);
        }
        CHECK(static_cast<int64_t>(seen.size()) == rref_var_count(dims));
    }
    CHECK_THROWS(var_id({VarKind::D, 3, 1, 0}, d)); // u out of range
    CHECK_THROWS(var_id({VarKind::V, 1, 2}, d));    // i out of range
}

TEST_CASE("emit_map is a readable bijection") {
    Dims d{1, 2, 2};
    std::ostringstream out;
    emit_map(out, d, false);
    std::istringstream in(out.str());
    std::string header;
    std::getline(in, header);
    CHECK(header == "c n=1 m=2 s=2 kind=ref vars=26");
    std::string line;
    int count = 0;
    while (std::getline(in, line)) {
        ++count;
        std::istringstream ls(line);
        int id;
        std::string name;
        REQUIRE((ls >> id >> name));
        CHECK(var_id(parse_var_name(name), d) == id);
    }
    CHECK(count == 26);
    CHECK(out.str().find("1 D[1,1,0]\n") != std::string::npos);
    CHECK(out.str().find("5 V[1,0]\n") != std::string::npos);
}

TEST_CASE("REF and RREF clause tables, family by family") {
    Cnf f(2);
    f.add_clause({1, 2});
    f.add_clause({-2});
    const int n = 2, m = 2, s = 3;
    Dims d{n, m, s};
    auto D = [&](int u, int i, int b) { return var_id({VarKind::D, u, i, b}, d); };
    auto V = [&](int u, int i) { return var_id({VarKind::V, u, i}, d); };
    auto I = [&](int u, int j) { return var_id({VarKind::I, u, j}, d); };
    auto L = [&](int u, int v) { return var_id({VarKind::L, u, v}, d); };
    auto R = [&](int u, int v) { return var_id({VarKind::R, u, v}, d); };
    auto P = [&](int u) { return var_id({VarKind::P, u}, d); };

    for (bool relativized : {false, true}) {
        for (bool with78 : {true, false}) {
            if (!relativized && !with78) continue;
            IndexedCnf e = relativized ? encode_rref(f, s, with78) : encode_ref(f, s);
            Layout lay(f, s, relativized, with78);
            REQUIRE(e.cnf.clause_count() == lay.clause_count());
            // expected clause for a family instance, straight from the tables
            auto expect = [&](uint64_t ord, Family fam, std::vector<int> lits,
                              std::vector<int> mentions) {
                if (relativized && fam != Family::A22 && fam != Family::A23 &&
                    fam != Family::A24)
                    for (int u : mentions) lits.push_back(-P(u));
                REQUIRE(ord >= 1);
                REQUIRE(ord <= e.cnf.clause_count());
                INFO("family " << family_name(fam) << " ordinal " << ord);
                CHECK(e.tag(ord - 1) == fam);
                CHECK(e.cnf.clause_at(ord - 1) == sorted(std::move(lits)));
            };
            for (int u = 1; u <= s; ++u) {
                expect(lay.a1(u), Family::A1, {V(u, 0), V(u, 1), V(u, 2)}, {u});
                expect(lay.a2(u), Family::A2, {I(u, 0), I(u, 1), I(u, 2)}, {u});
                expect(lay.a3(u), Family::A3, {L(u, 0), L(u, 1), L(u, 2), L(u, 3)}, {u});
                expect(lay.a4(u), Family::A4, {R(u, 0), R(u, 1), R(u, 2), R(u, 3)}, {u});
                for (int i = 0; i <= n; ++i)
                    for (int i2 = i + 1; i2 <= n; ++i2)
                        expect(lay.a5(u, i, i2), Family::A5, {-V(u, i), -V(u, i2)}, {u});
                for (int j = 0; j <= m; ++j)
                    for (int j2 = j + 1; j2 <= m; ++j2)
                        expect(lay.a6(u, j, j2), Family::A6, {-I(u, j), -I(u, j2)}, {u});
                if (with78)
                    for (int v = 0; v <= s; ++v)
                        for (int v2 = v + 1; v2 <= s; ++v2) {
                            expect(lay.a7(u, v, v2), Family::A7, {-L(u, v), -L(u, v2)}, {u});
                            expect(lay.a8(u, v, v2), Family::A8, {-R(u, v), -R(u, v2)}, {u});
                        }
                expect(lay.a9(u), Family::A9, {-I(u, 0), -V(u, 0)}, {u});
                expect(lay.a10(u), Family::A10, {I(u, 0), V(u, 0)}, {u});
                expect(lay.a11(u), Family::A11, {-I(u, 0), -L(u, 0)}, {u});
                expect(lay.a12(u), Family::A12, {-I(u, 0), -R(u, 0)}, {u});
                for (int v = u; v <= s; ++v) {
                    expect(lay.a13(u, v), Family::A13, {-L(u, v)}, {u});
                    expect(lay.a14(u, v), Family::A14, {-R(u, v)}, {u});
                }
                for (int v = 1; v <= s; ++v)
                    for (int i = 1; i <= n; ++i) {
                        expect(lay.a15(u, v, i), Family::A15,
                               {-L(u, v), -V(u, i), D(v, i, 0)}, {u, v});
                        expect(lay.a16(u, v, i), Family::A16,
                               {-R(u, v), -V(u, i), D(v, i, 1)}, {u, v});
                        for (int i2 = 1; i2 <= n; ++i2) {
                            if (i2 == i) continue;
                            for (int b = 0; b <= 1; ++b) {
                                expect(lay.a17(u, v, i, i2, b), Family::A17,
                                       {-L(u, v), -V(u, i), -D(v, i2, b), D(u, i2, b)}, {u, v});
                                expect(lay.a18(u, v, i, i2, b), Family::A18,
                                       {-R(u, v), -V(u, i), -D(v, i2, b), D(u, i2, b)}, {u, v});
                            }
                        }
                    }
                int pos = 0;
                for (int j = 1; j <= m; ++j)
                    for (int lit : f.clause(j - 1)) {
                        int within = pos - static_cast<int>(lay.cj_prefix[j - 1]);
                        expect(lay.a19(u, j, within), Family::A19,
                               {-I(u, j), D(u, lit_var(lit), lit_sign(lit) ? 1 : 0)}, {u});
                        ++pos;
                    }
                for (int i = 1; i <= n; ++i)
                    expect(lay.a20(u, i), Family::A20, {-D(u, i, 0), -D(u, i, 1)}, {u});
            }
            for (int i = 1; i <= n; ++i)
                for (int b = 0; b <= 1; ++b)
                    expect(lay.a21(i, b), Family::A21, {-D(s, i, b)}, {s});
            if (relativized) {
                for (int u = 1; u <= s; ++u)
                    for (int v = 1; v <= s; ++v) {
                        expect(lay.a22(u, v), Family::A22, {-P(u), -L(u, v), P(v)}, {});
                        expect(lay.a23(u, v), Family::A23, {-P(u), -R(u, v), P(v)}, {});
                    }
                expect(lay.a24(), Family::A24, {P(s)}, {});
            }
        }
    }
}

TEST_CASE("family counts") {
    Cnf f = x1_nx1();
    IndexedCnf ref = encode_ref(f, 3);
    CHECK(tag_count(ref, Family::A1) == 3);  // s
    CHECK(tag_count(ref, Family::A21) == 2); // 2n
    CHECK(tag_count(ref, Family::A13) == 6); // s(s+1)/2
    CHECK(tag_count(ref, Family::A19) == 3 * 2);

    // the primed variant drops exactly the (A7)/(A8) families
    Cnf g(1);
    g.add_clause({1});
    IndexedCnf rref = encode_rref(g, 2, true);
    IndexedCnf rrefp = encode_rref(g, 2, false);
    CHECK(tag_count(rref, Family::A7) == 6); // s * C(s+2,2) pairs over {0,1,2}
    CHECK(tag_count(rref, Family::A8) == 6);
    CHECK(rref.cnf.clause_count() - rrefp.cnf.clause_count() == 12);
    CHECK(tag_count(rrefp, Family::A7) == 0);
    CHECK(tag_count(rrefp, Family::A8) == 0);
}

TEST_CASE("generated clause sets are duplicate-free") {
    Cnf f(2);
    f.add_clause({1, 2});
    f.add_clause({-1});
    f.add_clause({-2});
    for (const IndexedCnf& e :
         {encode_ref(f, 4), encode_rref(f, 4, true), encode_rref(f, 4, false)}) {
        auto ms = clause_multiset(e.cnf);
        CHECK(std::adjacent_find(ms.begin(), ms.end()) == ms.end());
    }
}

TEST_CASE("encoder input validation") {
    Cnf taut(1);
    taut.add_clause({1, -1});
    CHECK_THROWS(encode_ref(taut, 2));
    CHECK_THROWS(encode_ref(x1_nx1(), 0));
    CHECK_THROWS(encode_ref(Cnf(1), 1)); // m = 0

    // F containing the empty clause is fine: (A19) is just vacuous for it
    Cnf empty_clause(1);
    empty_clause.add_clause({});
    IndexedCnf e = encode_ref(empty_clause, 2);
    CHECK(tag_count(e, Family::A19) == 0);
    CHECK(tag_count(e, Family::A2) == 2);
}

TEST_CASE("index width") {
    Cnf f(2);
    f.add_clause({1, 2});
    f.add_clause({-2});
    const int s = 6;
    Dims d{2, 2, s};
    auto L = [&](int u, int v) { return var_id({VarKind::L, u, v}, d); };
    auto V = [&](int u, int i) { return var_id({VarKind::V, u, i}, d); };
    auto D = [&](int u, int i, int b) { return var_id({VarKind::D, u, i, b}, d); };

    std::vector<int> c1{-L(3, 5), -V(3, 2), D(5, 2, 0)};
    CHECK(index_width(c1, d) == 2); // L[3,5] mentions only 3
    std::vector<int> c2{-L(3, 5)};
    CHECK(index_width(c2, d) == 1);

    for (const IndexedCnf& e : {encode_ref(f, s), encode_rref(f, s, true)}) {
        int maxw = 0;
        for (size_t i = 0; i < e.cnf.clause_count(); ++i)
            maxw = std::max(maxw, index_width(e.cnf.clause(i), e.dims));
        CHECK(maxw == 2);
    }
}

TEST_CASE("REF over an index set") {
    Cnf f = x1_nx1();
    // identity on the full set
    IndexedCnf full = encode_ref_over(f, {1, 2, 3}, 3);
    IndexedCnf plain = encode_ref(f, 3);
    CHECK(full.cnf == plain.cnf);
    CHECK(full.tags == plain.tags);

    // A = {2, 5, 9} inside t = 9
    std::vector<int> a{2, 5, 9};
    IndexedCnf over = encode_ref_over(f, a, 9);
    Dims d{1, 2, 9};
    auto L = [&](int u, int v) { return var_id({VarKind::L, u, v}, d); };
    bool found_a3_u5 = false;
    for (size_t i = 0; i < over.cnf.clause_count(); ++i) {
        if (over.tag(i) != Family::A3) continue;
        Clause c = over.cnf.clause_at(i);
        if (!c.contains(L(5, 0))) continue;
        found_a3_u5 = true;
        CHECK(c == sorted({L(5, 0), L(5, 2), L(5, 5), L(5, 9)}));
    }
    CHECK(found_a3_u5);

    // (A21) sits at max(A); reindexing gives REF(F,|A|) clause for clause
    IndexedCnf compact = reindex_to_compact(over);
    IndexedCnf direct = encode_ref(f, 3);
    CHECK(compact.cnf == direct.cnf);
    CHECK(compact.tags == direct.tags);

    CHECK_THROWS(encode_ref_over(f, {}, 3));
    CHECK_THROWS(encode_ref_over(f, {2, 2}, 3));
    CHECK_THROWS(encode_ref_over(f, {2, 10}, 9));
}

TEST_CASE("setting every P to one collapses RREF onto REF") {
    Cnf f(2);
    f.add_clause({1, 2});
    f.add_clause({-1});
    const int s = 3;
    IndexedCnf rref = encode_rref(f, s, true);
    IndexedCnf ref = encode_ref(f, s);
    Dims d = rref.dims;
    Assignment all_p(static_cast<int>(rref_var_count(d)));
    for (int u = 1; u <= s; ++u) all_p.set(var_id({VarKind::P, u}, d), true);

    std::vector<std::vector<int>> reduced;
    std::vector<int> buf;
    for (size_t i = 0; i < rref.cnf.clause_count(); ++i) {
        ClauseStatus st = restrict_span(rref.cnf.clause(i), all_p, &buf);
        Family fam = rref.tag(i);
        if (fam == Family::A22 || fam == Family::A23 || fam == Family::A24) {
            CHECK(st == ClauseStatus::Satisfied);
            continue;
        }
        REQUIRE(st == ClauseStatus::Reduced);
        reduced.push_back(buf);
    }
    std::sort(reduced.begin(), reduced.end());
    CHECK(reduced == clause_multiset(ref.cnf));
}
