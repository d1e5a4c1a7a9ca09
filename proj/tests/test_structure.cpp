#include <catch2/catch_amalgamated.hpp>

#include "refgap/encode.hpp"
#include "refgap/rng.hpp"
#include "refgap/structure.hpp"

using namespace refgap;

namespace {

Cnf x1_nx1() {
    Cnf f(1);
    f.add_clause({1});
    f.add_clause({-1});
    return f;
}

Cnf tree2() { // X1 v X2, -X1, -X2
    Cnf f(2);
    f.add_clause({1, 2});
    f.add_clause({-1});
    f.add_clause({-2});
    return f;
}

bool satisfies_all(const Cnf& cnf, const Assignment& a) {
    for (size_t i = 0; i < cnf.clause_count(); ++i)
        if (!clause_satisfied_by(cnf.clause(i), a)) return false;
    return true;
}

size_t count_falsified(const Cnf& cnf, const Assignment& a) {
    size_t k = 0;
    std::vector<int> buf;
    for (size_t i = 0; i < cnf.clause_count(); ++i)
        if (restrict_span(cnf.clause(i), a, &buf) == ClauseStatus::Falsified) ++k;
    return k;
}

} // namespace

TEST_CASE("full tree on {X1, -X1}") {
    auto ft = full_tree(x1_nx1());
    REQUIRE(std::holds_alternative<RefStructure>(ft));
    const RefStructure& st = std::get<RefStructure>(ft);
    CHECK(st.s == 3);
    CHECK(st.i[1] == 2); // leaf (0) carries {-X1}, smallest premise is C_2
    CHECK(st.i[2] == 1);
    CHECK(st.v[3] == 1);
    CHECK(st.l[3] == 1);
    CHECK(st.r[3] == 2);
    CHECK(st.d == std::vector<std::array<int, 3>>{{1, 1, 0}, {2, 1, 1}});
    CHECK(validate_structure(x1_nx1(), st).valid);
}

TEST_CASE("full tree on the n=2 tree formula") {
    auto ft = full_tree(tree2());
    REQUIRE(std::holds_alternative<RefStructure>(ft));
    const RefStructure& st = std::get<RefStructure>(ft);
    CHECK(st.s == 7);
    CHECK(validate_structure(tree2(), st).valid);
    Proof p = structure_to_proof(st, tree2());
    CHECK(check_proof(tree2(), p, true).accepted);
    CHECK(proof_width(p) == 2);
    CHECK(p.length() == 7);
}

TEST_CASE("full tree on satisfiable input returns the counter-model") {
    Cnf f(1);
    f.add_clause({1});
    auto ft = full_tree(f);
    REQUIRE(std::holds_alternative<Assignment>(ft));
    const Assignment& model = std::get<Assignment>(ft);
    CHECK(model.defined(1));
    CHECK(model.value(1) == true);
    CHECK(satisfies_all(f, model));

    SplitMix64 rng(5);
    for (int t = 0; t < 20; ++t) {
        int n = 1 + static_cast<int>(rng.below(3));
        Cnf g(n);
        for (int c = 0; c < 3; ++c) {
            std::vector<int> lits;
            for (int v = 1; v <= n; ++v)
                if (rng.coin()) lits.push_back(make_lit(v, rng.coin()));
            if (lits.empty()) lits.push_back(make_lit(1, rng.coin()));
            g.add_clause(std::span<const int>(lits));
        }
        auto r = full_tree(g);
        if (std::holds_alternative<Assignment>(r))
            CHECK(satisfies_all(g, std::get<Assignment>(r)));
        else
            CHECK(validate_structure(g, std::get<RefStructure>(r)).valid);
    }
}

TEST_CASE("validate_structure pinpoints violations") {
    Cnf f = x1_nx1();
    RefStructure st = std::get<RefStructure>(full_tree(f));

    RefStructure broken = st;
    broken.d.erase(std::find(broken.d.begin(), broken.d.end(), std::array<int, 3>{1, 1, 0}));
    auto v = validate_structure(f, broken);
    REQUIRE_FALSE(v.valid);
    CHECK(v.rule == "R4a");
    REQUIRE(v.witness.size() >= 2);
    CHECK(v.witness[0] == 3);
    CHECK(v.witness[1] == 1);

    RefStructure r8 = st;
    r8.d.push_back({3, 1, 0});
    r8.sort_d();
    auto v8 = validate_structure(f, r8);
    REQUIRE_FALSE(v8.valid);
    CHECK(v8.rule == "R8");

    RefStructure dims = st;
    dims.v[2] = 5;
    CHECK(validate_structure(f, dims).rule == "dims");
}

TEST_CASE("structure/assignment round trip and REF semantics") {
    Cnf f = x1_nx1();
    RefStructure st = std::get<RefStructure>(full_tree(f));
    Assignment a = structure_to_assignment(st, f);
    Dims d{1, 2, 3};

    CHECK(a.value(var_id({VarKind::V, 3, 1}, d)));
    CHECK_FALSE(a.value(var_id({VarKind::V, 3, 0}, d)));
    CHECK(a.value(var_id({VarKind::L, 3, 1}, d)));
    CHECK(a.value(var_id({VarKind::I, 1, 2}, d)));
    CHECK(a.value(var_id({VarKind::D, 1, 1, 0}, d)));
    CHECK_FALSE(a.value(var_id({VarKind::D, 3, 1, 0}, d)));

    CHECK(assignment_to_structure(a, f, 3) == st);

    IndexedCnf ref = encode_ref(f, 3);
    CHECK(satisfies_all(ref.cnf, a));

    // break (R8): the associated assignment falsifies some (A21) clause
    RefStructure r8 = st;
    r8.d.push_back({3, 1, 0});
    r8.sort_d();
    Assignment a8 = structure_to_assignment(r8, f);
    bool a21_falsified = false;
    std::vector<int> buf;
    for (size_t i = 0; i < ref.cnf.clause_count(); ++i)
        if (ref.tag(i) == Family::A21 &&
            restrict_span(ref.cnf.clause(i), a8, &buf) == ClauseStatus::Falsified)
            a21_falsified = true;
    CHECK(a21_falsified);

    // non-functional row
    Assignment bad(static_cast<int>(ref_var_count(d)));
    for (int id = 1; id <= bad.num_vars(); ++id) bad.set(id, false);
    CHECK_THROWS(assignment_to_structure(bad, f, 3));
}

TEST_CASE("validity coincides with satisfying REF, exhaustively at n=1 m=2 s=2") {
    Cnf f = x1_nx1();
    IndexedCnf ref = encode_ref(f, 2);
    int checked = 0, valid_count = 0;
    // enumerate all structures of the right signature
    for (int dbits = 0; dbits < 16; ++dbits)
        for (int v1 = 0; v1 <= 1; ++v1)
            for (int v2 = 0; v2 <= 1; ++v2)
                for (int i1 = 0; i1 <= 2; ++i1)
                    for (int i2 = 0; i2 <= 2; ++i2)
                        for (int l1 = 0; l1 <= 2; ++l1)
                            for (int l2 = 0; l2 <= 2; ++l2)
                                for (int r1 = 0; r1 <= 2; ++r1)
                                    for (int r2 = 0; r2 <= 2; ++r2) {
                                        RefStructure st = RefStructure::blank(2);
                                        for (int k = 0; k < 4; ++k)
                                            if (dbits >> k & 1)
                                                st.d.push_back({k / 2 + 1, 1, k % 2});
                                        st.sort_d();
                                        st.v[1] = v1;
                                        st.v[2] = v2;
                                        st.i[1] = i1;
                                        st.i[2] = i2;
                                        st.l[1] = l1;
                                        st.l[2] = l2;
                                        st.r[1] = r1;
                                        st.r[2] = r2;
                                        bool valid =
                                            validate_structure(f, st).valid;
                                        bool sat = satisfies_all(
                                            ref.cnf, structure_to_assignment(st, f));
                                        if (valid != sat) {
                                            INFO("mismatch at combination " << checked);
                                            REQUIRE(valid == sat);
                                        }
                                        valid_count += valid;
                                        ++checked;
                                    }
    CHECK(checked == 16 * 4 * 9 * 81);
    CHECK(valid_count == 0); // no length-2 refutation of {X1, -X1} exists
}

TEST_CASE("pad_structure") {
    Cnf f = x1_nx1();
    RefStructure st = std::get<RefStructure>(full_tree(f));
    RefStructure padded = pad_structure(st, f);
    CHECK(padded.s == st.s + 1);
    CHECK(validate_structure(f, padded).valid);
    IndexedCnf ref4 = encode_ref(f, 4);
    CHECK(satisfies_all(ref4.cnf, structure_to_assignment(padded, f)));

    RefStructure st2 = std::get<RefStructure>(full_tree(tree2()));
    RefStructure p2 = pad_structure(st2, tree2());
    CHECK(p2.s == 8);
    CHECK(validate_structure(tree2(), p2).valid);
}

TEST_CASE("structure_to_proof on the tiny tree") {
    Cnf f = x1_nx1();
    RefStructure st = std::get<RefStructure>(full_tree(f));
    Proof p = structure_to_proof(st, f);
    REQUIRE(p.length() == 3);
    CHECK(check_proof(f, p, true).accepted);
    CHECK(p.line(3).clause.empty());
    CHECK(p.line(3).just == Justification::res(2, 1, 1)); // pivot positive in R
}

TEST_CASE("full tree length and refutation length agree") {
    SplitMix64 rng(123);
    for (int n = 1; n <= 3; ++n) {
        // all full clauses over n variables: canonical unsatisfiable input
        Cnf f(n);
        for (int bits = 0; bits < (1 << n); ++bits) {
            std::vector<int> lits;
            for (int v = 1; v <= n; ++v) lits.push_back(make_lit(v, (bits >> (v - 1)) & 1));
            f.add_clause(std::span<const int>(lits));
        }
        RefStructure st = std::get<RefStructure>(full_tree(f));
        CHECK(st.s == (1 << (n + 1)) - 1);
        Proof p = structure_to_proof(st, f);
        CHECK(p.length() == static_cast<size_t>((1 << (n + 1)) - 1));
        CHECK(check_proof(f, p, true).accepted);
    }
    (void)rng;
}

TEST_CASE("structure text round trip") {
    Cnf f = tree2();
    RefStructure st = std::get<RefStructure>(full_tree(f));
    std::ostringstream out;
    emit_structure(out, st);
    std::istringstream in(out.str());
    CHECK(parse_structure(in) == st);
}
