#include <catch2/catch_amalgamated.hpp>

#include "refgap/dimacs.hpp"
#include "refgap/reduce.hpp"

using namespace refgap;

namespace {

Cnf sat3cnf_n2() {
    Cnf f(2);
    f.add_clause({1, 2});
    f.add_clause({-1, 2});
    return f;
}

} // namespace

TEST_CASE("gap instance parameters") {
    GapInstance g = gap_instance(sat3cnf_n2());
    CHECK(g.s == 52); // 13 * 2^2
    CHECK(g.prime == false);
    CHECK(g.encoded.relativized);
    CHECK(g.encoded.with_a7a8);
    CHECK(g.r_size == cnf_size(g.encoded.cnf));

    Cnf f4(4);
    f4.add_clause({1, -2, 4});
    f4.add_clause({3});
    GapInstance g4 = gap_instance(f4);
    CHECK(g4.s == 208); // 13 * 16
    // the variable count grows with s^2
    CHECK(g4.encoded.cnf.num_vars() == rref_var_count(g4.encoded.dims));
    CHECK(rref_var_count(g4.encoded.dims) > 2 * 208 * 208);
}

TEST_CASE("gap instance validation") {
    Cnf big(2);
    big.add_clause({1, 2, -1, -2}); // tautological and too wide
    CHECK_THROWS(gap_instance(big));

    Cnf wide(4);
    wide.add_clause({1, 2, 3, 4});
    CHECK_THROWS(gap_instance(wide));

    CHECK_THROWS(gap_instance(Cnf(2)));

    // limit guard
    CHECK_THROWS(gap_instance(sat3cnf_n2(), /*clause_limit=*/10));
}

TEST_CASE("padded instances drop the pointer-functionality families") {
    Cnf f = sat3cnf_n2();
    GapInstance g = padded_gap_instance(f, 1);
    CHECK(g.s == 52); // 13 * 2^2
    CHECK(g.prime);
    CHECK(g.pad_t == 1);
    for (uint8_t t : g.encoded.tags) {
        CHECK(t != static_cast<uint8_t>(Family::A7));
        CHECK(t != static_cast<uint8_t>(Family::A8));
    }
    // r(t) >= n^{2t} at this tiny scale as well
    CHECK(g.r_size >= 4);

    // the length formula, without materializing the larger instance
    Cnf f3(3);
    f3.add_clause({1, 2, 3});
    CHECK_THROWS(padded_gap_instance(f3, 2, /*clause_limit=*/1000)); // 13*27=351, guarded
    GapInstance g3 = padded_gap_instance(f3, 2);
    CHECK(g3.s == 351);
}

TEST_CASE("gap instances are deterministic") {
    GapInstance a = gap_instance(sat3cnf_n2());
    GapInstance b = gap_instance(sat3cnf_n2());
    CHECK(a.encoded.cnf == b.encoded.cnf);
    CHECK(a.encoded.tags == b.encoded.tags);
    CHECK(emit_dimacs(a.encoded.cnf) == emit_dimacs(b.encoded.cnf));
}

TEST_CASE("decision wrapper") {
    Cnf sat = sat3cnf_n2();
    CHECK(decide_via_automatizer(sat, witness_searcher(), 1 << 20) == Decision::Satisfiable);

    Cnf unsat(1);
    unsat.add_clause({1});
    unsat.add_clause({-1});
    CHECK(decide_via_automatizer(unsat, witness_searcher(), 1 << 20) ==
          Decision::Unsatisfiable);

    // a searcher that never answers makes everything look unsatisfiable
    CHECK(decide_via_automatizer(sat, timeout_searcher(), 1) == Decision::Unsatisfiable);

    // an invalid proof from the callback is a fault, not a verdict
    Searcher liar = [](const GapInstance&, uint64_t) -> std::optional<Proof> {
        Proof p;
        p.add_line(Clause{}, Justification::ax(1));
        return p;
    };
    CHECK_THROWS_AS(decide_via_automatizer(sat, liar, 1), CallbackFault);
}
