#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "buchi/atoms.hpp"
#include "buchi/automaton.hpp"
#include "buchi/logic.hpp"
#include "test_support.hpp"

#include <random>
#include <stdexcept>
#include <vector>

using namespace buchi;
using namespace buchi::testing;

TEST_CASE("symbols pack with track zero most significant") {
    CHECK(pack_symbol({1, 0}, 2) == 2);
    CHECK(pack_symbol({0, 1}, 2) == 1);
    CHECK(pack_symbol({2, 1, 0}, 3) == 21);
    for (int64_t id = 0; id < 27; ++id) CHECK(pack_symbol(unpack_symbol(id, 3, 3), 3) == id);
    CHECK(pack_symbol({}, 2) == 0);
}

TEST_CASE("word_of_tuple pads components to the longest") {
    const DigitWord w = word_of_tuple(Base(2), {5, 6});
    CHECK(w.symbols == std::vector<std::vector<int>>{{1, 0}, {0, 1}, {1, 1}});
    CHECK(word_of_tuple(Base(2), {0, 0}).symbols.empty());
}

TEST_CASE("run follows transitions and checks finality") {
    const Dfa f1 = hand_eq();
    CHECK(run(f1, DigitWord{2, 2, {{0, 0}, {1, 1}}}));
    CHECK_FALSE(run(f1, DigitWord{2, 2, {{1, 0}}}));
    CHECK(run(f1, DigitWord{2, 2, {}}));
    CHECK_FALSE(run(empty_automaton(Base(2), 2), DigitWord{2, 2, {}}));
}

TEST_CASE("accepts_tuple encodes LSD-first with common padding") {
    const Dfa eq = eq_automaton(Base(2));
    CHECK(accepts_tuple(eq, {5, 5}));
    CHECK_FALSE(accepts_tuple(eq, {5, 6}));
    CHECK(accepts_tuple(add_automaton(Base(2)), {1, 2, 3}));
}

TEST_CASE("product intersects or unites languages") {
    const Dfa eq = eq_automaton(Base(2));
    CHECK(equivalent(product(eq, eq, ProductMode::And), eq));
    CHECK(is_empty(product(eq, complement(eq), ProductMode::And)));
    CHECK(equivalent(product(eq, complement(eq), ProductMode::Or), full_automaton(Base(2), 2)));

    const Dfa xy = lift_tracks(eq, {0, 1}, 3);
    const Dfa yz = lift_tracks(eq, {1, 2}, 3);
    const Dfa chain = product(xy, yz, ProductMode::And);
    for (Nat x = 0; x < 100; x += 7)
        for (Nat y = 0; y < 100; y += 9)
            for (Nat z = 0; z < 100; z += 11)
                CHECK(accepts_tuple(chain, {x, y, z}) == (x == y && y == z));
}

TEST_CASE("complement flips the language exactly") {
    const Dfa eq = eq_automaton(Base(2));
    CHECK(equivalent(complement(complement(eq)), eq));
    CHECK(accepts_tuple(complement(eq), {1, 2}));
    CHECK_FALSE(accepts_tuple(complement(eq), {3, 3}));
    CHECK(equivalent(complement(empty_automaton(Base(2), 1)), full_automaton(Base(2), 1)));
    const Dfa val = valuation_automaton(Base(3));
    CHECK(is_complete(complement(val)));
    CHECK(equivalent(complement(complement(val)), val));
}

TEST_CASE("cylindrify inserts an unconstrained track") {
    const Dfa eq = eq_automaton(Base(2));
    const Dfa mid = cylindrify(eq, 1);
    CHECK(mid.tracks == 3);
    CHECK(mid.num_states() == eq.num_states());
    for (Nat x = 0; x < 50; x += 3)
        for (Nat w = 0; w < 50; w += 7)
            for (Nat y = 0; y < 50; y += 5)
                CHECK(accepts_tuple(mid, {x, w, y}) == (x == y));
    CHECK(equivalent(project(mid, 1), minimize(eq)));
    CHECK_THROWS_AS(cylindrify(eq, 3), std::invalid_argument);
}

TEST_CASE("project erases a track existentially") {
    const Dfa add = add_automaton(Base(2));
    const Dfa sum_exists = project(add, 2);
    CHECK(equivalent(sum_exists, full_automaton(Base(2), 2)));

    const Dfa doubling = compile("x + x = y", Base(2));
    const Dfa halvable = project(doubling, 1);
    for (Nat x = 0; x < 100; ++x) CHECK(accepts_tuple(halvable, {x}));

    CHECK(equivalent(project(eq_automaton(Base(2)), 0), full_automaton(Base(2), 1)));
    CHECK_THROWS_AS(project(add, 3), std::invalid_argument);
}

TEST_CASE("projection without padding closure loses long witnesses") {
    const Dfa doubling = compile("x + x = y", Base(2));
    const Dfa skipped = determinize(erase_track(doubling, 1));
    CHECK_FALSE(run(skipped, DigitWord{2, 1, {{0}, {1}}}));
    CHECK(run(skipped, DigitWord{2, 1, {{0}, {1}, {0}}}));
    const Dfa closed = determinize(padding_closure(erase_track(doubling, 1)));
    CHECK(run(closed, DigitWord{2, 1, {{0}, {1}}}));
}

TEST_CASE("padding closure is idempotent and harmless on invariant machines") {
    const Dfa eq = eq_automaton(Base(2));
    CHECK(padding_closure(eq) == padding_closure(padding_closure(eq)));
    CHECK(equivalent(padding_closure(eq), eq));
    const Dfa doubling = compile("x + x = y", Base(2));
    CHECK(padding_closure(doubling) == padding_closure(padding_closure(doubling)));
}

TEST_CASE("determinize preserves acceptance on random words") {
    std::mt19937 rng(7);
    for (int i = 0; i < 20; ++i) {
        const Dfa a = random_complete_dfa(rng, Base(2), 2, 6);
        const Nfa n = erase_track(a, 1);
        const Dfa d = determinize(n);
        for (int j = 0; j < 50; ++j) {
            const DigitWord w = random_word(rng, Base(2), 1, 10);
            CHECK(run(n, w) == run(d, w));
        }
    }
}

TEST_CASE("minimize is canonical and language preserving") {
    const Dfa two_state = minimize(compile("x = y", Base(2)));
    CHECK(two_state.num_states() == 2);
    CHECK(isomorphic(two_state, minimize(hand_eq())));

    std::mt19937 rng(11);
    for (int i = 0; i < 15; ++i) {
        const Dfa a = random_complete_dfa(rng, Base(2), 1, 8);
        const Dfa m = minimize(a);
        CHECK(minimize(m) == m);
        CHECK(equivalent(a, m));
        CHECK(enumerate_accepted(a, 64) == enumerate_accepted(m, 64));
        validate(m);
    }
}

TEST_CASE("emptiness and shortest witnesses") {
    CHECK(is_empty(empty_automaton(Base(2), 2)));
    CHECK_FALSE(shortest_accepted(empty_automaton(Base(2), 2)).has_value());

    const auto eq_witness = shortest_accepted(eq_automaton(Base(2)));
    REQUIRE(eq_witness.has_value());
    CHECK(eq_witness->symbols.empty());

    const auto w = shortest_accepted(compile("x + x = y & !(x = 0)", Base(2)));
    REQUIRE(w.has_value());
    CHECK(w->symbols == std::vector<std::vector<int>>{{1, 0}, {0, 1}});
}

TEST_CASE("equivalence returns shortest counterexamples") {
    const Dfa eq = eq_automaton(Base(2));
    CHECK(equivalent(eq, eq));
    CHECK_FALSE(language_difference(eq, eq).has_value());
    const auto diff = language_difference(eq, complement(eq));
    REQUIRE(diff.has_value());
    CHECK(diff->symbols.empty());
}

TEST_CASE("enumerate_accepted lists exactly the bounded tuples") {
    CHECK(enumerate_accepted(eq_automaton(Base(4)), 4) ==
          std::vector<std::vector<Nat>>{{0, 0}, {1, 1}, {2, 2}, {3, 3}});
    CHECK(enumerate_accepted(empty_automaton(Base(2), 1), 100).empty());
    CHECK(enumerate_accepted(add_automaton(Base(2)), 3) ==
          std::vector<std::vector<Nat>>{{0, 0, 0}, {0, 1, 1}, {0, 2, 2}, {1, 0, 1}, {1, 1, 2}, {2, 0, 2}});
    CHECK(enumerate_accepted(full_automaton(Base(2), 0), 5) == std::vector<std::vector<Nat>>{{}});
}

TEST_CASE("isomorphic compares canonical minimal machines") {
    const Dfa eq = minimize(eq_automaton(Base(2)));
    CHECK(isomorphic(eq, eq));
    CHECK_FALSE(isomorphic(eq, full_automaton(Base(2), 2)));
    CHECK_THROWS_AS(isomorphic(hand_interleaved_eq(), hand_interleaved_eq()), std::invalid_argument);
}

TEST_CASE("boolean algebra laws on random machines") {
    std::mt19937 rng(23);
    for (int i = 0; i < 30; ++i) {
        const Base base(i % 3 == 0 ? 3 : 2);
        const int tracks = i % 2 + 1;
        const Dfa a = random_complete_dfa(rng, base, tracks, 6);
        const Dfa b = random_complete_dfa(rng, base, tracks, 6);
        CHECK(equivalent(complement(complement(a)), a));
        CHECK(equivalent(complement(product(a, b, ProductMode::And)),
                         product(complement(a), complement(b), ProductMode::Or)));
        CHECK(equivalent(complement(product(a, b, ProductMode::Or)),
                         product(complement(a), complement(b), ProductMode::And)));
        CHECK(equivalent(product(a, a, ProductMode::And), a));
        CHECK(equivalent(product(a, product(a, b, ProductMode::Or), ProductMode::And), a));
    }
}

TEST_CASE("structural validation accepts every operation output") {
    const Dfa eq = eq_automaton(Base(3));
    const Dfa add = add_automaton(Base(3));
    for (const Dfa& a : {eq, add, complement(eq), product(cylindrify(eq, 2), add, ProductMode::And),
                         project(add, 1), minimize(add), canonicalize(eq), complete(valuation_automaton(Base(3)))})
        validate(a);
}
