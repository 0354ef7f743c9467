#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "buchi/atoms.hpp"
#include "buchi/interp.hpp"
#include "buchi/logic.hpp"
#include "buchi/serialize.hpp"
#include "test_support.hpp"

#include <stdexcept>
#include <string>

using namespace buchi;
using namespace buchi::testing;

TEST_CASE("automata survive a JSON round trip unchanged") {
    for (const Dfa& a : {hand_eq(), hand_interleaved_eq(), add_automaton(Base(2)), valuation_automaton(Base(3)),
                         compile(parse_formula("x < y"), Base(2)),
                         base_square_transform(eq_automaton(Base(4))),
                         digit_embed_transform(add_automaton(Base(2)))}) {
        const Dfa back = dfa_from_json(to_json(a));
        CHECK(back == a);
    }
}

TEST_CASE("the equality machine serializes to the documented bytes") {
    const std::string expected = R"({
  "base": 2,
  "tracks": 2,
  "states": 2,
  "initial": 0,
  "finals": [
    0
  ],
  "transitions": [
    [
      0,
      [
        0,
        0
      ],
      0
    ],
    [
      0,
      [
        0,
        1
      ],
      1
    ],
    [
      0,
      [
        1,
        0
      ],
      1
    ],
    [
      0,
      [
        1,
        1
      ],
      0
    ],
    [
      1,
      [
        0,
        0
      ],
      1
    ],
    [
      1,
      [
        0,
        1
      ],
      1
    ],
    [
      1,
      [
        1,
        0
      ],
      1
    ],
    [
      1,
      [
        1,
        1
      ],
      1
    ]
  ]
})";
    CHECK(to_json(compile(parse_formula("x = y"), Base(2))).dump(2) == expected);
}

TEST_CASE("schema violations are rejected") {
    const Json good = to_json(hand_eq());

    Json j = good;
    j.erase("base");
    CHECK_THROWS_AS(dfa_from_json(j), std::invalid_argument);

    j = good;
    j["base"] = 1;
    CHECK_THROWS_AS(dfa_from_json(j), std::invalid_argument);

    j = good;
    j["states"] = 0;
    CHECK_THROWS_AS(dfa_from_json(j), std::invalid_argument);

    j = good;
    j["initial"] = 2;
    CHECK_THROWS_AS(dfa_from_json(j), std::invalid_argument);

    j = good;
    j["finals"] = Json::array({5});
    CHECK_THROWS_AS(dfa_from_json(j), std::invalid_argument);

    j = good;
    j["transitions"] = "none";
    CHECK_THROWS_AS(dfa_from_json(j), std::invalid_argument);

    j = good;
    j["transitions"][0][1][0] = 2;
    CHECK_THROWS_WITH_AS(dfa_from_json(j), "digit out of range", std::invalid_argument);

    j = good;
    j["transitions"][0][2] = 9;
    CHECK_THROWS_AS(dfa_from_json(j), std::invalid_argument);

    j = good;
    j["transitions"][0][1] = Json::array({0});
    CHECK_THROWS_AS(dfa_from_json(j), std::invalid_argument);

    j = good;
    j["transitions"].push_back(j["transitions"][0]);
    CHECK_THROWS_WITH_AS(dfa_from_json(j), "duplicate transition from state 0",
                         std::invalid_argument);
}

TEST_CASE("missing transitions stay missing through JSON") {
    const Dfa val = valuation_automaton(Base(2));
    bool has_hole = false;
    for (int q = 0; q < val.num_states() && !has_hole; ++q)
        for (int64_t s = 0; s < val.symbol_count(); ++s)
            if (val.next(q, s) < 0) has_hole = true;
    REQUIRE(has_hole);
    CHECK(dfa_from_json(to_json(val)) == val);
}

TEST_CASE("DOT output lists states and grouped edge labels") {
    const std::string dot = to_dot(compile(parse_formula("x = y"), Base(2)));
    CHECK(dot ==
          "digraph automaton {\n"
          "  rankdir=LR;\n"
          "  node [shape=circle];\n"
          "  start [shape=point, label=\"\"];\n"
          "  start -> q0;\n"
          "  q0 [shape=doublecircle];\n"
          "  q0 -> q0 [label=\"0,0 | 1,1\"];\n"
          "  q0 -> q1 [label=\"0,1 | 1,0\"];\n"
          "  q1 -> q1 [label=\"0,0 | 0,1 | 1,0 | 1,1\"];\n"
          "}\n");

    const std::string closed = to_dot(compile(parse_formula("E x (x = x)"), Base(2)));
    CHECK(closed.find("q0 -> q0 [label=\"()\"]") != std::string::npos);
}

TEST_CASE("codecs serialize as a tag tree") {
    CHECK(to_json(Codec::identity()).dump() == R"({"kind":"identity"})");
    CHECK(to_json(Codec::interleave(2, Base(2))).dump() ==
          R"({"kind":"interleave","m":2,"base":2})");
    CHECK(to_json(Codec::pair_group(Base(3))).dump() == R"({"kind":"pairgroup","base":3})");
    CHECK(to_json(Codec::digit_avoid(Base(2))).dump() == R"({"kind":"digitavoid","base":2})");
    CHECK(to_json(build_interpretation(Base(3), Base(2)).codec).dump() ==
          R"({"kind":"compose","parts":[{"kind":"digitavoid","base":3},{"kind":"pairgroup","base":2}]})");
}

TEST_CASE("codecs survive a JSON round trip") {
    const std::vector<Codec> samples = {
        Codec::identity(),
        Codec::interleave(3, Base(2)),
        Codec::pair_group(Base(2)),
        Codec::digit_avoid(Base(3)),
        Codec::compose({Codec::digit_avoid(Base(2)), Codec::digit_avoid(Base(3)),
                        Codec::pair_group(Base(2))}),
        build_interpretation(Base(5), Base(2)).codec,
    };
    for (const Codec& c : samples) {
        const Codec back = codec_from_json(to_json(c));
        CHECK(back.describe() == c.describe());
        std::vector<Nat> point(c.source_arity(), 1);
        CHECK(back.apply(point) == c.apply(point));
    }

    CHECK_THROWS_AS(codec_from_json(Json{{"kind", "zip"}}), std::invalid_argument);
    CHECK_THROWS_AS(codec_from_json(Json::array()), std::invalid_argument);
    CHECK_THROWS_AS(codec_from_json(Json{{"kind", "interleave"}, {"base", 2}}),
                    std::invalid_argument);
}

TEST_CASE("interpretations bundle into one document") {
    const Interpretation i32 = build_interpretation(Base(3), Base(2));
    const Json j = to_json(i32);
    const Interpretation back = interpretation_from_json(j);
    CHECK(back.source_base.radix() == 3);
    CHECK(back.target_base.radix() == 2);
    CHECK(back.dimension == i32.dimension);
    CHECK(back.codec.describe() == "digitavoid{3->4} ; pairgroup{4->2}");
    CHECK(back.domain == i32.domain);
    CHECK(back.equality == i32.equality);
    CHECK(back.addition == i32.addition);
    CHECK(back.valuation == i32.valuation);

    Json broken = j;
    broken.erase("valuation");
    CHECK_THROWS_AS(interpretation_from_json(broken), std::invalid_argument);
    CHECK_THROWS_AS(interpretation_from_json(Json::array()), std::invalid_argument);
}
