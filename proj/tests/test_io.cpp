#include <doctest.h>

#include <numbers>
#include <string>
#include <variant>

#include <json.hpp>

#include "qfa/generate.hpp"
#include "qfa/io.hpp"
#include "support.hpp"

using namespace qfa;
using namespace qfa::testutil;

namespace {

nlohmann::ordered_json rot_json() {
  return nlohmann::ordered_json::parse(
      serialize_automaton(rotation_mm(std::numbers::pi / 4.0)));
}

}  // namespace

TEST_CASE("serialization round-trips a unitary automaton") {
  const MM1QFA rot = rotation_mm(std::numbers::pi / 4.0);
  const std::string text = serialize_automaton(rot);
  const Automaton parsed = parse_automaton(text);
  REQUIRE(std::holds_alternative<MM1QFA>(parsed));
  const MM1QFA& back = std::get<MM1QFA>(parsed);
  CHECK(back.states == rot.states);
  CHECK(back.alphabet == rot.alphabet);
  CHECK(back.accepting == rot.accepting);
  CHECK(max_abs_diff(back.unitary[0], rot.unitary[0]) == 0.0);
  CHECK(max_abs_diff(back.end_unitary, rot.end_unitary) == 0.0);
  CHECK((back.initial - rot.initial).norm() == 0.0);

  // Serializing the parsed form reproduces the bytes exactly.
  CHECK(serialize_automaton(parsed) == text);
}

TEST_CASE("serialization round-trips an enhanced automaton") {
  E1QFA e = e_rotation(std::numbers::pi / 3.0);
  e.rejecting = {0};
  const std::string text = serialize_automaton(e);
  const Automaton parsed = parse_automaton(text);
  REQUIRE(std::holds_alternative<E1QFA>(parsed));
  const E1QFA& back = std::get<E1QFA>(parsed);
  CHECK(back.initial_state == e.initial_state);
  CHECK(back.rejecting == e.rejecting);
  REQUIRE(back.superops.size() == 1);
  CHECK(max_abs_diff(back.superops[0].kraus[0], e.superops[0].kraus[0]) ==
        0.0);
  CHECK(serialize_automaton(parsed) == text);
}

TEST_CASE("random automata round-trip byte-identically") {
  for (std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
    const Automaton a = random_mm(3, 2, seed);
    const std::string text = serialize_automaton(a);
    CHECK(serialize_automaton(parse_automaton(text)) == text);

    const Automaton e = random_e(2, 2, 2, seed);
    const std::string etext = serialize_automaton(e);
    CHECK(serialize_automaton(parse_automaton(etext)) == etext);
  }
}

TEST_CASE("parse failures") {
  CHECK_THROWS_AS(parse_automaton("{ not json"), ParseError);
  CHECK_THROWS_AS(parse_automaton("[1, 2]"), ParseError);
  CHECK_THROWS_AS(parse_automaton("{\"model\": \"dfa\"}"), ParseError);

  SUBCASE("reserved symbols cannot appear in the alphabet") {
    for (const char* reserved : {"$", "#"}) {
      nlohmann::ordered_json bad = rot_json();
      bad["alphabet"][0] = reserved;
      CHECK_THROWS_AS(parse_automaton(bad.dump()), ParseError);
    }
  }
  SUBCASE("duplicate names") {
    nlohmann::ordered_json bad = rot_json();
    bad["states"][1] = "q1";
    CHECK_THROWS_AS(parse_automaton(bad.dump()), ParseError);
  }
  SUBCASE("unknown state names") {
    nlohmann::ordered_json bad = rot_json();
    bad["accepting"][0] = "zz";
    CHECK_THROWS_AS(parse_automaton(bad.dump()), ParseError);
  }
  SUBCASE("non-numeric entries") {
    nlohmann::ordered_json bad = rot_json();
    bad["initial"][0][0] = "x";
    CHECK_THROWS_AS(parse_automaton(bad.dump()), ParseError);
  }
  SUBCASE("missing fields") {
    nlohmann::ordered_json bad = rot_json();
    bad.erase("transitions");
    CHECK_THROWS_AS(parse_automaton(bad.dump()), ParseError);
  }
  SUBCASE("transition for a symbol outside the alphabet") {
    nlohmann::ordered_json bad = rot_json();
    bad["transitions"]["z"] = bad["transitions"]["a"];
    CHECK_THROWS_AS(parse_automaton(bad.dump()), ParseError);
  }
}

TEST_CASE("well-formed but invalid models fail validation") {
  MM1QFA rot = rotation_mm(std::numbers::pi / 4.0);
  rot.unitary[0] *= 2.0;
  CHECK_THROWS_AS(parse_automaton(serialize_automaton(rot)),
                  ValidationFailure);

  // Dropping the end-marker transition is a model violation, not a parse
  // error.
  nlohmann::ordered_json no_end = rot_json();
  no_end["transitions"].erase("$");
  try {
    parse_automaton(no_end.dump());
    FAIL("expected a validation failure");
  } catch (const ValidationFailure& e) {
    CHECK(e.error.code == ValidationCode::MissingEndmarkMatrix);
  }
}

TEST_CASE("file loading reports missing files as parse errors") {
  CHECK_THROWS_AS(load_automaton("/nonexistent/path.json"), ParseError);
}

TEST_CASE("random generators are deterministic and valid") {
  const MM1QFA a1 = random_mm(3, 2, 42);
  const MM1QFA a2 = random_mm(3, 2, 42);
  CHECK(serialize_automaton(a1) == serialize_automaton(a2));
  const MM1QFA a3 = random_mm(3, 2, 43);
  CHECK(serialize_automaton(a1) != serialize_automaton(a3));

  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    CHECK_FALSE(validate_mm(random_mm(1 + seed % 4, 2, seed)).has_value());
    CHECK_FALSE(
        validate_e(random_e(1 + seed % 3, 2, 1 + seed % 3, seed))
            .has_value());
  }
}

TEST_CASE("word parsing") {
  const std::vector<std::string> alphabet{"a", "b"};
  CHECK(parse_word("", alphabet) == Word{});
  CHECK(parse_word("ab", alphabet) == Word{0, 1});
  CHECK(parse_word("a,b,a", alphabet) == Word{0, 1, 0});
  CHECK_THROWS_AS(parse_word("ac", alphabet), UnknownSymbol);

  const std::vector<std::string> wide{"aa", "b"};
  CHECK(parse_word("aa", wide) == Word{0});
  CHECK(parse_word("aa,b", wide) == Word{0, 1});
  CHECK_THROWS_AS(parse_word("ab", wide), UnknownSymbol);

  CHECK(format_word({0, 1, 0}, alphabet, "") == "aba");
  CHECK(format_word({0, 1}, wide, ",") == "aa,b");
  CHECK(format_word({}, alphabet, "") == "");
}
