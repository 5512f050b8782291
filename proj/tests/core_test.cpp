#include <string>

#include "doctest.h"
#include "fixtures.hpp"
#include "svnfa/automaton.hpp"
#include "svnfa/text_format.hpp"

using namespace svnfa;

TEST_CASE("validate accepts the fixtures") {
  CHECK(validate(make_a1()).empty());
  CHECK(validate(make_a2()).empty());
}

TEST_CASE("validate flags out-of-range targets") {
  OneWayNfa a = make_a1();
  a.delta[0][0].push_back(5);
  auto v = validate(a);
  REQUIRE(!v.empty());
  CHECK(v[0] == "target out of range");
}

TEST_CASE("validate flags accept == reject") {
  TwoWayNfa a = make_a2();
  a.reject = a.accept;
  auto v = validate(a);
  REQUIRE(!v.empty());
  CHECK(v[0] == "accept equals reject");
}

TEST_CASE("serialize then parse is the identity on a1") {
  OneWayNfa a = make_a1();
  auto parsed = parse_automaton(serialize(a));
  auto* b = std::get_if<OneWayNfa>(&parsed);
  REQUIRE(b != nullptr);
  CHECK(b->n == a.n);
  CHECK(b->alphabet == a.alphabet);
  CHECK(b->start == a.start);
  CHECK(b->accept == a.accept);
  CHECK(b->delta == a.delta);
  CHECK(serialize(*b) == serialize(a));
}

TEST_CASE("serialize then parse is the identity on a2") {
  TwoWayNfa a = make_a2();
  a.reject = 0;
  a.reject.reset();
  auto parsed = parse_automaton(serialize(a));
  auto* b = std::get_if<TwoWayNfa>(&parsed);
  REQUIRE(b != nullptr);
  CHECK(b->delta == a.delta);
  CHECK(serialize(*b) == serialize(a));
}

TEST_CASE("direction is rejected for one-way machines") {
  std::string text =
      "type 1nfa\nstates 2\nstart 0\naccept 1\nalphabet a\ntrans 0 a 1 R\n";
  CHECK_THROWS_WITH_AS(parse_automaton(text),
                       "line 6: direction not allowed for 1nfa", ParseError);
}

TEST_CASE("empty alphabet is rejected") {
  std::string text = "type 1nfa\nstates 1\nstart 0\naccept 0\nalphabet\n";
  CHECK_THROWS_WITH_AS(parse_automaton(text), "line 5: alphabet nonempty",
                       ParseError);
}

TEST_CASE("duplicate headers are rejected") {
  std::string text =
      "type 1nfa\nstates 1\nstates 2\nstart 0\naccept 0\nalphabet a\n";
  CHECK_THROWS_AS(parse_automaton(text), ParseError);
}

TEST_CASE("unknown symbols are rejected with a line number") {
  std::string text =
      "type 1nfa\nstates 1\nstart 0\naccept 0\nalphabet a\ntrans 0 c 0\n";
  try {
    parse_automaton(text);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line == 6);
  }
}

TEST_CASE("comments and blank lines are ignored") {
  std::string text =
      "# header comment\n\ntype 2nfa\nstates 1\nstart 0\naccept 0\n"
      "alphabet x\ntrans 0 x 0 L # trailing comment\n";
  auto parsed = parse_automaton(text);
  CHECK(std::holds_alternative<TwoWayNfa>(parsed));
}

TEST_CASE("word parsing: tokens then per-character fallback") {
  std::vector<std::string> alpha = {"a", "b"};
  CHECK(parse_word("a b a", alpha) == Word{0, 1, 0});
  CHECK(parse_word("aba", alpha) == Word{0, 1, 0});
  CHECK(parse_word("", alpha).empty());
  CHECK_THROWS_AS(parse_word("az", alpha), ParseError);
}

TEST_CASE("annotated word round trip") {
  std::vector<std::string> alpha = {"a", "b"};
  AnnotatedWord x = {{0, 1}, {1, 0}};
  std::string s = format_annotated_word(x, alpha);
  CHECK(s == "a/1 b/0");
  CHECK(parse_annotated_word(s, alpha) == x);
}

TEST_CASE("single-accept normalizer keeps the language") {
  OneWayNfa a = make_a1();
  // Treat both states as accepting; a sink must be added.
  std::string err;
  auto b = single_accept(a, {0, 1}, &err);
  REQUIRE(!b.has_value());  // start accepts, no epsilon-free form
  auto c = single_accept(a, {1}, &err);
  REQUIRE(c.has_value());
  CHECK(c->accept == 1);
  CHECK(c->n == 2);
}
