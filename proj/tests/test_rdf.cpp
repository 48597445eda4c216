// Graph core: term identity, pattern matching, list reading, literal value
// comparison, and graph isomorphism under blank node renaming.

#include <catch2/catch_amalgamated.hpp>

#include <hypersig/rdf.hpp>

#include "helpers.hpp"

using namespace hypersig;
using rdf::Graph;
using rdf::Term;

TEST_CASE("terms compare by kind and content") {
  CHECK(rdf::iri("http://a") == rdf::iri("http://a"));
  CHECK(rdf::iri("http://a") != rdf::iri("http://b"));
  CHECK(rdf::blank("x") != rdf::iri("x"));
  CHECK(rdf::lit("5", rdf::xsd_integer) != rdf::lit("5", rdf::xsd_string));
  CHECK(rdf::lang_lit("hi", "en") != rdf::lit("hi", rdf::xsd_string));
}

TEST_CASE("graphs deduplicate triples") {
  Graph g;
  g.insert(rdf::iri("http://s"), rdf::iri("http://p"), rdf::iri("http://o"));
  g.insert(rdf::iri("http://s"), rdf::iri("http://p"), rdf::iri("http://o"));
  CHECK(g.size() == 1);
}

TEST_CASE("match answers every wildcard combination") {
  auto g = testutil::parse_snippet(
      "ex:a ex:p ex:b . ex:a ex:p ex:c . ex:b ex:q ex:c .");
  auto p = rdf::iri("http://test.example/p");
  auto a = rdf::iri("http://test.example/a");
  CHECK(g.match(std::nullopt, std::nullopt, std::nullopt).size() == 3);
  CHECK(g.match(a, std::nullopt, std::nullopt).size() == 2);
  CHECK(g.match(std::nullopt, p, std::nullopt).size() == 2);
  CHECK(g.match(a, p, rdf::iri("http://test.example/b")).size() == 1);
  CHECK(g.match(std::nullopt, std::nullopt, rdf::iri("http://test.example/c")).size() == 2);
  CHECK(g.objects_of(a, "http://test.example/p").size() == 2);
  CHECK(g.subjects_of_type("http://nothing").empty());
}

TEST_CASE("read_list walks well-formed lists and rejects broken ones") {
  auto g = testutil::parse_snippet("ex:s ex:list ( ex:x ex:y ex:z ) .");
  auto head = g.object_of(rdf::iri("http://test.example/s"), "http://test.example/list");
  REQUIRE(head.has_value());
  auto items = g.read_list(*head);
  REQUIRE(items.size() == 3);
  CHECK(rdf::iri_of(items[0]) == "http://test.example/x");
  CHECK(rdf::iri_of(items[2]) == "http://test.example/z");

  // empty list is rdf:nil
  auto g2 = testutil::parse_snippet("ex:s ex:list ( ) .");
  auto nil = g2.object_of(rdf::iri("http://test.example/s"), "http://test.example/list");
  REQUIRE(nil.has_value());
  CHECK(g2.read_list(*nil).empty());

  // a node missing rdf:rest is malformed
  auto g3 = testutil::parse_snippet("ex:s ex:list [ rdf:first ex:x ] .");
  auto bad = g3.object_of(rdf::iri("http://test.example/s"), "http://test.example/list");
  REQUIRE(bad.has_value());
  CHECK_THROWS_AS(g3.read_list(*bad), rdf::MalformedList);

  // cyclic rest chain
  auto g4 = testutil::parse_snippet(
      "ex:n rdf:first ex:x . ex:n rdf:rest ex:n .");
  CHECK_THROWS_AS(g4.read_list(rdf::iri("http://test.example/n")), rdf::MalformedList);
}

TEST_CASE("value_equal is datatype- and value-aware") {
  using rdf::value_equal;
  // same integer, different lexical forms
  CHECK(value_equal(rdf::lit("500", rdf::xsd_integer), rdf::lit("0500", rdf::xsd_integer)));
  CHECK(value_equal(rdf::int_lit(500), rdf::lit("500", rdf::xsd_integer)));
  // a plain string "0" is not the integer 0
  CHECK_FALSE(value_equal(rdf::lit("0", rdf::xsd_string), rdf::int_lit(0)));
  CHECK_FALSE(value_equal(rdf::int_lit(500), rdf::int_lit(0)));
  CHECK(value_equal(rdf::iri("http://x"), rdf::iri("http://x")));
  CHECK_FALSE(value_equal(rdf::iri("http://x"), rdf::lit("http://x", rdf::xsd_string)));
}

TEST_CASE("isomorphism holds under blank relabeling and nothing weaker") {
  auto a = testutil::parse_snippet("ex:s ex:p [ ex:q ex:o ] , [ ex:q ex:o2 ] .");
  auto b = testutil::parse_snippet("ex:s ex:p [ ex:q ex:o2 ] , [ ex:q ex:o ] .");
  CHECK(rdf::isomorphic(a, b));

  // same triple count, different wiring
  auto c = testutil::parse_snippet("ex:s ex:p [ ex:q ex:o ] . ex:s ex:p ex:z . ex:z ex:q ex:o2 .");
  auto d = testutil::parse_snippet("ex:s ex:p [ ex:q ex:o2 ] . ex:s ex:p ex:z . ex:z ex:q ex:o .");
  CHECK_FALSE(rdf::isomorphic(c, d));

  // two interchangeable blanks with identical signatures need backtracking
  auto e1 = testutil::parse_snippet(
      "ex:s ex:p _:x . ex:s ex:p _:y . _:x ex:link _:y .");
  auto e2 = testutil::parse_snippet(
      "ex:s ex:p _:m . ex:s ex:p _:n . _:n ex:link _:m .");
  CHECK(rdf::isomorphic(e1, e2));

  auto f1 = testutil::parse_snippet("ex:s ex:p _:x . _:x ex:link _:x .");
  auto f2 = testutil::parse_snippet("ex:s ex:p _:m . _:m ex:link _:n . _:n ex:p2 ex:o .");
  CHECK_FALSE(rdf::isomorphic(f1, f2));

  CHECK(rdf::isomorphic(Graph{}, Graph{}));
}

TEST_CASE("merge unions triples") {
  auto a = testutil::parse_snippet("ex:a ex:p ex:b .");
  auto b = testutil::parse_snippet("ex:a ex:p ex:b . ex:c ex:p ex:d .");
  Graph u;
  u.merge(a);
  u.merge(b);
  CHECK(u.size() == 2);
}
