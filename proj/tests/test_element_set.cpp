#include <doctest.h>

#include "submax/element_set.hpp"
#include "submax/errors.hpp"

using submax::DomainError;
using submax::ElementSet;

TEST_CASE("element sets are dense-id bitsets") {
  ElementSet s(10);
  CHECK(s.empty());
  CHECK(s.universe_size() == 10);
  s.insert(3);
  s.insert(7);
  s.insert(3);  // duplicate insert is a no-op
  CHECK(s.size() == 2);
  CHECK(s.contains(3));
  CHECK(!s.contains(4));
  s.erase(3);
  s.erase(3);
  CHECK(s.size() == 1);
  CHECK(s.elements() == std::vector<int>{7});
}

TEST_CASE("element ids outside the universe are rejected") {
  ElementSet s(4);
  CHECK_THROWS_AS(s.insert(4), DomainError);
  CHECK_THROWS_AS(s.insert(-1), DomainError);
  CHECK_THROWS_AS(s.contains(99), DomainError);
  CHECK_THROWS_AS(ElementSet(-1), DomainError);
}

TEST_CASE("masks round-trip for small universes") {
  const ElementSet s = ElementSet::from_mask(6, 0b101001);
  CHECK(s.size() == 3);
  CHECK(s.elements() == std::vector<int>{0, 3, 5});
  CHECK(s.mask() == 0b101001);
  CHECK(s.to_string() == "{0, 3, 5}");
  CHECK_THROWS_AS(ElementSet::from_mask(2, 0b100), DomainError);
}

TEST_CASE("union and with do not mutate their inputs") {
  const ElementSet a(5, {0, 2});
  const ElementSet b(5, {2, 4});
  const ElementSet u = a.united(b);
  CHECK(u.elements() == std::vector<int>{0, 2, 4});
  CHECK(a.size() == 2);
  CHECK(a.with(1).size() == 3);
  CHECK(a.size() == 2);
  CHECK_THROWS_AS(a.united(ElementSet(6)), DomainError);
}

TEST_CASE("equality covers universe and membership") {
  CHECK(ElementSet(5, {1, 2}) == ElementSet(5, {2, 1}));
  CHECK(ElementSet(5, {1}) != ElementSet(5, {2}));
  CHECK(ElementSet(5) != ElementSet(6));
}
