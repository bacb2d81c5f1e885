#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "subcoup/interval_set.hpp"

using namespace subcoup;

namespace {

RationalIntervalSet random_interval_set(std::mt19937& rng, int max_pieces = 4, int span = 3) {
  std::uniform_int_distribution<int> num(0, 6 * span), den(1, 6);
  std::vector<RationalIntervalSet::Interval> pieces;
  const int count = std::uniform_int_distribution<int>(0, max_pieces)(rng);
  for (int i = 0; i < count; ++i) {
    Rat a(num(rng), den(rng));
    Rat b(num(rng), den(rng));
    if (b < a) std::swap(a, b);
    pieces.emplace_back(a, b);
  }
  return RationalIntervalSet::from_intervals(std::move(pieces));
}

}  // namespace

TEST_CASE("construction normalizes to sorted disjoint merged intervals") {
  RationalIntervalSet s = RationalIntervalSet::from_intervals(
      {{Rat(1), Rat(2)}, {Rat(0), Rat(1)}, {Rat(3), Rat(3)}, {Rat(5, 2), Rat(3)}});
  REQUIRE(s.intervals().size() == 2);
  CHECK(s.intervals()[0] == std::make_pair(Rat(0), Rat(2)));
  CHECK(s.intervals()[1] == std::make_pair(Rat(5, 2), Rat(3)));
  CHECK(s.length() == Rat(5, 2));
}

TEST_CASE("fractional images of basic intervals") {
  auto seg = [](int a, int b, int c, int d) {
    return RationalIntervalSet::interval(Rat(a, b), Rat(c, d));
  };
  CHECK(fractional_image(seg(0, 1, 1, 2)) == seg(0, 1, 1, 2));
  CHECK(fractional_image(seg(1, 1, 2, 1)) == seg(0, 1, 1, 1));
  CHECK(fractional_image(seg(1, 2, 3, 2)) == seg(0, 1, 1, 1));
  CHECK(fractional_image(RationalIntervalSet()) == RationalIntervalSet());
  // negative endpoints wrap as well: [-1/2, 0) maps to [1/2, 1)
  CHECK(fractional_image(RationalIntervalSet::interval(Rat(-1, 2), Rat(0))) ==
        RationalIntervalSet::interval(Rat(1, 2), Rat(1)));
}

TEST_CASE("phi_measure basics") {
  CHECK(phi_measure(RationalIntervalSet::interval(Rat(0), Rat(1, 2))) == Rat(1, 2));
  RationalIntervalSet both = RationalIntervalSet::interval(Rat(0), Rat(1))
                                 .unite(RationalIntervalSet::interval(Rat(1), Rat(2)));
  CHECK(both.length() == 2);
  CHECK(phi_measure(both) == 1);
  CHECK(phi_measure(RationalIntervalSet()) == 0);
}

TEST_CASE("set algebra laws on random interval sets") {
  std::mt19937 rng(2025);
  for (int round = 0; round < 60; ++round) {
    RationalIntervalSet a = random_interval_set(rng);
    RationalIntervalSet b = random_interval_set(rng);
    RationalIntervalSet c = random_interval_set(rng);

    CHECK(a.unite(b) == b.unite(a));
    CHECK(a.unite(b).unite(c) == a.unite(b.unite(c)));
    CHECK(a.intersect(b) == b.intersect(a));
    CHECK(a.intersect(b).intersect(c) == a.intersect(b.intersect(c)));

    // inclusion-exclusion on lengths
    CHECK(a.length() + b.length() == a.unite(b).length() + a.intersect(b).length());
    // difference decomposition
    CHECK(a.subtract(b).length() + a.intersect(b).length() == a.length());
    CHECK(a.subtract(b).intersect(b).empty());
    CHECK(a.subtract(b).unite(a.intersect(b)) == a);

    // De Morgan within a bounding box
    const Rat lo(0), hi(20);
    RationalIntervalSet ca = a.complement_within(lo, hi);
    RationalIntervalSet cb = b.complement_within(lo, hi);
    CHECK(a.unite(b).complement_within(lo, hi) == ca.intersect(cb));
    CHECK(a.intersect(b).complement_within(lo, hi) == ca.unite(cb));

    // shift preserves length and is invertible
    const Rat delta(7, 3);
    CHECK(a.shift(delta).length() == a.length());
    CHECK(a.shift(delta).shift(-delta) == a);
  }
}

TEST_CASE("fractional image is idempotent and length-compatible") {
  std::mt19937 rng(31415);
  for (int round = 0; round < 40; ++round) {
    RationalIntervalSet a = random_interval_set(rng);
    RationalIntervalSet img = fractional_image(a);
    CHECK(fractional_image(img) == img);
    CHECK(img.subtract(RationalIntervalSet::interval(Rat(0), Rat(1))).empty());
    CHECK(phi_measure(a) <= a.length());
    CHECK(phi_measure(a) <= 1);
  }
}

TEST_CASE("leftmost extraction") {
  RationalIntervalSet s = RationalIntervalSet::from_intervals(
      {{Rat(0), Rat(1)}, {Rat(2), Rat(3)}});
  RationalIntervalSet half = s.leftmost(Rat(1, 2));
  CHECK(half == RationalIntervalSet::interval(Rat(0), Rat(1, 2)));
  RationalIntervalSet one_and_half = s.leftmost(Rat(3, 2));
  REQUIRE(one_and_half.intervals().size() == 2);
  CHECK(one_and_half.length() == Rat(3, 2));
  CHECK(s.contains(one_and_half));
  CHECK(s.leftmost(Rat(0)).empty());
  CHECK_THROWS_AS(s.leftmost(Rat(5, 2)), std::domain_error);
  CHECK_THROWS_AS(s.leftmost(Rat(-1)), std::domain_error);
}

TEST_CASE("containment and disjointness") {
  RationalIntervalSet a = RationalIntervalSet::interval(Rat(0), Rat(2));
  RationalIntervalSet b = RationalIntervalSet::interval(Rat(1, 2), Rat(1));
  CHECK(a.contains(b));
  CHECK_FALSE(b.contains(a));
  CHECK(b.disjoint_with(RationalIntervalSet::interval(Rat(1), Rat(3, 2))));
  CHECK_FALSE(a.disjoint_with(b));
}
