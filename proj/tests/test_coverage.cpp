#include <catch2/catch_amalgamated.hpp>

#include "subcoup/coverage.hpp"
#include "subcoup/matroid.hpp"
#include "testers.hpp"

using namespace subcoup;
using namespace subcoup::testing;

TEST_CASE("two-element decompositions by hand") {
  GroundSet g = GroundSet::numbered(2);

  SetFunction f1(g, {Rat(0), Rat(1), Rat(1), Rat(1)});
  CoverageResult r1 = coverage_decompose(f1);
  REQUIRE(r1.is_coverage);
  REQUIRE(r1.decomposition.coefficients.size() == 1);
  CHECK(r1.decomposition.coefficients.at(0b11) == 1);

  SetFunction f2(g, {Rat(0), Rat(1), Rat(1), Rat(2)});
  CoverageResult r2 = coverage_decompose(f2);
  REQUIRE(r2.is_coverage);
  REQUIRE(r2.decomposition.coefficients.size() == 2);
  CHECK(r2.decomposition.coefficients.at(0b01) == 1);
  CHECK(r2.decomposition.coefficients.at(0b10) == 1);
}

TEST_CASE("uniform U_{2,3} is not a coverage function") {
  SetFunction r = Matroid::uniform(3, 2).rank_table();
  CoverageResult res = coverage_decompose(r);
  REQUIRE_FALSE(res.is_coverage);
  CHECK(res.witness == 0b111);  // c_S = -1
  CHECK(res.witness_value == -1);
}

TEST_CASE("decompose requires f(empty) = 0") {
  SetFunction f(GroundSet::numbered(1), {Rat(1), Rat(1)});
  CHECK_THROWS_AS(coverage_decompose(f), std::domain_error);
}

TEST_CASE("reconstruct basics") {
  GroundSet g = GroundSet::numbered(2);
  CoverageDecomposition d;
  d.ground = g;
  d.coefficients[0b11] = 1;
  SetFunction f = coverage_reconstruct(d, g);
  CHECK(f.values() == std::vector<Rat>{Rat(0), Rat(1), Rat(1), Rat(1)});

  CoverageDecomposition empty;
  empty.ground = g;
  SetFunction zero = coverage_reconstruct(empty, g);
  CHECK(zero == SetFunction::zero(g));

  CoverageDecomposition bad;
  bad.ground = g;
  bad.coefficients[0] = 1;
  CHECK_THROWS_AS(coverage_reconstruct(bad, g), std::domain_error);
}

TEST_CASE("decompose then reconstruct is the identity on coverage functions") {
  Rng rng(2024);
  for (int round = 0; round < 50; ++round) {
    SetFunction f = random_coverage(rng, rand_int(rng, 1, 4));
    CoverageResult res = coverage_decompose(f);
    REQUIRE(res.is_coverage);
    CHECK(coverage_reconstruct(res.decomposition, f.ground()) == f);
  }
}

TEST_CASE("coverage coincides with the k-alternating hierarchy") {
  Rng rng(555);
  for (int round = 0; round < 40; ++round) {
    const int n = rand_int(rng, 1, 4);
    SetFunction f = round % 2 == 0
                        ? random_coverage(rng, n)
                        : SetFunction::build(GroundSet::numbered(n), [&](Mask x) {
                            return x == 0 ? Rat(0) : Rat(rand_int(rng, 0, 4));
                          });
    bool all_alternating = true;
    for (int k = 1; k <= n && all_alternating; ++k)
      all_alternating = check_k_alternating(f, k).holds;
    CHECK(coverage_decompose(f).is_coverage == all_alternating);
  }
}

TEST_CASE("reconstruction identity holds whatever the coefficient signs") {
  // the Moebius inversion is exact even when the decomposition is rejected
  Rng rng(77);
  for (int round = 0; round < 20; ++round) {
    const int n = rand_int(rng, 1, 4);
    SetFunction f = SetFunction::build(GroundSet::numbered(n), [&](Mask x) {
      return x == 0 ? Rat(0) : Rat(rand_int(rng, -3, 5));
    });
    std::vector<Rat> c(f.table_size());
    const Mask full = f.full();
    for (Mask y = 0; y < f.table_size(); ++y) c[y] = f(full) - f(full & ~y);
    detail::moebius_transform(c, n);
    for (Mask x = 0; x < f.table_size(); ++x) {
      Rat sum(0);
      for (Mask a = 1; a < c.size(); ++a)
        if (a & x) sum += c[a];
      CHECK(sum == f(x));
    }
  }
}
