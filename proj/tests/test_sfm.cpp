#include <catch2/catch_amalgamated.hpp>

#include "subcoup/coupling.hpp"
#include "subcoup/sfm.hpp"
#include "testers.hpp"

using namespace subcoup;
using namespace subcoup::testing;

TEST_CASE("brute-force minimization basics") {
  SetFunction modular(GroundSet::numbered(2), {Rat(0), Rat(-1), Rat(2), Rat(1)});
  MinimizationResult r = minimize_brute(modular);
  CHECK(r.minimizer == 0b01);
  CHECK(r.min_value == -1);
  CHECK(r.iterations == 4);

  SetFunction edge_cut(GroundSet::numbered(2), {Rat(0), Rat(1), Rat(1), Rat(0)});
  MinimizationResult rc = minimize_brute(edge_cut);
  CHECK(rc.minimizer == 0);  // lattice-minimum tie-break
  CHECK(rc.min_value == 0);
}

TEST_CASE("brute-force minimizer is the intersection of all minimizers") {
  Rng rng(11);
  for (int round = 0; round < 30; ++round) {
    SetFunction f = random_integer_submodular(rng, rand_int(rng, 1, 6));
    MinimizationResult r = minimize_brute(f);
    Mask meet = f.full();
    bool seen = false;
    for (Mask x = 0; x < f.table_size(); ++x) {
      CHECK(f(x) >= r.min_value);
      if (f(x) == r.min_value) {
        meet &= x;
        seen = true;
      }
    }
    REQUIRE(seen);
    CHECK(r.minimizer == meet);
    // no strict subset achieves the minimum
    for_each_submask(r.minimizer, [&](Mask s) {
      if (s != r.minimizer) CHECK(f(s) > r.min_value);
    });
  }
}

TEST_CASE("min-norm point on tiny instances") {
  SetFunction modular(GroundSet::numbered(2), {Rat(0), Rat(-1), Rat(2), Rat(1)});
  MinimizationResult r = minimize_minnorm(modular);
  CHECK(r.minimizer == 0b01);
  CHECK(r.min_value == -1);

  SetFunction zero = SetFunction::zero(GroundSet::numbered(3));
  MinimizationResult rz = minimize_minnorm(zero);
  CHECK(rz.minimizer == 0);
  CHECK(rz.min_value == 0);

  SetFunction shifted(GroundSet::numbered(1), {Rat(1), Rat(0)});
  CHECK_THROWS_AS(minimize_minnorm(shifted), std::domain_error);
}

TEST_CASE("min-norm matches brute force on random integer submodular functions") {
  Rng rng(90210);
  for (int round = 0; round < 60; ++round) {
    const int n = rand_int(rng, 1, 8);
    SetFunction f = random_integer_submodular(rng, n, 5);
    MinimizationResult brute = minimize_brute(f);
    MinimizationResult mn = minimize_minnorm(f);
    CHECK(mn.min_value == brute.min_value);
    CHECK(f(mn.minimizer) == brute.min_value);
  }
}

TEST_CASE("superset-constrained minimization") {
  SECTION("increasing functions keep the constraint set") {
    SetFunction r = Matroid::uniform(3, 2).rank_table();
    for (Mask z = 0; z < r.table_size(); ++z) {
      MinimizationResult res = minimize_over_supersets(r, z);
      CHECK(res.minimizer == z);
      CHECK(res.min_value == r(z));
    }
  }
  SECTION("empty constraint reduces to the global minimum") {
    Rng rng(14);
    SetFunction f = random_integer_submodular(rng, 5);
    MinimizationResult global = minimize_brute(f);
    MinimizationResult res = minimize_over_supersets(f, 0);
    CHECK(res.min_value == global.min_value);
    CHECK(res.minimizer == global.minimizer);
  }
  SECTION("minimum value is monotone along chains of constraints") {
    Rng rng(15);
    for (int round = 0; round < 20; ++round) {
      SetFunction f = random_integer_submodular(rng, rand_int(rng, 2, 6));
      Mask z = 0;
      Rat prev = minimize_over_supersets(f, z).min_value;
      for (int i = 0; i < f.n(); ++i) {
        z |= bit(rand_int(rng, 0, f.n() - 1));
        Rat cur = minimize_over_supersets(f, z).min_value;
        CHECK(cur >= prev);
        prev = cur;
      }
    }
  }
  SECTION("the contracted function stays submodular") {
    Rng rng(16);
    for (int round = 0; round < 10; ++round) {
      const int n = rand_int(rng, 2, 5);
      SetFunction f = random_integer_submodular(rng, n);
      const Mask z = static_cast<Mask>(rand_int(rng, 0, (1 << n) - 1));
      std::vector<int> rest;
      for (int i = 0; i < n; ++i)
        if (!has_bit(z, i)) rest.push_back(i);
      SetFunction g = SetFunction::build(GroundSet::numbered(static_cast<int>(rest.size())),
                                         [&](Mask w) {
                                           Mask e = z;
                                           for (std::size_t j = 0; j < rest.size(); ++j)
                                             if (has_bit(w, static_cast<int>(j))) e |= bit(rest[j]);
                                           return f(e);
                                         });
      CHECK(check_property(g, Property::submodular).holds);
    }
  }
  SECTION("brute and min-norm agree under constraints") {
    Rng rng(17);
    for (int round = 0; round < 20; ++round) {
      const int n = rand_int(rng, 1, 6);
      SetFunction f = random_integer_submodular(rng, n);
      const Mask z = static_cast<Mask>(rand_int(rng, 0, (1 << n) - 1));
      MinimizationResult a = minimize_over_supersets(f, z, SfmAlgorithm::brute);
      MinimizationResult b = minimize_over_supersets(f, z, SfmAlgorithm::minnorm);
      CHECK(a.min_value == b.min_value);
      CHECK((b.minimizer & z) == z);
    }
  }
}

TEST_CASE("minimizing b of a matroid coupling stays at zero") {
  Matroid u23 = Matroid::uniform(3, 2);
  CouplingSpec spec{u23.rank_table(), u23.rank_table(), basis_indicator(u23, 0b011),
                    basis_indicator(u23, 0b011)};
  SetFunction b = build_b(spec);
  MinimizationResult r = minimize_brute(b);
  CHECK(r.min_value == 0);
  CHECK(r.minimizer == 0);
  for (Mask z = 0; z < b.table_size(); ++z) CHECK(b(z) >= 0);

  MinimizationResult sup = minimize_over_supersets(b, bit(8));  // Z = {(3,3)}
  CHECK(sup.min_value == 0);
  CHECK((sup.minimizer & bit(8)) == bit(8));
}
