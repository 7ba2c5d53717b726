#include <random>

#include "doctest.h"
#include "graphmanifold/errors.hpp"
#include "graphmanifold/generators.hpp"
#include "graphmanifold/invariants.hpp"
#include "graphmanifold/json_io.hpp"

using namespace gm;

namespace {

bool all_types_two(const InvariantReport& r) {
  for (const auto& v : r.vertices)
    if (v.type != 2) return false;
  return true;
}

}  // namespace

TEST_CASE("cycle example is the swap permutation glued along a cycle") {
  for (std::size_t k : {3u, 4u, 7u}) {
    GraphManifold g = gen_cycle_example(k, false);
    CHECK(validate(g).valid());
    std::vector<PermutationGluing> perms(k, PermutationGluing{{2, 1, 0}, {1, 1, 1}});
    CHECK(g == gen_orthogonal(cycle_shape(k), perms));
    for (const auto& e : g.edges()) CHECK(e.gluing.matrix() == IntMatrix{{0, 0, 1}, {0, 1, 0}, {1, 0, 0}});
  }
}

TEST_CASE("perturbed cycle changes only the v2 -> v3 gluing") {
  GraphManifold a = gen_cycle_example(5, false);
  GraphManifold b = gen_cycle_example(5, true);
  CHECK(validate(b).valid());
  for (std::size_t i = 0; i < a.edges().size(); ++i) {
    const auto& eb = b.edges()[i];
    if (eb.from.vertex == "v2" && eb.to.vertex == "v3")
      CHECK(eb.gluing.matrix() == IntMatrix{{0, 0, 1}, {0, 1, 1}, {1, 0, 0}});
    else
      CHECK(eb == a.edges()[i]);
  }
}

TEST_CASE("alternating cycle has type 2 at every block") {
  for (std::size_t k : {2u, 4u, 6u, 10u}) {
    GraphManifold g = gen_alternating_cycle(k);
    REQUIRE(validate(g).valid());
    InvariantReport r = compute_invariants(g);
    CHECK(all_types_two(r));
    for (const auto& e : r.edges) CHECK(e.i == 1);
  }
}

TEST_CASE("permutation matrices are unimodular with det -1") {
  CHECK_THROWS_AS(permutation_matrix({{0, 1, 2}, {1, 1, 1}}), BadPermutation);
  CHECK_THROWS_AS(permutation_matrix({{1, 1, 0}, {1, 1, 1}}), BadPermutation);
  std::array<std::array<int, 3>, 4> perms{{{1, 0, 2}, {2, 1, 0}, {1, 2, 0}, {2, 0, 1}}};
  for (const auto& p : perms)
    for (int s = 0; s < 8; ++s) {
      PermutationGluing pg{p, {s & 1 ? -1 : 1, s & 2 ? -1 : 1, s & 4 ? -1 : 1}};
      IntMatrix m = permutation_matrix(pg);
      CHECK(GluingMatrix(m).det() == -1);
      CHECK(is_signed_permutation(m));
    }
}

TEST_CASE("permutation_for_axes realises the requested intersection lattices") {
  for (int a = 1; a <= 2; ++a)
    for (int b = 1; b <= 2; ++b) {
      GluingMatrix m(permutation_matrix(permutation_for_axes(a, b)));
      IntVector ea{a == 1 ? 1 : 0, a == 2 ? 1 : 0};
      IntVector eb{b == 1 ? 1 : 0, b == 2 ? 1 : 0};
      CHECK(drop_z(intersection_lattice(m.matrix())) == lattice_from_vectors({ea}, 2));
      CHECK(drop_z(intersection_lattice(*integer_inverse(m.matrix()))) == lattice_from_vectors({eb}, 2));
    }
}

TEST_CASE("gluing_with_intersections hits the requested lattices") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> d(-9, 9);
  int done = 0;
  while (done < 200) {
    IntVector p{d(rng), d(rng)}, q{d(rng), d(rng)};
    if (content(p) != 1 || content(q) != 1) continue;
    GluingMatrix m(gluing_with_intersections(p, q));
    CHECK(m.det() == -1);
    CHECK(intersection_number(m) == 1);
    CHECK(drop_z(intersection_lattice(m.matrix())) == lattice_from_vectors({p}, 2));
    CHECK(drop_z(intersection_lattice(*integer_inverse(m.matrix()))) == lattice_from_vectors({q}, 2));
    ++done;
  }
}

TEST_CASE("random generation is deterministic and meets its target") {
  for (auto target : {RandomTarget::TypeTwoUnit, RandomTarget::Unconstrained, RandomTarget::MixedSecondary}) {
    RandomOptions o;
    o.target = target;
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
      GraphManifold g = gen_random(seed, o);
      CHECK(dump_manifold(g) == dump_manifold(gen_random(seed, o)));
      REQUIRE(validate(g).valid());
      CHECK(g.blocks().size() >= o.min_vertices);
      CHECK(g.blocks().size() <= o.max_vertices);
      if (target == RandomTarget::Unconstrained) continue;
      InvariantReport r = compute_invariants(g);
      CHECK(all_types_two(r));
      for (const auto& e : r.edges) CHECK(e.i == 1);
      for (const auto& v : r.vertices) {
        if (target == RandomTarget::TypeTwoUnit) CHECK(v.j == 1);
        else CHECK((v.j >= 1 && v.j <= 3));
      }
    }
  }
}

TEST_CASE("mixed secondary target produces j > 1 somewhere") {
  RandomOptions o;
  o.target = RandomTarget::MixedSecondary;
  bool seen = false;
  for (std::uint64_t seed = 0; seed < 40 && !seen; ++seed)
    for (const auto& v : compute_invariants(gen_random(seed, o)).vertices) seen = seen || v.j > 1;
  CHECK(seen);
}

TEST_CASE("an impossible budget raises BudgetExceeded") {
  RandomOptions o;
  o.target = RandomTarget::TypeTwoUnit;
  o.min_vertices = 1;
  o.max_vertices = 1;
  o.attempt_budget = 0;
  CHECK_THROWS_AS(gen_random(1, o), BudgetExceeded);
}

TEST_CASE("random basis changes are valid") {
  std::mt19937_64 rng(4);
  GraphManifold g = gen_random(9);
  for (int t = 0; t < 20; ++t) {
    BasisChange h = random_basis_change(g, rng);
    CHECK(check_basis_change(g, h).empty());
    CHECK(validate(apply_basis_change(g, h)).valid());
  }
  for (int t = 0; t < 50; ++t) {
    GluingMatrix m(random_gluing_matrix(rng));
    CHECK(m.det() == -1);
  }
}
