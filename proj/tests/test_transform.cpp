#include <random>

#include "doctest.h"
#include "graphmanifold/errors.hpp"
#include "graphmanifold/generators.hpp"
#include "graphmanifold/transform.hpp"

using namespace gm;

namespace {

bool all_signed_permutations(const GraphManifold& g) {
  for (const auto& e : g.edges())
    if (!is_signed_permutation(e.gluing.matrix()) || e.gluing.det() != -1) return false;
  return true;
}

std::string failures(const Ledger& l) {
  std::string out;
  for (const auto& e : l.entries)
    if (!e.passed) out += e.check + "@" + e.location + ": " + e.detail + "\n";
  return out;
}

GraphManifold j2_manifold() {
  return GraphManifold({{"a", 1, 2}, {"b", 1, 2}},
                       {{"e1", {"a", 0}, {"b", 0}, GluingMatrix(gluing_with_intersections({1, 1}, {1, 0}))},
                        {"e2", {"a", 1}, {"b", 1}, GluingMatrix(gluing_with_intersections({1, -1}, {0, 1}))}});
}

GraphManifold type3_manifold() {
  return GraphManifold({{"a", 0, 3}, {"b", 0, 3}},
                       {{"e1", {"a", 0}, {"b", 0}, GluingMatrix(gluing_with_intersections({1, 0}, {1, 0}))},
                        {"e2", {"a", 1}, {"b", 1}, GluingMatrix(gluing_with_intersections({0, 1}, {0, 1}))},
                        {"e3", {"a", 2}, {"b", 2}, GluingMatrix(gluing_with_intersections({1, 1}, {1, 1}))}});
}

}  // namespace

TEST_CASE("adapted basis") {
  auto alt = gen_alternating_cycle(4);
  CHECK(adapted_basis(alt) == BasisChange::identity(alt));

  auto f = adapted_frame({0, 1}, IntVector{1, 0});
  CHECK(f.sigma == IntMatrix{{0, 1}, {1, 0}});
  CHECK(f.epsilon == -1);

  CHECK_THROWS_AS(adapted_basis(j2_manifold()), SecondaryIndexObstruction);
  CHECK_THROWS_AS(adapted_basis(type3_manifold()), TypeObstruction);

  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    auto g = gen_random(seed);
    auto ga = apply_basis_change(g, adapted_basis(g));
    for (std::size_t v = 0; v < ga.blocks().size(); ++v) {
      auto vi = vertex_invariants(ga, v);
      CHECK(vi.classes[0].lattice == hnf(IntMatrix{{1, 0}}));
      CHECK(vi.classes[1].lattice == hnf(IntMatrix{{0, 1}}));
    }
  }
}

TEST_CASE("reglue") {
  auto alt = gen_alternating_cycle(4);
  auto r = reglue(alt);
  CHECK(r.output == alt);
  for (const auto& e : r.edges) {
    CHECK(e.delta_from == IntVector{0, 0});
    CHECK(e.delta_to == IntVector{0, 0});
  }

  auto cyc = reglue(gen_cycle_example(3, false));
  CHECK(cyc.output == gen_cycle_example(3, false));

  auto pert = reglue(gen_cycle_example(3, true));
  CHECK(all_signed_permutations(pert.output));
  CHECK(pert.ledger.all_passed());

  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    auto g = gen_random(seed);
    auto rr = reglue(g);
    CHECK(all_signed_permutations(rr.output));
    CHECK_MESSAGE(rr.ledger.all_passed(), failures(rr.ledger));
    CHECK(validate(rr.output).valid());
  }

  try {
    reglue(j2_manifold());
    FAIL("expected a precondition failure");
  } catch (const PreconditionFailed& e) {
    CHECK(e.hypothesis() == "secondary-index");
    CHECK(e.location() == "a");
  }
  auto shear = GraphManifold({{"a", 1, 1}, {"b", 1, 1}},
                             {{"e1", {"a", 0}, {"b", 0}, GluingMatrix{{1, 2, 0}, {0, 1, 0}, {0, 0, -1}}}});
  CHECK_THROWS_AS(reglue(shear), PreconditionFailed);
}

TEST_CASE("orthogonality witness") {
  // Identity case.
  auto alt = gen_alternating_cycle(4);
  auto w0 = orthogonality_witness(alt);
  REQUIRE(w0.witness.has_value());
  CHECK(w0.witness->orthogonal == alt);
  for (const auto& [id, r] : w0.residuals) CHECK(r == IntVector{0, 0});

  // Scrambled orthogonal manifolds.
  std::mt19937_64 rng(41);
  for (int t = 0; t < 30; ++t) {
    std::mt19937_64 srng(t);
    Shape s = random_shape(srng, 2 + t % 6, 2);
    // Orthogonal with both axes at every block.
    GraphManifold g;
    for (std::uint64_t k = 0;; ++k) {
      g = gen_random_orthogonal(s, 1000 * t + k);
      if (manifold_type(g) == 2) {
        bool all2 = true;
        for (std::size_t v = 0; v < g.blocks().size(); ++v) all2 = all2 && vertex_invariants(g, v).type == 2;
        if (all2) break;
      }
    }
    auto scrambled = apply_basis_change(g, random_basis_change(g, rng));
    auto res = orthogonality_witness(scrambled);
    REQUIRE(res.witness.has_value());
    CHECK(all_signed_permutations(res.witness->orthogonal));
    CHECK(apply_basis_change(scrambled, res.witness->basis_change) == res.witness->orthogonal);
  }
}

TEST_CASE("criterion and witness agree") {
  int passes = 0, refutes = 0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    auto g = gen_random(seed);
    auto verdict = orthogonality_criterion(g);
    auto res = orthogonality_witness(g);
    REQUIRE(verdict.status != VerdictStatus::NotApplicable);
    CHECK((verdict.status == VerdictStatus::Pass) == res.witness.has_value());
    if (res.witness) {
      ++passes;
      CHECK(all_signed_permutations(res.witness->orthogonal));
    } else {
      ++refutes;
      CHECK(verdict.failing_condition == 3);
      bool nonzero = false;
      for (const auto& [id, r] : res.residuals) nonzero = nonzero || r != IntVector{0, 0};
      CHECK(nonzero);
    }
  }
  // The corpus exercises both outcomes.
  CHECK(passes > 10);
  CHECK(refutes > 10);
}

TEST_CASE("witness search limits") {
  auto big = gen_alternating_cycle(26);
  CHECK_THROWS_AS(orthogonality_witness(big), SearchBudgetExceeded);
  CHECK_THROWS_AS(orthogonality_witness(gen_cycle_example(3, false)), PreconditionFailed);
}

TEST_CASE("unwind") {
  auto alt = gen_alternating_cycle(4);
  auto u0 = unwind(alt);
  CHECK(u0.output == alt);
  CHECK(u0.J == 1);
  CHECK(u0.ledger.all_passed());

  auto uj = unwind(j2_manifold());
  CHECK(uj.J == 2);
  CHECK(uj.edges[0].index == 2);
  CHECK(uj.edges[0].expected_index == 2);
  CHECK_MESSAGE(uj.ledger.all_passed(), failures(uj.ledger));
  CHECK(unwind(uj.output).output == uj.output);

  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    RandomOptions opts;
    opts.target = RandomTarget::MixedSecondary;
    auto g = gen_random(seed, opts);
    auto u = unwind(g);
    CHECK_MESSAGE(u.ledger.all_passed(), failures(u.ledger));
    for (const auto& e : u.edges) CHECK(e.index == e.expected_index);
    CHECK(unwind(u.output).output == u.output);
  }

  // With i = 2 the index picks up the intersection number as well.
  auto shear = GraphManifold({{"a", 1, 1}, {"b", 1, 1}},
                             {{"e1", {"a", 0}, {"b", 0}, GluingMatrix{{1, 2, 0}, {0, 1, 0}, {0, 0, -1}}}});
  auto us = unwind(shear);
  CHECK(us.edges[0].index == 2);
  CHECK(us.edges[0].expected_index == 1);
  bool discrepancy = false;
  for (const auto& e : us.ledger.entries)
    if (e.check == "index-law") discrepancy = !e.passed && e.kind == "claim-discrepancy";
  CHECK(discrepancy);
}

TEST_CASE("orthogonalize") {
  auto alt = gen_alternating_cycle(4);
  auto p = orthogonalize(alt);
  CHECK(p.output == alt);
  CHECK(p.ledger.all_passed());

  auto cyc = orthogonalize(gen_cycle_example(3, true));
  CHECK(all_signed_permutations(cyc.output));

  auto mixed = orthogonalize(j2_manifold());
  CHECK(all_signed_permutations(mixed.output));
  CHECK_MESSAGE(mixed.ledger.all_passed(), failures(mixed.ledger));

  CHECK_THROWS_AS(orthogonalize(type3_manifold()), TypeObstruction);
}

TEST_CASE("symbolic monomials") {
  Monomial copies{Rational(2), {{"N", 1}, {"n_v1", -1}}};
  Monomial bc{Rational(1, 3), {{"n_v1", 1}}};
  CHECK((copies * bc).str() == "2*N/3");
  CHECK(copies.str() == "2*N/n_v1");
  CHECK(Monomial{Rational(1), {{"N", 1}}}.str() == "N");
}
