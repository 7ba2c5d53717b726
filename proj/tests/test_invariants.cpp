#include <random>

#include "doctest.h"
#include "graphmanifold/errors.hpp"
#include "graphmanifold/generators.hpp"
#include "graphmanifold/invariants.hpp"
#include "oracle.hpp"

using namespace gm;

namespace {

Lattice L(std::initializer_list<std::initializer_list<Integer>> rows) { return hnf(IntMatrix(rows)); }

// Two one-boundary blocks joined by a single edge.
GraphManifold single_edge(const IntMatrix& m) {
  return GraphManifold({{"a", 1, 1}, {"b", 1, 1}}, {{"e1", {"a", 0}, {"b", 0}, GluingMatrix(m)}});
}

// One block whose two ends see the prescribed lattices p and q.
GraphManifold two_class_vertex(const IntVector& p, const IntVector& q) {
  return GraphManifold({{"a", 1, 2}, {"b", 1, 2}},
                       {{"e1", {"a", 0}, {"b", 0}, GluingMatrix(gluing_with_intersections(p, {1, 0}))},
                        {"e2", {"a", 1}, {"b", 1}, GluingMatrix(gluing_with_intersections(q, {0, 1}))}});
}

}  // namespace

TEST_CASE("intersection_lattice examples") {
  CHECK(intersection_lattice(IntMatrix{{0, 0, 1}, {0, 1, 0}, {1, 0, 0}}) == L({{0, 1, 0}}));
  CHECK(intersection_lattice(IntMatrix{{1, 2, 0}, {0, 1, 0}, {0, 0, -1}}) == L({{0, 0, 1}}));
  CHECK(intersection_lattice(IntMatrix{{0, 1, 0}, {1, 0, 0}, {0, 0, 1}}) == L({{0, 0, 1}}));
  CHECK_THROWS_AS(intersection_lattice(IntMatrix{{-1, 0, 0}, {0, 1, 0}, {0, 0, 1}}), RankViolation);
}

TEST_CASE("intersection_number examples") {
  CHECK(intersection_number(GluingMatrix{{0, 0, 1}, {0, 1, 0}, {1, 0, 0}}) == 1);
  CHECK(intersection_number(GluingMatrix{{1, 2, 0}, {0, 1, 0}, {0, 0, -1}}) == 2);
  CHECK(intersection_number(GluingMatrix{{0, 0, 1}, {0, 1, 1}, {1, 0, 0}}) == 1);
}

TEST_CASE("index_characterization examples") {
  auto cyc = gen_cycle_example(3, false);
  CHECK(index_characterization(cyc, 0) == std::pair<Integer, Integer>{1, 1});
  auto shear = single_edge(IntMatrix{{1, 2, 0}, {0, 1, 0}, {0, 0, -1}});
  CHECK(index_characterization(shear, 0) == std::pair<Integer, Integer>{2, 2});
}

TEST_CASE("content of b equals the index of F_e on random matrices") {
  std::mt19937_64 rng(101);
  for (int t = 0; t < 500; ++t) {
    IntMatrix m = random_gluing_matrix(rng);
    GraphManifold g = single_edge(m);
    auto [i, fe] = index_characterization(g, 0);
    CHECK(i == fe);
    CHECK(i == intersection_number(reverse(GluingMatrix(m))));
    // Independent cross-check: the join of the fiber lattices has index equal
    // to the gcd of the 3x3 minors of its generators.
    oracle::Subgroup fe_oracle({{0, 1, 0}, {0, 0, 1},
                                {m(0, 1).get_si(), m(1, 1).get_si(), m(2, 1).get_si()},
                                {m(0, 2).get_si(), m(1, 2).get_si(), m(2, 2).get_si()}});
    CHECK(fe_oracle.rank() == 3);
    std::int64_t d = 0;
    const auto& gens = fe_oracle.generators();
    for (std::size_t a = 0; a < gens.size(); ++a)
      for (std::size_t b = a + 1; b < gens.size(); ++b)
        for (std::size_t c = b + 1; c < gens.size(); ++c) d = oracle::gcd(d, oracle::det3(gens[a], gens[b], gens[c]));
    CHECK(Integer(d) == i);
  }
}

TEST_CASE("direction independence of the intersection lattice") {
  std::mt19937_64 rng(103);
  for (int t = 0; t < 200; ++t) {
    IntMatrix m = random_gluing_matrix(rng);
    Lattice pw = intersection_lattice(m);
    Lattice pmw = intersection_lattice(*integer_inverse(m));
    IntVector moved = *integer_inverse(m) * pw.basis_vector(0);
    CHECK(hnf(IntMatrix::from_rows({moved}, 3)) == pmw);
  }
}

TEST_CASE("vertex_invariants examples") {
  // Alternating construction: f1 and f2 classes.
  auto alt = gen_alternating_cycle(4);
  auto vi = vertex_invariants(alt, 1);
  CHECK(vi.type == 2);
  CHECK(vi.classes[0].lattice == L({{1, 0}}));
  CHECK(vi.classes[1].lattice == L({{0, 1}}));
  CHECK(vi.j == 1);
  CHECK(manifold_type(alt) == 2);

  auto cyc = gen_cycle_example(3, false);
  auto v1 = vertex_invariants(cyc, 0);
  CHECK(v1.type == 1);
  CHECK(v1.p_v == Lattice::full(2));
  CHECK(v1.j == 1);
  CHECK(manifold_type(cyc) == 1);

  auto mixed = two_class_vertex({1, 1}, {1, -1});
  auto va = vertex_invariants(mixed, 0);
  CHECK(va.type == 2);
  CHECK(va.j == 2);
  CHECK(va.p_v == L({{1, 1}, {1, -1}}));
}

TEST_CASE("self-loop with two distinct classes has type 2") {
  GraphManifold loop({{"a", 1, 2}}, {{"e1", {"a", 0}, {"a", 1}, GluingMatrix{{0, 0, -1}, {1, 0, 0}, {0, 1, 0}}}});
  REQUIRE(validate(loop).valid());
  CHECK(manifold_type(loop) == 2);
}

TEST_CASE("three classes give type 3") {
  GraphManifold g({{"a", 0, 3}, {"b", 0, 3}},
                  {{"e1", {"a", 0}, {"b", 0}, GluingMatrix(gluing_with_intersections({1, 0}, {1, 0}))},
                   {"e2", {"a", 1}, {"b", 1}, GluingMatrix(gluing_with_intersections({0, 1}, {0, 1}))},
                   {"e3", {"a", 2}, {"b", 2}, GluingMatrix(gluing_with_intersections({1, 1}, {1, 1}))}});
  REQUIRE(validate(g).valid());
  auto vi = vertex_invariants(g, 0);
  CHECK(vi.type == 3);
  CHECK_THROWS_AS(require_type_at_most_two(vi), TypeTooLarge);
}

TEST_CASE("basis changes leave the invariants alone") {
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    std::mt19937_64 rng(seed);
    RandomOptions opts;
    opts.target = seed % 2 ? RandomTarget::Unconstrained : RandomTarget::MixedSecondary;
    opts.max_vertices = 5;
    GraphManifold g = gen_random(seed, opts);
    BasisChange h = random_basis_change(g, rng);
    GraphManifold g2 = apply_basis_change(g, h);
    auto a = compute_invariants(g), b = compute_invariants(g2);
    CHECK(a.manifold_type == b.manifold_type);
    for (std::size_t e = 0; e < a.edges.size(); ++e) CHECK(a.edges[e].i == b.edges[e].i);
    for (std::size_t v = 0; v < a.vertices.size(); ++v) {
      CHECK(a.vertices[v].type == b.vertices[v].type);
      CHECK(a.vertices[v].j == b.vertices[v].j);
      // Same partition of the ends, lattices moved by sigma^{-1}.
      std::vector<std::vector<DirectedEdge>> pa, pb;
      for (auto& c : a.vertices[v].classes) pa.push_back(c.ends);
      for (auto& c : b.vertices[v].classes) pb.push_back(c.ends);
      std::sort(pa.begin(), pa.end());
      std::sort(pb.begin(), pb.end());
      CHECK(pa == pb);
      IntMatrix sinv = *integer_inverse(h.frames[v].sigma);
      for (const auto& c : a.vertices[v].classes) {
        IntVector moved = sinv * c.lattice.basis_vector(0);
        auto k = b.vertices[v].class_of(c.ends.front());
        REQUIRE(k.has_value());
        CHECK(hnf(IntMatrix::from_rows({moved}, 2)) == b.vertices[v].classes[*k].lattice);
      }
    }
  }
}

TEST_CASE("each edge lattice lies in P_v") {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    RandomOptions opts;
    opts.target = RandomTarget::MixedSecondary;
    GraphManifold g = gen_random(seed, opts);
    for (std::size_t v = 0; v < g.blocks().size(); ++v) {
      auto vi = vertex_invariants(g, v);
      for (const auto& c : vi.classes) CHECK(vi.p_v.contains(c.lattice));
    }
  }
}
