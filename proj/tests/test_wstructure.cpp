#include <random>

#include "doctest.h"
#include "graphmanifold/errors.hpp"
#include "graphmanifold/wstructure.hpp"

using namespace gm;

namespace {

GraphManifold cycle(int k, const GluingMatrix& m) {
  std::vector<BlockSpec> blocks;
  std::vector<Edge> edges;
  for (int i = 0; i < k; ++i) blocks.push_back({"v" + std::to_string(i + 1), 1, 2});
  for (int i = 0; i < k; ++i)
    edges.push_back({"e" + std::to_string(i + 1), {blocks[i].id, 1}, {blocks[(i + 1) % k].id, 0}, m});
  return GraphManifold(blocks, edges);
}

const GluingMatrix kSwap{{0, 0, 1}, {0, 1, 0}, {1, 0, 0}};

}  // namespace

TEST_CASE("validate examples") {
  CHECK(validate(cycle(3, kSwap)).valid());

  auto bad = validate(cycle(3, GluingMatrix(IntMatrix::identity(3))));
  CHECK(bad.has(Rule::Determinant));
  CHECK(bad.has(Rule::FiberToriIdentified));

  GraphManifold annulus({{"a", 0, 2}, {"b", 1, 2}},
                        {{"e1", {"a", 0}, {"b", 0}, kSwap}, {"e2", {"a", 1}, {"b", 1}, kSwap}});
  auto r = validate(annulus);
  REQUIRE(r.has(Rule::EulerCharacteristic));
  CHECK(r.violations.front().message.find("annulus") != std::string::npos);
}

TEST_CASE("validate structural rules") {
  GraphManifold unused({{"a", 1, 2}, {"b", 1, 2}}, {{"e1", {"a", 0}, {"b", 0}, kSwap}});
  CHECK(validate(unused).has(Rule::SlotPairing));

  GraphManifold range({{"a", 1, 1}, {"b", 1, 1}}, {{"e1", {"a", 0}, {"b", 3}, kSwap}});
  CHECK(validate(range).has(Rule::SlotRange));

  GraphManifold unknown({{"a", 1, 1}}, {{"e1", {"a", 0}, {"zz", 0}, kSwap}});
  CHECK(validate(unknown).has(Rule::UnknownVertex));

  GraphManifold split({{"a", 1, 2}, {"b", 1, 2}},
                      {{"e1", {"a", 0}, {"a", 1}, kSwap}, {"e2", {"b", 0}, {"b", 1}, kSwap}});
  CHECK(validate(split).has(Rule::Connectivity));

  GraphManifold loop({{"a", 1, 2}}, {{"e1", {"a", 0}, {"a", 1}, kSwap}});
  CHECK(validate(loop).valid());
  CHECK(loop.boundary(0).size() == 2);

  CHECK(validate(GraphManifold()).has(Rule::EmptyManifold));
  GraphManifold dup({{"a", 1, 1}, {"a", 1, 1}}, {{"e1", {"a", 0}, {"a", 0}, kSwap}});
  CHECK(validate(dup).has(Rule::DuplicateId));
}

TEST_CASE("reverse examples") {
  CHECK(reverse(kSwap) == kSwap);
  CHECK(reverse(GluingMatrix{{0, 0, 1}, {0, 1, 1}, {1, 0, 0}}) == GluingMatrix{{0, 0, 1}, {-1, 1, 0}, {1, 0, 0}});
  CHECK(reverse(GluingMatrix{{1, 2, 0}, {0, 1, 0}, {0, 0, -1}}) == GluingMatrix{{1, -2, 0}, {0, 1, 0}, {0, 0, -1}});
  CHECK_THROWS_AS(reverse(GluingMatrix{{2, 0, 0}, {0, 1, 0}, {0, 0, 1}}), NotUnimodular);
}

namespace {

IntMatrix random_gluing(std::mt19937_64& rng) {
  // Products of elementary matrices, filtered to det -1 and b != 0.
  for (;;) {
    IntMatrix m = IntMatrix::identity(3);
    int steps = 2 + rng() % 6;
    for (int s = 0; s < steps; ++s) {
      std::size_t i = rng() % 3, j = rng() % 3;
      if (i == j) continue;
      IntMatrix e = IntMatrix::identity(3);
      e(i, j) = static_cast<int>(rng() % 5) - 2;
      IntMatrix next = m * e;
      bool small = true;
      for (std::size_t r = 0; r < 3; ++r)
        for (std::size_t c = 0; c < 3; ++c) small = small && abs(next(r, c)) <= 20;
      if (small) m = next;
    }
    std::size_t flip = rng() % 3;
    for (std::size_t c = 0; c < 3; ++c) m(flip, c) = -m(flip, c);
    GluingMatrix g(m);
    if (g.is_valid()) return m;
  }
}

}  // namespace

TEST_CASE("reverse preserves the content of the b-row and F_w != F_-w") {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 500; ++t) {
    GluingMatrix g(random_gluing(rng));
    GluingMatrix r = reverse(g);
    CHECK(reverse(r) == g);
    CHECK(r.is_valid());
    CHECK(content(g.b()) == content(r.b()));
    Lattice fw = hnf(IntMatrix{{0, 1, 0}, {0, 0, 1}});
    CHECK(fw != fiber_lattice_of_columns(g.matrix()));
  }
  // b = 0 is exactly F_w = F_-w.
  GluingMatrix degenerate{{-1, 0, 0}, {3, 1, 0}, {2, 0, 1}};
  CHECK(fiber_lattice_of_columns(degenerate.matrix()) == hnf(IntMatrix{{0, 1, 0}, {0, 0, 1}}));
}

TEST_CASE("fiber_lattice_at examples") {
  auto g = cycle(3, kSwap);
  auto [fw, fmw] = fiber_lattice_at(g, {0, true});
  CHECK(fw == hnf(IntMatrix{{0, 1, 0}, {0, 0, 1}}));
  CHECK(fmw == hnf(IntMatrix{{0, 1, 0}, {1, 0, 0}}));
  CHECK(fiber_lattice_of_columns(IntMatrix{{1, 2, 0}, {0, 1, 0}, {0, 0, -1}}) ==
        hnf(IntMatrix{{2, 1, 0}, {0, 0, 1}}));
}

TEST_CASE("basis changes") {
  auto g = cycle(3, kSwap);
  auto id = BasisChange::identity(g);
  CHECK(apply_basis_change(g, id) == g);

  // epsilon = -1 with sigma = diag(1,-1) at one vertex conjugates by diag(-1,1,-1).
  auto h = id;
  h.frames[0] = {-1, IntMatrix{{1, 0}, {0, -1}}};
  auto g2 = apply_basis_change(g, h);
  CHECK(validate(g2).valid());
  IntMatrix d{{-1, 0, 0}, {0, 1, 0}, {0, 0, -1}};
  // v1 is the source of +e1 and the target of +e3.
  CHECK(g2.edge(0).gluing.matrix() == d * kSwap.matrix());
  CHECK(g2.edge(2).gluing.matrix() == kSwap.matrix() * d);
  CHECK(g2.edge(1).gluing == kSwap);

  auto bad = id;
  bad.frames[1].epsilon = -1;
  CHECK_THROWS_AS(apply_basis_change(g, bad), InvalidBasisChange);
  auto unbalanced = id;
  unbalanced.forward_shift[0] = {1, 0};
  CHECK_THROWS_AS(apply_basis_change(g, unbalanced), InvalidBasisChange);
}

TEST_CASE("random basis changes invert and compose") {
  std::mt19937_64 rng(7);
  auto g = cycle(4, kSwap);
  auto random_change = [&]() {
    auto h = BasisChange::identity(g);
    for (auto& f : h.frames) {
      IntMatrix s = IntMatrix::identity(2);
      for (int k = 0; k < 3; ++k) {
        IntMatrix e = IntMatrix::identity(2);
        std::size_t i = rng() % 2;
        e(i, 1 - i) = static_cast<int>(rng() % 5) - 2;
        s = s * e;
      }
      if (rng() % 2) {
        for (std::size_t c = 0; c < 2; ++c) s(0, c) = -s(0, c);
      }
      f.sigma = s;
      f.epsilon = determinant(s) == 1 ? 1 : -1;
    }
    for (std::size_t v = 0; v < g.blocks().size(); ++v) {
      const auto& bd = g.boundary(v);
      IntVector sum{0, 0};
      for (std::size_t k = 0; k + 1 < bd.size(); ++k) {
        IntVector n{static_cast<int>(rng() % 7) - 3, static_cast<int>(rng() % 7) - 3};
        h.shift(bd[k]) = n;
        sum[0] += n[0];
        sum[1] += n[1];
      }
      h.shift(bd.back()) = {-sum[0], -sum[1]};
    }
    return h;
  };
  for (int t = 0; t < 50; ++t) {
    auto a = random_change(), b = random_change();
    CHECK(check_basis_change(g, a).empty());
    auto ga = apply_basis_change(g, a);
    CHECK(validate(ga).valid());
    CHECK(apply_basis_change(ga, inverse(g, a)) == g);
    CHECK(apply_basis_change(g, compose(g, a, b)) == apply_basis_change(ga, b));
    CHECK(apply_basis_change(g, compose(g, a, inverse(g, a))) == g);
  }
}

TEST_CASE("signed permutation predicate") {
  CHECK(is_signed_permutation(kSwap.matrix()));
  CHECK(is_signed_permutation(IntMatrix{{0, -1, 0}, {1, 0, 0}, {0, 0, 1}}));
  CHECK_FALSE(is_signed_permutation(IntMatrix{{0, 0, 1}, {0, 1, 1}, {1, 0, 0}}));
  CHECK_FALSE(is_signed_permutation(IntMatrix{{2, 0, 0}, {0, 1, 0}, {0, 0, 1}}));
}
