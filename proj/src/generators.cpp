#include "graphmanifold/generators.hpp"

#include <algorithm>
#include <numeric>

#include "graphmanifold/errors.hpp"
#include "graphmanifold/invariants.hpp"

namespace gm {

namespace {

std::string vertex_name(std::size_t i) { return "v" + std::to_string(i + 1); }
std::string edge_name(std::size_t i) { return "e" + std::to_string(i + 1); }

int uniform(std::mt19937_64& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

GraphManifold assemble(const Shape& shape, const std::vector<IntMatrix>& gluings) {
  if (gluings.size() != shape.edges.size()) throw std::invalid_argument("one gluing per edge required");
  auto deg = shape.degrees();
  std::vector<BlockSpec> blocks;
  for (std::size_t v = 0; v < shape.vertices; ++v) blocks.push_back({vertex_name(v), deg[v] <= 2 ? 1 : 0, deg[v]});

  std::vector<std::vector<bool>> used(shape.vertices);
  for (std::size_t v = 0; v < shape.vertices; ++v) used[v].assign(deg[v], false);
  for (const auto& e : shape.edges) {
    if (e.from_slot >= 0) used[e.from][e.from_slot] = true;
    if (e.to_slot >= 0) used[e.to][e.to_slot] = true;
  }
  auto next_free = [&](std::size_t v) {
    for (std::size_t s = 0; s < used[v].size(); ++s)
      if (!used[v][s]) {
        used[v][s] = true;
        return static_cast<int>(s);
      }
    throw InternalError("shape slot assignment ran out of slots");
  };

  std::vector<Edge> edges;
  for (std::size_t k = 0; k < shape.edges.size(); ++k) {
    const auto& e = shape.edges[k];
    int fs = e.from_slot >= 0 ? e.from_slot : next_free(e.from);
    int ts = e.to_slot >= 0 ? e.to_slot : next_free(e.to);
    edges.push_back({edge_name(k), {vertex_name(e.from), fs}, {vertex_name(e.to), ts}, GluingMatrix(gluings[k])});
  }
  return GraphManifold(std::move(blocks), std::move(edges));
}

bool all_unit(const GraphManifold& g, bool require_type_two) {
  for (const auto& e : g.edges())
    if (content(e.gluing.b()) != 1) return false;
  for (std::size_t v = 0; v < g.blocks().size(); ++v) {
    auto vi = vertex_invariants(g, v);
    if (vi.j != 1) return false;
    if (require_type_two && vi.type != 2) return false;
  }
  return true;
}

// Per vertex, a fiber-class label (0 or 1) for every incident end such that
// each vertex of degree >= 2 sees both labels.
std::vector<std::array<int, 2>> random_end_labels(const Shape& shape, std::mt19937_64& rng) {
  std::vector<std::vector<std::pair<std::size_t, int>>> ends(shape.vertices);
  for (std::size_t k = 0; k < shape.edges.size(); ++k) {
    ends[shape.edges[k].from].push_back({k, 0});
    ends[shape.edges[k].to].push_back({k, 1});
  }
  std::vector<std::array<int, 2>> label(shape.edges.size());
  for (std::size_t v = 0; v < shape.vertices; ++v) {
    auto& list = ends[v];
    std::vector<int> lab(list.size());
    for (auto& l : lab) l = uniform(rng, 0, 1);
    if (list.size() >= 2) {
      std::size_t i = rng() % list.size(), j = rng() % (list.size() - 1);
      if (j >= i) ++j;
      lab[i] = 0;
      lab[j] = 1;
    }
    for (std::size_t k = 0; k < list.size(); ++k) label[list[k].first][list[k].second] = lab[k];
  }
  return label;
}

}  // namespace

std::vector<int> Shape::degrees() const {
  std::vector<int> d(vertices, 0);
  for (const auto& e : edges) {
    ++d.at(e.from);
    ++d.at(e.to);
  }
  return d;
}

Shape cycle_shape(std::size_t k) {
  if (k < 1) throw std::invalid_argument("cycle needs at least one vertex");
  Shape s{k, {}};
  for (std::size_t i = 0; i < k; ++i) s.edges.push_back({i, (i + 1) % k, 1, 0});
  return s;
}

Shape theta_shape() { return {2, {{0, 1}, {0, 1}, {0, 1}}}; }

Shape complete_shape(std::size_t n) {
  if (n < 2 || n > 6) throw std::invalid_argument("complete graphs are supported for 2..6 vertices");
  Shape s{n, {}};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) s.edges.push_back({i, j});
  return s;
}

Shape random_shape(std::mt19937_64& rng, std::size_t n, int min_degree) {
  if (n < 1) throw std::invalid_argument("random shape needs a vertex");
  Shape s{n, {}};
  for (std::size_t v = 1; v < n; ++v) s.edges.push_back({static_cast<std::size_t>(rng() % v), v});
  int extra = uniform(rng, 0, static_cast<int>(n) / 2);
  for (int k = 0; k < extra && n > 1; ++k) {
    std::size_t a = rng() % n, b = rng() % n;
    if (a != b) s.edges.push_back({a, b});
  }
  for (;;) {
    auto deg = s.degrees();
    std::vector<std::size_t> low;
    for (std::size_t v = 0; v < n; ++v)
      if (deg[v] < min_degree) low.push_back(v);
    if (low.empty()) break;
    std::size_t a = low[0];
    std::size_t b;
    if (low.size() > 1) {
      b = low[1 + rng() % (low.size() - 1)];
    } else if (n > 1) {
      do b = rng() % n; while (b == a);
    } else {
      b = a;  // single vertex: a self-loop
    }
    s.edges.push_back({a, b});
  }
  return s;
}

IntMatrix permutation_matrix(const PermutationGluing& p) {
  std::array<int, 3> sorted = p.perm;
  std::sort(sorted.begin(), sorted.end());
  if (sorted != std::array<int, 3>{0, 1, 2}) throw BadPermutation("not a permutation of the slots z, f1, f2");
  if (p.perm[0] == 0) throw BadPermutation("the permutation fixes the z slot");
  IntMatrix m(3, 3);
  for (std::size_t j = 0; j < 3; ++j) {
    if (p.signs[j] != 1 && p.signs[j] != -1) throw BadPermutation("signs must be +1 or -1");
    m(p.perm[j], j) = p.signs[j];
  }
  if (determinant(m) == 1)
    for (std::size_t r = 0; r < 3; ++r) m(r, 0) = -m(r, 0);
  return m;
}

PermutationGluing permutation_for_axes(int from_axis, int to_axis) {
  if (from_axis == 1 && to_axis == 1) return {{2, 1, 0}, {1, 1, 1}};
  if (from_axis == 2 && to_axis == 2) return {{1, 0, 2}, {1, 1, 1}};
  if (from_axis == 2 && to_axis == 1) return {{1, 2, 0}, {1, 1, 1}};
  if (from_axis == 1 && to_axis == 2) return {{2, 0, 1}, {1, 1, 1}};
  throw std::invalid_argument("fiber axes are 1 or 2");
}

GraphManifold gen_orthogonal(const Shape& shape, const std::vector<PermutationGluing>& perms) {
  std::vector<IntMatrix> gl;
  for (const auto& p : perms) gl.push_back(permutation_matrix(p));
  GraphManifold g = assemble(shape, gl);
  require_valid(g);
  if (!all_unit(g, false)) throw InternalError("orthogonal manifold with a non-unit intersection number");
  return g;
}

GraphManifold gen_alternating_cycle(std::size_t k) {
  std::vector<PermutationGluing> perms;
  for (std::size_t i = 0; i < k; ++i) perms.push_back(i % 2 == 0 ? permutation_for_axes(1, 1) : permutation_for_axes(2, 2));
  return gen_orthogonal(cycle_shape(k), perms);
}

GraphManifold gen_random_orthogonal(const Shape& shape, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  static const std::array<std::array<int, 3>, 4> moving{{{1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};
  std::vector<PermutationGluing> perms;
  for (std::size_t k = 0; k < shape.edges.size(); ++k) {
    PermutationGluing p;
    p.perm = moving[rng() % 4];
    for (auto& s : p.signs) s = (rng() % 2) ? -1 : 1;
    perms.push_back(p);
  }
  return gen_orthogonal(shape, perms);
}

GraphManifold gen_cycle_example(std::size_t k, bool perturbed) {
  if (k < 3) throw std::invalid_argument("the cycle example needs k >= 3");
  std::vector<IntMatrix> gl(k, IntMatrix{{0, 0, 1}, {0, 1, 0}, {1, 0, 0}});
  if (perturbed) gl[1] = IntMatrix{{0, 0, 1}, {0, 1, 1}, {1, 0, 0}};
  GraphManifold g = assemble(cycle_shape(k), gl);
  require_valid(g);
  if (!all_unit(g, false)) throw InternalError("cycle example has a non-unit intersection number");
  return g;
}

IntMatrix gluing_with_intersections(const IntVector& p, const IntVector& q) {
  IntVector x = complete_basis_2d(p), y = complete_basis_2d(q);
  IntMatrix bv{{1, 0, 0}, {0, p[0], x[0]}, {0, p[1], x[1]}};
  IntMatrix bu{{1, 0, 0}, {0, q[0], y[0]}, {0, q[1], y[1]}};
  IntMatrix swap{{0, 0, 1}, {0, 1, 0}, {1, 0, 0}};
  return bv * swap * *integer_inverse(bu);
}

IntMatrix random_gluing_matrix(std::mt19937_64& rng, int bound) {
  for (;;) {
    IntMatrix m = IntMatrix::identity(3);
    int steps = uniform(rng, 2, 8);
    for (int s = 0; s < steps; ++s) {
      std::size_t i = rng() % 3, j = rng() % 3;
      if (i == j) continue;
      IntMatrix e = IntMatrix::identity(3);
      e(i, j) = uniform(rng, -3, 3);
      IntMatrix next = (rng() % 2) ? m * e : e * m;
      bool small = true;
      for (std::size_t r = 0; r < 3; ++r)
        for (std::size_t c = 0; c < 3; ++c) small = small && abs(next(r, c)) <= bound;
      if (small) m = std::move(next);
    }
    // Row or column swaps reach the permutation-like part of GL_3(Z).
    if (rng() % 2) {
      std::size_t a = rng() % 3, b = (a + 1 + rng() % 2) % 3;
      IntMatrix p = IntMatrix::identity(3);
      p(a, a) = p(b, b) = 0;
      p(a, b) = p(b, a) = 1;
      m = m * p;
    }
    if (determinant(m) == 1) {
      std::size_t r = rng() % 3;
      for (std::size_t c = 0; c < 3; ++c) m(r, c) = -m(r, c);
    }
    if (GluingMatrix(m).is_valid()) return m;
  }
}

BasisChange random_basis_change(const GraphManifold& g, std::mt19937_64& rng, int bound) {
  BasisChange h = BasisChange::identity(g);
  for (auto& f : h.frames) {
    IntMatrix s = IntMatrix::identity(2);
    int steps = uniform(rng, 0, 3);
    for (int k = 0; k < steps; ++k) {
      IntMatrix e = IntMatrix::identity(2);
      std::size_t i = rng() % 2;
      e(i, 1 - i) = uniform(rng, -bound, bound);
      s = s * e;
    }
    if (rng() % 2) s = s * IntMatrix{{0, 1}, {1, 0}};
    if (rng() % 2)
      for (std::size_t r = 0; r < 2; ++r) s(r, 1) = -s(r, 1);
    f.sigma = s;
    f.epsilon = determinant(s) == 1 ? 1 : -1;
  }
  for (std::size_t v = 0; v < g.blocks().size(); ++v) {
    const auto& bd = g.boundary(v);
    if (bd.empty()) continue;
    IntVector sum{0, 0};
    for (std::size_t k = 0; k + 1 < bd.size(); ++k) {
      IntVector n{uniform(rng, -bound, bound), uniform(rng, -bound, bound)};
      sum[0] += n[0];
      sum[1] += n[1];
      h.shift(bd[k]) = std::move(n);
    }
    h.shift(bd.back()) = {-sum[0], -sum[1]};
  }
  return h;
}

std::string target_name(RandomTarget t) {
  switch (t) {
    case RandomTarget::TypeTwoUnit: return "i1j1type2";
    case RandomTarget::Unconstrained: return "unconstrained";
    case RandomTarget::MixedSecondary: return "mixed_j";
  }
  return "unknown";
}

GraphManifold gen_random(std::uint64_t seed, const RandomOptions& opts) {
  std::mt19937_64 rng(seed);
  if (opts.min_vertices < 1 || opts.max_vertices < opts.min_vertices)
    throw std::invalid_argument("bad vertex range");
  for (int attempt = 0; attempt < opts.attempt_budget; ++attempt) {
    std::size_t n = opts.min_vertices + rng() % (opts.max_vertices - opts.min_vertices + 1);
    switch (opts.target) {
      case RandomTarget::Unconstrained: {
        Shape s = random_shape(rng, n, 1);
        std::vector<IntMatrix> gl;
        for (std::size_t k = 0; k < s.edges.size(); ++k) gl.push_back(random_gluing_matrix(rng));
        GraphManifold g = assemble(s, gl);
        if (validate(g).valid()) return g;
        break;
      }
      case RandomTarget::TypeTwoUnit: {
        Shape s = random_shape(rng, n, 2);
        auto labels = random_end_labels(s, rng);
        bool perturb = rng() % 2;
        std::vector<IntMatrix> gl;
        for (std::size_t k = 0; k < s.edges.size(); ++k) {
          PermutationGluing p = permutation_for_axes(labels[k][0] + 1, labels[k][1] + 1);
          for (auto& sg : p.signs) sg = (rng() % 2) ? -1 : 1;
          IntMatrix m = permutation_matrix(p);
          if (perturb) {
            // Column b' gains a multiple of column a', which spans P_{|w|}.
            std::size_t a2 = labels[k][1] + 1, b2 = 3 - a2;
            int t = uniform(rng, -2, 2);
            for (std::size_t r = 0; r < 3; ++r) m(r, b2) += t * m(r, a2);
          }
          gl.push_back(std::move(m));
        }
        GraphManifold g = assemble(s, gl);
        g = apply_basis_change(g, random_basis_change(g, rng));
        if (validate(g).valid() && all_unit(g, true)) return g;
        break;
      }
      case RandomTarget::MixedSecondary: {
        Shape s = random_shape(rng, n, 2);
        auto labels = random_end_labels(s, rng);
        std::vector<std::array<IntVector, 2>> lattices(n);
        for (std::size_t v = 0; v < n; ++v) {
          int j = uniform(rng, 1, 3);
          int a = 0;
          do a = uniform(rng, -3, 3); while (std::gcd(a, j) != 1);
          IntMatrix u = IntMatrix::identity(2);
          for (int k = 0; k < 2; ++k) {
            IntMatrix e = IntMatrix::identity(2);
            std::size_t i = rng() % 2;
            e(i, 1 - i) = uniform(rng, -2, 2);
            u = u * e;
          }
          lattices[v] = {u * IntVector{1, 0}, u * IntVector{a, j}};
          for (auto& p : lattices[v]) {
            Integer c = content(p);
            for (auto& x : p) x /= c;
          }
        }
        std::vector<IntMatrix> gl;
        for (std::size_t k = 0; k < s.edges.size(); ++k)
          gl.push_back(gluing_with_intersections(lattices[s.edges[k].from][labels[k][0]],
                                                 lattices[s.edges[k].to][labels[k][1]]));
        GraphManifold g = assemble(s, gl);
        g = apply_basis_change(g, random_basis_change(g, rng));
        bool ok = validate(g).valid();
        for (const auto& e : g.edges()) ok = ok && content(e.gluing.b()) == 1;
        for (std::size_t v = 0; ok && v < n; ++v) ok = vertex_invariants(g, v).type == 2;
        if (ok) return g;
        break;
      }
    }
  }
  throw BudgetExceeded("no instance for target " + target_name(opts.target) + " within " +
                       std::to_string(opts.attempt_budget) + " attempts");
}

}  // namespace gm
