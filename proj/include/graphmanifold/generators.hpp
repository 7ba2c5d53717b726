#pragma once

// Example and test-corpus manifolds: orthogonal manifolds from permutation
// data, the k-cycle example with its perturbed variant, and seeded random
// instances.

#include <array>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "graphmanifold/wstructure.hpp"

namespace gm {

struct ShapeEdge {
  std::size_t from = 0;
  std::size_t to = 0;
  int from_slot = -1;  // -1: lowest free slot, in edge order
  int to_slot = -1;
};

/// An abstract multigraph. Blocks get genus 1 when their degree is at most 2
/// and genus 0 otherwise, with one boundary slot per edge end.
struct Shape {
  std::size_t vertices = 0;
  std::vector<ShapeEdge> edges;

  std::vector<int> degrees() const;
};

/// Edge i runs from (v_i, slot 1) to (v_{i+1}, slot 0).
Shape cycle_shape(std::size_t k);
/// Two vertices joined by three edges.
Shape theta_shape();
/// Complete graph on n <= 6 vertices.
Shape complete_shape(std::size_t n);
/// Random connected multigraph on n vertices; every degree >= min_degree.
Shape random_shape(std::mt19937_64& rng, std::size_t n, int min_degree);

/// Column j of the matrix carries signs[j] in row perm[j]. The z slot must
/// move (perm[0] != 0); if the signs give det +1, column 0 is negated.
struct PermutationGluing {
  std::array<int, 3> perm{2, 1, 0};
  std::array<int, 3> signs{1, 1, 1};
};

/// Throws BadPermutation.
IntMatrix permutation_matrix(const PermutationGluing& p);

/// The permutation whose intersection lattice is the given fiber axis
/// (1 or 2) at each end.
PermutationGluing permutation_for_axes(int from_axis, int to_axis);

/// The gluing of a shape with one permutation per edge.
GraphManifold gen_orthogonal(const Shape& shape, const std::vector<PermutationGluing>& perms);

/// Even k: edges alternate between the z<->f2 and z<->f1 swaps, so every block
/// has type 2.
GraphManifold gen_alternating_cycle(std::size_t k);

/// Random permutations and signs on the given shape.
GraphManifold gen_random_orthogonal(const Shape& shape, std::uint64_t seed);

/// k-cycle of genus-1 blocks with two boundary components glued by
/// [[0,0,1],[0,1,0],[1,0,0]]; the perturbed variant uses
/// [[0,0,1],[0,1,1],[1,0,0]] on the v2 -> v3 edge.
GraphManifold gen_cycle_example(std::size_t k, bool perturbed);

/// A gluing with det -1, intersection number 1 and intersection lattice
/// <p> at the source and <q> at the target (both primitive in Z^2).
IntMatrix gluing_with_intersections(const IntVector& p, const IntVector& q);

enum class RandomTarget {
  TypeTwoUnit,     // type 2, i = 1, j = 1 everywhere
  Unconstrained,   // any valid manifold
  MixedSecondary,  // type 2, i = 1, j_v in {1, 2, 3}
};

struct RandomOptions {
  RandomTarget target = RandomTarget::TypeTwoUnit;
  std::size_t min_vertices = 2;
  std::size_t max_vertices = 8;
  int attempt_budget = 10000;
};

/// Deterministic for a fixed seed. Throws BudgetExceeded when rejection
/// sampling runs out of attempts.
GraphManifold gen_random(std::uint64_t seed, const RandomOptions& opts = {});

/// A random element of the basis-change group for g.
BasisChange random_basis_change(const GraphManifold& g, std::mt19937_64& rng, int bound = 2);

/// Product of random elementary matrices with entries bounded by `bound`,
/// det -1 and nonzero b-row.
IntMatrix random_gluing_matrix(std::mt19937_64& rng, int bound = 20);

std::string target_name(RandomTarget t);

}  // namespace gm
