#pragma once

// Intersection lattices, parallelism classes, type, intersection numbers and
// secondary intersection numbers.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "graphmanifold/wstructure.hpp"

namespace gm {

/// P_{|w|} = saturate(F_w ∩ F_{-w}) in L_w coordinates. Always rank 1 for a
/// valid gluing; throws RankViolation otherwise.
Lattice intersection_lattice(const GraphManifold& g, DirectedEdge w);
Lattice intersection_lattice(const IntMatrix& gluing);

/// A lattice of L_w lying inside F_w, rewritten in F_v coordinates by dropping
/// the z coordinate. Throws RankViolation if the lattice leaves F_w.
Lattice drop_z(const Lattice& in_fw);
/// F_v coordinates to L_w coordinates (z = 0).
Lattice embed_fiber(const Lattice& in_fv);

/// i_w = content(b_w).
Integer intersection_number(const GluingMatrix& gm);

/// (content(b_w), (L_e : <F_w, F_-w>)). The two always agree; a mismatch
/// throws InternalError.
std::pair<Integer, Integer> index_characterization(const GraphManifold& g, std::size_t edge);

struct EdgeInvariants {
  std::string edge_id;
  Integer i;
  Integer fe_index;
  Lattice p_w;     // L_w coordinates, forward direction
  Lattice p_from;  // F coordinates at the source block
  Lattice p_to;    // F coordinates at the target block
};

EdgeInvariants edge_invariants(const GraphManifold& g, std::size_t edge);

struct ParallelClass {
  Lattice lattice;  // rank 1, saturated, F_v coordinates
  std::vector<DirectedEdge> ends;
};

struct VertexInvariants {
  std::string vertex_id;
  std::vector<ParallelClass> classes;  // ordered by lattice
  int type = 0;
  Lattice p_v;
  Integer j;

  /// The class containing w, or nullopt.
  std::optional<std::size_t> class_of(DirectedEdge w) const;
};

/// The classes come out in the deterministic lattice order, so classes[0] is
/// P^1_v and classes[1] is P^2_v.
VertexInvariants vertex_invariants(const GraphManifold& g, std::size_t v);

/// Throws TypeTooLarge when the vertex has more than two classes.
void require_type_at_most_two(const VertexInvariants& vi);

int manifold_type(const GraphManifold& g);

struct InvariantReport {
  std::vector<EdgeInvariants> edges;
  std::vector<VertexInvariants> vertices;
  int manifold_type = 0;
};

InvariantReport compute_invariants(const GraphManifold& g);

}  // namespace gm
