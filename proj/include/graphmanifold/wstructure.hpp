#pragma once

// Combinatorial W-structure of a 4-dimensional graph-manifold: blocks, edges
// and 3x3 gluing matrices, plus Waldhausen basis changes.
//
// Convention C1: the columns of the gluing matrix g_w are the coordinates of
// (z_{-w}, f1_{-w}, f2_{-w}) in the ordered basis (z_w, f1_w, f2_w) of L_w.
// The basis (z_w, f1_w, f2_w) is declared positively oriented; det g_w = -1
// then says the gluing reverses orientation.

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "graphmanifold/lattice.hpp"

namespace gm {

struct BlockSpec {
  std::string id;
  int genus = 0;
  int boundary_count = 0;

  int euler_characteristic() const { return 2 - 2 * genus - boundary_count; }
  friend bool operator==(const BlockSpec&, const BlockSpec&) = default;
};

/// A 3x3 integer matrix read as the block matrix (a b; c d) with a scalar,
/// b a row of two, c a column of two and d a 2x2 block. Any 3x3 matrix can be
/// held; `validate` reports the ones that are not legal gluings.
class GluingMatrix {
 public:
  explicit GluingMatrix(IntMatrix m);
  GluingMatrix(std::initializer_list<std::initializer_list<Integer>> rows)
      : GluingMatrix(IntMatrix(rows)) {}

  const IntMatrix& matrix() const noexcept { return m_; }
  const Integer& a() const { return m_(0, 0); }
  IntVector b() const { return {m_(0, 1), m_(0, 2)}; }
  IntVector c() const { return {m_(1, 0), m_(2, 0)}; }
  IntMatrix d() const { return m_.block(1, 1, 2, 2); }
  Integer det() const { return determinant(m_); }

  /// det = -1 and b != 0.
  bool is_valid() const;

  friend bool operator==(const GluingMatrix&, const GluingMatrix&) = default;

 private:
  IntMatrix m_;
};

/// Exact inverse, i.e. the matrix of the opposite direction. Throws
/// NotUnimodular when |det| != 1.
GluingMatrix reverse(const GluingMatrix& gm);

struct EdgeEnd {
  std::string vertex;
  int slot = 0;
  friend bool operator==(const EdgeEnd&, const EdgeEnd&) = default;
};

/// One undirected edge. The matrix is stored for the from -> to direction.
struct Edge {
  std::string id;
  EdgeEnd from;
  EdgeEnd to;
  GluingMatrix gluing;
  friend bool operator==(const Edge&, const Edge&) = default;
};

/// A directed edge w. `forward` runs from the edge's `from` end to its `to`
/// end; the L_w it names is the boundary torus at the source end.
struct DirectedEdge {
  std::size_t edge = 0;
  bool forward = true;

  DirectedEdge reversed() const { return {edge, !forward}; }
  auto operator<=>(const DirectedEdge&) const = default;
};

class GraphManifold {
 public:
  GraphManifold() = default;
  GraphManifold(std::vector<BlockSpec> blocks, std::vector<Edge> edges);

  const std::vector<BlockSpec>& blocks() const noexcept { return blocks_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  const BlockSpec& block(std::size_t v) const { return blocks_.at(v); }
  const Edge& edge(std::size_t e) const { return edges_.at(e); }

  std::optional<std::size_t> find_block(std::string_view id) const;
  std::optional<std::size_t> find_edge(std::string_view id) const;

  const EdgeEnd& source_end(DirectedEdge w) const;
  /// Block index of the source / target of w. Throws InvalidManifold for
  /// dangling vertex references.
  std::size_t source(DirectedEdge w) const;
  std::size_t target(DirectedEdge w) const { return source(w.reversed()); }

  /// g_w in C1 for either direction (the backward one is computed).
  IntMatrix gluing(DirectedEdge w) const;

  /// The directed edges leaving block v, ordered by boundary slot.
  const std::vector<DirectedEdge>& boundary(std::size_t v) const { return boundary_.at(v); }
  std::vector<DirectedEdge> directed_edges() const;

  /// "+e1" for the forward direction of edge e1, "-e1" for the backward one.
  std::string end_label(DirectedEdge w) const;

  GraphManifold with_gluings(const std::vector<GluingMatrix>& gluings) const;
  GraphManifold transposed() const;

  friend bool operator==(const GraphManifold& a, const GraphManifold& b) {
    return a.blocks_ == b.blocks_ && a.edges_ == b.edges_;
  }

 private:
  std::vector<BlockSpec> blocks_;
  std::vector<Edge> edges_;
  std::vector<std::vector<DirectedEdge>> boundary_;
};

enum class Rule {
  EmptyManifold,
  DuplicateId,
  EulerCharacteristic,
  UnknownVertex,
  SlotRange,
  SlotPairing,
  Determinant,
  FiberToriIdentified,
  Connectivity,
};

std::string rule_name(Rule r);

struct Violation {
  Rule rule;
  std::string location;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool valid() const { return violations.empty(); }
  bool has(Rule r) const;
};

ValidationReport validate(const GraphManifold& g);

/// Throws InvalidManifold carrying the first violation.
void require_valid(const GraphManifold& g);

struct VertexFrame {
  int epsilon = 1;
  IntMatrix sigma = IntMatrix::identity(2);
};

/// An element h of the basis-transformation group: per vertex (epsilon_v,
/// sigma_v), per directed edge a shift n_w in Z^2. Acting on a basis,
/// (z_w, f_w) . h_w = (epsilon_v z_w + f_w n_w, f_w sigma_v).
struct BasisChange {
  std::vector<VertexFrame> frames;  // indexed by block
  std::vector<IntVector> forward_shift;
  std::vector<IntVector> backward_shift;

  static BasisChange identity(const GraphManifold& g);

  const IntVector& shift(DirectedEdge w) const {
    return w.forward ? forward_shift.at(w.edge) : backward_shift.at(w.edge);
  }
  IntVector& shift(DirectedEdge w) {
    return w.forward ? forward_shift.at(w.edge) : backward_shift.at(w.edge);
  }

  /// The 3x3 matrix h_w = (epsilon 0; n_w sigma_v) for w in the boundary of v.
  IntMatrix matrix(const GraphManifold& g, DirectedEdge w) const;

  friend bool operator==(const BasisChange& a, const BasisChange& b) {
    if (a.frames.size() != b.frames.size()) return false;
    for (std::size_t i = 0; i < a.frames.size(); ++i)
      if (a.frames[i].epsilon != b.frames[i].epsilon || !(a.frames[i].sigma == b.frames[i].sigma))
        return false;
    return a.forward_shift == b.forward_shift && a.backward_shift == b.backward_shift;
  }
};

/// Violations of epsilon_v det(sigma_v) = 1 and sum_{w in dv} n_w = 0 (and
/// of the shape constraints). Empty means h is a member of the group.
std::vector<std::string> check_basis_change(const GraphManifold& g, const BasisChange& h);

/// Every g_w becomes h_w^{-1} g_w h_{-w}. Throws InvalidBasisChange.
GraphManifold apply_basis_change(const GraphManifold& g, const BasisChange& h);

BasisChange inverse(const GraphManifold& g, const BasisChange& h);
/// The change "first apply a, then b".
BasisChange compose(const GraphManifold& g, const BasisChange& a, const BasisChange& b);

/// (F_w, F_{-w}) in the L_w coordinates (z_w, f1_w, f2_w).
std::pair<Lattice, Lattice> fiber_lattice_at(const GraphManifold& g, DirectedEdge w);
Lattice fiber_lattice_of_columns(const IntMatrix& gluing);

/// Exactly one nonzero entry, equal to +-1, in every row and column.
bool is_signed_permutation(const IntMatrix& m);

}  // namespace gm
