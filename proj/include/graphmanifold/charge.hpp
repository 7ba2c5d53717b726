#pragma once

// The charge map K_v on the constrained space Q_v, the subspaces A_v and B_v,
// and the three-condition orthogonality criterion for type-2 manifolds.
//
// Q_v consists of tuples (q_{-w})_{w in dv}, q_{-w} in F_{-w} (tensor Q),
// such that q_{-w} ^ p_w = alpha * u_{-w} with one alpha for all w, where p_w
// is the oriented generator of P_{|w|}. Vectors of Q_v are stored as 2k+1
// rationals: the k coordinate pairs in F_{-w} coordinates, then alpha.

#include <optional>
#include <string>
#include <vector>

#include "graphmanifold/invariants.hpp"

namespace gm {

/// D_w: F_{-w} -> F_w, the projection along z_w. Input and output in fiber
/// coordinates; computed through d_w and through L_w, and the two compared.
RatVector projection_D(const GraphManifold& g, DirectedEdge w, const RatVector& q);

struct IntersectionOrientation {
  IntVector p;        // L_w coordinates, z = 0
  IntVector p_near;   // F_w coordinates
  IntVector p_far;    // F_{-w} coordinates
  IntVector x;        // F_w coordinates, det2(p_near, x) > 0
  IntVector y;        // F_{-w} coordinates, det2(p_far, y) > 0
  Integer orientation_det;  // det(p, x, y) in L_w, always > 0
};

/// The primitive generator of P_{|w|} with the sign for which
/// det(p, x, y) > 0, where p ^ x is positive in F_w and p ^ y is positive in
/// F_{-w}.
IntersectionOrientation intersection_orientation(const GraphManifold& g, DirectedEdge w);

struct SpaceQ {
  std::vector<DirectedEdge> ends;     // the boundary of v, in order
  std::vector<RatVector> basis;       // spans Q_v, each of length 2k+1
  std::vector<RatVector> a_basis;     // spans A_v (alpha = 0)
};

SpaceQ space_Q(const GraphManifold& g, std::size_t v);

/// alpha of a q-tuple for one edge: det2(q, p_far).
Rational edge_alpha(const IntersectionOrientation& o, const RatVector& q);

struct SpaceB {
  /// Per w in dv (boundary order): the other class generator of the far block
  /// in F_{-w} coordinates, and c_w = det2(vbar, p_far).
  std::vector<IntVector> vbar;
  std::vector<Integer> c;
  /// The generator sum_w vbar_w / c_w as a Q_v vector (alpha = 1). Absent
  /// when some c_w vanishes, which makes B_v = {0}.
  std::optional<RatVector> generator;
};

/// Throws TypeObstruction naming the first neighbouring block whose type is
/// not 2.
SpaceB space_B(const GraphManifold& g, std::size_t v);

/// K_v applied to a Q_v vector: sum_w (1/i_w) D_w q_{-w}, in F_v coordinates.
RatVector apply_charge(const GraphManifold& g, std::size_t v, const RatVector& q);

struct ChargeMap {
  RatMatrix on_basis;                 // 2 x dim Q_v, columns K_v(basis_j)
  std::vector<RatVector> kernel;      // Q_v vectors spanning ker K_v
  bool charge_vanishing = false;      // some kernel vector has alpha != 0
};

ChargeMap charge_map(const GraphManifold& g, std::size_t v, const SpaceQ& q);
ChargeMap charge_map(const GraphManifold& g, std::size_t v);

struct ChargeData {
  std::string vertex_id;
  std::size_t dim_q = 0;
  std::size_t dim_a = 0;
  std::vector<RatVector> kernel;
  bool charge_vanishing = false;
  std::optional<SpaceB> b;            // absent when a neighbour has type != 2
  std::string b_obstruction;          // why b is absent
  std::optional<RatVector> k_of_b;    // K_v(B generator) when defined
};

ChargeData charge_data(const GraphManifold& g, std::size_t v);

enum class VerdictStatus { Pass, Refuted, NotApplicable };

struct OrthogonalityVerdict {
  VerdictStatus status = VerdictStatus::Pass;
  int failing_condition = 0;          // 1, 2 or 3 when refuted
  std::string location;               // edge or block id
  std::string detail;
  // Per-condition results, filled when the criterion applies.
  std::vector<std::pair<std::string, bool>> condition1;  // per edge: i = 1
  std::vector<std::pair<std::string, bool>> condition2;  // per block: j = 1
  std::vector<std::pair<std::string, bool>> condition3;  // per block: K_v(B_v) = 0
};

/// Not applicable (rather than an error) when some block has type != 2.
OrthogonalityVerdict orthogonality_criterion(const GraphManifold& g);

std::string status_name(VerdictStatus s);

}  // namespace gm
