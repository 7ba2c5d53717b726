#pragma once

// Constructive procedures: adapted Waldhausen bases, re-gluing to orthogonal
// form, the orthogonality witness search, and unwinding of intersection
// numbers through a (symbolic) finite cover.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "graphmanifold/charge.hpp"

namespace gm {

/// One internal check performed by a transformation.
struct LedgerEntry {
  std::string check;
  std::string location;
  bool passed = true;
  /// "assertion", or "claim-discrepancy" for a failure that matches a known
  /// mismatch between the implemented mathematics and a published claim.
  std::string kind = "assertion";
  std::string detail;
};

struct Ledger {
  std::vector<LedgerEntry> entries;

  void add(std::string check, std::string location, bool passed, std::string detail = {},
           std::string kind = "assertion");
  bool all_passed() const;
  void append(const Ledger& other, const std::string& prefix);
};

/// Frame sending f^1 to p1 and f^2 to p2 (or to a completion of p1 when p2 is
/// absent), with epsilon = det sigma.
VertexFrame adapted_frame(const IntVector& p1, const std::optional<IntVector>& p2);

/// Basis change after which f^1_v spans P^1_v and, for type-2 blocks, f^2_v
/// spans P^2_v. Throws SecondaryIndexObstruction or TypeObstruction.
BasisChange adapted_basis(const GraphManifold& g);

struct RegluedEdge {
  std::string edge_id;
  int matched_from = 0;   // fiber index (1 or 2) spanning P_{|w|} at the source
  int matched_to = 0;     // same at the target
  IntVector delta_from;   // shift of z_w
  IntVector delta_to;     // shift of z_{-w}
};

struct ReglueResult {
  BasisChange basis;          // the adapted basis used
  GraphManifold adapted;      // input rewritten in that basis
  GraphManifold output;       // re-glued manifold, signed-permutation gluings
  std::vector<RegluedEdge> edges;
  Ledger ledger;
};

/// Needs i = 1 on every edge, j = 1 and type <= 2 at every block; throws
/// PreconditionFailed naming the hypothesis and the location.
ReglueResult reglue(const GraphManifold& g);

struct Witness {
  std::vector<int> signs;     // per block, the sign given to f^2
  BasisChange basis_change;   // from the input basis to the orthogonal one
  GraphManifold orthogonal;   // every gluing a signed permutation
};

struct WitnessResult {
  std::optional<Witness> witness;
  /// Per block sum of the shifts n_w in the adapted basis (all signs +); all
  /// zero exactly when a witness exists.
  std::vector<std::pair<std::string, IntVector>> residuals;
  std::uint64_t candidates_tried = 0;
};

/// Needs type 2, i = 1, j = 1 everywhere (PreconditionFailed) and at most
/// `max_blocks` blocks (SearchBudgetExceeded).
WitnessResult orthogonality_witness(const GraphManifold& g, std::size_t max_blocks = 24);

/// coefficient * prod symbol^power, for the symbolic cover bookkeeping.
struct Monomial {
  Rational coefficient = 1;
  std::map<std::string, int> powers;

  friend Monomial operator*(const Monomial& a, const Monomial& b);
  friend bool operator==(const Monomial& a, const Monomial& b);
  std::string str() const;
};

struct UnwoundVertex {
  std::string vertex_id;
  Lattice p_v;          // F_v coordinates
  Integer j;
  Monomial copies;      // (N/n_v) * (J/j_v)
};

struct UnwoundEdge {
  std::string edge_id;
  Lattice a_w;                  // L_w coordinates
  Integer index;                // (L_w : A_w)
  Integer expected_index;       // j_u * j_v
  Integer i;
  IntMatrix basis_from;         // columns (Z_w, P_v basis) in L_w coordinates
  IntMatrix basis_to;           // columns (Z_{-w}, P_u basis) in L_{-w} coordinates
  Monomial boundary_from;       // boundary tori of one source copy over this edge: n_v / j_u
  Monomial boundary_to;         // n_u / j_v
};

struct UnwindResult {
  GraphManifold output;
  std::vector<UnwoundVertex> vertices;
  std::vector<UnwoundEdge> edges;
  Integer J;                    // product of all j_v
  Ledger ledger;
};

/// Throws SplitFailure or DegenerateGluing; index-law and recomputation
/// checks go to the ledger.
UnwindResult unwind(const GraphManifold& g);

struct PipelineResult {
  UnwindResult unwound;
  ReglueResult reglued;
  Ledger ledger;
  GraphManifold output;
};

/// unwind followed by reglue. Throws TypeObstruction when some block has type
/// above 2.
PipelineResult orthogonalize(const GraphManifold& g);

}  // namespace gm
