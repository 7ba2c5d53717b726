#include "graphmanifold/transform.hpp"

#include <algorithm>
#include <sstream>

#include "graphmanifold/errors.hpp"

namespace gm {

void Ledger::add(std::string check, std::string location, bool passed, std::string detail, std::string kind) {
  entries.push_back({std::move(check), std::move(location), passed, std::move(kind), std::move(detail)});
}

bool Ledger::all_passed() const {
  return std::all_of(entries.begin(), entries.end(), [](const LedgerEntry& e) { return e.passed; });
}

void Ledger::append(const Ledger& other, const std::string& prefix) {
  for (auto e : other.entries) {
    e.check = prefix + e.check;
    entries.push_back(std::move(e));
  }
}

namespace {

IntMatrix frame_matrix(int epsilon, const IntMatrix& sigma) {
  IntMatrix h(3, 3);
  h(0, 0) = epsilon;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) h(1 + i, 1 + j) = sigma(i, j);
  return h;
}

IntMatrix z_shift(const IntVector& delta) {
  IntMatrix b = IntMatrix::identity(3);
  b(1, 0) = delta[0];
  b(2, 0) = delta[1];
  return b;
}

IntMatrix adjugate3(const IntMatrix& m) {
  IntMatrix adj(3, 3);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      std::size_t r0 = (j + 1) % 3, r1 = (j + 2) % 3, c0 = (i + 1) % 3, c1 = (i + 2) % 3;
      adj(i, j) = m(r0, c0) * m(r1, c1) - m(r0, c1) * m(r1, c0);
    }
  return adj;
}

// a^{-1} * b when the quotient is integral.
IntMatrix left_divide(const IntMatrix& a, const IntMatrix& b) {
  Integer d = determinant(a);
  if (d == 0) throw InternalError("singular basis matrix");
  IntMatrix p = adjugate3(a) * b;
  for (std::size_t i = 0; i < p.rows(); ++i)
    for (std::size_t j = 0; j < p.cols(); ++j) {
      if (p(i, j) % d != 0) throw InternalError("basis change does not map the lattice onto itself");
      p(i, j) /= d;
    }
  return p;
}

// Fiber index (1 or 2) whose axis spans the given rank-1 lattice of L_w, or 0.
int axis_of(const Lattice& p) {
  if (p == hnf(IntMatrix{{0, 1, 0}})) return 1;
  if (p == hnf(IntMatrix{{0, 0, 1}})) return 2;
  return 0;
}

std::vector<std::string> compare_invariants(const InvariantReport& a, const InvariantReport& b) {
  std::vector<std::string> diffs;
  if (a.manifold_type != b.manifold_type) diffs.push_back("manifold type");
  for (std::size_t e = 0; e < std::min(a.edges.size(), b.edges.size()); ++e) {
    const auto& x = a.edges[e];
    const auto& y = b.edges[e];
    if (x.i != y.i) diffs.push_back(x.edge_id + ": intersection number");
    if (x.fe_index != y.fe_index) diffs.push_back(x.edge_id + ": (L_e:F_e)");
    if (!(x.p_w == y.p_w)) diffs.push_back(x.edge_id + ": intersection lattice");
    if (!(x.p_from == y.p_from) || !(x.p_to == y.p_to)) diffs.push_back(x.edge_id + ": fiber intersection");
  }
  for (std::size_t v = 0; v < std::min(a.vertices.size(), b.vertices.size()); ++v) {
    const auto& x = a.vertices[v];
    const auto& y = b.vertices[v];
    if (x.type != y.type) diffs.push_back(x.vertex_id + ": type");
    if (x.j != y.j) diffs.push_back(x.vertex_id + ": secondary intersection number");
    if (!(x.p_v == y.p_v)) diffs.push_back(x.vertex_id + ": P_v");
    bool same_classes = x.classes.size() == y.classes.size();
    for (std::size_t c = 0; same_classes && c < x.classes.size(); ++c)
      same_classes = x.classes[c].lattice == y.classes[c].lattice && x.classes[c].ends == y.classes[c].ends;
    if (!same_classes) diffs.push_back(x.vertex_id + ": parallel classes");
  }
  return diffs;
}

void record_invariants(Ledger& ledger, const std::string& check, const InvariantReport& before,
                       const InvariantReport& after) {
  auto diffs = compare_invariants(before, after);
  if (diffs.empty()) {
    ledger.add(check, "", true);
    return;
  }
  for (const auto& d : diffs) ledger.add(check, d.substr(0, d.find(':')), false, d);
}

}  // namespace

VertexFrame adapted_frame(const IntVector& p1, const std::optional<IntVector>& p2) {
  IntVector second = p2 ? *p2 : complete_basis_2d(p1);
  IntMatrix sigma{{p1[0], second[0]}, {p1[1], second[1]}};
  Integer d = determinant(sigma);
  if (d != 1 && d != -1) throw InvalidBasisChange("fiber generators do not form a basis");
  return {static_cast<int>(d.get_si()), sigma};
}

BasisChange adapted_basis(const GraphManifold& g) {
  BasisChange h = BasisChange::identity(g);
  for (std::size_t v = 0; v < g.blocks().size(); ++v) {
    VertexInvariants vi = vertex_invariants(g, v);
    if (vi.type > 2)
      throw TypeObstruction(vi.vertex_id, vi.type,
                            "block " + vi.vertex_id + " has type " + std::to_string(vi.type) + " (at most 2 allowed)");
    if (vi.j != 1)
      throw SecondaryIndexObstruction(vi.vertex_id, "block " + vi.vertex_id + " has secondary intersection number " +
                                                        vi.j.get_str());
    if (vi.classes.empty()) continue;
    std::optional<IntVector> p2;
    if (vi.type == 2) p2 = vi.classes[1].lattice.basis_vector(0);
    h.frames[v] = adapted_frame(vi.classes[0].lattice.basis_vector(0), p2);
  }
  return h;
}

ReglueResult reglue(const GraphManifold& g) {
  require_valid(g);
  for (const auto& e : g.edges()) {
    Integer i = intersection_number(e.gluing);
    if (i != 1)
      throw PreconditionFailed("intersection-number", e.id, "edge " + e.id + " has intersection number " + i.get_str());
  }
  for (std::size_t v = 0; v < g.blocks().size(); ++v) {
    VertexInvariants vi = vertex_invariants(g, v);
    if (vi.type > 2)
      throw PreconditionFailed("type", vi.vertex_id,
                               "block " + vi.vertex_id + " has type " + std::to_string(vi.type));
    if (vi.j != 1)
      throw PreconditionFailed("secondary-index", vi.vertex_id,
                               "block " + vi.vertex_id + " has secondary intersection number " + vi.j.get_str());
  }

  ReglueResult r;
  r.basis = adapted_basis(g);
  r.adapted = apply_basis_change(g, r.basis);

  std::vector<GluingMatrix> out;
  for (std::size_t e = 0; e < r.adapted.edges().size(); ++e) {
    const std::string& id = r.adapted.edge(e).id;
    IntMatrix m = r.adapted.edge(e).gluing.matrix();
    IntMatrix minv = reverse(r.adapted.edge(e).gluing).matrix();
    int a = axis_of(intersection_lattice(m));
    int a2 = axis_of(intersection_lattice(minv));
    if (a == 0 || a2 == 0) throw InternalError("edge " + id + ": intersection lattice is not a fiber axis");
    int b = 3 - a, b2 = 3 - a2;
    Integer s = m(0, b2), s2 = minv(0, b);
    if (abs(s) != 1 || abs(s2) != 1) throw InternalError("edge " + id + ": z-coefficient is not a unit");
    IntVector delta_from{s * m(1, b2), s * m(2, b2)};
    IntVector delta_to{s2 * minv(1, b), s2 * minv(2, b)};
    IntMatrix m2 = left_divide(z_shift(delta_from), m * z_shift(delta_to));
    r.edges.push_back({id, a, a2, delta_from, delta_to});

    bool perm = is_signed_permutation(m2) && determinant(m2) == -1;
    r.ledger.add("signed-permutation", id, perm, perm ? "" : "gluing " + to_string(m2));
    out.emplace_back(std::move(m2));
  }
  r.output = r.adapted.with_gluings(out);
  r.ledger.add("valid-output", "", validate(r.output).valid());
  record_invariants(r.ledger, "invariants-preserved", compute_invariants(r.adapted), compute_invariants(r.output));
  return r;
}

WitnessResult orthogonality_witness(const GraphManifold& g, std::size_t max_blocks) {
  require_valid(g);
  for (const auto& e : g.edges())
    if (intersection_number(e.gluing) != 1)
      throw PreconditionFailed("intersection-number", e.id, "edge " + e.id + " has intersection number " +
                                                                intersection_number(e.gluing).get_str());
  for (std::size_t v = 0; v < g.blocks().size(); ++v) {
    VertexInvariants vi = vertex_invariants(g, v);
    if (vi.type != 2)
      throw PreconditionFailed("type", vi.vertex_id, "block " + vi.vertex_id + " has type " + std::to_string(vi.type));
    if (vi.j != 1)
      throw PreconditionFailed("secondary-index", vi.vertex_id,
                               "block " + vi.vertex_id + " has secondary intersection number " + vi.j.get_str());
  }
  const std::size_t nv = g.blocks().size();
  if (nv > max_blocks)
    throw SearchBudgetExceeded(std::to_string(nv) + " blocks exceed the sign-search limit of " +
                               std::to_string(max_blocks));

  BasisChange adapted = adapted_basis(g);
  GraphManifold ga = apply_basis_change(g, adapted);

  // shift[w][sv][su]: n_w for the sign choices at source and target.
  auto directed = ga.directed_edges();
  std::vector<std::array<std::array<IntVector, 2>, 2>> shift(directed.size());
  for (std::size_t k = 0; k < directed.size(); ++k) {
    IntMatrix m = ga.gluing(directed[k]);
    int a2 = axis_of(intersection_lattice(*integer_inverse(m)));
    if (a2 == 0) throw InternalError("intersection lattice is not a fiber axis after adaptation");
    int b2 = 3 - a2;
    for (int sv = 0; sv < 2; ++sv)
      for (int su = 0; su < 2; ++su) {
        IntMatrix hv = frame_matrix(sv ? -1 : 1, IntMatrix{{1, 0}, {0, sv ? -1 : 1}});
        IntMatrix hu = frame_matrix(su ? -1 : 1, IntMatrix{{1, 0}, {0, su ? -1 : 1}});
        IntMatrix mp = hv * m * hu;  // hv is its own inverse
        Integer s = mp(0, b2);
        shift[k][sv][su] = {s * mp(1, b2), s * mp(2, b2)};
      }
  }

  WitnessResult result;
  auto residual_at = [&](std::uint64_t mask, std::size_t v) {
    IntVector sum{0, 0};
    for (DirectedEdge w : ga.boundary(v)) {
      std::size_t k = 2 * w.edge + (w.forward ? 0 : 1);
      std::size_t u = ga.target(w);
      int sv = (mask >> (nv - 1 - v)) & 1, su = (mask >> (nv - 1 - u)) & 1;
      sum[0] += shift[k][sv][su][0];
      sum[1] += shift[k][sv][su][1];
    }
    return sum;
  };
  for (std::size_t v = 0; v < nv; ++v) result.residuals.push_back({ga.block(v).id, residual_at(0, v)});

  const std::uint64_t total = std::uint64_t(1) << nv;
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    ++result.candidates_tried;
    bool ok = true;
    for (std::size_t v = 0; v < nv && ok; ++v) {
      IntVector r = residual_at(mask, v);
      ok = r[0] == 0 && r[1] == 0;
    }
    if (!ok) continue;

    Witness wit;
    BasisChange signs = BasisChange::identity(ga);
    for (std::size_t v = 0; v < nv; ++v) {
      int s = ((mask >> (nv - 1 - v)) & 1) ? -1 : 1;
      wit.signs.push_back(s);
      signs.frames[v] = {s, IntMatrix{{1, 0}, {0, s}}};
    }
    BasisChange shifts = BasisChange::identity(ga);
    for (std::size_t k = 0; k < directed.size(); ++k) {
      DirectedEdge w = directed[k];
      int sv = wit.signs[ga.source(w)] < 0, su = wit.signs[ga.target(w)] < 0;
      shifts.shift(w) = shift[k][sv][su];
    }
    wit.basis_change = compose(g, compose(g, adapted, signs), shifts);
    wit.orthogonal = apply_basis_change(g, wit.basis_change);
    for (const auto& e : wit.orthogonal.edges())
      if (!is_signed_permutation(e.gluing.matrix()) || e.gluing.det() != -1)
        throw InternalError("witness gluing of " + e.id + " is not a signed permutation: " +
                            to_string(e.gluing.matrix()));
    result.witness = std::move(wit);
    break;
  }
  return result;
}

Monomial operator*(const Monomial& a, const Monomial& b) {
  Monomial p{a.coefficient * b.coefficient, a.powers};
  p.coefficient.canonicalize();
  for (const auto& [sym, k] : b.powers) {
    int n = (p.powers[sym] += k);
    if (n == 0) p.powers.erase(sym);
  }
  return p;
}

bool operator==(const Monomial& a, const Monomial& b) {
  return a.coefficient == b.coefficient && a.powers == b.powers;
}

std::string Monomial::str() const {
  std::ostringstream num, den;
  bool has_num = false, has_den = false;
  if (coefficient.get_num() != 1 || std::all_of(powers.begin(), powers.end(), [](auto& p) { return p.second < 0; })) {
    num << coefficient.get_num().get_str();
    has_num = true;
  }
  if (coefficient.get_den() != 1) {
    den << coefficient.get_den().get_str();
    has_den = true;
  }
  for (const auto& [sym, k] : powers) {
    std::ostream& os = k > 0 ? static_cast<std::ostream&>(num) : static_cast<std::ostream&>(den);
    bool& used = k > 0 ? has_num : has_den;
    if (used) os << "*";
    os << sym;
    if (std::abs(k) != 1) os << "^" << std::abs(k);
    used = true;
  }
  std::string out = num.str();
  if (has_den) {
    std::string d = den.str();
    out += "/" + (d.find('*') != std::string::npos ? "(" + d + ")" : d);
  }
  return out;
}

namespace {

Lattice transport_fiber(const IntMatrix& m, const Lattice& in_fiber_coords) {
  IntMatrix rows(in_fiber_coords.rank(), 3);
  for (std::size_t r = 0; r < in_fiber_coords.rank(); ++r) {
    IntVector image = m * IntVector{0, in_fiber_coords.basis()(r, 0), in_fiber_coords.basis()(r, 1)};
    for (std::size_t c = 0; c < 3; ++c) rows(r, c) = image[c];
  }
  return hnf(rows);
}

// Columns: the z-pivot row of a, then the fiber basis of p.
IntMatrix unwound_basis(const Lattice& a, const Lattice& p_v) {
  IntMatrix b(3, 3);
  for (std::size_t r = 0; r < 3; ++r) b(r, 0) = a.basis()(0, r);
  for (std::size_t k = 0; k < 2; ++k) {
    b(1, 1 + k) = p_v.basis()(k, 0);
    b(2, 1 + k) = p_v.basis()(k, 1);
  }
  return b;
}

Monomial symbol(const std::string& s, int power = 1) { return Monomial{1, {{s, power}}}; }
Monomial constant(Rational c) {
  c.canonicalize();
  return Monomial{c, {}};
}

}  // namespace

UnwindResult unwind(const GraphManifold& g) {
  require_valid(g);
  UnwindResult r;
  InvariantReport before = compute_invariants(g);
  const Lattice fiber = hnf(IntMatrix{{0, 1, 0}, {0, 0, 1}});

  r.J = 1;
  for (const auto& vi : before.vertices) r.J *= vi.j;
  for (const auto& vi : before.vertices) {
    Monomial copies = symbol("N") * symbol("n_" + vi.vertex_id, -1) * constant(Rational(r.J, vi.j));
    r.vertices.push_back({vi.vertex_id, vi.p_v, vi.j, copies});
  }

  std::vector<GluingMatrix> gluings;
  for (std::size_t e = 0; e < g.edges().size(); ++e) {
    const std::string& id = g.edge(e).id;
    std::size_t v = g.source({e, true}), u = g.target({e, true});
    const auto& pv = before.vertices[v].p_v;
    const auto& pu = before.vertices[u].p_v;
    IntMatrix m = g.edge(e).gluing.matrix();
    IntMatrix minv = reverse(g.edge(e).gluing).matrix();

    Lattice pv_l = embed_fiber(pv);
    Lattice pu_l = transport_fiber(m, pu);
    if (saturate(pv_l) == saturate(pu_l))
      throw DegenerateGluing("edge " + id + ": the transported fiber lattices coincide");
    Lattice a = join(pv_l, pu_l);
    if (a.rank() != 3) throw DegenerateGluing("edge " + id + ": fiber lattices do not span L_w");
    Lattice a_back = join(embed_fiber(pu), transport_fiber(minv, pv));

    if (!(intersect(a, fiber) == pv_l))
      throw SplitFailure("edge " + id + ": P_" + before.vertices[v].vertex_id + " is not a direct factor of A_w");
    if (!(intersect(a_back, fiber) == embed_fiber(pu)))
      throw SplitFailure("edge " + id + ": P_" + before.vertices[u].vertex_id + " is not a direct factor of A_-w");

    UnwoundEdge ue;
    ue.edge_id = id;
    ue.a_w = a;
    ue.index = *index(a, Lattice::full(3));
    ue.expected_index = before.vertices[u].j * before.vertices[v].j;
    ue.i = before.edges[e].i;
    ue.basis_from = unwound_basis(a, pv);
    ue.basis_to = unwound_basis(a_back, pu);
    ue.boundary_from = symbol("n_" + before.vertices[v].vertex_id) * constant(Rational(1, before.vertices[u].j));
    ue.boundary_to = symbol("n_" + before.vertices[u].vertex_id) * constant(Rational(1, before.vertices[v].j));

    bool law = ue.index == ue.expected_index;
    std::string detail = "(L_w:A_w) = " + ue.index.get_str() + ", j_u*j_v = " + ue.expected_index.get_str();
    std::string kind = "assertion";
    if (!law && ue.index == ue.i * ue.expected_index) {
      kind = "claim-discrepancy";
      detail += "; the index equals i_w*j_u*j_v with i_w = " + ue.i.get_str();
    }
    r.ledger.add("index-law", id, law, detail, kind);

    IntMatrix g2 = left_divide(ue.basis_from, m * ue.basis_to);
    gluings.emplace_back(g2);
    bool valid = gluings.back().is_valid();
    r.ledger.add("unwound-gluing-valid", id, valid, valid ? "" : to_string(g2));

    Monomial lhs = r.vertices[v].copies * ue.boundary_from;
    Monomial rhs = r.vertices[u].copies * ue.boundary_to;
    r.ledger.add("copy-count", id, lhs == rhs, lhs.str() + " vs " + rhs.str());
    r.edges.push_back(std::move(ue));
  }
  r.output = g.with_gluings(gluings);

  InvariantReport after = compute_invariants(r.output);
  for (std::size_t e = 0; e < after.edges.size(); ++e) {
    const auto& ee = after.edges[e];
    r.ledger.add("unwound-intersection-number", ee.edge_id, ee.i == 1 && ee.fe_index == 1,
                 "i' = " + ee.i.get_str() + ", (L_e:F_e) = " + ee.fe_index.get_str());
    // Map the new intersection lattice back into the original coordinates.
    IntVector back = r.edges[e].basis_from * ee.p_w.basis_vector(0);
    bool same = hnf(IntMatrix::from_rows({back}, 3)) == before.edges[e].p_w;
    r.ledger.add("intersection-lattice-kept", ee.edge_id, same, "P'_{|w|} = " + ee.p_w.str());
  }
  for (std::size_t v = 0; v < after.vertices.size(); ++v) {
    const auto& vi = after.vertices[v];
    r.ledger.add("unwound-secondary-index", vi.vertex_id, vi.j == 1, "j' = " + vi.j.get_str());
    r.ledger.add("type-kept", vi.vertex_id, vi.type == before.vertices[v].type);
  }
  return r;
}

PipelineResult orthogonalize(const GraphManifold& g) {
  require_valid(g);
  for (std::size_t v = 0; v < g.blocks().size(); ++v) {
    VertexInvariants vi = vertex_invariants(g, v);
    if (vi.type > 2)
      throw TypeObstruction(vi.vertex_id, vi.type,
                            "block " + vi.vertex_id + " has type " + std::to_string(vi.type) + " (at most 2 allowed)");
  }
  PipelineResult p;
  p.unwound = unwind(g);
  p.ledger.append(p.unwound.ledger, "unwind/");
  p.reglued = reglue(p.unwound.output);
  p.ledger.append(p.reglued.ledger, "reglue/");
  p.output = p.reglued.output;
  return p;
}

}  // namespace gm
