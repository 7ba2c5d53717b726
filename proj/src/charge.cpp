#include "graphmanifold/charge.hpp"

#include "graphmanifold/errors.hpp"

namespace gm {

namespace {

IntVector fiber_part(std::span<const Integer> v) { return {v[1], v[2]}; }

Rational rdet2(const RatVector& a, const RatVector& b) { return a[0] * b[1] - a[1] * b[0]; }

RatVector to_rat(const IntVector& v) { return {v.begin(), v.end()}; }

}  // namespace

RatVector projection_D(const GraphManifold& g, DirectedEdge w, const RatVector& q) {
  IntMatrix m = g.gluing(w);
  RatMatrix d = to_rational(m.block(1, 1, 2, 2));
  RatVector via_d = d * q;
  RatVector in_lw = to_rational(m) * RatVector{0, q[0], q[1]};
  if (via_d[0] != in_lw[1] || via_d[1] != in_lw[2]) throw InternalError("projection D_w disagrees with d_w");
  return via_d;
}

IntersectionOrientation intersection_orientation(const GraphManifold& g, DirectedEdge w) {
  IntMatrix m = g.gluing(w);
  auto minv = integer_inverse(m);
  if (!minv) throw NotUnimodular("gluing of " + g.end_label(w) + " is not unimodular");

  IntersectionOrientation o;
  o.p = intersection_lattice(m).basis_vector(0);
  for (int attempt = 0; attempt < 2; ++attempt) {
    o.p_near = fiber_part(o.p);
    IntVector far = *minv * o.p;
    if (far[0] != 0) throw InternalError("intersection generator leaves F_-w");
    o.p_far = fiber_part(far);
    o.x = complete_basis_2d(o.p_near);
    o.y = complete_basis_2d(o.p_far);
    IntMatrix cols(3, 3);
    IntVector x3{0, o.x[0], o.x[1]};
    IntVector y3 = m * IntVector{0, o.y[0], o.y[1]};
    for (std::size_t r = 0; r < 3; ++r) {
      cols(r, 0) = o.p[r];
      cols(r, 1) = x3[r];
      cols(r, 2) = y3[r];
    }
    o.orientation_det = determinant(cols);
    if (o.orientation_det > 0) return o;
    if (o.orientation_det == 0) break;
    for (auto& c : o.p) c = -c;
  }
  throw InternalError("no admissible orientation for " + g.end_label(w));
}

Rational edge_alpha(const IntersectionOrientation& o, const RatVector& q) {
  return rdet2(q, to_rat(o.p_far));
}

SpaceQ space_Q(const GraphManifold& g, std::size_t v) {
  SpaceQ s;
  s.ends = g.boundary(v);
  std::size_t k = s.ends.size();
  RatMatrix sys(k, 2 * k + 1);
  for (std::size_t i = 0; i < k; ++i) {
    auto o = intersection_orientation(g, s.ends[i]);
    // det2(q, p) = q0 p1 - q1 p0 = alpha
    sys(i, 2 * i) = o.p_far[1];
    sys(i, 2 * i + 1) = -o.p_far[0];
    sys(i, 2 * k) = -1;
  }
  s.basis = rat_kernel(sys);
  RatMatrix with_alpha(k + 1, 2 * k + 1);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < 2 * k + 1; ++j) with_alpha(i, j) = sys(i, j);
  with_alpha(k, 2 * k) = 1;
  s.a_basis = rat_kernel(with_alpha);
  if (s.basis.size() != k + 1 || s.a_basis.size() != k)
    throw InternalError("block " + g.block(v).id + ": unexpected dimension of Q_v or A_v");
  return s;
}

SpaceB space_B(const GraphManifold& g, std::size_t v) {
  SpaceB b;
  const auto& ends = g.boundary(v);
  for (DirectedEdge w : ends) {
    std::size_t u = g.target(w);
    VertexInvariants vu = vertex_invariants(g, u);
    if (vu.type != 2)
      throw TypeObstruction(vu.vertex_id, vu.type,
                            "block " + vu.vertex_id + " has type " + std::to_string(vu.type) +
                                "; the intersection vectors at " + g.block(v).id + " need type 2");
    auto cls = vu.class_of(w.reversed());
    if (!cls) throw InternalError("edge end missing from its parallel classes");
    IntVector vbar = vu.classes[1 - *cls].lattice.basis_vector(0);
    auto o = intersection_orientation(g, w);
    b.c.push_back(det2(vbar, o.p_far));
    b.vbar.push_back(std::move(vbar));
  }
  bool degenerate = false;
  for (const auto& c : b.c) degenerate = degenerate || c == 0;
  if (!degenerate) {
    RatVector gen(2 * ends.size() + 1);
    for (std::size_t i = 0; i < ends.size(); ++i) {
      gen[2 * i] = Rational(b.vbar[i][0]) / b.c[i];
      gen[2 * i + 1] = Rational(b.vbar[i][1]) / b.c[i];
    }
    gen.back() = 1;
    b.generator = std::move(gen);
  }
  return b;
}

RatVector apply_charge(const GraphManifold& g, std::size_t v, const RatVector& q) {
  const auto& ends = g.boundary(v);
  if (q.size() < 2 * ends.size()) throw std::invalid_argument("apply_charge: vector too short");
  RatVector out{0, 0};
  for (std::size_t i = 0; i < ends.size(); ++i) {
    Rational inv_i(1, intersection_number(g.edge(ends[i].edge).gluing));
    RatVector d = projection_D(g, ends[i], {q[2 * i], q[2 * i + 1]});
    out[0] += inv_i * d[0];
    out[1] += inv_i * d[1];
  }
  return out;
}

ChargeMap charge_map(const GraphManifold& g, std::size_t v, const SpaceQ& q) {
  ChargeMap cm;
  cm.on_basis = RatMatrix(2, q.basis.size());
  for (std::size_t j = 0; j < q.basis.size(); ++j) {
    RatVector kv = apply_charge(g, v, q.basis[j]);
    cm.on_basis(0, j) = kv[0];
    cm.on_basis(1, j) = kv[1];
  }
  for (const auto& coeffs : rat_kernel(cm.on_basis)) {
    RatVector x(q.basis.front().size());
    for (std::size_t j = 0; j < coeffs.size(); ++j)
      for (std::size_t r = 0; r < x.size(); ++r) x[r] += coeffs[j] * q.basis[j][r];
    if (x.back() != 0) cm.charge_vanishing = true;
    cm.kernel.push_back(std::move(x));
  }
  return cm;
}

ChargeMap charge_map(const GraphManifold& g, std::size_t v) { return charge_map(g, v, space_Q(g, v)); }

ChargeData charge_data(const GraphManifold& g, std::size_t v) {
  ChargeData cd;
  cd.vertex_id = g.block(v).id;
  SpaceQ q = space_Q(g, v);
  cd.dim_q = q.basis.size();
  cd.dim_a = q.a_basis.size();
  ChargeMap cm = charge_map(g, v, q);
  cd.kernel = cm.kernel;
  cd.charge_vanishing = cm.charge_vanishing;
  try {
    cd.b = space_B(g, v);
    if (cd.b->generator) cd.k_of_b = apply_charge(g, v, *cd.b->generator);
    else cd.k_of_b = RatVector{0, 0};
  } catch (const TypeObstruction& e) {
    cd.b_obstruction = e.what();
  }
  return cd;
}

std::string status_name(VerdictStatus s) {
  switch (s) {
    case VerdictStatus::Pass: return "pass";
    case VerdictStatus::Refuted: return "refuted";
    case VerdictStatus::NotApplicable: return "not-applicable";
  }
  return "unknown";
}

OrthogonalityVerdict orthogonality_criterion(const GraphManifold& g) {
  require_valid(g);
  OrthogonalityVerdict verdict;
  std::vector<VertexInvariants> vis;
  for (std::size_t v = 0; v < g.blocks().size(); ++v) {
    vis.push_back(vertex_invariants(g, v));
    if (vis.back().type != 2 && verdict.status == VerdictStatus::Pass) {
      verdict.status = VerdictStatus::NotApplicable;
      verdict.location = vis.back().vertex_id;
      verdict.detail = "block " + vis.back().vertex_id + " has type " + std::to_string(vis.back().type) +
                       "; the criterion needs type 2 everywhere";
    }
  }
  if (verdict.status == VerdictStatus::NotApplicable) return verdict;

  auto fail = [&](int condition, const std::string& where, const std::string& detail) {
    if (verdict.status == VerdictStatus::Refuted) return;
    verdict.status = VerdictStatus::Refuted;
    verdict.failing_condition = condition;
    verdict.location = where;
    verdict.detail = detail;
  };

  for (const auto& e : g.edges()) {
    Integer i = intersection_number(e.gluing);
    verdict.condition1.push_back({e.id, i == 1});
    if (i != 1) fail(1, e.id, "intersection number " + i.get_str());
  }
  for (const auto& vi : vis) {
    verdict.condition2.push_back({vi.vertex_id, vi.j == 1});
    if (vi.j != 1) fail(2, vi.vertex_id, "secondary intersection number " + vi.j.get_str());
  }
  for (std::size_t v = 0; v < g.blocks().size(); ++v) {
    SpaceB b = space_B(g, v);
    bool ok = true;
    std::string detail;
    if (b.generator) {
      RatVector k = apply_charge(g, v, *b.generator);
      ok = k[0] == 0 && k[1] == 0;
      detail = "K_v(B_v) = " + to_string(std::span<const Rational>(k));
    }
    verdict.condition3.push_back({vis[v].vertex_id, ok});
    if (!ok) fail(3, vis[v].vertex_id, detail);
  }
  return verdict;
}

}  // namespace gm
