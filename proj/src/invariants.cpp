#include "graphmanifold/invariants.hpp"

#include <algorithm>

#include "graphmanifold/errors.hpp"

namespace gm {

namespace {

const Lattice& fiber_lattice() {
  static const Lattice f = hnf(IntMatrix{{0, 1, 0}, {0, 0, 1}});
  return f;
}

}  // namespace

Lattice intersection_lattice(const IntMatrix& gluing) {
  Lattice p = saturate(intersect(fiber_lattice(), fiber_lattice_of_columns(gluing)));
  if (p.rank() != 1)
    throw RankViolation("intersection lattice of " + to_string(gluing) + " has rank " + std::to_string(p.rank()));
  return p;
}

Lattice intersection_lattice(const GraphManifold& g, DirectedEdge w) {
  return intersection_lattice(g.gluing(w));
}

Lattice drop_z(const Lattice& in_fw) {
  IntMatrix b(in_fw.rank(), 2);
  for (std::size_t r = 0; r < in_fw.rank(); ++r) {
    if (in_fw.basis()(r, 0) != 0) throw RankViolation("lattice " + in_fw.str() + " is not inside the fiber");
    b(r, 0) = in_fw.basis()(r, 1);
    b(r, 1) = in_fw.basis()(r, 2);
  }
  return hnf(b);
}

Lattice embed_fiber(const Lattice& in_fv) {
  IntMatrix b(in_fv.rank(), 3);
  for (std::size_t r = 0; r < in_fv.rank(); ++r) {
    b(r, 1) = in_fv.basis()(r, 0);
    b(r, 2) = in_fv.basis()(r, 1);
  }
  return hnf(b);
}

Integer intersection_number(const GluingMatrix& gm) { return content(gm.b()); }

std::pair<Integer, Integer> index_characterization(const GraphManifold& g, std::size_t edge) {
  const GluingMatrix& gm = g.edge(edge).gluing;
  Integer i = intersection_number(gm);
  auto idx = index(join(fiber_lattice(), fiber_lattice_of_columns(gm.matrix())), Lattice::full(3));
  if (!idx) throw RankViolation("edge " + g.edge(edge).id + ": fiber lattices span less than L_e");
  if (*idx != i)
    throw InternalError("edge " + g.edge(edge).id + ": content(b) = " + i.get_str() + " but (L_e:F_e) = " +
                        idx->get_str());
  return {i, *idx};
}

EdgeInvariants edge_invariants(const GraphManifold& g, std::size_t edge) {
  auto [i, fe] = index_characterization(g, edge);
  Lattice pw = intersection_lattice(g, {edge, true});
  Lattice pmw = intersection_lattice(g, {edge, false});
  return {g.edge(edge).id, i, fe, pw, drop_z(pw), drop_z(pmw)};
}

std::optional<std::size_t> VertexInvariants::class_of(DirectedEdge w) const {
  for (std::size_t c = 0; c < classes.size(); ++c)
    if (std::find(classes[c].ends.begin(), classes[c].ends.end(), w) != classes[c].ends.end()) return c;
  return std::nullopt;
}

VertexInvariants vertex_invariants(const GraphManifold& g, std::size_t v) {
  VertexInvariants vi;
  vi.vertex_id = g.block(v).id;
  for (DirectedEdge w : g.boundary(v)) {
    Lattice p = drop_z(intersection_lattice(g, w));
    auto it = std::find_if(vi.classes.begin(), vi.classes.end(),
                           [&](const ParallelClass& c) { return c.lattice == p; });
    if (it == vi.classes.end())
      vi.classes.push_back({p, {w}});
    else
      it->ends.push_back(w);
  }
  std::stable_sort(vi.classes.begin(), vi.classes.end(),
                   [](const ParallelClass& a, const ParallelClass& b) { return a.lattice < b.lattice; });
  vi.type = static_cast<int>(vi.classes.size());
  if (vi.type <= 1) {
    vi.p_v = Lattice::full(2);
    vi.j = 1;
  } else {
    vi.p_v = Lattice::zero(2);
    for (const auto& c : vi.classes) vi.p_v = join(vi.p_v, c.lattice);
    vi.j = *index(vi.p_v, Lattice::full(2));
  }
  return vi;
}

void require_type_at_most_two(const VertexInvariants& vi) {
  if (vi.type > 2)
    throw TypeTooLarge("block " + vi.vertex_id + " has type " + std::to_string(vi.type) + " (at most 2 supported)");
}

int manifold_type(const GraphManifold& g) {
  int t = 0;
  for (std::size_t v = 0; v < g.blocks().size(); ++v) t = std::max(t, vertex_invariants(g, v).type);
  return t;
}

InvariantReport compute_invariants(const GraphManifold& g) {
  InvariantReport r;
  for (std::size_t e = 0; e < g.edges().size(); ++e) r.edges.push_back(edge_invariants(g, e));
  for (std::size_t v = 0; v < g.blocks().size(); ++v) {
    r.vertices.push_back(vertex_invariants(g, v));
    r.manifold_type = std::max(r.manifold_type, r.vertices.back().type);
  }
  return r;
}

}  // namespace gm
