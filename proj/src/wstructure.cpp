#include "graphmanifold/wstructure.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "graphmanifold/errors.hpp"

namespace gm {

GluingMatrix::GluingMatrix(IntMatrix m) : m_(std::move(m)) {
  if (m_.rows() != 3 || m_.cols() != 3) throw std::invalid_argument("gluing matrix must be 3x3");
}

bool GluingMatrix::is_valid() const {
  return det() == -1 && (m_(0, 1) != 0 || m_(0, 2) != 0);
}

GluingMatrix reverse(const GluingMatrix& gm) {
  auto inv = integer_inverse(gm.matrix());
  if (!inv) throw NotUnimodular("gluing matrix " + to_string(gm.matrix()) + " is not unimodular");
  return GluingMatrix(std::move(*inv));
}

GraphManifold::GraphManifold(std::vector<BlockSpec> blocks, std::vector<Edge> edges)
    : blocks_(std::move(blocks)), edges_(std::move(edges)), boundary_(blocks_.size()) {
  std::vector<std::vector<std::pair<int, DirectedEdge>>> ends(blocks_.size());
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    for (bool fwd : {true, false}) {
      const EdgeEnd& end = fwd ? edges_[e].from : edges_[e].to;
      if (auto v = find_block(end.vertex)) ends[*v].push_back({end.slot, DirectedEdge{e, fwd}});
    }
  }
  for (std::size_t v = 0; v < blocks_.size(); ++v) {
    std::stable_sort(ends[v].begin(), ends[v].end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    for (const auto& [slot, w] : ends[v]) boundary_[v].push_back(w);
  }
}

std::optional<std::size_t> GraphManifold::find_block(std::string_view id) const {
  for (std::size_t v = 0; v < blocks_.size(); ++v)
    if (blocks_[v].id == id) return v;
  return std::nullopt;
}

std::optional<std::size_t> GraphManifold::find_edge(std::string_view id) const {
  for (std::size_t e = 0; e < edges_.size(); ++e)
    if (edges_[e].id == id) return e;
  return std::nullopt;
}

const EdgeEnd& GraphManifold::source_end(DirectedEdge w) const {
  const Edge& e = edges_.at(w.edge);
  return w.forward ? e.from : e.to;
}

std::size_t GraphManifold::source(DirectedEdge w) const {
  const EdgeEnd& end = source_end(w);
  auto v = find_block(end.vertex);
  if (!v) throw InvalidManifold("edge " + edges_.at(w.edge).id + " references unknown block " + end.vertex);
  return *v;
}

IntMatrix GraphManifold::gluing(DirectedEdge w) const {
  const GluingMatrix& gm = edges_.at(w.edge).gluing;
  if (w.forward) return gm.matrix();
  return reverse(gm).matrix();
}

std::vector<DirectedEdge> GraphManifold::directed_edges() const {
  std::vector<DirectedEdge> out;
  out.reserve(2 * edges_.size());
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    out.push_back({e, true});
    out.push_back({e, false});
  }
  return out;
}

std::string GraphManifold::end_label(DirectedEdge w) const {
  return (w.forward ? "+" : "-") + edges_.at(w.edge).id;
}

GraphManifold GraphManifold::with_gluings(const std::vector<GluingMatrix>& gluings) const {
  if (gluings.size() != edges_.size()) throw std::invalid_argument("with_gluings: wrong number of matrices");
  std::vector<Edge> edges = edges_;
  for (std::size_t e = 0; e < edges.size(); ++e) edges[e].gluing = gluings[e];
  return GraphManifold(blocks_, std::move(edges));
}

GraphManifold GraphManifold::transposed() const {
  std::vector<GluingMatrix> gl;
  gl.reserve(edges_.size());
  for (const auto& e : edges_) gl.emplace_back(e.gluing.matrix().transpose());
  return with_gluings(gl);
}

std::string rule_name(Rule r) {
  switch (r) {
    case Rule::EmptyManifold: return "empty-manifold";
    case Rule::DuplicateId: return "duplicate-id";
    case Rule::EulerCharacteristic: return "euler-characteristic";
    case Rule::UnknownVertex: return "unknown-vertex";
    case Rule::SlotRange: return "slot-range";
    case Rule::SlotPairing: return "slot-pairing";
    case Rule::Determinant: return "determinant";
    case Rule::FiberToriIdentified: return "fiber-tori-identified";
    case Rule::Connectivity: return "connectivity";
  }
  return "unknown";
}

bool ValidationReport::has(Rule r) const {
  return std::any_of(violations.begin(), violations.end(),
                     [r](const Violation& v) { return v.rule == r; });
}

ValidationReport validate(const GraphManifold& g) {
  ValidationReport report;
  auto add = [&](Rule r, std::string loc, std::string msg) {
    report.violations.push_back({r, std::move(loc), std::move(msg)});
  };

  if (g.blocks().empty()) add(Rule::EmptyManifold, "", "manifold has no blocks");

  std::set<std::string> seen;
  for (const auto& b : g.blocks()) {
    if (!seen.insert(b.id).second) add(Rule::DuplicateId, b.id, "duplicate block id " + b.id);
    if (b.genus < 0) {
      add(Rule::EulerCharacteristic, b.id, "negative genus");
    } else if (b.boundary_count < 1) {
      add(Rule::EulerCharacteristic, b.id, "base surface has no boundary");
    } else if (b.euler_characteristic() >= 0) {
      add(Rule::EulerCharacteristic, b.id,
          b.boundary_count == 1 ? "base surface is a disk" : "base surface is an annulus");
    }
  }
  seen.clear();
  for (const auto& e : g.edges())
    if (!seen.insert(e.id).second) add(Rule::DuplicateId, e.id, "duplicate edge id " + e.id);

  // Slot usage.
  std::map<std::pair<std::string, int>, int> uses;
  bool dangling = false;
  for (const auto& e : g.edges()) {
    for (const EdgeEnd* end : {&e.from, &e.to}) {
      auto v = g.find_block(end->vertex);
      if (!v) {
        add(Rule::UnknownVertex, e.id, "unknown block " + end->vertex);
        dangling = true;
        continue;
      }
      if (end->slot < 0 || end->slot >= g.block(*v).boundary_count) {
        add(Rule::SlotRange, e.id,
            "slot " + std::to_string(end->slot) + " out of range for block " + end->vertex);
        continue;
      }
      ++uses[{end->vertex, end->slot}];
    }
  }
  for (const auto& b : g.blocks()) {
    for (int s = 0; s < b.boundary_count; ++s) {
      int n = uses.count({b.id, s}) ? uses[{b.id, s}] : 0;
      if (n != 1)
        add(Rule::SlotPairing, b.id + ":" + std::to_string(s),
            "boundary slot used " + std::to_string(n) + " times");
    }
  }

  for (const auto& e : g.edges()) {
    Integer det = e.gluing.det();
    if (det != -1) add(Rule::Determinant, e.id, "det = " + det.get_str() + ", expected -1");
    auto b = e.gluing.b();
    if (b[0] == 0 && b[1] == 0)
      add(Rule::FiberToriIdentified, e.id, "b_w = 0: the gluing identifies the fiber tori");
  }

  if (!dangling && !g.blocks().empty()) {
    std::vector<std::size_t> parent(g.blocks().size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (std::size_t e = 0; e < g.edges().size(); ++e)
      parent[find(g.source({e, true}))] = find(g.source({e, false}));
    std::set<std::size_t> roots;
    for (std::size_t v = 0; v < parent.size(); ++v) roots.insert(find(v));
    if (roots.size() > 1)
      add(Rule::Connectivity, "", "graph has " + std::to_string(roots.size()) + " components");
  }
  return report;
}

void require_valid(const GraphManifold& g) {
  auto r = validate(g);
  if (!r.valid()) {
    const auto& v = r.violations.front();
    throw InvalidManifold("invalid manifold: " + rule_name(v.rule) +
                          (v.location.empty() ? "" : " at " + v.location) + ": " + v.message);
  }
}

BasisChange BasisChange::identity(const GraphManifold& g) {
  BasisChange h;
  h.frames.resize(g.blocks().size());
  h.forward_shift.assign(g.edges().size(), IntVector{0, 0});
  h.backward_shift.assign(g.edges().size(), IntVector{0, 0});
  return h;
}

IntMatrix BasisChange::matrix(const GraphManifold& g, DirectedEdge w) const {
  const VertexFrame& f = frames.at(g.source(w));
  const IntVector& n = shift(w);
  IntMatrix h(3, 3);
  h(0, 0) = f.epsilon;
  for (std::size_t i = 0; i < 2; ++i) {
    h(1 + i, 0) = n[i];
    for (std::size_t j = 0; j < 2; ++j) h(1 + i, 1 + j) = f.sigma(i, j);
  }
  return h;
}

std::vector<std::string> check_basis_change(const GraphManifold& g, const BasisChange& h) {
  std::vector<std::string> problems;
  if (h.frames.size() != g.blocks().size()) problems.push_back("frame count differs from block count");
  if (h.forward_shift.size() != g.edges().size() || h.backward_shift.size() != g.edges().size())
    problems.push_back("shift count differs from edge count");
  if (!problems.empty()) return problems;
  for (std::size_t v = 0; v < h.frames.size(); ++v) {
    const auto& f = h.frames[v];
    const std::string& id = g.block(v).id;
    if (f.epsilon != 1 && f.epsilon != -1) problems.push_back(id + ": epsilon must be +-1");
    if (f.sigma.rows() != 2 || f.sigma.cols() != 2) {
      problems.push_back(id + ": sigma must be 2x2");
      continue;
    }
    if (f.epsilon * determinant(f.sigma) != 1)
      problems.push_back(id + ": epsilon * det(sigma) != 1");
    IntVector sum{0, 0};
    for (DirectedEdge w : g.boundary(v)) {
      const IntVector& n = h.shift(w);
      if (n.size() != 2) {
        problems.push_back(g.end_label(w) + ": shift must have 2 entries");
        continue;
      }
      sum[0] += n[0];
      sum[1] += n[1];
    }
    if (sum[0] != 0 || sum[1] != 0) problems.push_back(id + ": shifts do not sum to zero");
  }
  return problems;
}

GraphManifold apply_basis_change(const GraphManifold& g, const BasisChange& h) {
  auto problems = check_basis_change(g, h);
  if (!problems.empty()) throw InvalidBasisChange(problems.front());
  std::vector<GluingMatrix> out;
  out.reserve(g.edges().size());
  for (std::size_t e = 0; e < g.edges().size(); ++e) {
    IntMatrix hw = h.matrix(g, {e, true});
    IntMatrix hmw = h.matrix(g, {e, false});
    auto hw_inv = integer_inverse(hw);
    if (!hw_inv) throw InternalError("basis change matrix is not invertible");
    out.emplace_back(*hw_inv * g.edge(e).gluing.matrix() * hmw);
  }
  return g.with_gluings(out);
}

BasisChange inverse(const GraphManifold& g, const BasisChange& h) {
  auto problems = check_basis_change(g, h);
  if (!problems.empty()) throw InvalidBasisChange(problems.front());
  BasisChange inv = h;
  for (auto& f : inv.frames) {
    auto s = integer_inverse(f.sigma);
    if (!s) throw InvalidBasisChange("sigma is not unimodular");
    f.sigma = *s;
  }
  for (DirectedEdge w : g.directed_edges()) {
    const auto& f = inv.frames[g.source(w)];
    IntVector n = f.sigma * h.shift(w);
    for (auto& x : n) x = -x * f.epsilon;
    inv.shift(w) = n;
  }
  return inv;
}

BasisChange compose(const GraphManifold& g, const BasisChange& a, const BasisChange& b) {
  BasisChange c = BasisChange::identity(g);
  for (std::size_t v = 0; v < c.frames.size(); ++v) {
    c.frames[v].epsilon = a.frames.at(v).epsilon * b.frames.at(v).epsilon;
    c.frames[v].sigma = a.frames[v].sigma * b.frames[v].sigma;
  }
  for (DirectedEdge w : g.directed_edges()) {
    const auto& fa = a.frames[g.source(w)];
    const auto& fb = b.frames[g.source(w)];
    IntVector n = fa.sigma * b.shift(w);
    for (std::size_t i = 0; i < 2; ++i) n[i] += a.shift(w)[i] * fb.epsilon;
    c.shift(w) = n;
  }
  return c;
}

Lattice fiber_lattice_of_columns(const IntMatrix& gluing) {
  IntMatrix rows(2, 3);
  for (std::size_t j = 0; j < 2; ++j)
    for (std::size_t i = 0; i < 3; ++i) rows(j, i) = gluing(i, 1 + j);
  return hnf(rows);
}

std::pair<Lattice, Lattice> fiber_lattice_at(const GraphManifold& g, DirectedEdge w) {
  Lattice own = hnf(IntMatrix{{0, 1, 0}, {0, 0, 1}});
  return {own, fiber_lattice_of_columns(g.gluing(w))};
}

bool is_signed_permutation(const IntMatrix& m) {
  if (m.rows() != m.cols()) return false;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    int row_nz = 0, col_nz = 0;
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (m(i, j) != 0) {
        if (abs(m(i, j)) != 1) return false;
        ++row_nz;
      }
      if (m(j, i) != 0) ++col_nz;
    }
    if (row_nz != 1 || col_nz != 1) return false;
  }
  return true;
}

}  // namespace gm
