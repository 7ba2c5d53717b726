#include "graphmanifold/report.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>

#include "graphmanifold/errors.hpp"
#include "graphmanifold/json_io.hpp"

namespace gm {

namespace {

const Integer kSafeLimit = Integer(1) << 53;

template <class T, class Key>
std::vector<std::size_t> sorted_order(const std::vector<T>& items, Key key) {
  std::vector<std::size_t> idx(items.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(),
                   [&](std::size_t a, std::size_t b) { return natural_less(key(items[a]), key(items[b])); });
  return idx;
}

}  // namespace

Json to_json(const Integer& x) {
  if (abs(x) <= kSafeLimit) return Json(x.get_si());
  return Json(x.get_str());
}

Json to_json(const Rational& x) {
  if (x.get_den() == 1) return to_json(Integer(x.get_num()));
  return Json(x.get_str());
}

Json to_json(std::span<const Integer> v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(to_json(x));
  return a;
}

Json to_json(std::span<const Rational> v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(to_json(x));
  return a;
}

Json to_json(const IntMatrix& m) {
  Json a = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) a.push_back(to_json(m.row(r)));
  return a;
}

Json to_json(const Lattice& l) { return to_json(l.basis()); }

bool natural_less(const std::string& a, const std::string& b) {
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (std::isdigit(static_cast<unsigned char>(a[i])) && std::isdigit(static_cast<unsigned char>(b[j]))) {
      std::size_t i2 = i, j2 = j;
      while (i2 < a.size() && std::isdigit(static_cast<unsigned char>(a[i2]))) ++i2;
      while (j2 < b.size() && std::isdigit(static_cast<unsigned char>(b[j2]))) ++j2;
      std::string da = a.substr(i, i2 - i), db = b.substr(j, j2 - j);
      da.erase(0, std::min(da.find_first_not_of('0'), da.size() - 1));
      db.erase(0, std::min(db.find_first_not_of('0'), db.size() - 1));
      if (da.size() != db.size()) return da.size() < db.size();
      if (da != db) return da < db;
      i = i2;
      j = j2;
    } else {
      if (a[i] != b[j]) return a[i] < b[j];
      ++i;
      ++j;
    }
  }
  if ((a.size() - i) != (b.size() - j)) return (a.size() - i) < (b.size() - j);
  return a < b;
}

Json manifold_json(const GraphManifold& g) { return Json::parse(dump_manifold(g)); }

Json validation_json(const ValidationReport& r) {
  Json out;
  out["kind"] = "validation";
  out["valid"] = r.valid();
  Json v = Json::array();
  for (const auto& x : r.violations)
    v.push_back({{"rule", rule_name(x.rule)}, {"location", x.location}, {"message", x.message}});
  out["violations"] = std::move(v);
  return out;
}

Json invariants_json(const GraphManifold& g, const InvariantReport& r) {
  Json out;
  out["kind"] = "invariants";
  out["manifoldType"] = r.manifold_type;
  Json edges = Json::array();
  for (std::size_t e : sorted_order(r.edges, [](const EdgeInvariants& x) { return x.edge_id; })) {
    const auto& x = r.edges[e];
    Json j;
    j["id"] = x.edge_id;
    j["from"] = g.edge(e).from.vertex;
    j["to"] = g.edge(e).to.vertex;
    j["i"] = to_json(x.i);
    j["FeIndex"] = to_json(x.fe_index);
    j["P"] = to_json(x.p_w);
    j["Pfrom"] = to_json(x.p_from);
    j["Pto"] = to_json(x.p_to);
    edges.push_back(std::move(j));
  }
  out["edges"] = std::move(edges);
  Json vertices = Json::array();
  for (std::size_t v : sorted_order(r.vertices, [](const VertexInvariants& x) { return x.vertex_id; })) {
    const auto& x = r.vertices[v];
    Json j;
    j["id"] = x.vertex_id;
    j["type"] = x.type;
    j["j"] = to_json(x.j);
    Json sizes = Json::array(), classes = Json::array();
    for (const auto& c : x.classes) {
      sizes.push_back(c.ends.size());
      Json ends = Json::array();
      for (auto w : c.ends) ends.push_back(g.end_label(w));
      classes.push_back({{"lattice", to_json(c.lattice)}, {"ends", std::move(ends)}});
    }
    j["classSizes"] = std::move(sizes);
    j["classes"] = std::move(classes);
    j["Pv"] = to_json(x.p_v);
    vertices.push_back(std::move(j));
  }
  out["vertices"] = std::move(vertices);
  return out;
}

Json charge_json(const GraphManifold& g, const InvariantReport& inv) {
  Json out;
  out["kind"] = "charge";
  Json vertices = Json::array();
  for (std::size_t v : sorted_order(inv.vertices, [](const VertexInvariants& x) { return x.vertex_id; })) {
    ChargeData cd = charge_data(g, v);
    bool c1 = true;
    for (DirectedEdge w : g.boundary(v)) c1 = c1 && inv.edges[w.edge].i == 1;
    bool c2 = inv.vertices[v].j == 1;
    std::optional<bool> c3;
    if (cd.k_of_b) c3 = (*cd.k_of_b)[0] == 0 && (*cd.k_of_b)[1] == 0;

    Json j;
    j["id"] = cd.vertex_id;
    j["dimQ"] = cd.dim_q;
    j["dimA"] = cd.dim_a;
    j["chargeVanishing"] = cd.charge_vanishing;
    j["conditions"] = {{"c1", c1}, {"c2", c2}, {"c3", c3 ? Json(*c3) : Json(nullptr)}};
    Json failing = Json::array();
    if (!c1) failing.push_back("c1");
    if (!c2) failing.push_back("c2");
    if (c3 && !*c3) failing.push_back("c3");
    j["failing"] = std::move(failing);
    j["KofB"] = cd.k_of_b ? to_json(std::span<const Rational>(*cd.k_of_b)) : Json(nullptr);
    if (!cd.b_obstruction.empty()) j["Bundefined"] = cd.b_obstruction;
    Json kernel = Json::array();
    for (const auto& k : cd.kernel) kernel.push_back(to_json(std::span<const Rational>(k)));
    j["kernel"] = std::move(kernel);
    vertices.push_back(std::move(j));
  }
  out["vertices"] = std::move(vertices);
  return out;
}

Json convention_json(const GraphManifold& g, bool loaded_transposed) {
  GraphManifold other = g.transposed();
  Json out;
  out["reading"] = loaded_transposed ? "transposed" : "C1";
  auto types = [](const GraphManifold& m) {
    Json t = Json::object();
    if (!validate(m).valid()) return Json(nullptr);
    for (std::size_t v = 0; v < m.blocks().size(); ++v) t[m.block(v).id] = vertex_invariants(m, v).type;
    return t;
  };
  const GraphManifold& c1 = loaded_transposed ? other : g;
  const GraphManifold& tr = loaded_transposed ? g : other;
  Json t1 = types(c1), t2 = types(tr);
  out["typesC1"] = t1;
  out["typesTransposed"] = t2;
  if (t1 != t2)
    out["note"] = "block types depend on the matrix reading; values are reported as computed";
  return out;
}

Json basis_change_json(const GraphManifold& g, const BasisChange& h) {
  Json frames = Json::array();
  for (std::size_t v = 0; v < h.frames.size(); ++v)
    frames.push_back({{"id", g.block(v).id}, {"epsilon", h.frames[v].epsilon}, {"sigma", to_json(h.frames[v].sigma)}});
  Json shifts = Json::array();
  for (DirectedEdge w : g.directed_edges())
    shifts.push_back({{"end", g.end_label(w)}, {"n", to_json(std::span<const Integer>(h.shift(w)))}});
  return {{"frames", std::move(frames)}, {"shifts", std::move(shifts)}};
}

Json verdict_json(const OrthogonalityVerdict& v) {
  Json out;
  out["kind"] = "orthogonality";
  out["status"] = status_name(v.status);
  out["failingCondition"] = v.failing_condition ? Json(v.failing_condition) : Json(nullptr);
  out["location"] = v.location.empty() ? Json(nullptr) : Json(v.location);
  out["detail"] = v.detail;
  auto list = [](const std::vector<std::pair<std::string, bool>>& xs) {
    Json a = Json::array();
    for (const auto& [id, ok] : xs) a.push_back({{"id", id}, {"ok", ok}});
    return a;
  };
  if (v.status != VerdictStatus::NotApplicable)
    out["conditions"] = {{"c1", list(v.condition1)}, {"c2", list(v.condition2)}, {"c3", list(v.condition3)}};
  return out;
}

Json witness_json(const GraphManifold& g, const WitnessResult& w) {
  Json out;
  out["found"] = w.witness.has_value();
  out["candidatesTried"] = w.candidates_tried;
  Json res = Json::array();
  for (const auto& [id, r] : w.residuals) res.push_back({{"id", id}, {"residual", to_json(std::span<const Integer>(r))}});
  out["residuals"] = std::move(res);
  if (w.witness) {
    Json signs = Json::object();
    for (std::size_t v = 0; v < w.witness->signs.size(); ++v) signs[g.block(v).id] = w.witness->signs[v];
    out["signs"] = std::move(signs);
    out["basisChange"] = basis_change_json(g, w.witness->basis_change);
    out["manifold"] = manifold_json(w.witness->orthogonal);
  }
  return out;
}

Json ledger_json(const Ledger& l) {
  Json a = Json::array();
  for (const auto& e : l.entries)
    a.push_back({{"check", e.check}, {"location", e.location}, {"passed", e.passed}, {"kind", e.kind},
                 {"detail", e.detail}});
  return a;
}

Json reglue_json(const ReglueResult& r) {
  Json out;
  out["kind"] = "reglue";
  out["status"] = r.ledger.all_passed() ? "ok" : "assertion-failed";
  out["ledger"] = ledger_json(r.ledger);
  out["adaptedBasis"] = basis_change_json(r.adapted, r.basis);
  Json edges = Json::array();
  for (const auto& e : r.edges)
    edges.push_back({{"id", e.edge_id},
                     {"matchedFrom", e.matched_from},
                     {"matchedTo", e.matched_to},
                     {"deltaFrom", to_json(std::span<const Integer>(e.delta_from))},
                     {"deltaTo", to_json(std::span<const Integer>(e.delta_to))}});
  out["edges"] = std::move(edges);
  out["output"] = manifold_json(r.output);
  return out;
}

Json unwind_json(const UnwindResult& r) {
  Json out;
  out["kind"] = "unwind";
  out["status"] = r.ledger.all_passed() ? "ok" : "assertion-failed";
  out["ledger"] = ledger_json(r.ledger);
  out["J"] = to_json(r.J);
  Json vertices = Json::array();
  for (const auto& v : r.vertices)
    vertices.push_back({{"id", v.vertex_id}, {"Pv", to_json(v.p_v)}, {"j", to_json(v.j)}, {"copies", v.copies.str()}});
  out["vertices"] = std::move(vertices);
  Json edges = Json::array();
  for (const auto& e : r.edges)
    edges.push_back({{"id", e.edge_id},
                     {"A", to_json(e.a_w)},
                     {"index", to_json(e.index)},
                     {"expectedIndex", to_json(e.expected_index)},
                     {"i", to_json(e.i)},
                     {"basisFrom", to_json(e.basis_from)},
                     {"basisTo", to_json(e.basis_to)},
                     {"boundaryFrom", e.boundary_from.str()},
                     {"boundaryTo", e.boundary_to.str()}});
  out["edges"] = std::move(edges);
  out["output"] = manifold_json(r.output);
  return out;
}

Json pipeline_json(const PipelineResult& p) {
  Json out;
  out["kind"] = "orthogonalize";
  out["status"] = p.ledger.all_passed() ? "ok" : "assertion-failed";
  out["ledger"] = ledger_json(p.ledger);
  Json unwound = unwind_json(p.unwound), reglued = reglue_json(p.reglued);
  unwound.erase("ledger");
  reglued.erase("ledger");
  out["stages"] = {{"unwind", std::move(unwound)}, {"reglue", std::move(reglued)}};
  out["output"] = manifold_json(p.output);
  return out;
}

namespace {

bool has_object(const Json& j) {
  if (j.is_object()) return true;
  if (j.is_array())
    for (const auto& x : j)
      if (has_object(x)) return true;
  return false;
}

void render_into(const Json& j, int depth, std::string& out) {
  std::string flat = j.dump();
  if (!has_object(j) || j.empty() || flat.size() + 2 * depth <= 76) {
    out += flat;
    return;
  }
  std::string pad(2 * (depth + 1), ' ');
  bool first = true;
  if (j.is_object()) {
    out += "{\n";
    for (const auto& [k, v] : j.items()) {
      if (!first) out += ",\n";
      first = false;
      out += pad + Json(k).dump() + ": ";
      render_into(v, depth + 1, out);
    }
    out += "\n" + std::string(2 * depth, ' ') + "}";
  } else {
    out += "[\n";
    for (const auto& v : j) {
      if (!first) out += ",\n";
      first = false;
      out += pad;
      render_into(v, depth + 1, out);
    }
    out += "\n" + std::string(2 * depth, ' ') + "]";
  }
}

}  // namespace

std::string render(const Json& j) {
  std::string out;
  render_into(j, 0, out);
  return out;
}

}  // namespace gm
