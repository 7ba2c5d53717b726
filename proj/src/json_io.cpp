#include "graphmanifold/json_io.hpp"

#include <json.hpp>

#include "graphmanifold/errors.hpp"

namespace gm {

using json = nlohmann::ordered_json;

namespace {

const Integer kSafeLimit = Integer(1) << 53;

Integer read_integer(const json& j, const std::string& where) {
  if (j.is_number_integer()) {
    if (j.is_number_unsigned()) return Integer(std::to_string(j.get<std::uint64_t>()));
    return Integer(std::to_string(j.get<std::int64_t>()));
  }
  if (j.is_string()) {
    const auto& s = j.get_ref<const std::string&>();
    std::size_t start = (!s.empty() && s[0] == '-') ? 1 : 0;
    if (s.size() == start || s.find_first_not_of("0123456789", start) != std::string::npos)
      throw ParseError(where + ": \"" + s + "\" is not an integer");
    return Integer(s);
  }
  throw ParseError(where + ": expected an integer");
}

json write_integer(const Integer& x) {
  if (abs(x) <= kSafeLimit) return json(x.get_si());
  return json(x.get_str());
}

int read_small(const json& j, const std::string& where) {
  Integer x = read_integer(j, where);
  if (!x.fits_sint_p()) throw ParseError(where + ": value out of range");
  return static_cast<int>(x.get_si());
}

const json& field(const json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(where + ": missing \"" + key + "\"");
  return *it;
}

std::string read_string(const json& j, const std::string& where) {
  if (!j.is_string()) throw ParseError(where + ": expected a string");
  return j.get<std::string>();
}

EdgeEnd read_end(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2) throw ParseError(where + ": expected [vertex, slot]");
  return {read_string(j[0], where), read_small(j[1], where)};
}

}  // namespace

ManifoldDocument parse_document(std::string_view text, const LoadOptions& opts) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("document must be a JSON object");
  if (auto it = doc.find("schema"); it != doc.end() && *it != "gm/1")
    throw ParseError("unsupported schema " + it->dump());
  if (auto it = doc.find("convention"); it != doc.end() && *it != "C1")
    throw ParseError("unsupported convention " + it->dump() + " (only \"C1\" is defined)");

  const json& jblocks = field(doc, "blocks", "document");
  const json& jedges = field(doc, "edges", "document");
  if (!jblocks.is_array() || !jedges.is_array()) throw ParseError("blocks and edges must be arrays");

  std::vector<BlockSpec> blocks;
  for (std::size_t k = 0; k < jblocks.size(); ++k) {
    std::string where = "blocks[" + std::to_string(k) + "]";
    const json& b = jblocks[k];
    if (!b.is_object()) throw ParseError(where + ": expected an object");
    blocks.push_back({read_string(field(b, "id", where), where), read_small(field(b, "genus", where), where),
                      read_small(field(b, "boundary", where), where)});
  }

  std::vector<Edge> edges;
  for (std::size_t k = 0; k < jedges.size(); ++k) {
    std::string where = "edges[" + std::to_string(k) + "]";
    const json& e = jedges[k];
    if (!e.is_object()) throw ParseError(where + ": expected an object");
    const json& jm = field(e, "matrix", where);
    if (!jm.is_array() || jm.size() != 3) throw ParseError(where + ": matrix must have 3 rows");
    IntMatrix m(3, 3);
    for (std::size_t r = 0; r < 3; ++r) {
      if (!jm[r].is_array() || jm[r].size() != 3) throw ParseError(where + ": matrix rows must have 3 entries");
      for (std::size_t c = 0; c < 3; ++c) m(r, c) = read_integer(jm[r][c], where + ".matrix");
    }
    if (opts.transpose_gluing) m = m.transpose();
    edges.push_back({read_string(field(e, "id", where), where), read_end(field(e, "from", where), where + ".from"),
                     read_end(field(e, "to", where), where + ".to"), GluingMatrix(std::move(m))});
  }

  ManifoldDocument out{GraphManifold(std::move(blocks), std::move(edges)), {}};
  if (auto it = doc.find("metadata"); it != doc.end()) {
    if (!it->is_object()) throw ParseError("metadata must be an object");
    out.metadata = it->dump();
  }
  return out;
}

GraphManifold parse_manifold(std::string_view text, const LoadOptions& opts) {
  return parse_document(text, opts).manifold;
}

std::string dump_document(const ManifoldDocument& doc) {
  json out;
  out["schema"] = "gm/1";
  json blocks = json::array();
  for (const auto& b : doc.manifold.blocks())
    blocks.push_back({{"id", b.id}, {"genus", b.genus}, {"boundary", b.boundary_count}});
  out["blocks"] = std::move(blocks);
  json edges = json::array();
  for (const auto& e : doc.manifold.edges()) {
    json m = json::array();
    for (std::size_t r = 0; r < 3; ++r) {
      json row = json::array();
      for (std::size_t c = 0; c < 3; ++c) row.push_back(write_integer(e.gluing.matrix()(r, c)));
      m.push_back(std::move(row));
    }
    json item;
    item["id"] = e.id;
    item["from"] = json::array({e.from.vertex, e.from.slot});
    item["to"] = json::array({e.to.vertex, e.to.slot});
    item["matrix"] = std::move(m);
    edges.push_back(std::move(item));
  }
  out["edges"] = std::move(edges);
  out["convention"] = "C1";
  if (!doc.metadata.empty()) out["metadata"] = json::parse(doc.metadata);
  return out.dump() + "\n";
}

std::string dump_manifold(const GraphManifold& g, std::string_view metadata) {
  return dump_document({g, std::string(metadata)});
}

}  // namespace gm
