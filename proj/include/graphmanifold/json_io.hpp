#pragma once

// Reading and writing the manifold document:
//   {"schema":"gm/1","blocks":[{"id":..,"genus":..,"boundary":..}],
//    "edges":[{"id":..,"from":[v,slot],"to":[v,slot],"matrix":[[..],[..],[..]]}],
//    "convention":"C1","metadata":{..}}
// Integers above 2^53 in magnitude are written as decimal strings; the reader
// accepts numbers and strings alike.

#include <string>
#include <string_view>

#include "graphmanifold/wstructure.hpp"

namespace gm {

struct ManifoldDocument {
  GraphManifold manifold;
  /// Serialized JSON object, or empty when the document has no metadata.
  std::string metadata;
};

struct LoadOptions {
  /// Read every stored matrix as its transpose (calibration only).
  bool transpose_gluing = false;
};

/// Throws ParseError on malformed text or schema violations. Semantic rules
/// (determinants, slots, ...) are left to `validate`.
ManifoldDocument parse_document(std::string_view text, const LoadOptions& opts = {});
GraphManifold parse_manifold(std::string_view text, const LoadOptions& opts = {});

/// Compact single-line JSON followed by a newline. Byte-stable:
/// dump(parse(dump(x))) == dump(x).
std::string dump_document(const ManifoldDocument& doc);
std::string dump_manifold(const GraphManifold& g, std::string_view metadata = {});

}  // namespace gm
