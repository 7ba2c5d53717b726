#pragma once

// JSON renderings of reports, verdicts and transformation results. Integers
// above 2^53 in magnitude become decimal strings, rationals become "p/q"
// strings unless integral.

#include <json.hpp>
#include <string>

#include "graphmanifold/charge.hpp"
#include "graphmanifold/transform.hpp"

namespace gm {

using Json = nlohmann::ordered_json;

Json to_json(const Integer& x);
Json to_json(const Rational& x);
Json to_json(std::span<const Integer> v);
Json to_json(std::span<const Rational> v);
Json to_json(const IntMatrix& m);
/// Basis rows.
Json to_json(const Lattice& l);

/// "v2" < "v10": digit runs compare by value.
bool natural_less(const std::string& a, const std::string& b);

Json manifold_json(const GraphManifold& g);
Json validation_json(const ValidationReport& r);
Json invariants_json(const GraphManifold& g, const InvariantReport& r);
Json charge_json(const GraphManifold& g, const InvariantReport& inv);
/// Types under the stored reading and under the transposed reading.
Json convention_json(const GraphManifold& g, bool loaded_transposed);
Json basis_change_json(const GraphManifold& g, const BasisChange& h);
Json verdict_json(const OrthogonalityVerdict& v);
Json witness_json(const GraphManifold& g, const WitnessResult& w);
Json ledger_json(const Ledger& l);
Json reglue_json(const ReglueResult& r);
Json unwind_json(const UnwindResult& r);
Json pipeline_json(const PipelineResult& p);

/// Indented JSON with every object-free array (vectors, matrices) on one line.
std::string render(const Json& j);

}  // namespace gm
