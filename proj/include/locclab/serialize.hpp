#pragma once

// JSON forms. Complex numbers are [re, im] pairs; operators are flattened
// row-major.
//
//   state:    { "dim_a", "dim_b", "amplitudes": [[re, im], ...] }
//   operator: { "dim_a", "dim_b", "matrix": [[re, im], ...] }
//   UPB:      { "name", "dim_a", "dim_b", "members": [ { "a": [...], "b": [...] } ] }

#include <nlohmann/json.hpp>

#include "locclab/canonical.hpp"
#include "locclab/hilbert.hpp"
#include "locclab/upb.hpp"
#include "locclab/witness.hpp"

namespace locc {

using json = nlohmann::json;

json to_json(const Vec& v);
Vec vec_from_json(const json& j);

json to_json(const PureState& s);
json to_json(const DensityOperator& rho);
json to_json(const ProductState& p);
json to_json(const UpbCandidate& c);
json to_json(const CanonicalPair& pair);
json to_json(const WitnessReport& r);
json to_json(const UpbVerdict& v);

PureState pure_state_from_json(const json& j);
DensityOperator density_from_json(const json& j);
ProductState product_state_from_json(const json& j);
UpbCandidate upb_from_json(const json& j);

// Reads and parses a file; errors surface as ValidationError.
json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const json& j);

}  // namespace locc
