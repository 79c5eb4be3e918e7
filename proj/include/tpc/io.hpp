#pragma once

#include <stdexcept>
#include <string>

#include <json.hpp>

#include "tpc/fragmentation.hpp"
#include "tpc/ingestion.hpp"
#include "tpc/persistence.hpp"

namespace tpc {

using json = nlohmann::json;

/// Unreadable file or malformed text.
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path);
json read_json(const std::string& path);
/// Sorted keys, two-space indent, trailing newline.
std::string dump(const json& j);

/// Integers and short decimals become JSON numbers, anything else the exact
/// text ("1/3", "inf").
json to_json(const Real& r);
Real real_from_json(const json& j);

json to_json(const FilteredComplex& c);
FilteredComplex complex_from_json(const json& j);

json to_json(const Barcode& b);
Barcode barcode_from_json(const json& j);
std::string barcode_csv(const Barcode& b);
/// Accepts a barcode document or a complex document.
Barcode bars_of(const json& j);

json to_json(const ChainMap& f);
ChainMap map_from_json(const json& j);
/// Entries only, for maps whose endpoints are implied.
json entries_json(const ChainMap& f);
ChainMap map_from_entries(const json& entries, const FilteredComplex& source, const FilteredComplex& target,
                          int degree = 0);

json to_json(const std::vector<Diagnostic>& diags);

json to_json(const WeightedTriangle& t);
/// "phi" and "psi" are optional; without them the triangle is loose.
LooseTriangle loose_triangle_from_json(const json& j);
WeightedTriangle triangle_from_json(const json& j);

json to_json(const ConeDecomposition& d);

SimplicialComplex simplicial_from_json(const json& j);
/// Lines "id,value"; a first line whose value does not parse is a header.
std::map<std::string, Real> vertex_values_csv(const std::string& text);
/// Header row of ids, then one row of distances per point, optionally led by the id.
FiniteMetricSpace metric_csv(const std::string& text);
std::string metric_csv(const FiniteMetricSpace& m);
/// Lines "source_id,target_id".
std::vector<std::size_t> point_map_csv(const std::string& text, const FiniteMetricSpace& source,
                                       const FiniteMetricSpace& target);

}  // namespace tpc
