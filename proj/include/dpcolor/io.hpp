#ifndef DPCOLOR_IO_HPP
#define DPCOLOR_IO_HPP

#include <json.hpp>
#include <optional>
#include <string>

#include "dpcolor/cover.hpp"
#include "dpcolor/product.hpp"
#include "dpcolor/solver.hpp"

namespace dpcolor {

using Json = nlohmann::ordered_json;

// Every *_from_json throws ValidationError on malformed or inconsistent
// documents. Indices are 0-based throughout.

Json graph_to_json(const Graph& g);
Graph graph_from_json(const Json& j);

// The product graph plus both factors and the (u, v) -> flat index table.
Json product_graph_to_json(const ProductGraph& pg);
ProductGraph product_graph_from_json(const Json& j);

// Links may be given with either endpoint first; pairs follow the order of
// the "edge" field.
Json cover_to_json(const Cover& c);
Cover cover_from_json(const Json& j);

Json product_cover_to_json(const ProductCover& pc, std::optional<std::uint64_t> seed = {});
ProductCover product_cover_from_json(const Json& j);

// Fits in 64 bits: a number; otherwise a decimal string.
Json count_to_json(const Count& c);
Count count_from_json(const Json& j);

Json coloring_to_json(const std::optional<HColoring>& h);
std::optional<HColoring> coloring_from_json(const Json& j);

Json exhaustive_to_json(const ExhaustiveResult& r);
ExhaustiveResult exhaustive_from_json(const Json& j);

Json labeling_to_json(const std::optional<LabelingWitness>& w);
std::optional<LabelingWitness> labeling_from_json(const Json& j);

Json verdict_to_json(const BadnessVerdict& v);
BadnessVerdict verdict_from_json(const Json& j);

Json census_to_json(const VolatileCensus& c);
VolatileCensus census_from_json(const Json& j);

Json shift_classes_to_json(const ShiftClassPartition& p);
ShiftClassPartition shift_classes_from_json(const Json& j);

Json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);

}  // namespace dpcolor

#endif  // DPCOLOR_IO_HPP
