#pragma once

#include "mhcolor/core.hpp"
#include "mhcolor/solver.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>

namespace mhc {

using Json = nlohmann::ordered_json;

/// {"dims": [..] | null, "vertices": [[..], ..], "c_edges": [[..], ..],
///  "d_edges": [..]} with 0-based indices and ascending edges.
Json hypergraph_to_json(const MixedHypergraph& h);
/// Throws InvalidArgument on schema violations (as well as everything
/// MixedHypergraph::make rejects).
MixedHypergraph hypergraph_from_json(const Json& j);

MixedHypergraph read_hypergraph(const std::filesystem::path& path);
void write_hypergraph(const std::filesystem::path& path, const MixedHypergraph& h);

/// {"spectrum": {"3": 1, "4": 1}, "feasible_set": [3, 4], "chi": 3,
///  "chi_bar": 4, "partition_count": 2}; chi and chi_bar are null on an
/// empty spectrum.
Json spectrum_to_json(const ChromaticSpectrum& r);

/// Classes as lists of vertex indices, in canonical order.
Json partition_to_json(const Partition& p);

}  // namespace mhc
