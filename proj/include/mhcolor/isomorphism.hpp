#pragma once

#include "mhcolor/core.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace mhc {

struct IsomorphismConfig {
    std::size_t max_vertices = 30;
    /// Search nodes before refusing; 0 = unlimited.
    std::uint64_t max_nodes = 50'000'000;
};

/// Vertex bijection: image[v] is the H2 vertex that H1 vertex v maps to.
using VertexMap = std::vector<VertexIndex>;

/// Backtracking search for a bijection carrying C-edges onto C-edges and
/// D-edges onto D-edges in both directions. Returns nullopt when none
/// exists. Throws CapExceeded when either hypergraph exceeds
/// cfg.max_vertices or the node budget runs out.
std::optional<VertexMap> find_isomorphism(const MixedHypergraph& h1,
                                          const MixedHypergraph& h2,
                                          const IsomorphismConfig& cfg = {});

/// Checks a claimed witness independently of the search.
bool is_isomorphism(const MixedHypergraph& h1, const MixedHypergraph& h2, const VertexMap& map);

}  // namespace mhc
