#pragma once

#include "mhcolor/core.hpp"

#include <utility>
#include <vector>

namespace mhc {

/// True iff every coordinate takes exactly two distinct values across the
/// three vertices. This is the bi-edge rule of the product family.
bool is_product_biedge(const Vertex& a, const Vertex& b, const Vertex& c);

/// All vertices of the box [n_1] x ... x [n_s] in lexicographic order, so
/// index = row-major rank with the last coordinate fastest.
std::vector<Vertex> box_vertices(const DimsSpec& d);

/// Row-major index of a vertex of the box.
VertexIndex box_index(const DimsSpec& d, const Vertex& v);

/// H_{n_1..n_s}: the full box with every product bi-edge, C = D.
MixedHypergraph product_bihypergraph(const DimsSpec& d);

/// c_i^s: the box partitioned by coordinate `axis` (1-based). Class j holds
/// the vertices whose axis-th coordinate is j.
Partition canonical_coloring(const DimsSpec& d, std::size_t axis);

/// Target multiplicities (n_i, s_i) for the repeated-dims construction.
class SpectrumTarget {
public:
    /// Validates t >= 2, distinct n_i >= 3, s_i >= 1, then sorts by n_i
    /// descending.
    explicit SpectrumTarget(std::vector<std::pair<int, int>> entries);

    const std::vector<std::pair<int, int>>& entries() const { return entries_; }
    /// n_1 repeated s_1 times, ..., n_t repeated s_t times.
    DimsSpec dims() const;

private:
    std::vector<std::pair<int, int>> entries_;
};

/// Dims realizing the target plus the product bi-hypergraph on them.
std::pair<DimsSpec, MixedHypergraph> spectrum_instance(const SpectrumTarget& target);

/// X* = X_1 u ... u X_s, sorted lexicographically. Requires
/// n_1 >= n_2 > ... > n_s > 3.
std::vector<Vertex> reduced_vertex_set(const DimsSpec& d);

/// The inflexion vertex of v for an s-dimensional box: (1, v, ..., v, 1, ..., 1)
/// with v in coordinates 2..i.
Vertex inflexion_vertex(std::size_t s, std::size_t i, int v);

/// H*: the product bi-hypergraph restricted to X*, built without
/// materializing the full box.
MixedHypergraph reduced_bihypergraph(const DimsSpec& d);

/// 2 n_1 + n_2 + s - 2.
std::size_t reduced_size_bound(const DimsSpec& d);

}  // namespace mhc
