#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace mhc {

/// Raised for malformed inputs: bad indices, invalid dims, inconsistent sizes.
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Raised when a configured size guard refuses an instance.
class CapExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

using VertexIndex = std::uint32_t;
using Edge = std::vector<VertexIndex>;

/// A vertex of a hypergraph: an integer coordinate tuple. Generic
/// hypergraphs use 1-tuples.
struct Vertex {
    std::vector<int> coords;

    std::size_t arity() const { return coords.size(); }
    int operator[](std::size_t j) const { return coords[j]; }

    auto operator<=>(const Vertex&) const = default;
    bool operator==(const Vertex&) const = default;
};

std::string to_string(const Vertex& v);

/// Ordered dimension vector (n_1, ..., n_s) of a vertex box.
class DimsSpec {
public:
    DimsSpec() = default;
    explicit DimsSpec(std::vector<int> dims) : dims_(std::move(dims)) {}

    std::size_t size() const { return dims_.size(); }
    int operator[](std::size_t i) const { return dims_[i]; }
    const std::vector<int>& values() const { return dims_; }

    /// Number of vertices in the box, or nullopt on size_t overflow.
    std::optional<std::size_t> box_size() const;

    /// s >= 2, non-increasing, every entry >= 3.
    bool is_product_valid() const;
    /// Product-valid and additionally n_1 >= n_2 > ... > n_s > 3.
    bool is_reduced_valid() const;
    /// Strictly decreasing, the hypothesis under which every canonical
    /// coloring is its own class count's only feasible partition.
    bool is_strictly_decreasing() const;

    void require_product_valid() const;
    void require_reduced_valid() const;

    /// Multiplicity of each color count, i.e. the spectrum the product
    /// bi-hypergraph on these dims is expected to have.
    std::vector<std::uint64_t> multiplicities() const;

    bool operator==(const DimsSpec&) const = default;

private:
    std::vector<int> dims_;
};

std::string to_string(const DimsSpec& d);

/// A mixed hypergraph (X, C, D). Edges are sorted, deduplicated index sets;
/// the edge families are kept in lexicographic order.
class MixedHypergraph {
public:
    MixedHypergraph() = default;

    /// Validates and canonicalizes. Throws InvalidArgument on out-of-range
    /// indices, repeated members, edges of size < 2, duplicate or
    /// ragged vertices, and coordinates outside an attached box.
    static MixedHypergraph make(std::vector<Vertex> vertices,
                                std::vector<Edge> c_edges,
                                std::vector<Edge> d_edges,
                                std::optional<DimsSpec> dims = std::nullopt);

    /// Generic hypergraph on n vertices labelled (1), ..., (n).
    static MixedHypergraph make_indexed(std::size_t n,
                                        std::vector<Edge> c_edges,
                                        std::vector<Edge> d_edges);

    std::size_t vertex_count() const { return vertices_.size(); }
    const std::vector<Vertex>& vertices() const { return vertices_; }
    const Vertex& vertex(VertexIndex i) const { return vertices_[i]; }
    const std::vector<Edge>& c_edges() const { return c_edges_; }
    const std::vector<Edge>& d_edges() const { return d_edges_; }
    const std::optional<DimsSpec>& dims() const { return dims_; }

    /// True iff C = D as edge families.
    bool is_bihypergraph() const { return c_edges_ == d_edges_; }
    /// True iff every edge of either family has exactly r members.
    bool is_uniform(std::size_t r) const;

    std::optional<VertexIndex> find_vertex(const Vertex& v) const;

    bool has_c_edge(std::span<const VertexIndex> e) const;
    bool has_d_edge(std::span<const VertexIndex> e) const;

    /// Copy with one more edge added to the C family, the D family, or both.
    MixedHypergraph with_edge(Edge e, bool as_c, bool as_d) const;

    bool operator==(const MixedHypergraph&) const = default;

private:
    std::vector<Vertex> vertices_;
    std::vector<Edge> c_edges_;
    std::vector<Edge> d_edges_;
    std::optional<DimsSpec> dims_;
};

/// A set partition of {0, ..., n-1} held as its restricted-growth string:
/// label[0] = 0 and every label is at most one more than the maximum of the
/// labels before it. Equivalently the classes are ordered by minimum member.
class Partition {
public:
    Partition() = default;

    /// Canonicalizes arbitrary color labels; only label equality matters.
    static Partition from_labels(std::span<const std::uint32_t> labels);
    static Partition from_labels(std::span<const int> labels);
    /// Builds from an explicit list of classes; they must be disjoint,
    /// nonempty, and cover {0, ..., n-1}.
    static Partition from_classes(const std::vector<std::vector<VertexIndex>>& classes,
                                  std::size_t n);

    std::size_t size() const { return labels_.size(); }
    std::size_t class_count() const { return class_count_; }
    std::uint32_t label(VertexIndex v) const { return labels_[v]; }
    const std::vector<std::uint32_t>& labels() const { return labels_; }

    std::vector<std::vector<VertexIndex>> classes() const;
    std::vector<std::size_t> class_sizes() const;

    /// Restriction to a sorted subset of vertices, reindexed by position.
    Partition restricted_to(std::span<const VertexIndex> subset) const;

    auto operator<=>(const Partition& o) const { return labels_ <=> o.labels_; }
    bool operator==(const Partition& o) const { return labels_ == o.labels_; }

private:
    std::vector<std::uint32_t> labels_;
    std::size_t class_count_ = 0;
};

std::string to_string(const Partition& p);

/// r_1, ..., r_chibar. Empty when no strict coloring exists.
class ChromaticSpectrum {
public:
    ChromaticSpectrum() = default;
    /// counts[k-1] = r_k. Trailing zeros are trimmed.
    explicit ChromaticSpectrum(std::vector<std::uint64_t> counts);

    const std::vector<std::uint64_t>& counts() const { return counts_; }
    bool empty() const { return counts_.empty(); }
    std::uint64_t operator[](std::size_t k) const;  // r_k, 0 outside range

    std::vector<std::size_t> feasible_set() const;
    std::optional<std::size_t> lower_chromatic_number() const;
    std::optional<std::size_t> upper_chromatic_number() const;
    std::uint64_t total() const;

    bool operator==(const ChromaticSpectrum&) const = default;

private:
    std::vector<std::uint64_t> counts_;
};

/// "{3:1,4:1}" style rendering, nonzero entries only.
std::string to_string(const ChromaticSpectrum& r);

/// Every C-edge has two members in a common class and no D-edge lies
/// within one class.
bool is_proper_coloring(const MixedHypergraph& h, const Partition& p);

/// Proper and uses exactly k classes.
bool is_strict_k_coloring(const MixedHypergraph& h, const Partition& p, std::size_t k);

/// H[X']: vertex set = subset (sorted, reindexed by position, coordinates
/// kept), edges = those wholly inside the subset.
MixedHypergraph derived_subhypergraph(const MixedHypergraph& h,
                                      std::span<const VertexIndex> subset);

}  // namespace mhc
