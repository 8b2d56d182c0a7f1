#include "mhcolor/core.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace mhc {

std::string to_string(const Vertex& v)
{
    std::ostringstream os;
    os << '(';
    for (std::size_t j = 0; j < v.coords.size(); ++j)
        os << (j ? "," : "") << v.coords[j];
    os << ')';
    return os.str();
}

// ---------------------------------------------------------------- DimsSpec

std::optional<std::size_t> DimsSpec::box_size() const
{
    std::size_t total = 1;
    for (int n : dims_) {
        if (n <= 0)
            return 0;
        if (__builtin_mul_overflow(total, static_cast<std::size_t>(n), &total))
            return std::nullopt;
    }
    return total;
}

bool DimsSpec::is_product_valid() const
{
    if (dims_.size() < 2)
        return false;
    for (std::size_t i = 0; i < dims_.size(); ++i) {
        if (dims_[i] < 3)
            return false;
        if (i > 0 && dims_[i] > dims_[i - 1])
            return false;
    }
    return true;
}

bool DimsSpec::is_reduced_valid() const
{
    if (!is_product_valid())
        return false;
    for (std::size_t i = 2; i < dims_.size(); ++i)
        if (dims_[i] >= dims_[i - 1])
            return false;
    return dims_.back() > 3 && dims_[1] > 3;
}

bool DimsSpec::is_strictly_decreasing() const
{
    for (std::size_t i = 1; i < dims_.size(); ++i)
        if (dims_[i] >= dims_[i - 1])
            return false;
    return true;
}

void DimsSpec::require_product_valid() const
{
    if (!is_product_valid())
        throw InvalidArgument("dims " + to_string(*this) +
                              " must have s >= 2 entries, each >= 3, in non-increasing order");
}

void DimsSpec::require_reduced_valid() const
{
    if (!is_reduced_valid())
        throw InvalidArgument("dims " + to_string(*this) +
                              " must satisfy n1 >= n2 > ... > ns > 3 with s >= 2");
}

std::vector<std::uint64_t> DimsSpec::multiplicities() const
{
    std::vector<std::uint64_t> counts;
    for (int n : dims_) {
        if (n <= 0)
            continue;
        if (counts.size() < static_cast<std::size_t>(n))
            counts.resize(n, 0);
        ++counts[n - 1];
    }
    return counts;
}

std::string to_string(const DimsSpec& d)
{
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < d.size(); ++i)
        os << (i ? "," : "") << d[i];
    os << ')';
    return os.str();
}

// --------------------------------------------------------- MixedHypergraph

namespace {

void canonicalize_edges(std::vector<Edge>& edges, std::size_t n, const char* family)
{
    for (auto& e : edges) {
        if (e.size() < 2)
            throw InvalidArgument(std::string(family) + "-edge of size " +
                                  std::to_string(e.size()) + " (need >= 2)");
        for (VertexIndex v : e)
            if (v >= n)
                throw InvalidArgument(std::string(family) + "-edge references vertex " +
                                      std::to_string(v) + " but there are only " +
                                      std::to_string(n) + " vertices");
        std::sort(e.begin(), e.end());
        if (std::adjacent_find(e.begin(), e.end()) != e.end())
            throw InvalidArgument(std::string(family) + "-edge repeats vertex " +
                                  std::to_string(*std::adjacent_find(e.begin(), e.end())));
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
}

bool contains_edge(const std::vector<Edge>& edges, std::span<const VertexIndex> e)
{
    Edge key(e.begin(), e.end());
    std::sort(key.begin(), key.end());
    return std::binary_search(edges.begin(), edges.end(), key);
}

}  // namespace

MixedHypergraph MixedHypergraph::make(std::vector<Vertex> vertices,
                                      std::vector<Edge> c_edges,
                                      std::vector<Edge> d_edges,
                                      std::optional<DimsSpec> dims)
{
    if (vertices.empty())
        throw InvalidArgument("hypergraph needs at least one vertex");
    const std::size_t arity = vertices.front().arity();
    if (arity == 0)
        throw InvalidArgument("vertex coordinate tuples must be nonempty");
    for (const auto& v : vertices) {
        if (v.arity() != arity)
            throw InvalidArgument("vertex " + to_string(v) + " has " +
                                  std::to_string(v.arity()) + " coordinates, expected " +
                                  std::to_string(arity));
        if (dims) {
            if (dims->size() != arity)
                throw InvalidArgument("dims " + to_string(*dims) + " do not match vertex arity " +
                                      std::to_string(arity));
            for (std::size_t j = 0; j < arity; ++j)
                if (v[j] < 1 || v[j] > (*dims)[j])
                    throw InvalidArgument("vertex " + to_string(v) + " lies outside the box " +
                                          to_string(*dims));
        }
    }
    {
        std::vector<Vertex> sorted = vertices;
        std::sort(sorted.begin(), sorted.end());
        auto dup = std::adjacent_find(sorted.begin(), sorted.end());
        if (dup != sorted.end())
            throw InvalidArgument("duplicate vertex " + to_string(*dup));
    }

    canonicalize_edges(c_edges, vertices.size(), "C");
    canonicalize_edges(d_edges, vertices.size(), "D");

    MixedHypergraph h;
    h.vertices_ = std::move(vertices);
    h.c_edges_ = std::move(c_edges);
    h.d_edges_ = std::move(d_edges);
    h.dims_ = std::move(dims);
    return h;
}

MixedHypergraph MixedHypergraph::make_indexed(std::size_t n,
                                              std::vector<Edge> c_edges,
                                              std::vector<Edge> d_edges)
{
    std::vector<Vertex> vertices(n);
    for (std::size_t i = 0; i < n; ++i)
        vertices[i].coords = {static_cast<int>(i + 1)};
    return make(std::move(vertices), std::move(c_edges), std::move(d_edges));
}

bool MixedHypergraph::is_uniform(std::size_t r) const
{
    auto sized = [r](const Edge& e) { return e.size() == r; };
    return std::all_of(c_edges_.begin(), c_edges_.end(), sized) &&
           std::all_of(d_edges_.begin(), d_edges_.end(), sized);
}

std::optional<VertexIndex> MixedHypergraph::find_vertex(const Vertex& v) const
{
    auto it = std::find(vertices_.begin(), vertices_.end(), v);
    if (it == vertices_.end())
        return std::nullopt;
    return static_cast<VertexIndex>(it - vertices_.begin());
}

bool MixedHypergraph::has_c_edge(std::span<const VertexIndex> e) const
{
    return contains_edge(c_edges_, e);
}

bool MixedHypergraph::has_d_edge(std::span<const VertexIndex> e) const
{
    return contains_edge(d_edges_, e);
}

MixedHypergraph MixedHypergraph::with_edge(Edge e, bool as_c, bool as_d) const
{
    auto c = c_edges_;
    auto d = d_edges_;
    if (as_c)
        c.push_back(e);
    if (as_d)
        d.push_back(std::move(e));
    return make(vertices_, std::move(c), std::move(d), dims_);
}

// --------------------------------------------------------------- Partition

Partition Partition::from_labels(std::span<const std::uint32_t> labels)
{
    Partition p;
    p.labels_.resize(labels.size());
    std::vector<std::pair<std::uint32_t, std::uint32_t>> seen;  // (raw, canonical)
    for (std::size_t i = 0; i < labels.size(); ++i) {
        auto it = std::find_if(seen.begin(), seen.end(),
                               [&](const auto& s) { return s.first == labels[i]; });
        if (it == seen.end()) {
            seen.emplace_back(labels[i], static_cast<std::uint32_t>(seen.size()));
            p.labels_[i] = seen.back().second;
        } else {
            p.labels_[i] = it->second;
        }
    }
    p.class_count_ = seen.size();
    return p;
}

Partition Partition::from_labels(std::span<const int> labels)
{
    std::vector<std::uint32_t> raw;
    raw.reserve(labels.size());
    for (int l : labels) {
        if (l < 0)
            throw InvalidArgument("negative color label " + std::to_string(l));
        raw.push_back(static_cast<std::uint32_t>(l));
    }
    return from_labels(std::span<const std::uint32_t>(raw));
}

Partition Partition::from_classes(const std::vector<std::vector<VertexIndex>>& classes,
                                  std::size_t n)
{
    constexpr auto unset = static_cast<std::uint32_t>(-1);
    std::vector<std::uint32_t> raw(n, unset);
    for (std::size_t c = 0; c < classes.size(); ++c) {
        if (classes[c].empty())
            throw InvalidArgument("partition has an empty class");
        for (VertexIndex v : classes[c]) {
            if (v >= n)
                throw InvalidArgument("partition class member " + std::to_string(v) +
                                      " out of range");
            if (raw[v] != unset)
                throw InvalidArgument("vertex " + std::to_string(v) +
                                      " appears in two partition classes");
            raw[v] = static_cast<std::uint32_t>(c);
        }
    }
    if (std::find(raw.begin(), raw.end(), unset) != raw.end())
        throw InvalidArgument("partition classes do not cover every vertex");
    return from_labels(std::span<const std::uint32_t>(raw));
}

std::vector<std::vector<VertexIndex>> Partition::classes() const
{
    std::vector<std::vector<VertexIndex>> out(class_count_);
    for (std::size_t v = 0; v < labels_.size(); ++v)
        out[labels_[v]].push_back(static_cast<VertexIndex>(v));
    return out;
}

std::vector<std::size_t> Partition::class_sizes() const
{
    std::vector<std::size_t> sizes(class_count_, 0);
    for (auto l : labels_)
        ++sizes[l];
    return sizes;
}

Partition Partition::restricted_to(std::span<const VertexIndex> subset) const
{
    std::vector<std::uint32_t> raw;
    raw.reserve(subset.size());
    for (VertexIndex v : subset) {
        if (v >= labels_.size())
            throw InvalidArgument("restriction subset member " + std::to_string(v) +
                                  " out of range");
        raw.push_back(labels_[v]);
    }
    return from_labels(std::span<const std::uint32_t>(raw));
}

std::string to_string(const Partition& p)
{
    std::ostringstream os;
    os << '{';
    bool first_class = true;
    for (const auto& cls : p.classes()) {
        os << (first_class ? "" : " | ");
        first_class = false;
        for (std::size_t i = 0; i < cls.size(); ++i)
            os << (i ? "," : "") << cls[i];
    }
    os << '}';
    return os.str();
}

// ------------------------------------------------------- ChromaticSpectrum

ChromaticSpectrum::ChromaticSpectrum(std::vector<std::uint64_t> counts)
    : counts_(std::move(counts))
{
    while (!counts_.empty() && counts_.back() == 0)
        counts_.pop_back();
}

std::uint64_t ChromaticSpectrum::operator[](std::size_t k) const
{
    if (k == 0 || k > counts_.size())
        return 0;
    return counts_[k - 1];
}

std::vector<std::size_t> ChromaticSpectrum::feasible_set() const
{
    std::vector<std::size_t> out;
    for (std::size_t k = 1; k <= counts_.size(); ++k)
        if (counts_[k - 1] > 0)
            out.push_back(k);
    return out;
}

std::optional<std::size_t> ChromaticSpectrum::lower_chromatic_number() const
{
    auto fs = feasible_set();
    if (fs.empty())
        return std::nullopt;
    return fs.front();
}

std::optional<std::size_t> ChromaticSpectrum::upper_chromatic_number() const
{
    if (counts_.empty())
        return std::nullopt;
    return counts_.size();
}

std::uint64_t ChromaticSpectrum::total() const
{
    return std::accumulate(counts_.begin(), counts_.end(), std::uint64_t{0});
}

std::string to_string(const ChromaticSpectrum& r)
{
    std::ostringstream os;
    os << '{';
    bool first = true;
    for (std::size_t k : r.feasible_set()) {
        os << (first ? "" : ",") << k << ':' << r[k];
        first = false;
    }
    os << '}';
    return os.str();
}

// --------------------------------------------------------------- Predicates

namespace {

void require_matching(const MixedHypergraph& h, const Partition& p)
{
    if (p.size() != h.vertex_count())
        throw InvalidArgument("partition covers " + std::to_string(p.size()) +
                              " vertices but the hypergraph has " +
                              std::to_string(h.vertex_count()));
}

}  // namespace

bool is_proper_coloring(const MixedHypergraph& h, const Partition& p)
{
    require_matching(h, p);
    for (const auto& e : h.c_edges()) {
        bool common = false;
        for (std::size_t i = 0; i < e.size() && !common; ++i)
            for (std::size_t j = i + 1; j < e.size() && !common; ++j)
                common = p.label(e[i]) == p.label(e[j]);
        if (!common)
            return false;
    }
    for (const auto& e : h.d_edges()) {
        bool distinct = false;
        for (std::size_t i = 1; i < e.size() && !distinct; ++i)
            distinct = p.label(e[i]) != p.label(e[0]);
        if (!distinct)
            return false;
    }
    return true;
}

bool is_strict_k_coloring(const MixedHypergraph& h, const Partition& p, std::size_t k)
{
    if (k < 1)
        throw InvalidArgument("strict k-coloring needs k >= 1");
    return is_proper_coloring(h, p) && p.class_count() == k;
}

MixedHypergraph derived_subhypergraph(const MixedHypergraph& h,
                                      std::span<const VertexIndex> subset)
{
    std::vector<VertexIndex> sorted(subset.begin(), subset.end());
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw InvalidArgument("subset repeats a vertex");
    constexpr auto absent = static_cast<VertexIndex>(-1);
    std::vector<VertexIndex> position(h.vertex_count(), absent);
    std::vector<Vertex> vertices;
    vertices.reserve(sorted.size());
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        if (sorted[i] >= h.vertex_count())
            throw InvalidArgument("subset member " + std::to_string(sorted[i]) + " out of range");
        position[sorted[i]] = static_cast<VertexIndex>(i);
        vertices.push_back(h.vertex(sorted[i]));
    }

    auto keep = [&](const std::vector<Edge>& edges) {
        std::vector<Edge> out;
        for (const auto& e : edges) {
            Edge mapped;
            mapped.reserve(e.size());
            for (VertexIndex v : e) {
                if (position[v] == absent)
                    break;
                mapped.push_back(position[v]);
            }
            if (mapped.size() == e.size())
                out.push_back(std::move(mapped));
        }
        return out;
    };
    return MixedHypergraph::make(std::move(vertices), keep(h.c_edges()), keep(h.d_edges()),
                                 h.dims());
}

}  // namespace mhc
