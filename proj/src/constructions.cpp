#include "mhcolor/constructions.hpp"

#include <algorithm>
#include <set>

namespace mhc {

bool is_product_biedge(const Vertex& a, const Vertex& b, const Vertex& c)
{
    if (a.arity() != b.arity() || a.arity() != c.arity())
        throw InvalidArgument("bi-edge test on vertices of different arity");
    for (std::size_t j = 0; j < a.arity(); ++j) {
        const bool ab = a[j] == b[j];
        const bool bc = b[j] == c[j];
        const bool ac = a[j] == c[j];
        // Exactly two values: some pair agrees but not all three.
        if (!(ab || bc || ac) || (ab && bc))
            return false;
    }
    return true;
}

std::vector<Vertex> box_vertices(const DimsSpec& d)
{
    auto total = d.box_size();
    if (!total)
        throw CapExceeded("box " + to_string(d) + " is too large to materialize");
    std::vector<Vertex> out;
    out.reserve(*total);
    Vertex v{std::vector<int>(d.size(), 1)};
    for (std::size_t k = 0; k < *total; ++k) {
        out.push_back(v);
        for (std::size_t j = d.size(); j-- > 0;) {
            if (++v.coords[j] <= d[j])
                break;
            v.coords[j] = 1;
        }
    }
    return out;
}

VertexIndex box_index(const DimsSpec& d, const Vertex& v)
{
    if (v.arity() != d.size())
        throw InvalidArgument("vertex " + to_string(v) + " does not fit box " + to_string(d));
    std::size_t index = 0;
    for (std::size_t j = 0; j < d.size(); ++j) {
        if (v[j] < 1 || v[j] > d[j])
            throw InvalidArgument("vertex " + to_string(v) + " lies outside box " + to_string(d));
        index = index * d[j] + (v[j] - 1);
    }
    return static_cast<VertexIndex>(index);
}

MixedHypergraph product_bihypergraph(const DimsSpec& d)
{
    d.require_product_valid();
    auto vertices = box_vertices(d);
    const std::size_t n = vertices.size();
    const std::size_t s = d.size();

    // For a pair (a, b) the third vertex is pinned coordinate-wise: where a
    // and b agree it must differ, where they differ it must repeat one of
    // them. Enumerate those completions and keep c > b to count each triple
    // once.
    std::vector<Edge> edges;
    std::vector<std::vector<int>> choices(s);
    for (VertexIndex a = 0; a < n; ++a) {
        for (VertexIndex b = a + 1; b < n; ++b) {
            for (std::size_t j = 0; j < s; ++j) {
                choices[j].clear();
                const int x = vertices[a][j];
                const int y = vertices[b][j];
                if (x == y) {
                    for (int z = 1; z <= d[j]; ++z)
                        if (z != x)
                            choices[j].push_back(z);
                } else {
                    choices[j] = {x, y};
                }
            }
            std::vector<std::size_t> pick(s, 0);
            while (true) {
                std::size_t c = 0;
                for (std::size_t j = 0; j < s; ++j)
                    c = c * d[j] + (choices[j][pick[j]] - 1);
                if (c > b)
                    edges.push_back({a, b, static_cast<VertexIndex>(c)});
                std::size_t j = s;
                while (j > 0 && ++pick[j - 1] == choices[j - 1].size())
                    pick[--j] = 0;
                if (j == 0)
                    break;
            }
        }
    }
    auto c_edges = edges;
    return MixedHypergraph::make(std::move(vertices), std::move(c_edges), std::move(edges), d);
}

Partition canonical_coloring(const DimsSpec& d, std::size_t axis)
{
    if (axis < 1 || axis > d.size())
        throw InvalidArgument("axis " + std::to_string(axis) + " out of range 1.." +
                              std::to_string(d.size()));
    auto vertices = box_vertices(d);
    std::vector<std::uint32_t> labels;
    labels.reserve(vertices.size());
    for (const auto& v : vertices)
        labels.push_back(static_cast<std::uint32_t>(v[axis - 1] - 1));
    return Partition::from_labels(std::span<const std::uint32_t>(labels));
}

// ---------------------------------------------------------- SpectrumTarget

SpectrumTarget::SpectrumTarget(std::vector<std::pair<int, int>> entries)
    : entries_(std::move(entries))
{
    if (entries_.size() < 2)
        throw InvalidArgument("spectrum target needs at least two distinct color counts");
    std::sort(entries_.begin(), entries_.end(),
              [](const auto& a, const auto& b) { return a.first > b.first; });
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        const auto [n, mult] = entries_[i];
        if (n < 3)
            throw InvalidArgument("color count " + std::to_string(n) + " must be >= 3");
        if (mult < 1)
            throw InvalidArgument("multiplicity for " + std::to_string(n) + " must be >= 1");
        if (i > 0 && entries_[i - 1].first == n)
            throw InvalidArgument("color count " + std::to_string(n) + " listed twice");
    }
}

DimsSpec SpectrumTarget::dims() const
{
    std::vector<int> dims;
    for (const auto& [n, mult] : entries_)
        dims.insert(dims.end(), static_cast<std::size_t>(mult), n);
    return DimsSpec(std::move(dims));
}

std::pair<DimsSpec, MixedHypergraph> spectrum_instance(const SpectrumTarget& target)
{
    DimsSpec d = target.dims();
    return {d, product_bihypergraph(d)};
}

// --------------------------------------------------------- Reduced family

Vertex inflexion_vertex(std::size_t s, std::size_t i, int v)
{
    Vertex out{std::vector<int>(s, 1)};
    for (std::size_t j = 1; j < i; ++j)
        out.coords[j] = v;
    return out;
}

std::vector<Vertex> reduced_vertex_set(const DimsSpec& d)
{
    d.require_reduced_valid();
    const std::size_t s = d.size();
    auto n = [&](std::size_t i) { return d[i - 1]; };  // 1-based, as in n_i
    std::set<Vertex> out;

    auto ones_after_first = [&](int first) {
        Vertex v{std::vector<int>(s, 1)};
        v.coords[0] = first;
        return v;
    };
    // (v, ..., v, n_{i+1}, ..., n_s) with v in the first i coordinates.
    auto diagonal_then_tail = [&](int v, std::size_t i) {
        Vertex x{std::vector<int>(s)};
        for (std::size_t j = 1; j <= s; ++j)
            x.coords[j - 1] = j <= i ? v : n(j);
        return x;
    };

    // X_1
    for (int j = 1; j <= n(1) - n(2); ++j) {
        out.insert(ones_after_first(n(2) + j));
        out.insert(diagonal_then_tail(n(2) + j, 1));
    }
    // X_i, 2 <= i <= s-1
    for (std::size_t i = 2; i < s; ++i) {
        for (int j = 1; j <= n(i) - n(i + 1); ++j) {
            out.insert(ones_after_first(n(i + 1) + j));
            out.insert(diagonal_then_tail(n(i + 1) + j, i));
        }
        for (int j = 0; j <= n(i) - n(i + 1); ++j)
            out.insert(inflexion_vertex(s, i, n(i + 1) + j));
    }
    // X_s
    for (int i = 1; i <= 3; ++i)
        for (int k = 1; k <= 3; ++k) {
            Vertex x{std::vector<int>(s, k)};
            x.coords[0] = i;
            out.insert(std::move(x));
        }
    for (int k = 4; k <= n(s); ++k) {
        Vertex first_one{std::vector<int>(s, k)};
        first_one.coords[0] = 1;
        out.insert(std::move(first_one));
        out.insert(ones_after_first(k));
        out.insert(Vertex{std::vector<int>(s, k)});
    }
    return {out.begin(), out.end()};
}

std::size_t reduced_size_bound(const DimsSpec& d)
{
    return 2 * static_cast<std::size_t>(d[0]) + static_cast<std::size_t>(d[1]) + d.size() - 2;
}

MixedHypergraph reduced_bihypergraph(const DimsSpec& d)
{
    auto vertices = reduced_vertex_set(d);
    const auto n = static_cast<VertexIndex>(vertices.size());
    std::vector<Edge> edges;
    for (VertexIndex a = 0; a < n; ++a)
        for (VertexIndex b = a + 1; b < n; ++b)
            for (VertexIndex c = b + 1; c < n; ++c)
                if (is_product_biedge(vertices[a], vertices[b], vertices[c]))
                    edges.push_back({a, b, c});
    auto c_edges = edges;
    return MixedHypergraph::make(std::move(vertices), std::move(c_edges), std::move(edges), d);
}

}  // namespace mhc
