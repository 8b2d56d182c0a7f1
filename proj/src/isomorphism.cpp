#include "mhcolor/isomorphism.hpp"

#include <algorithm>
#include <map>

namespace mhc {

namespace {

struct Profile {
    std::size_t n = 0;
    std::vector<std::vector<std::size_t>> c_incident;  // vertex -> c-edge ids
    std::vector<std::vector<std::size_t>> d_incident;
    std::vector<std::uint32_t> c_codegree;  // n*n, edges containing both
    std::vector<std::uint32_t> d_codegree;
    std::vector<std::vector<int>> coord_multiset;

    explicit Profile(const MixedHypergraph& h) : n(h.vertex_count())
    {
        c_incident.resize(n);
        d_incident.resize(n);
        c_codegree.assign(n * n, 0);
        d_codegree.assign(n * n, 0);
        fill(h.c_edges(), c_incident, c_codegree);
        fill(h.d_edges(), d_incident, d_codegree);
        for (const auto& v : h.vertices()) {
            auto coords = v.coords;
            std::sort(coords.begin(), coords.end());
            coord_multiset.push_back(std::move(coords));
        }
    }

    void fill(const std::vector<Edge>& edges, std::vector<std::vector<std::size_t>>& incident,
              std::vector<std::uint32_t>& codegree)
    {
        for (std::size_t id = 0; id < edges.size(); ++id) {
            for (VertexIndex a : edges[id]) {
                incident[a].push_back(id);
                for (VertexIndex b : edges[id])
                    if (a != b)
                        ++codegree[a * n + b];
            }
        }
    }

    std::pair<std::size_t, std::size_t> degree(VertexIndex v) const
    {
        return {c_incident[v].size(), d_incident[v].size()};
    }
};

std::map<std::size_t, std::size_t> size_histogram(const std::vector<Edge>& edges)
{
    std::map<std::size_t, std::size_t> hist;
    for (const auto& e : edges)
        ++hist[e.size()];
    return hist;
}

class IsoSearch {
public:
    IsoSearch(const MixedHypergraph& h1, const MixedHypergraph& h2, const IsomorphismConfig& cfg)
        : h1_(h1), h2_(h2), p1_(h1), p2_(h2), cfg_(cfg)
    {
        const std::size_t n = h1.vertex_count();
        image_.assign(n, kUnmapped);
        preimage_.assign(n, kUnmapped);
        build_order();
        build_candidates();
    }

    std::optional<VertexMap> run()
    {
        if (extend(0))
            return image_;
        return std::nullopt;
    }

private:
    static constexpr VertexIndex kUnmapped = static_cast<VertexIndex>(-1);

    // Place high-degree vertices first, then whichever vertex shares the
    // most edges with the already-placed ones.
    void build_order()
    {
        const std::size_t n = p1_.n;
        std::vector<bool> placed(n, false);
        std::vector<std::size_t> links(n, 0);
        for (std::size_t step = 0; step < n; ++step) {
            VertexIndex best = kUnmapped;
            for (VertexIndex v = 0; v < n; ++v) {
                if (placed[v])
                    continue;
                if (best == kUnmapped || links[v] > links[best] ||
                    (links[v] == links[best] && p1_.degree(v) > p1_.degree(best)))
                    best = v;
            }
            placed[best] = true;
            order_.push_back(best);
            for (VertexIndex u = 0; u < n; ++u)
                links[u] += p1_.c_codegree[best * n + u] + p1_.d_codegree[best * n + u];
        }
    }

    void build_candidates()
    {
        const std::size_t n = p1_.n;
        candidates_.resize(n);
        for (VertexIndex v = 0; v < n; ++v) {
            auto& list = candidates_[v];
            for (VertexIndex w = 0; w < n; ++w)
                if (p1_.degree(v) == p2_.degree(w))
                    list.push_back(w);
            std::stable_sort(list.begin(), list.end(), [&](VertexIndex a, VertexIndex b) {
                bool ma = p2_.coord_multiset[a] == p1_.coord_multiset[v];
                bool mb = p2_.coord_multiset[b] == p1_.coord_multiset[v];
                return ma && !mb;
            });
        }
    }

    bool consistent(VertexIndex v, VertexIndex w) const
    {
        const std::size_t n = p1_.n;
        for (std::size_t pos = 0; pos < depth_; ++pos) {
            VertexIndex u = order_[pos];
            VertexIndex x = image_[u];
            if (p1_.c_codegree[v * n + u] != p2_.c_codegree[w * n + x] ||
                p1_.d_codegree[v * n + u] != p2_.d_codegree[w * n + x])
                return false;
        }
        return edges_carried(h1_.c_edges(), p1_.c_incident[v], image_, v, w, h2_, true) &&
               edges_carried(h1_.d_edges(), p1_.d_incident[v], image_, v, w, h2_, false) &&
               edges_carried(h2_.c_edges(), p2_.c_incident[w], preimage_, w, v, h1_, true) &&
               edges_carried(h2_.d_edges(), p2_.d_incident[w], preimage_, w, v, h1_, false);
    }

    // Every edge at `from` whose other members are already mapped must land
    // on an edge of the same family in `target`.
    static bool edges_carried(const std::vector<Edge>& edges,
                              const std::vector<std::size_t>& incident,
                              const std::vector<VertexIndex>& map, VertexIndex from,
                              VertexIndex to, const MixedHypergraph& target, bool c_family)
    {
        Edge mapped;
        for (std::size_t id : incident) {
            mapped.clear();
            for (VertexIndex a : edges[id]) {
                VertexIndex b = a == from ? to : map[a];
                if (b == kUnmapped)
                    break;
                mapped.push_back(b);
            }
            if (mapped.size() != edges[id].size())
                continue;
            if (c_family ? !target.has_c_edge(mapped) : !target.has_d_edge(mapped))
                return false;
        }
        return true;
    }

    bool extend(std::size_t pos)
    {
        if (pos == order_.size())
            return true;
        if (cfg_.max_nodes && ++nodes_ > cfg_.max_nodes)
            throw CapExceeded("isomorphism search exceeded " + std::to_string(cfg_.max_nodes) +
                              " nodes");
        VertexIndex v = order_[pos];
        for (VertexIndex w : candidates_[v]) {
            if (preimage_[w] != kUnmapped || !consistent(v, w))
                continue;
            image_[v] = w;
            preimage_[w] = v;
            depth_ = pos + 1;
            if (extend(pos + 1))
                return true;
            image_[v] = kUnmapped;
            preimage_[w] = kUnmapped;
            depth_ = pos;
        }
        return false;
    }

    const MixedHypergraph& h1_;
    const MixedHypergraph& h2_;
    Profile p1_;
    Profile p2_;
    IsomorphismConfig cfg_;
    std::vector<VertexIndex> order_;
    std::vector<std::vector<VertexIndex>> candidates_;
    std::vector<VertexIndex> image_;
    std::vector<VertexIndex> preimage_;
    std::size_t depth_ = 0;
    std::uint64_t nodes_ = 0;
};

}  // namespace

std::optional<VertexMap> find_isomorphism(const MixedHypergraph& h1, const MixedHypergraph& h2,
                                          const IsomorphismConfig& cfg)
{
    for (const auto* h : {&h1, &h2})
        if (h->vertex_count() > cfg.max_vertices)
            throw CapExceeded("isomorphism search refuses " + std::to_string(h->vertex_count()) +
                              " vertices (cap " + std::to_string(cfg.max_vertices) + ")");
    if (h1.vertex_count() != h2.vertex_count() || h1.c_edges().size() != h2.c_edges().size() ||
        h1.d_edges().size() != h2.d_edges().size())
        return std::nullopt;
    if (size_histogram(h1.c_edges()) != size_histogram(h2.c_edges()) ||
        size_histogram(h1.d_edges()) != size_histogram(h2.d_edges()))
        return std::nullopt;
    return IsoSearch(h1, h2, cfg).run();
}

bool is_isomorphism(const MixedHypergraph& h1, const MixedHypergraph& h2, const VertexMap& map)
{
    const std::size_t n = h1.vertex_count();
    if (h2.vertex_count() != n || map.size() != n)
        return false;
    std::vector<bool> hit(n, false);
    for (VertexIndex w : map) {
        if (w >= n || hit[w])
            return false;
        hit[w] = true;
    }
    if (h1.c_edges().size() != h2.c_edges().size() || h1.d_edges().size() != h2.d_edges().size())
        return false;
    auto carried = [&](const std::vector<Edge>& edges, bool c_family) {
        for (const auto& e : edges) {
            Edge img;
            for (VertexIndex v : e)
                img.push_back(map[v]);
            if (c_family ? !h2.has_c_edge(img) : !h2.has_d_edge(img))
                return false;
        }
        return true;
    };
    // Injective on vertices and equal family sizes, so "into" is "onto".
    return carried(h1.c_edges(), true) && carried(h1.d_edges(), false);
}

}  // namespace mhc
