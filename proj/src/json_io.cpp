#include "mhcolor/json_io.hpp"

#include <fstream>

namespace mhc {

Json hypergraph_to_json(const MixedHypergraph& h)
{
    Json j;
    j["dims"] = h.dims() ? Json(h.dims()->values()) : Json(nullptr);
    j["vertices"] = Json::array();
    for (const auto& v : h.vertices())
        j["vertices"].push_back(v.coords);
    j["c_edges"] = h.c_edges();
    j["d_edges"] = h.d_edges();
    return j;
}

namespace {

std::vector<Edge> edges_from(const Json& j, const char* key)
{
    if (!j.contains(key))
        return {};
    const auto& arr = j.at(key);
    if (!arr.is_array())
        throw InvalidArgument(std::string("\"") + key + "\" must be an array");
    std::vector<Edge> out;
    for (const auto& e : arr) {
        if (!e.is_array())
            throw InvalidArgument(std::string("\"") + key + "\" entries must be arrays");
        Edge edge;
        for (const auto& v : e) {
            if (!v.is_number_integer() || v.get<long long>() < 0)
                throw InvalidArgument(std::string("\"") + key +
                                      "\" members must be non-negative integers");
            edge.push_back(v.get<VertexIndex>());
        }
        out.push_back(std::move(edge));
    }
    return out;
}

}  // namespace

MixedHypergraph hypergraph_from_json(const Json& j)
{
    if (!j.is_object())
        throw InvalidArgument("hypergraph JSON must be an object");
    if (!j.contains("vertices") || !j.at("vertices").is_array())
        throw InvalidArgument("hypergraph JSON needs a \"vertices\" array");

    std::optional<DimsSpec> dims;
    if (j.contains("dims") && !j.at("dims").is_null()) {
        std::vector<int> d;
        for (const auto& n : j.at("dims")) {
            if (!n.is_number_integer())
                throw InvalidArgument("\"dims\" entries must be integers");
            d.push_back(n.get<int>());
        }
        dims = DimsSpec(std::move(d));
    }

    std::vector<Vertex> vertices;
    for (const auto& v : j.at("vertices")) {
        Vertex vertex;
        if (v.is_number_integer()) {
            vertex.coords = {v.get<int>()};
        } else if (v.is_array()) {
            for (const auto& c : v) {
                if (!c.is_number_integer())
                    throw InvalidArgument("vertex coordinates must be integers");
                vertex.coords.push_back(c.get<int>());
            }
        } else {
            throw InvalidArgument("vertices must be coordinate arrays");
        }
        vertices.push_back(std::move(vertex));
    }
    return MixedHypergraph::make(std::move(vertices), edges_from(j, "c_edges"),
                                 edges_from(j, "d_edges"), std::move(dims));
}

MixedHypergraph read_hypergraph(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw InvalidArgument("cannot open " + path.string());
    Json j;
    try {
        in >> j;
    } catch (const Json::parse_error& e) {
        throw InvalidArgument(path.string() + ": " + e.what());
    }
    return hypergraph_from_json(j);
}

void write_hypergraph(const std::filesystem::path& path, const MixedHypergraph& h)
{
    std::ofstream out(path);
    if (!out)
        throw InvalidArgument("cannot write " + path.string());
    out << hypergraph_to_json(h).dump() << '\n';
}

Json spectrum_to_json(const ChromaticSpectrum& r)
{
    Json j;
    j["spectrum"] = Json::object();
    for (std::size_t k : r.feasible_set())
        j["spectrum"][std::to_string(k)] = r[k];
    j["feasible_set"] = r.feasible_set();
    j["chi"] = r.empty() ? Json(nullptr) : Json(*r.lower_chromatic_number());
    j["chi_bar"] = r.empty() ? Json(nullptr) : Json(*r.upper_chromatic_number());
    j["partition_count"] = r.total();
    return j;
}

Json partition_to_json(const Partition& p)
{
    return p.classes();
}

}  // namespace mhc
