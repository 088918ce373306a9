#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "gk/arith.hpp"
#include "gk/errors.hpp"
#include "gk_embedded_data.hpp"

namespace gk {

// Prime graph of one sporadic group (or the Tits group), as shipped in
// data/sporadic_graphs.json.
struct SporadicGraph {
    std::string name;
    std::vector<BigNat> vertices;
    std::vector<std::pair<unsigned, unsigned>> edges; // index pairs, i < j

    bool has_edge(const BigNat& a, const BigNat& b) const {
        int ia = -1, ib = -1;
        for (unsigned i = 0; i < vertices.size(); ++i) {
            if (vertices[i] == a) ia = static_cast<int>(i);
            if (vertices[i] == b) ib = static_cast<int>(i);
        }
        if (ia < 0 || ib < 0) throw VertexNotInGroup("vertex not in pi(" + name + ")");
        if (ia > ib) std::swap(ia, ib);
        for (const auto& [x, y] : edges)
            if (static_cast<int>(x) == ia && static_cast<int>(y) == ib) return true;
        return false;
    }
};

inline std::uint64_t fnv1a64(const std::string& s) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

inline std::string fnv1a64_hex(const std::string& s) {
    static const char* digits = "0123456789abcdef";
    std::uint64_t h = fnv1a64(s);
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<size_t>(i)] = digits[h & 0xF];
        h >>= 4;
    }
    return "fnv1a64:" + out;
}

namespace detail {

inline std::map<std::string, SporadicGraph> load_sporadic_graphs() {
    nlohmann::json doc = nlohmann::json::parse(data::sporadic_graphs_json);
    if (doc.at("schema") != "gk-sporadic-graphs-v1")
        throw DataError("sporadic_graphs.json: unexpected schema");
    std::string canon;
    std::map<std::string, SporadicGraph> out;
    for (const auto& g : doc.at("groups")) {
        SporadicGraph sg;
        sg.name = g.at("name").get<std::string>();
        std::string vs, es;
        for (const auto& v : g.at("vertices")) {
            std::string d = v.get<std::string>();
            if (!sg.vertices.empty()) vs += ",";
            vs += d;
            sg.vertices.emplace_back(d);
        }
        for (unsigned i = 1; i < sg.vertices.size(); ++i)
            if (!(sg.vertices[i - 1] < sg.vertices[i]))
                throw DataError("sporadic_graphs.json: vertices of " + sg.name + " not ascending");
        for (const auto& e : g.at("edges")) {
            unsigned a = e.at(0).get<unsigned>(), b = e.at(1).get<unsigned>();
            if (a >= b || b >= sg.vertices.size())
                throw DataError("sporadic_graphs.json: bad edge in " + sg.name);
            if (!es.empty()) es += ",";
            es += std::to_string(a) + "-" + std::to_string(b);
            sg.edges.emplace_back(a, b);
        }
        canon += sg.name + "|" + vs + "|" + es + ";";
        out[sg.name] = std::move(sg);
    }
    std::string expect = doc.at("checksum").get<std::string>();
    std::string actual = fnv1a64_hex(canon);
    if (expect != actual)
        throw DataError("sporadic_graphs.json: checksum drift (file says " + expect +
                        ", content is " + actual + ")");
    return out;
}

} // namespace detail

inline const std::map<std::string, SporadicGraph>& sporadic_graphs() {
    static const std::map<std::string, SporadicGraph> graphs = detail::load_sporadic_graphs();
    return graphs;
}

inline const SporadicGraph& lookup_sporadic(const std::string& name) {
    const auto& graphs = sporadic_graphs();
    auto it = graphs.find(name);
    if (it == graphs.end()) throw UnknownName("no sporadic prime-graph data for: " + name);
    return it->second;
}

} // namespace gk
