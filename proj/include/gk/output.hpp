#pragma once

#include <string>

#include <json.hpp>

#include "gk/adjacency.hpp"
#include "gk/independence.hpp"
#include "gk/torus_oracle.hpp"

namespace gk {

// JSON document for a prime graph; see docs/graph.schema.json.
inline nlohmann::json graph_to_json(const PrimeGraph& g) {
    nlohmann::json doc;
    doc["group"] = render(g.group);
    if (g.group.kind == GroupSpec::Kind::Lie) doc["characteristic"] = g.group.p.get_str();
    nlohmann::json verts = nlohmann::json::array();
    for (const auto& v : g.vertices) verts.push_back(v.get_str());
    doc["vertices"] = verts;
    nlohmann::json edges = nlohmann::json::array();
    nlohmann::json prov = nlohmann::json::object();
    for (unsigned i = 0; i < g.size(); ++i)
        for (unsigned j = i + 1; j < g.size(); ++j) {
            if (g.edge(i, j)) edges.push_back({i, j});
            prov[g.vertices[i].get_str() + "," + g.vertices[j].get_str()] = g.tag(i, j).key();
        }
    doc["edges"] = edges;
    doc["provenance"] = prov;
    return doc;
}

inline std::string graph_to_dot(const PrimeGraph& g) {
    std::string out = "graph GK {\n  label=\"" + render(g.group) + "\";\n";
    for (const auto& v : g.vertices) out += "  \"" + v.get_str() + "\";\n";
    for (unsigned i = 0; i < g.size(); ++i)
        for (unsigned j = i + 1; j < g.size(); ++j)
            if (g.edge(i, j))
                out += "  \"" + g.vertices[i].get_str() + "\" -- \"" + g.vertices[j].get_str() +
                       "\";\n";
    out += "}\n";
    return out;
}

inline std::string graph_to_plain(const PrimeGraph& g) {
    std::string out = render(g.group) + ": " + std::to_string(g.size()) + " vertices, " +
                      std::to_string(g.edge_count()) + " edges\n";
    out += "vertices:";
    for (const auto& v : g.vertices) out += " " + v.get_str();
    out += "\n";
    for (unsigned i = 0; i < g.size(); ++i)
        for (unsigned j = i + 1; j < g.size(); ++j)
            if (g.edge(i, j))
                out += g.vertices[i].get_str() + " -- " + g.vertices[j].get_str() + "  (" +
                       g.tag(i, j).display() + ")\n";
    return out;
}

// Census export; see docs/census.schema.json.
inline nlohmann::json census_to_json(const TorusCensus& census,
                                     std::uint64_t budget = default_budget()) {
    nlohmann::json doc;
    doc["group"] = render(census.group);
    doc["descriptor_count"] = census.descriptor_count;
    nlohmann::json tori = nlohmann::json::array();
    for (const auto& o : census.orders) {
        nlohmann::json t;
        t["descriptor"] = o.descriptor;
        t["value"] = o.value.get_str();
        nlohmann::json fac = nlohmann::json::object();
        for (const auto& [p, e] : factorize(o.value, budget).factors) fac[p.get_str()] = e;
        t["factorization"] = fac;
        tori.push_back(t);
    }
    doc["tori"] = tori;
    return doc;
}

inline std::string census_to_csv(const TorusCensus& census,
                                 std::uint64_t budget = default_budget()) {
    std::string out = "descriptor,value,factorization\n";
    for (const auto& o : census.orders) {
        std::string fac;
        for (const auto& [p, e] : factorize(o.value, budget).factors) {
            if (!fac.empty()) fac += " ";
            fac += p.get_str();
            if (e > 1) fac += "^" + std::to_string(e);
        }
        out += "\"" + o.descriptor + "\"," + o.value.get_str() + ",\"" + fac + "\"\n";
    }
    return out;
}

} // namespace gk
