#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "gk/adjacency.hpp"
#include "gk/arith.hpp"
#include "gk/errors.hpp"

namespace gk {

// One entry of an e-pattern: either the characteristic marker or the value
// e(r,q) (for Suzuki/Ree groups, the index of the divisor class m_i).
struct PatternEntry {
    bool is_char = false;
    unsigned long value = 0;

    bool operator<(const PatternEntry& o) const {
        if (is_char != o.is_char) return is_char; // characteristic sorts first
        return value < o.value;
    }
    bool operator==(const PatternEntry& o) const {
        return is_char == o.is_char && value == o.value;
    }
    std::string to_string(bool suzree = false) const {
        if (is_char) return "p";
        if (suzree) return "m" + std::to_string(value);
        return std::to_string(value);
    }
};

struct IndependenceResult {
    std::vector<BigNat> rho;  // ascending
    unsigned t = 0;
    std::vector<BigNat> forced;
    std::vector<PatternEntry> e_pattern; // sorted; filled for Lie groups
};

struct ComponentPartition {
    std::vector<std::vector<BigNat>> components;
    unsigned s = 0;
};

namespace detail {

using Mask = std::uint64_t;

inline unsigned popcount(Mask m) { return static_cast<unsigned>(std::popcount(m)); }

// Maximum independent set size within candidate set `cand`.
inline unsigned mis_size(const std::vector<Mask>& adj, Mask cand, unsigned best_known = 0) {
    if (cand == 0) return 0;
    unsigned best = best_known;
    auto rec = [&](auto&& self, Mask c, unsigned cur) -> void {
        if (c == 0) {
            best = std::max(best, cur);
            return;
        }
        if (cur + popcount(c) <= best) return;
        unsigned v = static_cast<unsigned>(std::countr_zero(c));
        Mask bit = Mask(1) << v;
        self(self, c & ~bit & ~adj[v], cur + 1); // take v
        self(self, c & ~bit, cur);               // skip v
    };
    rec(rec, cand, 0);
    return best;
}

} // namespace detail

// Exact maximum independent set, optionally through a forced vertex set.
// The witness is deterministic: the lexicographically smallest optimal set
// (by ascending vertex order) among those containing `forced`.
inline IndependenceResult max_independent_set(const PrimeGraph& graph,
                                              const std::vector<BigNat>& forced = {}) {
    const unsigned n = graph.size();
    detail::Mask forced_mask = 0;
    for (const BigNat& v : forced) {
        int i = graph.index_of(v);
        if (i < 0) throw VertexNotInGroup(v.get_str() + " is not a vertex of the graph");
        forced_mask |= detail::Mask(1) << static_cast<unsigned>(i);
    }
    for (unsigned i = 0; i < n; ++i)
        if ((forced_mask >> i) & 1) {
            if (graph.adj[i] & forced_mask)
                throw ForcedSetNotIndependent("forced vertices are adjacent in the graph");
        }

    detail::Mask cand = (n == 64) ? ~detail::Mask(0) : ((detail::Mask(1) << n) - 1);
    cand &= ~forced_mask;
    for (unsigned i = 0; i < n; ++i)
        if ((forced_mask >> i) & 1) cand &= ~graph.adj[i];

    const unsigned t =
        detail::popcount(forced_mask) + detail::mis_size(graph.adj, cand);

    // lexicographic extraction: keep the smallest vertex whose inclusion
    // still allows an optimal completion among strictly larger candidates
    detail::Mask chosen = forced_mask;
    unsigned need = t - detail::popcount(forced_mask);
    detail::Mask c = cand;
    while (need > 0) {
        if (c == 0) throw std::logic_error("max_independent_set: witness extraction ran dry");
        unsigned v = static_cast<unsigned>(std::countr_zero(c));
        detail::Mask bit = detail::Mask(1) << v;
        detail::Mask rest = c & ~bit & ~graph.adj[v];
        // vertices below v are never reconsidered: an optimal completion
        // through them would contradict the minimality of earlier picks
        detail::Mask above = rest & ~(bit - 1);
        const unsigned completion =
            (need >= 2) ? detail::mis_size(graph.adj, above, need - 2) : 0;
        if (1 + completion >= need) {
            chosen |= bit;
            --need;
            c = above;
        } else {
            c &= ~bit;
        }
    }

    IndependenceResult out;
    out.t = t;
    out.forced = forced;
    std::sort(out.forced.begin(), out.forced.end());
    for (unsigned i = 0; i < n; ++i)
        if ((chosen >> i) & 1) out.rho.push_back(graph.vertices[i]);
    return out;
}

// All maximum independent sets containing `forced` (verification mode for
// the uniqueness claims). Only sensible for small graphs.
inline std::vector<std::vector<BigNat>> all_maximum_independent_sets(
    const PrimeGraph& graph, const std::vector<BigNat>& forced = {}) {
    const unsigned n = graph.size();
    IndependenceResult best = max_independent_set(graph, forced);
    detail::Mask forced_mask = 0;
    for (const BigNat& v : forced) forced_mask |= detail::Mask(1) << graph.index_of(v);
    detail::Mask cand = (n == 64) ? ~detail::Mask(0) : ((detail::Mask(1) << n) - 1);
    cand &= ~forced_mask;
    for (unsigned i = 0; i < n; ++i)
        if ((forced_mask >> i) & 1) cand &= ~graph.adj[i];

    std::vector<std::vector<BigNat>> out;
    auto rec = [&](auto&& self, detail::Mask c, detail::Mask chosen) -> void {
        if (detail::popcount(chosen) + detail::popcount(c) < best.t) return;
        if (detail::popcount(chosen) == best.t) {
            std::vector<BigNat> set;
            for (unsigned i = 0; i < n; ++i)
                if ((chosen >> i) & 1) set.push_back(graph.vertices[i]);
            out.push_back(std::move(set));
            return;
        }
        if (c == 0) return;
        unsigned v = static_cast<unsigned>(std::countr_zero(c));
        detail::Mask bit = detail::Mask(1) << v;
        self(self, c & ~bit & ~graph.adj[v], chosen | bit);
        self(self, c & ~bit, chosen);
    };
    rec(rec, cand, forced_mask);
    std::sort(out.begin(), out.end());
    return out;
}

// Connected components; the component containing 2 is listed first, the
// rest follow by smallest vertex.
inline ComponentPartition components(const PrimeGraph& graph) {
    const unsigned n = graph.size();
    std::vector<int> comp(n, -1);
    unsigned count = 0;
    for (unsigned i = 0; i < n; ++i) {
        if (comp[i] >= 0) continue;
        std::vector<unsigned> stack{i};
        comp[i] = static_cast<int>(count);
        while (!stack.empty()) {
            unsigned v = stack.back();
            stack.pop_back();
            for (unsigned j = 0; j < n; ++j)
                if (graph.edge(v, j) && comp[j] < 0) {
                    comp[j] = static_cast<int>(count);
                    stack.push_back(j);
                }
        }
        ++count;
    }
    std::vector<std::vector<BigNat>> parts(count);
    for (unsigned i = 0; i < n; ++i) parts[static_cast<unsigned>(comp[i])].push_back(graph.vertices[i]);
    std::stable_sort(parts.begin(), parts.end(), [](const auto& a, const auto& b) {
        const bool a2 = !a.empty() && a.front() == 2;
        const bool b2 = !b.empty() && b.front() == 2;
        if (a2 != b2) return a2;
        return a.front() < b.front();
    });
    ComponentPartition out;
    out.components = std::move(parts);
    out.s = count;
    return out;
}

inline bool all_components_cliques(const PrimeGraph& graph) {
    ComponentPartition parts = components(graph);
    for (const auto& part : parts.components) {
        for (unsigned a = 0; a < part.size(); ++a)
            for (unsigned b = a + 1; b < part.size(); ++b)
                if (!graph.edge_between(part[a], part[b])) return false;
    }
    return true;
}

// Pattern entry of a single vertex of a Lie-type group: the characteristic
// marker, the m_i class index for Suzuki/Ree groups, or e(r,q).
inline PatternEntry vertex_pattern_entry(const GroupSpec& g, const BigNat& r,
                                         std::uint64_t budget = default_budget()) {
    if (g.kind != GroupSpec::Kind::Lie)
        throw std::invalid_argument("e_pattern: group is not of Lie type");
    if (r == g.p) return PatternEntry{true, 0};
    if (is_suzuki_ree(g.series))
        return PatternEntry{false, detail::suzree_classes(g, r).front()};
    return PatternEntry{false, e_order_small(r, g.q, budget)};
}

inline std::vector<PatternEntry> e_pattern(const std::vector<BigNat>& rho, const GroupSpec& g,
                                           std::uint64_t budget = default_budget()) {
    std::vector<PatternEntry> out;
    for (const BigNat& r : rho) out.push_back(vertex_pattern_entry(g, r, budget));
    std::sort(out.begin(), out.end());
    return out;
}

inline std::string pattern_to_string(const std::vector<PatternEntry>& pat, bool suzree) {
    std::string s = "{";
    for (unsigned i = 0; i < pat.size(); ++i) {
        if (i) s += ",";
        s += pat[i].to_string(suzree);
    }
    return s + "}";
}

// Convenience wrapper filling the e-pattern for Lie groups.
inline IndependenceResult independence_result(const PrimeGraph& graph,
                                              const std::vector<BigNat>& forced = {},
                                              std::uint64_t budget = default_budget()) {
    IndependenceResult res = max_independent_set(graph, forced);
    if (graph.group.kind == GroupSpec::Kind::Lie)
        res.e_pattern = e_pattern(res.rho, graph.group, budget);
    return res;
}

} // namespace gk
