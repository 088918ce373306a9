#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "gk/arith.hpp"
#include "gk/errors.hpp"
#include "gk/groups.hpp"
#include "gk/sporadic.hpp"

namespace gk {

// Names the clause that decided a pair. `clause` is empty for data-backed
// decisions and "adj" when no non-adjacency clause of the criterion fired.
struct CriterionTag {
    std::string prop;
    std::string clause;

    std::string display() const {
        if (clause.empty()) return prop;
        if (clause == "adj") return prop;
        return prop + " clause " + clause;
    }
    std::string key() const { return clause.empty() ? prop : prop + ":" + clause; }
};

struct AdjacencyResult {
    bool adjacent;
    CriterionTag tag;
};

namespace detail {

inline bool odd_natural_ratio(unsigned long k, unsigned long l) {
    return l % k == 0 && (l / k) % 2 == 1;
}

inline unsigned long e2_of(const BigNat& q) { return (q % 4 == 1) ? 1 : 2; }

inline SuzukiReeSeries suzree_series_of(Series s) {
    if (s == Series::TwoB2) return SuzukiReeSeries::B;
    if (s == Series::TwoG2) return SuzukiReeSeries::G;
    return SuzukiReeSeries::F;
}

inline std::vector<unsigned> suzree_classes(const GroupSpec& g, const BigNat& r) {
    SuzukiReeSeries series = suzree_series_of(g.series);
    std::vector<unsigned> out;
    for (unsigned i = 1; i <= suzuki_ree_class_count(series); ++i) {
        BigNat m = suzuki_ree_m(series, g.suzree_param(), i);
        if (mpz_divisible_p(m.get_mpz_t(), r.get_mpz_t())) out.push_back(i);
    }
    if (out.empty())
        throw std::logic_error("suzree_classes: " + r.get_str() + " divides no m_i of " + render(g));
    return out;
}

// --- adjacency with the characteristic -----------------------------------

inline AdjacencyResult char_classical(const GroupSpec& g, const BigNat& r,
                                      std::uint64_t budget) {
    const BigNat& q = g.q;
    const unsigned long n = g.classical_n();
    const bool r_odd = (r != 2);
    const unsigned long e = e_order_small(r, q, budget);
    auto non = [&](const char* clause) { return AdjacencyResult{false, {"Prop3.1", clause}}; };

    switch (g.series) {
        case Series::A:
            if (r_odd && e > n - 2) return non("1");
            if (n == 2 && r == 2) return non("6");
            if (n == 3 && r == 3 && r_part(q - 1, 3) == 3) return non("7");
            break;
        case Series::TwoA:
            if (r_odd && nu(e) > n - 2) return non("2");
            if (n == 3 && r == 3 && r_part(q + 1, 3) == 3) return non("7");
            break;
        case Series::C:
            if (eta(e) > n - 1) return non("3");
            break;
        case Series::B:
            if (eta(e) > n - 1) return non("4");
            break;
        case Series::D:
        case Series::TwoD:
            if (eta(e) > n - 2) return non("5");
            break;
        default: throw std::logic_error("char_classical: not classical");
    }
    return {true, {"Prop3.1", "adj"}};
}

inline AdjacencyResult char_exceptional(const GroupSpec& g, const BigNat& r,
                                        std::uint64_t budget) {
    const unsigned long k = e_order_small(r, g.q, budget);
    auto in = [&](std::initializer_list<unsigned long> set) {
        return std::find(set.begin(), set.end(), k) != set.end();
    };
    bool non = false;
    const char* clause = nullptr;
    switch (g.series) {
        case Series::G2: non = in({3, 6}); clause = "1"; break;
        case Series::F4: non = in({8, 12}); clause = "2"; break;
        case Series::E6: non = in({8, 9, 12}); clause = "3"; break;
        case Series::TwoE6: non = in({8, 12, 18}); clause = "4"; break;
        case Series::E7: non = in({7, 9, 14, 18}); clause = "5"; break;
        case Series::E8: non = in({15, 20, 24, 30}); clause = "6"; break;
        case Series::ThreeD4: non = in({12}); clause = "7"; break;
        default: throw std::logic_error("char_exceptional: wrong family");
    }
    if (non) return {false, {"Prop3.2", clause}};
    return {true, {"Prop3.2", "adj"}};
}

inline AdjacencyResult char_suzuki_ree(const GroupSpec& g, const BigNat& r) {
    switch (g.series) {
        case Series::TwoB2: return {false, {"Prop3.3", "1"}};
        case Series::TwoG2:
            if (r != 2) return {false, {"Prop3.3", "2"}};
            return {true, {"Prop3.3", "adj"}};
        case Series::TwoF4: {
            // Divisors of m_4, m_5, m_6 other than 3 are the primes away
            // from the characteristic; q-1, q+1 and q^2+1 divisors share a
            // torus with unipotent pieces.
            if (r == 3) return {true, {"Prop3.3", "adj"}};
            if (suzree_classes(g, r).front() > 3) return {false, {"Prop3.3", "3"}};
            return {true, {"Prop3.3", "adj"}};
        }
        default: throw std::logic_error("char_suzuki_ree: wrong family");
    }
}

// --- adjacency of 2 (and the low divisor classes of A-type) --------------

// A(n-1)(q): r divides q-1, s odd and prime to q.
inline AdjacencyResult low_linear(const GroupSpec& g, const BigNat& r, const BigNat& s,
                                  std::uint64_t budget) {
    const BigNat& q = g.q;
    const unsigned long n = g.classical_n();
    const unsigned long k = e_order_small(s, q, budget);
    const BigNat n_r = r_part(BigNat(n), r);
    const BigNat q1_r = r_part(q - 1, r);
    if (k == n) {
        if (n_r < q1_r || (n_r == q1_r && q1_r > 2)) return {false, {"Prop4.1", "1"}};
    }
    if (k == n - 1 && q1_r <= n_r) return {false, {"Prop4.1", "2"}};
    return {true, {"Prop4.1", "adj"}};
}

// 2A(n-1)(q): r divides q+1, s odd and prime to q.
inline AdjacencyResult low_unitary(const GroupSpec& g, const BigNat& r, const BigNat& s,
                                   std::uint64_t budget) {
    const BigNat& q = g.q;
    const unsigned long n = g.classical_n();
    const unsigned long vk = nu(e_order_small(s, q, budget));
    const BigNat n_r = r_part(BigNat(n), r);
    const BigNat q1_r = r_part(q + 1, r);
    if (vk == n) {
        if (n_r < q1_r || (n_r == q1_r && q1_r > 2)) return {false, {"Prop4.2", "1"}};
    }
    if (vk == n - 1 && q1_r <= n_r) return {false, {"Prop4.2", "2"}};
    return {true, {"Prop4.2", "adj"}};
}

inline AdjacencyResult two_symplectic(const GroupSpec& g, const BigNat& r,
                                      std::uint64_t budget) {
    const BigNat& q = g.q;
    const unsigned long n = g.classical_n();
    const unsigned long k = e_order_small(r, q, budget);
    if (eta(k) == n) {
        if (n % 2 == 1 && k == (3 - e2_of(q)) * n) return {false, {"Prop4.3", "1"}};
        if (n % 2 == 0 && k == 2 * n) return {false, {"Prop4.3", "2"}};
    }
    return {true, {"Prop4.3", "adj"}};
}

inline AdjacencyResult two_orthogonal(const GroupSpec& g, const BigNat& r,
                                      std::uint64_t budget) {
    const BigNat& q = g.q;
    const unsigned long n = g.classical_n();
    const bool plus = (g.series == Series::D);
    const unsigned long k = e_order_small(r, q, budget);
    const unsigned long e2 = e2_of(q);
    if (eta(k) == n) {
        BigNat qn_eps = plus ? pow_ui(q, n) - 1 : pow_ui(q, n) + 1;
        if (gcd(BigNat(4), qn_eps) == r_part(qn_eps, 2)) return {false, {"Prop4.4", "1"}};
    }
    if (plus && k % 2 == 1 && k == n - 1 && n % 2 == 0 && e2 == 2)
        return {false, {"Prop4.4", "2"}};
    if (plus && k % 2 == 0 && k / 2 == n - 1 && e2 == 1) return {false, {"Prop4.4", "3"}};
    if (!plus && k % 2 == 0 && k / 2 == n - 1 && n % 2 == 1 && e2 == 2)
        return {false, {"Prop4.4", "4"}};
    return {true, {"Prop4.4", "adj"}};
}

inline AdjacencyResult two_exceptional(const GroupSpec& g, const BigNat& r,
                                       std::uint64_t budget) {
    const BigNat& q = g.q;
    auto non = [&](const char* clause) { return AdjacencyResult{false, {"Prop4.5", clause}}; };
    if (g.series == Series::TwoG2) {
        auto classes = suzree_classes(g, r);
        if (classes.front() == 3 || classes.front() == 4) return non("8");
        return {true, {"Prop4.5", "adj"}};
    }
    const unsigned long k = e_order_small(r, q, budget);
    const unsigned long e2 = e2_of(q);
    auto in = [&](std::initializer_list<unsigned long> set) {
        return std::find(set.begin(), set.end(), k) != set.end();
    };
    switch (g.series) {
        case Series::G2:
            if (in({3, 6})) return non("1");
            break;
        case Series::F4:
            if (k == 12) return non("2");
            break;
        case Series::E6:
            if (in({9, 12})) return non("3");
            break;
        case Series::TwoE6:
            if (in({12, 18})) return non("4");
            break;
        case Series::E7:
            if ((in({7, 9}) && e2 == 2) || (in({14, 18}) && e2 == 1)) return non("5");
            break;
        case Series::E8:
            if (in({15, 20, 24, 30})) return non("6");
            break;
        case Series::ThreeD4:
            if (k == 12) return non("7");
            break;
        default: throw std::logic_error("two_exceptional: wrong family");
    }
    return {true, {"Prop4.5", "adj"}};
}

// --- odd pairs away from the characteristic ------------------------------

inline AdjacencyResult odd_linear(const GroupSpec& g, const BigNat& r, const BigNat& s,
                                  std::uint64_t budget) {
    const unsigned long n = g.classical_n();
    unsigned long k = e_order_small(r, g.q, budget);
    unsigned long l = e_order_small(s, g.q, budget);
    if (k > l) std::swap(k, l);
    if (k + l > n && l % k != 0) return {false, {"Prop2.1", "1"}};
    return {true, {"Prop2.1", "adj"}};
}

inline AdjacencyResult odd_unitary(const GroupSpec& g, const BigNat& r, const BigNat& s,
                                   std::uint64_t budget) {
    const unsigned long n = g.classical_n();
    unsigned long a = nu(e_order_small(r, g.q, budget));
    unsigned long b = nu(e_order_small(s, g.q, budget));
    if (a > b) std::swap(a, b);
    if (a + b > n && b % a != 0) return {false, {"Prop2.2", "1"}};
    return {true, {"Prop2.2", "adj"}};
}

inline AdjacencyResult odd_symplectic(const GroupSpec& g, const BigNat& r, const BigNat& s,
                                      std::uint64_t budget) {
    const unsigned long n = g.classical_n();
    unsigned long k = e_order_small(r, g.q, budget);
    unsigned long l = e_order_small(s, g.q, budget);
    if (std::make_pair(eta(k), k) > std::make_pair(eta(l), l)) std::swap(k, l);
    if (eta(k) + eta(l) > n && !odd_natural_ratio(k, l)) return {false, {"Prop2.3", "1"}};
    return {true, {"Prop2.3", "adj"}};
}

inline AdjacencyResult odd_orthogonal(const GroupSpec& g, const BigNat& r, const BigNat& s,
                                      std::uint64_t budget) {
    const unsigned long n = g.classical_n();
    const int eps = (g.series == Series::D) ? +1 : -1;
    unsigned long k = e_order_small(r, g.q, budget);
    unsigned long l = e_order_small(s, g.q, budget);
    if (std::make_pair(eta(k), k) > std::make_pair(eta(l), l)) std::swap(k, l);
    const int sign = ((k + l) % 2 == 0) ? +1 : -1;
    const long rhs = 2 * static_cast<long>(n) - (1 - eps * sign);
    const bool chain = (eps == +1) && l == n && 2 * eta(l) == n && 2 * eta(k) == n && 2 * k == n;
    if (2 * static_cast<long>(eta(k) + eta(l)) > rhs && !odd_natural_ratio(k, l) && !chain)
        return {false, {"Prop2.4", "1"}};
    return {true, {"Prop2.4", "adj"}};
}

inline AdjacencyResult odd_exceptional(const GroupSpec& g, const BigNat& r, const BigNat& s,
                                       std::uint64_t budget) {
    const BigNat& q = g.q;
    unsigned long k = e_order_small(r, q, budget);
    unsigned long l = e_order_small(s, q, budget);
    BigNat rk = r; // the prime whose e-value is k
    if (k > l) {
        std::swap(k, l);
        rk = s;
    }
    if (k == l) return {true, {"Prop2.5", "adj"}};
    bool non = false;
    const char* clause = nullptr;
    switch (g.series) {
        case Series::G2:
            clause = "1";
            non = (rk != 3 && (l == 3 || l == 6)) || (rk == 3 && 3 * k <= 9 && l == 9 - 3 * k);
            break;
        case Series::F4:
            clause = "2";
            non = (l == 8 || l == 12) || (l == 6 && (k == 3 || k == 4)) || (l == 4 && k == 3);
            break;
        case Series::E6:
            clause = "3";
            non = (l == 4 && k == 3) || (l == 5 && k >= 3) || (l == 6 && k == 5) ||
                  (l == 8 && k >= 3) || (l == 8 && rk == 3 && r_part(q - 1, 3) == 3) ||
                  (l == 9) || (l == 12 && k != 3);
            break;
        case Series::TwoE6:
            clause = "4";
            non = (l == 6 && k == 4) || (l == 8 && k >= 3) ||
                  (l == 8 && rk == 3 && r_part(q + 1, 3) == 3) || (l == 10 && k >= 3) ||
                  (l == 12 && k != 6) || (l == 18);
            break;
        case Series::E7:
            clause = "5";
            non = (l == 5 && k == 4) || (l == 6 && k == 5) ||
                  ((l == 14 || l == 18) && k != 2) || ((l == 7 || l == 9) && k >= 2) ||
                  (l == 8 && k >= 3 && k != 4) || (l == 10 && k >= 3 && k != 6) ||
                  (l == 12 && k >= 4 && k != 6);
            break;
        case Series::E8:
            clause = "6";
            non = (l == 6 && k == 5) || ((l == 7 || l == 14) && k >= 3) || (l == 9 && k >= 4) ||
                  ((l == 8 || l == 12) && k >= 5 && k != 6) ||
                  (l == 10 && k >= 3 && k != 4 && k != 6) ||
                  (l == 18 && k != 1 && k != 2 && k != 6) || (l == 20 && rk * k != 20) ||
                  (l == 15 || l == 24 || l == 30);
            break;
        case Series::ThreeD4:
            clause = "7";
            non = (l == 6 && k == 3) || (l == 12);
            break;
        default: throw std::logic_error("odd_exceptional: wrong family");
    }
    if (non) return {false, {"Prop2.5", clause}};
    return {true, {"Prop2.5", "adj"}};
}

inline AdjacencyResult odd_suzuki_ree(const GroupSpec& g, const BigNat& r, const BigNat& s) {
    auto cr = suzree_classes(g, r);
    auto cs = suzree_classes(g, s);
    const char* clause =
        g.series == Series::TwoB2 ? "1" : (g.series == Series::TwoG2 ? "2" : "3");
    bool disjoint = true;
    for (unsigned a : cr)
        for (unsigned b : cs)
            if (a == b) disjoint = false;
    if (!disjoint) return {true, {"Prop2.6", "adj"}};
    if (g.series == Series::TwoF4) {
        // Divisors of q-1 share the tori (q-1)(q +- sqrt(2q) + 1) and q^2-1
        // with the q^2+1 and q+1 classes respectively.
        auto pairs_with_one = [&](const std::vector<unsigned>& a, const std::vector<unsigned>& b) {
            bool a1 = std::find(a.begin(), a.end(), 1u) != a.end();
            if (!a1) return false;
            for (unsigned x : b)
                if (x == 2 || x == 3) return true;
            return false;
        };
        if (pairs_with_one(cr, cs) || pairs_with_one(cs, cr))
            return {true, {"Prop2.6", "adj"}};
    }
    return {false, {"Prop2.6", clause}};
}

inline AdjacencyResult adjacent_lie(const GroupSpec& g, const BigNat& r, const BigNat& s,
                                    std::uint64_t budget) {
    const BigNat& q = g.q;
    if (r == g.p || s == g.p) {
        const BigNat& other = (r == g.p) ? s : r;
        if (is_classical(g.series)) return char_classical(g, other, budget);
        if (is_suzuki_ree(g.series)) return char_suzuki_ree(g, other);
        return char_exceptional(g, other, budget);
    }
    switch (g.series) {
        case Series::A: {
            // divisors of q-1 (and the prime 2 for odd q) pair through the
            // big-torus criterion
            if (r == 2) return low_linear(g, r, s, budget);
            if (s == 2) return low_linear(g, s, r, budget);
            const bool r1 = e_order(r, q, budget) == 1;
            const bool s1 = e_order(s, q, budget) == 1;
            if (r1 && (!s1 || r < s)) return low_linear(g, r, s, budget);
            if (s1) return low_linear(g, s, r, budget);
            return odd_linear(g, r, s, budget);
        }
        case Series::TwoA: {
            if (r == 2) return low_unitary(g, r, s, budget);
            if (s == 2) return low_unitary(g, s, r, budget);
            const bool r1 = nu(e_order_small(r, q, budget)) == 1;
            const bool s1 = nu(e_order_small(s, q, budget)) == 1;
            if (r1 && (!s1 || r < s)) return low_unitary(g, r, s, budget);
            if (s1) return low_unitary(g, s, r, budget);
            return odd_unitary(g, r, s, budget);
        }
        case Series::B:
        case Series::C:
            if (r == 2) return two_symplectic(g, s, budget);
            if (s == 2) return two_symplectic(g, r, budget);
            return odd_symplectic(g, r, s, budget);
        case Series::D:
        case Series::TwoD:
            if (r == 2) return two_orthogonal(g, s, budget);
            if (s == 2) return two_orthogonal(g, r, budget);
            return odd_orthogonal(g, r, s, budget);
        case Series::G2:
        case Series::F4:
        case Series::E6:
        case Series::TwoE6:
        case Series::E7:
        case Series::E8:
        case Series::ThreeD4:
            if (r == 2) return two_exceptional(g, s, budget);
            if (s == 2) return two_exceptional(g, r, budget);
            return odd_exceptional(g, r, s, budget);
        case Series::TwoG2:
            if (r == 2) return two_exceptional(g, s, budget);
            if (s == 2) return two_exceptional(g, r, budget);
            return odd_suzuki_ree(g, r, s);
        case Series::TwoB2:
        case Series::TwoF4:
            return odd_suzuki_ree(g, r, s);
    }
    throw std::logic_error("adjacent_lie: unreachable");
}

} // namespace detail

// Decides whether r and s are adjacent in GK(G) and names the deciding
// clause. Requires r != s and both in pi(G).
inline AdjacencyResult adjacent(const GroupSpec& g, const BigNat& r, const BigNat& s,
                                std::uint64_t budget = default_budget()) {
    if (r == s) throw std::invalid_argument("adjacent: r and s must be distinct");
    auto pi = prime_set(g, budget);
    for (const BigNat& v : {r, s})
        if (!std::binary_search(pi.begin(), pi.end(), v))
            throw VertexNotInGroup(v.get_str() + " is not in pi(" + render(g) + ")");
    switch (g.kind) {
        case GroupSpec::Kind::Alternating: {
            const BigNat& a = (r == 2) ? s : r;
            if (r == 2 || s == 2) {
                bool non = a + 4 > g.degree;
                return {!non, {"Alt", non ? "2" : "adj"}};
            }
            bool non = r + s > g.degree;
            return {!non, {"Alt", non ? "1" : "adj"}};
        }
        case GroupSpec::Kind::Sporadic: {
            bool adj = lookup_sporadic(g.name).has_edge(r, s);
            return {adj, {"SporadicData", ""}};
        }
        case GroupSpec::Kind::Lie: return detail::adjacent_lie(g, r, s, budget);
    }
    throw std::logic_error("adjacent: unreachable");
}

// Prime graph with per-pair provenance. Vertices are pi(G) ascending;
// adjacency is a symmetric bitmask per vertex.
struct PrimeGraph {
    GroupSpec group;
    std::vector<BigNat> vertices;
    std::vector<std::uint64_t> adj;
    std::map<std::pair<unsigned, unsigned>, CriterionTag> provenance;

    unsigned size() const { return static_cast<unsigned>(vertices.size()); }

    int index_of(const BigNat& v) const {
        auto it = std::lower_bound(vertices.begin(), vertices.end(), v);
        if (it == vertices.end() || *it != v) return -1;
        return static_cast<int>(it - vertices.begin());
    }

    bool edge(unsigned i, unsigned j) const { return (adj[i] >> j) & 1; }

    bool edge_between(const BigNat& a, const BigNat& b) const {
        int i = index_of(a), j = index_of(b);
        if (i < 0 || j < 0) throw VertexNotInGroup("vertex not in graph");
        return edge(static_cast<unsigned>(i), static_cast<unsigned>(j));
    }

    const CriterionTag& tag(unsigned i, unsigned j) const {
        return provenance.at(std::minmax(i, j));
    }

    unsigned edge_count() const {
        unsigned c = 0;
        for (unsigned i = 0; i < size(); ++i)
            for (unsigned j = i + 1; j < size(); ++j)
                if (edge(i, j)) ++c;
        return c;
    }
};

inline PrimeGraph build_graph(const GroupSpec& g, std::uint64_t budget = default_budget()) {
    PrimeGraph pg;
    pg.group = g;
    pg.vertices = prime_set(g, budget);
    if (pg.vertices.size() > 64) throw UnsupportedFamily("build_graph: more than 64 vertices");
    pg.adj.assign(pg.vertices.size(), 0);
    for (unsigned i = 0; i < pg.vertices.size(); ++i) {
        for (unsigned j = i + 1; j < pg.vertices.size(); ++j) {
            AdjacencyResult res = adjacent(g, pg.vertices[i], pg.vertices[j], budget);
            if (res.adjacent) {
                pg.adj[i] |= (1ULL << j);
                pg.adj[j] |= (1ULL << i);
            }
            pg.provenance[{i, j}] = res.tag;
        }
    }
    return pg;
}

} // namespace gk
