#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gk/adjacency.hpp"
#include "gk/arith.hpp"
#include "gk/errors.hpp"
#include "gk/groups.hpp"

namespace gk {

struct TorusOrder {
    BigNat value;
    std::string descriptor;
};

struct TorusCensus {
    GroupSpec group;
    std::vector<TorusOrder> orders; // deduplicated by value, ascending
    std::size_t descriptor_count = 0;
};

namespace detail {

inline void partitions_of(unsigned n, std::vector<std::vector<unsigned>>& out) {
    std::vector<unsigned> cur;
    auto rec = [&](auto&& self, unsigned rest, unsigned maxpart) -> void {
        if (rest == 0) {
            out.push_back(cur);
            return;
        }
        for (unsigned part = std::min(rest, maxpart); part >= 1; --part) {
            cur.push_back(part);
            self(self, rest - part, part);
            cur.pop_back();
        }
    };
    rec(rec, n, n);
}

inline std::string join_parts(const std::vector<unsigned>& minus, const std::vector<unsigned>& plus) {
    std::string s = "[";
    bool first = true;
    for (unsigned a : minus) {
        if (!first) s += ",";
        s += std::to_string(a) + "-";
        first = false;
    }
    for (unsigned b : plus) {
        if (!first) s += ",";
        s += std::to_string(b) + "+";
        first = false;
    }
    return s + "]";
}

inline void push_order(std::vector<TorusOrder>& out, const BigNat& value, std::string descriptor) {
    out.push_back(TorusOrder{value, std::move(descriptor)});
}

inline BigNat exact_div(const BigNat& num, const BigNat& den, const char* where) {
    if (mpz_divisible_p(num.get_mpz_t(), den.get_mpz_t()) == 0)
        throw std::logic_error(std::string(where) + ": non-exact torus prefactor division");
    return num / den;
}

} // namespace detail

// Every maximal-torus order of the simple group, produced from the
// partition rules for the classical families and from the finite template
// lists for G2, F4, 3D4 and the Suzuki/Ree families. E6/2E6/E7/E8 are not
// covered.
inline TorusCensus enumerate_torus_orders(const GroupSpec& g,
                                          std::uint64_t budget = default_budget(),
                                          unsigned max_classical_rank = 8) {
    (void)budget;
    if (g.kind != GroupSpec::Kind::Lie)
        throw UnsupportedFamily("torus oracle: " + render(g) + " is not of Lie type");
    const BigNat& q = g.q;
    std::vector<TorusOrder> raw;

    if (is_classical(g.series)) {
        if (g.rank > max_classical_rank)
            throw UnsupportedFamily("torus oracle: classical rank above configured bound");
        const unsigned n = g.classical_n();
        if (g.series == Series::A || g.series == Series::TwoA) {
            const bool twisted = (g.series == Series::TwoA);
            const BigNat qe = twisted ? q + 1 : q - 1;
            const BigNat pref = gcd(BigNat(n), qe) * qe;
            std::vector<std::vector<unsigned>> parts;
            detail::partitions_of(n, parts);
            for (const auto& lambda : parts) {
                BigNat v = 1;
                for (unsigned ni : lambda) {
                    if (twisted && ni % 2 == 1)
                        v *= pow_ui(q, ni) + 1;
                    else
                        v *= pow_ui(q, ni) - 1;
                }
                std::string desc = series_name(g.series);
                desc += detail::join_parts(lambda, {});
                detail::push_order(raw, detail::exact_div(v, pref, "A-type"), desc);
            }
        } else {
            // B/C and D/2D: signed partitions; the plus-part count is free
            // for B/C, even for D and odd for 2D.
            const bool bc = (g.series == Series::B || g.series == Series::C);
            const bool dplus = (g.series == Series::D);
            BigNat pref;
            if (bc)
                pref = gcd(BigNat(2), q - 1);
            else if (dplus)
                pref = gcd(BigNat(4), pow_ui(q, n) - 1);
            else
                pref = gcd(BigNat(4), pow_ui(q, n) + 1);
            std::vector<std::vector<unsigned>> minus_parts, plus_parts;
            for (unsigned j = 0; j <= n; ++j) {
                std::vector<std::vector<unsigned>> pm, pp;
                detail::partitions_of(n - j, pm);
                detail::partitions_of(j, pp);
                for (const auto& mu : pm) {
                    for (const auto& lam : pp) {
                        if (!bc) {
                            const unsigned plus_count = static_cast<unsigned>(lam.size());
                            if (dplus && plus_count % 2 != 0) continue;
                            if (!dplus && plus_count % 2 != 1) continue;
                        }
                        BigNat v = 1;
                        for (unsigned a : mu) v *= pow_ui(q, a) - 1;
                        for (unsigned b : lam) v *= pow_ui(q, b) + 1;
                        std::string desc = series_name(g.series);
                        desc += detail::join_parts(mu, lam);
                        detail::push_order(raw, detail::exact_div(v, pref, "BCD-type"), desc);
                    }
                }
            }
        }
    } else {
        auto t = [&](const BigNat& v, const std::string& d) { detail::push_order(raw, v, d); };
        const BigNat q2 = q * q, q3 = q2 * q, q4 = q3 * q;
        switch (g.series) {
            case Series::G2:
                t((q - 1) * (q - 1), "(q-1)^2");
                t((q + 1) * (q + 1), "(q+1)^2");
                t(q2 - 1, "q^2-1");
                t(q2 - q + 1, "q^2-q+1");
                t(q2 + q + 1, "q^2+q+1");
                break;
            case Series::F4: {
                const BigNat m1 = q - 1, p1 = q + 1;
                t(m1 * m1 * m1 * m1, "(q-1)^4");
                t(p1 * p1 * p1 * p1, "(q+1)^4");
                t(m1 * m1 * (q2 - 1), "(q-1)^2(q^2-1)");
                t(m1 * m1 * (q2 + 1), "(q-1)^2(q^2+1)");
                t(p1 * p1 * (q2 - 1), "(q+1)^2(q^2-1)");
                t(p1 * p1 * (q2 + 1), "(q+1)^2(q^2+1)");
                t((q2 - 1) * (q2 - 1), "(q^2-1)^2");
                t((q2 + 1) * (q2 + 1), "(q^2+1)^2");
                t(m1 * (q3 - 1), "(q-1)(q^3-1)");
                t(m1 * (q3 + 1), "(q-1)(q^3+1)");
                t(p1 * (q3 - 1), "(q+1)(q^3-1)");
                t(p1 * (q3 + 1), "(q+1)(q^3+1)");
                t(q4 - 1, "q^4-1");
                t(q4 + 1, "q^4+1");
                t((q2 - q + 1) * (q2 - q + 1), "(q^2-q+1)^2");
                t((q2 + q + 1) * (q2 + q + 1), "(q^2+q+1)^2");
                t(q4 - q2 + 1, "q^4-q^2+1");
                break;
            }
            case Series::ThreeD4:
                t((q3 - 1) * (q - 1), "(q^3-1)(q-1)");
                t((q3 - 1) * (q + 1), "(q^3-1)(q+1)");
                t((q3 + 1) * (q - 1), "(q^3+1)(q-1)");
                t((q3 + 1) * (q + 1), "(q^3+1)(q+1)");
                t((q2 - q + 1) * (q2 - q + 1), "(q^2-q+1)^2");
                t((q2 + q + 1) * (q2 + q + 1), "(q^2+q+1)^2");
                t(q4 - q2 + 1, "q^4-q^2+1");
                break;
            case Series::TwoB2: {
                const BigNat s = pow_ui(g.p, g.suzree_param() + 1); // sqrt(2q)
                t(q - 1, "q-1");
                t(q - s + 1, "q-r+1");
                t(q + s + 1, "q+r+1");
                break;
            }
            case Series::TwoG2: {
                const BigNat s = pow_ui(g.p, g.suzree_param() + 1); // sqrt(3q)
                t(q - 1, "q-1");
                t(q + 1, "q+1");
                t(q - s + 1, "q-r+1");
                t(q + s + 1, "q+r+1");
                break;
            }
            case Series::TwoF4: {
                const BigNat s = pow_ui(g.p, g.suzree_param() + 1); // sqrt(2q)
                t(q2 + q * s + q + s + 1, "q^2+qr+q+r+1");
                t(q2 - q * s + q - s + 1, "q^2-qr+q-r+1");
                t(q2 - q + 1, "q^2-q+1");
                t((q - s + 1) * (q - s + 1), "(q-r+1)^2");
                t((q + s + 1) * (q + s + 1), "(q+r+1)^2");
                t((q - 1) * (q - s + 1), "(q-1)(q-r+1)");
                t((q - 1) * (q + s + 1), "(q-1)(q+r+1)");
                t((q - 1) * (q - 1), "(q-1)^2");
                t((q + 1) * (q + 1), "(q+1)^2");
                t(q2 - 1, "q^2-1");
                t(q2 + 1, "q^2+1");
                break;
            }
            default:
                throw UnsupportedFamily("torus oracle does not cover " + render(g));
        }
    }

    TorusCensus census;
    census.group = g;
    census.descriptor_count = raw.size();
    std::sort(raw.begin(), raw.end(),
              [](const TorusOrder& a, const TorusOrder& b) { return a.value < b.value; });
    for (auto& o : raw) {
        if (!census.orders.empty() && census.orders.back().value == o.value) continue;
        census.orders.push_back(o);
    }
    return census;
}

inline bool oracle_adjacent(const TorusCensus& census, const BigNat& r, const BigNat& s) {
    if (r == census.group.p || s == census.group.p)
        throw CharacteristicNotSupported("torus oracle does not decide characteristic adjacency");
    const BigNat rs = r * s;
    for (const auto& o : census.orders)
        if (mpz_divisible_p(o.value.get_mpz_t(), rs.get_mpz_t())) return true;
    return false;
}

// True iff some maximal-torus order is divisible by both r and s. Only for
// r, s away from the characteristic.
inline bool oracle_adjacent(const GroupSpec& g, const BigNat& r, const BigNat& s,
                            std::uint64_t budget = default_budget()) {
    if (r == s) throw std::invalid_argument("oracle_adjacent: r and s must be distinct");
    auto pi = prime_set(g, budget);
    for (const BigNat& v : {r, s})
        if (!std::binary_search(pi.begin(), pi.end(), v))
            throw VertexNotInGroup(v.get_str() + " is not in pi(" + render(g) + ")");
    return oracle_adjacent(enumerate_torus_orders(g, budget), r, s);
}

struct OracleMismatch {
    BigNat r, s;
    bool criteria_adjacent = false;
    CriterionTag criteria_tag;
    bool oracle_adjacent = false;
};

struct CrossValidationReport {
    GroupSpec group;
    unsigned pairs_checked = 0;
    std::vector<OracleMismatch> mismatches;

    bool ok() const { return mismatches.empty(); }
};

// Compares the criteria engine with the torus oracle on every pair of
// vertices away from the characteristic.
inline CrossValidationReport cross_validate(const GroupSpec& g,
                                            std::uint64_t budget = default_budget()) {
    CrossValidationReport report;
    report.group = g;
    TorusCensus census = enumerate_torus_orders(g, budget);
    auto pi = prime_set(g, budget);
    for (unsigned i = 0; i < pi.size(); ++i) {
        if (pi[i] == g.p) continue;
        for (unsigned j = i + 1; j < pi.size(); ++j) {
            if (pi[j] == g.p) continue;
            AdjacencyResult res = adjacent(g, pi[i], pi[j], budget);
            bool oracle = oracle_adjacent(census, pi[i], pi[j]);
            ++report.pairs_checked;
            if (res.adjacent != oracle)
                report.mismatches.push_back({pi[i], pi[j], res.adjacent, res.tag, oracle});
        }
    }
    return report;
}

} // namespace gk
