#pragma once

#include <algorithm>
#include <array>
#include <cctype>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gk/arith.hpp"
#include "gk/errors.hpp"

namespace gk {

enum class Series {
    A,
    TwoA,
    B,
    C,
    D,
    TwoD,
    G2,
    F4,
    E6,
    TwoE6,
    E7,
    E8,
    ThreeD4,
    TwoB2,
    TwoG2,
    TwoF4,
};

inline bool is_suzuki_ree(Series s) {
    return s == Series::TwoB2 || s == Series::TwoG2 || s == Series::TwoF4;
}

inline bool is_classical(Series s) {
    switch (s) {
        case Series::A:
        case Series::TwoA:
        case Series::B:
        case Series::C:
        case Series::D:
        case Series::TwoD: return true;
        default: return false;
    }
}

inline const char* series_name(Series s) {
    switch (s) {
        case Series::A: return "A";
        case Series::TwoA: return "2A";
        case Series::B: return "B";
        case Series::C: return "C";
        case Series::D: return "D";
        case Series::TwoD: return "2D";
        case Series::G2: return "G2";
        case Series::F4: return "F4";
        case Series::E6: return "E6";
        case Series::TwoE6: return "2E6";
        case Series::E7: return "E7";
        case Series::E8: return "E8";
        case Series::ThreeD4: return "3D4";
        case Series::TwoB2: return "2B2";
        case Series::TwoG2: return "2G2";
        case Series::TwoF4: return "2F4";
    }
    return "?";
}

// Validated identification of a finite nonabelian simple group.
struct GroupSpec {
    enum class Kind { Alternating, Sporadic, Lie };

    Kind kind = Kind::Alternating;
    unsigned degree = 0;     // Alternating: n >= 5
    std::string name;        // Sporadic: canonical name ("M11", ..., "2F4(2)'")
    Series series = Series::A;
    unsigned rank = 0;       // Lie rank (subscript): A_rank, B_rank, ...
    BigNat q = 0;            // field size, q = p^f
    BigNat p = 0;            // characteristic
    unsigned f = 0;

    // Matrix dimension n for the A/2A families (the subscript plus one); for
    // B/C/D/2D it is the subscript itself.
    unsigned classical_n() const {
        if (series == Series::A || series == Series::TwoA) return rank + 1;
        return rank;
    }

    // For Suzuki/Ree fields q = p^(2m+1); returns m.
    unsigned long suzree_param() const { return (f - 1) / 2; }

    bool operator==(const GroupSpec& o) const {
        if (kind != o.kind) return false;
        switch (kind) {
            case Kind::Alternating: return degree == o.degree;
            case Kind::Sporadic: return name == o.name;
            case Kind::Lie: return series == o.series && rank == o.rank && q == o.q;
        }
        return false;
    }
    bool operator!=(const GroupSpec& o) const { return !(*this == o); }
};

struct GroupOrder {
    BigNat value;
    Factorization prime_support;
};

namespace detail {

struct SporadicOrderRow {
    const char* name;
    std::vector<std::pair<unsigned long, unsigned>> factors;
};

inline const std::vector<SporadicOrderRow>& sporadic_orders() {
    static const std::vector<SporadicOrderRow> rows = {
        {"M11", {{2, 4}, {3, 2}, {5, 1}, {11, 1}}},
        {"M12", {{2, 6}, {3, 3}, {5, 1}, {11, 1}}},
        {"M22", {{2, 7}, {3, 2}, {5, 1}, {7, 1}, {11, 1}}},
        {"M23", {{2, 7}, {3, 2}, {5, 1}, {7, 1}, {11, 1}, {23, 1}}},
        {"M24", {{2, 10}, {3, 3}, {5, 1}, {7, 1}, {11, 1}, {23, 1}}},
        {"J1", {{2, 3}, {3, 1}, {5, 1}, {7, 1}, {11, 1}, {19, 1}}},
        {"J2", {{2, 7}, {3, 3}, {5, 2}, {7, 1}}},
        {"J3", {{2, 7}, {3, 5}, {5, 1}, {17, 1}, {19, 1}}},
        {"J4", {{2, 21}, {3, 3}, {5, 1}, {7, 1}, {11, 3}, {23, 1}, {29, 1}, {31, 1}, {37, 1}, {43, 1}}},
        {"Ru", {{2, 14}, {3, 3}, {5, 3}, {7, 1}, {13, 1}, {29, 1}}},
        {"He", {{2, 10}, {3, 3}, {5, 2}, {7, 3}, {17, 1}}},
        {"McL", {{2, 7}, {3, 6}, {5, 3}, {7, 1}, {11, 1}}},
        {"HN", {{2, 14}, {3, 6}, {5, 6}, {7, 1}, {11, 1}, {19, 1}}},
        {"HS", {{2, 9}, {3, 2}, {5, 3}, {7, 1}, {11, 1}}},
        {"Suz", {{2, 13}, {3, 7}, {5, 2}, {7, 1}, {11, 1}, {13, 1}}},
        {"Co1", {{2, 21}, {3, 9}, {5, 4}, {7, 2}, {11, 1}, {13, 1}, {23, 1}}},
        {"Co2", {{2, 18}, {3, 6}, {5, 3}, {7, 1}, {11, 1}, {23, 1}}},
        {"Co3", {{2, 10}, {3, 7}, {5, 3}, {7, 1}, {11, 1}, {23, 1}}},
        {"Fi22", {{2, 17}, {3, 9}, {5, 2}, {7, 1}, {11, 1}, {13, 1}}},
        {"Fi23", {{2, 18}, {3, 13}, {5, 2}, {7, 1}, {11, 1}, {13, 1}, {17, 1}, {23, 1}}},
        {"Fi24'", {{2, 21}, {3, 16}, {5, 2}, {7, 3}, {11, 1}, {13, 1}, {17, 1}, {23, 1}, {29, 1}}},
        {"ON", {{2, 9}, {3, 4}, {5, 1}, {7, 3}, {11, 1}, {19, 1}, {31, 1}}},
        {"Ly", {{2, 8}, {3, 7}, {5, 6}, {7, 1}, {11, 1}, {31, 1}, {37, 1}, {67, 1}}},
        {"Th", {{2, 15}, {3, 10}, {5, 3}, {7, 2}, {13, 1}, {19, 1}, {31, 1}}},
        {"B", {{2, 41}, {3, 13}, {5, 6}, {7, 2}, {11, 1}, {13, 1}, {17, 1}, {19, 1}, {23, 1}, {31, 1}, {47, 1}}},
        {"M", {{2, 46}, {3, 20}, {5, 9}, {7, 6}, {11, 2}, {13, 3}, {17, 1}, {19, 1}, {23, 1}, {29, 1}, {31, 1}, {41, 1}, {47, 1}, {59, 1}, {71, 1}}},
        {"2F4(2)'", {{2, 11}, {3, 3}, {5, 2}, {13, 1}}},
    };
    return rows;
}

inline const SporadicOrderRow* find_sporadic(const std::string& name) {
    for (const auto& row : sporadic_orders())
        if (name == row.name) return &row;
    return nullptr;
}

inline const std::map<std::string, std::string>& sporadic_aliases() {
    static const std::map<std::string, std::string> aliases = {
        {"HiS", "HS"}, {"LyS", "Ly"}, {"O'N", "ON"}, {"F1", "M"},
        {"F2", "B"},   {"F3", "Th"},  {"Fi24", "Fi24'"}, {"T", "2F4(2)'"},
    };
    return aliases;
}

} // namespace detail

inline const std::vector<std::string>& sporadic_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> out;
        for (const auto& row : detail::sporadic_orders()) out.push_back(row.name);
        return out;
    }();
    return names;
}

namespace detail {

inline std::optional<std::pair<BigNat, unsigned>> prime_power_split(const BigNat& q) {
    if (q < 2) return std::nullopt;
    Factorization f = factorize(q);
    if (f.factors.size() != 1) return std::nullopt;
    const auto& [p, e] = *f.factors.begin();
    return std::make_pair(p, e);
}

// Groups of Lie type over tiny fields that fail to be simple, with the
// reason reported on rejection.
inline std::optional<std::string> table1_reason(Series s, unsigned rank, const BigNat& q) {
    if (s == Series::A && rank == 1 && q == 2) return "A1(2) is soluble";
    if (s == Series::A && rank == 1 && q == 3) return "A1(3) is soluble";
    if ((s == Series::B || s == Series::C) && rank == 2 && q == 2)
        return "B2(2) ~= Sym(6) is not simple";
    if (s == Series::G2 && q == 2) return "G2(2) is not simple: [G2(2),G2(2)] ~= 2A2(3)";
    if (s == Series::TwoA && rank == 2 && q == 2) return "2A2(2) is soluble";
    if (s == Series::TwoB2 && q == 2) return "2B2(2) is soluble";
    if (s == Series::TwoG2 && q == 3) return "2G2(3) is not simple: [2G2(3),2G2(3)] ~= A1(8)";
    if (s == Series::TwoF4 && q == 2)
        return "2F4(2) is not simple: [2F4(2),2F4(2)] = 2F4(2)' is the Tits group; use \"2F4(2)'\"";
    return std::nullopt;
}

} // namespace detail

// Validates a Lie spec: q is a prime power, rank bounds hold, Suzuki/Ree
// field constraints hold, and tiny non-simple groups are rejected.
inline GroupSpec make_lie(Series s, unsigned rank, const BigNat& q) {
    GroupSpec g;
    g.kind = GroupSpec::Kind::Lie;
    g.series = s;
    g.rank = rank;
    g.q = q;
    auto pp = detail::prime_power_split(q);
    if (!pp) throw ParseError("field size " + q.get_str() + " is not a prime power");
    g.p = pp->first;
    g.f = pp->second;

    auto fail = [&](const std::string& msg) { throw ParseError(msg); };
    switch (s) {
        case Series::A:
            if (rank < 1) fail("A-series rank must be >= 1");
            break;
        case Series::TwoA:
            if (rank < 2) fail("2A-series rank must be >= 2");
            break;
        case Series::B:
        case Series::C:
            if (rank < 2) fail("B/C-series rank must be >= 2");
            break;
        case Series::D:
        case Series::TwoD:
            if (rank < 4) fail("D/2D-series rank must be >= 4");
            break;
        case Series::G2:
            if (rank != 2) fail("G2 has rank 2");
            break;
        case Series::F4:
            if (rank != 4) fail("F4 has rank 4");
            break;
        case Series::E6:
        case Series::TwoE6:
            if (rank != 6) fail("E6 has rank 6");
            break;
        case Series::E7:
            if (rank != 7) fail("E7 has rank 7");
            break;
        case Series::E8:
            if (rank != 8) fail("E8 has rank 8");
            break;
        case Series::ThreeD4:
            if (rank != 4) fail("3D4 has rank 4");
            break;
        case Series::TwoB2:
            if (rank != 1) fail("2B2 has rank 1");
            if (g.p != 2 || g.f % 2 == 0) fail("2B2 requires q = 2^(2m+1)");
            break;
        case Series::TwoG2:
            if (rank != 1) fail("2G2 has rank 1");
            if (g.p != 3 || g.f % 2 == 0) fail("2G2 requires q = 3^(2m+1)");
            break;
        case Series::TwoF4:
            if (rank != 2) fail("2F4 has rank 2");
            if (g.p != 2 || g.f % 2 == 0) fail("2F4 requires q = 2^(2m+1)");
            break;
    }
    if (auto reason = detail::table1_reason(s, rank, q)) throw NotSimpleError(*reason);
    return g;
}

inline GroupSpec make_alternating(unsigned degree) {
    if (degree < 5) throw ParseError("Alt(n) requires n >= 5");
    GroupSpec g;
    g.kind = GroupSpec::Kind::Alternating;
    g.degree = degree;
    return g;
}

inline GroupSpec make_sporadic(const std::string& name) {
    std::string canonical = name;
    auto alias = detail::sporadic_aliases().find(name);
    if (alias != detail::sporadic_aliases().end()) canonical = alias->second;
    if (!detail::find_sporadic(canonical)) throw UnknownName("unknown sporadic group: " + name);
    GroupSpec g;
    g.kind = GroupSpec::Kind::Sporadic;
    g.name = canonical;
    return g;
}

// Accepted grammar (see README):
//   Alt(n)                      alternating group of degree n
//   <sporadic name>             M11 ... M, ON, Fi24', 2F4(2)'
//   <series>(n, q)              dimension form for A/2A (PSL_n, PSU_n),
//                               subscript form for everything else
//   <series><k>(q)              subscript form, e.g. A5(2), 2D4(3), G2(4)
inline GroupSpec parse_spec(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty()) throw ParseError("empty group spec");

    if (s == "2F4(2)'") return make_sporadic(s);
    if (detail::find_sporadic(s) || detail::sporadic_aliases().count(s)) return make_sporadic(s);

    auto lp = s.find('(');
    if (lp == std::string::npos || s.back() != ')')
        throw ParseError("cannot parse group spec: " + text);
    std::string head = s.substr(0, lp);
    std::string args = s.substr(lp + 1, s.size() - lp - 2);

    auto parse_nat = [&](const std::string& t) -> BigNat {
        if (t.empty() || !std::all_of(t.begin(), t.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
            throw ParseError("expected a number, got '" + t + "' in: " + text);
        return BigNat(t);
    };

    std::vector<std::string> parts;
    {
        std::string cur;
        for (char c : args) {
            if (c == ',') {
                parts.push_back(cur);
                cur.clear();
            } else
                cur += c;
        }
        parts.push_back(cur);
    }

    if (head == "Alt") {
        if (parts.size() != 1) throw ParseError("Alt takes one argument");
        BigNat n = parse_nat(parts[0]);
        if (!n.fits_ulong_p() || n.get_ui() > 1'000'000) throw ParseError("Alt degree out of range");
        return make_alternating(static_cast<unsigned>(n.get_ui()));
    }

    static const std::map<std::string, Series> fixed_rank = {
        {"G2", Series::G2},   {"F4", Series::F4},     {"E6", Series::E6},
        {"2E6", Series::TwoE6}, {"E7", Series::E7},   {"E8", Series::E8},
        {"3D4", Series::ThreeD4}, {"2B2", Series::TwoB2}, {"2G2", Series::TwoG2},
        {"2F4", Series::TwoF4},
    };
    static const std::map<std::string, Series> classical = {
        {"A", Series::A}, {"2A", Series::TwoA}, {"B", Series::B},
        {"C", Series::C}, {"D", Series::D},     {"2D", Series::TwoD},
    };
    static const std::map<Series, unsigned> fixed_rank_value = {
        {Series::G2, 2},     {Series::F4, 4},    {Series::E6, 6},  {Series::TwoE6, 6},
        {Series::E7, 7},     {Series::E8, 8},    {Series::ThreeD4, 4},
        {Series::TwoB2, 1},  {Series::TwoG2, 1}, {Series::TwoF4, 2},
    };

    if (auto it = fixed_rank.find(head); it != fixed_rank.end()) {
        if (parts.size() != 1) throw ParseError(head + " takes one argument (q)");
        return make_lie(it->second, fixed_rank_value.at(it->second), parse_nat(parts[0]));
    }

    // classical families: either "A(n,q)" or "A<k>(q)"
    for (const auto& [name, series] : classical) {
        if (head == name) {
            if (parts.size() != 2) throw ParseError(name + "(n,q) takes two arguments");
            BigNat n = parse_nat(parts[0]);
            if (!n.fits_ulong_p() || n.get_ui() > 10'000) throw ParseError("rank out of range");
            unsigned dim = static_cast<unsigned>(n.get_ui());
            unsigned rank = (series == Series::A || series == Series::TwoA) ? dim - 1 : dim;
            if ((series == Series::A || series == Series::TwoA) && dim < 2)
                throw ParseError("A(n,q)/2A(n,q) requires n >= 2");
            return make_lie(series, rank, parse_nat(parts[1]));
        }
        if (head.size() > name.size() && head.compare(0, name.size(), name) == 0) {
            std::string sub = head.substr(name.size());
            if (std::all_of(sub.begin(), sub.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
                if (parts.size() != 1) throw ParseError(head + "(q) takes one argument");
                unsigned long rank = std::stoul(sub);
                if (rank == 0 || rank > 10'000) throw ParseError("rank out of range");
                return make_lie(series, static_cast<unsigned>(rank), parse_nat(parts[0]));
            }
        }
    }
    throw ParseError("cannot parse group spec: " + text);
}

// Canonical form: subscript style for Lie groups.
inline std::string render(const GroupSpec& g) {
    switch (g.kind) {
        case GroupSpec::Kind::Alternating: return "Alt(" + std::to_string(g.degree) + ")";
        case GroupSpec::Kind::Sporadic: return g.name;
        case GroupSpec::Kind::Lie: {
            std::string s = series_name(g.series);
            switch (g.series) {
                case Series::A:
                case Series::TwoA:
                case Series::B:
                case Series::C:
                case Series::D:
                case Series::TwoD: s += std::to_string(g.rank); break;
                default: break;
            }
            return s + "(" + g.q.get_str() + ")";
        }
    }
    return "?";
}

namespace detail {

// |G| = f(q) * q^N for a simple group of Lie type; the assembled
// factorization is cross-checked against the closed-form product.
inline GroupOrder lie_order(const GroupSpec& g, std::uint64_t budget) {
    const BigNat& q = g.q;
    unsigned n = g.classical_n();
    Factorization supp;
    BigNat direct = 1;
    unsigned long npow = 0;

    auto mul_minus = [&](unsigned long i) {
        supp.mul(factor_pow_minus_one(q, i, budget));
        direct *= pow_ui(q, i) - 1;
    };
    auto mul_plus = [&](unsigned long i) {
        supp.mul(factor_pow_plus_one(q, i, budget));
        direct *= pow_ui(q, i) + 1;
    };
    auto div_small = [&](const BigNat& d) {
        supp.div(factorize(d, budget));
        if (mpz_divisible_p(direct.get_mpz_t(), d.get_mpz_t()) == 0)
            throw std::logic_error("lie_order: non-exact center division");
        direct /= d;
    };

    switch (g.series) {
        case Series::A:
            npow = static_cast<unsigned long>(n) * (n - 1) / 2;
            for (unsigned long i = 2; i <= n; ++i) mul_minus(i);
            div_small(gcd(BigNat(n), q - 1));
            break;
        case Series::TwoA:
            npow = static_cast<unsigned long>(n) * (n - 1) / 2;
            for (unsigned long i = 2; i <= n; ++i) {
                if (i % 2 == 0)
                    mul_minus(i);
                else
                    mul_plus(i);
            }
            div_small(gcd(BigNat(n), q + 1));
            break;
        case Series::B:
        case Series::C:
            npow = static_cast<unsigned long>(n) * n;
            for (unsigned long i = 1; i <= n; ++i) mul_minus(2 * i);
            div_small(gcd(BigNat(2), q - 1));
            break;
        case Series::D:
            npow = static_cast<unsigned long>(n) * (n - 1);
            mul_minus(n);
            for (unsigned long i = 1; i + 1 <= n; ++i) mul_minus(2 * i);
            div_small(gcd(BigNat(4), pow_ui(q, n) - 1));
            break;
        case Series::TwoD:
            npow = static_cast<unsigned long>(n) * (n - 1);
            mul_plus(n);
            for (unsigned long i = 1; i + 1 <= n; ++i) mul_minus(2 * i);
            div_small(gcd(BigNat(4), pow_ui(q, n) + 1));
            break;
        case Series::G2:
            npow = 6;
            mul_minus(6);
            mul_minus(2);
            break;
        case Series::F4:
            npow = 24;
            mul_minus(12);
            mul_minus(8);
            mul_minus(6);
            mul_minus(2);
            break;
        case Series::E6:
            npow = 36;
            mul_minus(12);
            mul_minus(9);
            mul_minus(8);
            mul_minus(6);
            mul_minus(5);
            mul_minus(2);
            div_small(gcd(BigNat(3), q - 1));
            break;
        case Series::TwoE6:
            npow = 36;
            mul_minus(12);
            mul_plus(9);
            mul_minus(8);
            mul_minus(6);
            mul_plus(5);
            mul_minus(2);
            div_small(gcd(BigNat(3), q + 1));
            break;
        case Series::E7:
            npow = 63;
            mul_minus(18);
            mul_minus(14);
            mul_minus(12);
            mul_minus(10);
            mul_minus(8);
            mul_minus(6);
            mul_minus(2);
            div_small(gcd(BigNat(2), q - 1));
            break;
        case Series::E8:
            npow = 120;
            mul_minus(30);
            mul_minus(24);
            mul_minus(20);
            mul_minus(18);
            mul_minus(14);
            mul_minus(12);
            mul_minus(8);
            mul_minus(2);
            break;
        case Series::ThreeD4:
            // q^12 (q^8 + q^4 + 1)(q^6 - 1)(q^2 - 1); the first factor is
            // Phi_3 Phi_6 Phi_12 at q.
            npow = 12;
            for (unsigned long d : {3UL, 6UL, 12UL}) {
                supp.mul(factorize(cyclotomic_value(d, q), budget));
            }
            direct *= pow_ui(q, 8) + pow_ui(q, 4) + 1;
            mul_minus(6);
            mul_minus(2);
            break;
        case Series::TwoB2:
            npow = 2;
            supp.mul(factor_pow_plus_one(q, 2, budget));
            direct *= pow_ui(q, 2) + 1;
            mul_minus(1);
            break;
        case Series::TwoG2:
            npow = 3;
            supp.mul(factor_pow_plus_one(q, 3, budget));
            direct *= pow_ui(q, 3) + 1;
            mul_minus(1);
            break;
        case Series::TwoF4:
            npow = 12;
            supp.mul(factor_pow_plus_one(q, 6, budget));
            direct *= pow_ui(q, 6) + 1;
            mul_minus(4);
            supp.mul(factor_pow_plus_one(q, 3, budget));
            direct *= pow_ui(q, 3) + 1;
            mul_minus(1);
            break;
    }

    supp.mul_prime(g.p, g.f * static_cast<unsigned>(npow));
    direct *= pow_ui(q, npow);
    supp.subject = direct;
    if (supp.value() != direct) throw std::logic_error("lie_order: factorization mismatch");
    return GroupOrder{direct, supp};
}

} // namespace detail

inline GroupOrder group_order(const GroupSpec& g, std::uint64_t budget = default_budget()) {
    static std::map<std::string, GroupOrder> cache;
    static std::mutex mtx;
    const std::string key = render(g);
    {
        std::lock_guard<std::mutex> lock(mtx);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    GroupOrder out;
    switch (g.kind) {
        case GroupSpec::Kind::Alternating: {
            BigNat fact = 1;
            for (unsigned i = 2; i <= g.degree; ++i) fact *= i;
            out.value = fact / 2;
            out.prime_support = factorize(out.value, budget);
            break;
        }
        case GroupSpec::Kind::Sporadic: {
            const auto* row = detail::find_sporadic(g.name);
            if (!row) throw UnknownName("unknown sporadic group: " + g.name);
            Factorization f;
            for (const auto& [p, e] : row->factors) f.mul_prime(BigNat(p), e);
            f.subject = f.value();
            out.value = f.subject;
            out.prime_support = f;
            break;
        }
        case GroupSpec::Kind::Lie: out = detail::lie_order(g, budget); break;
    }
    {
        std::lock_guard<std::mutex> lock(mtx);
        cache.emplace(key, out);
    }
    return out;
}

// pi(G): prime divisors of |G|, ascending.
inline std::vector<BigNat> prime_set(const GroupSpec& g, std::uint64_t budget = default_budget()) {
    return group_order(g, budget).prime_support.primes();
}

} // namespace gk
