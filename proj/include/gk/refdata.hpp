#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "gk/adjacency.hpp"
#include "gk/arith.hpp"
#include "gk/errors.hpp"
#include "gk/groups.hpp"
#include "gk/independence.hpp"
#include "gk/sporadic.hpp"
#include "gk_embedded_data.hpp"

namespace gk {

// One expected-value atom of a table row pattern.
struct PatternAtom {
    enum class Kind { Char, Two, Prime3, E, MClass, Set };
    Kind kind = Kind::Char;
    std::string e_expr;              // E: linear expression in n
    unsigned mclass = 0;             // MClass
    unsigned long mexclude = 0;      // MClass: prime excluded from the class
    std::string set_type, lo, hi;    // Set: "2i" | "odd" | "all" | "nuinv"
    std::vector<unsigned long> skip; // Set: e-values to drop
    std::string canon;
};

// A parameterized expectation row transcribed from the result tables.
struct TableRow {
    std::string id;
    int table = 0;
    std::string family; // A,2A,B,C,BC,D,2D,G2,...,2F4,Alt,Sporadic
    std::string kind;   // p | two | t | sporadic | alt
    std::vector<std::string> when;
    std::vector<std::vector<std::string>> when_any;
    std::string group; // sporadic rows
    std::string t_expr, t2_expr;
    std::vector<PatternAtom> pattern;
    std::vector<std::string> rho_list, rho2_list; // concrete sets
    std::string rho_mode, rho2_mode;              // "tau", "tau+s1", "tau2+2"
    bool reconstructed = false;
    std::string note;
};

namespace refdetail {

inline PatternAtom parse_atom(const nlohmann::json& j) {
    PatternAtom a;
    if (j.is_string()) {
        std::string s = j.get<std::string>();
        a.canon = s;
        if (s == "char")
            a.kind = PatternAtom::Kind::Char;
        else if (s == "two")
            a.kind = PatternAtom::Kind::Two;
        else if (s == "p3")
            a.kind = PatternAtom::Kind::Prime3;
        else if (s.rfind("e:", 0) == 0) {
            a.kind = PatternAtom::Kind::E;
            a.e_expr = s.substr(2);
        } else if (s.rfind("m:", 0) == 0) {
            a.kind = PatternAtom::Kind::MClass;
            std::string body = s.substr(2);
            auto bang = body.find('!');
            if (bang != std::string::npos) {
                a.mexclude = std::stoul(body.substr(bang + 1));
                body = body.substr(0, bang);
            }
            a.mclass = static_cast<unsigned>(std::stoul(body));
        } else
            throw DataError("table_rows.json: unknown pattern atom " + s);
        return a;
    }
    a.kind = PatternAtom::Kind::Set;
    a.set_type = j.at("set").get<std::string>();
    a.lo = j.at("lo").get<std::string>();
    a.hi = j.at("hi").get<std::string>();
    std::string skips;
    if (j.contains("skip"))
        for (const auto& x : j.at("skip")) {
            a.skip.push_back(x.get<unsigned long>());
            if (!skips.empty()) skips += "+";
            skips += std::to_string(a.skip.back());
        }
    a.canon = "set(" + a.set_type + "," + a.lo + "," + a.hi + "," + skips + ")";
    return a;
}

inline std::vector<TableRow> load_rows() {
    nlohmann::json doc = nlohmann::json::parse(data::table_rows_json);
    if (doc.at("schema") != "gk-table-rows-v1")
        throw DataError("table_rows.json: unexpected schema");
    std::vector<TableRow> rows;
    std::string canon;
    for (const auto& j : doc.at("rows")) {
        TableRow r;
        r.id = j.at("id").get<std::string>();
        r.table = j.at("table").get<int>();
        r.family = j.at("family").get<std::string>();
        r.kind = j.at("kind").get<std::string>();
        if (j.contains("when"))
            for (const auto& w : j.at("when")) r.when.push_back(w.get<std::string>());
        if (j.contains("when_any"))
            for (const auto& alt : j.at("when_any")) {
                std::vector<std::string> conj;
                for (const auto& w : alt) conj.push_back(w.get<std::string>());
                r.when_any.push_back(std::move(conj));
            }
        if (j.contains("group")) r.group = j.at("group").get<std::string>();
        if (j.contains("t")) r.t_expr = j.at("t").get<std::string>();
        if (j.contains("t2")) r.t2_expr = j.at("t2").get<std::string>();
        if (j.contains("pattern"))
            for (const auto& a : j.at("pattern")) r.pattern.push_back(parse_atom(a));
        auto read_set = [&](const char* key, std::vector<std::string>& list, std::string& mode) {
            if (!j.contains(key)) return;
            const auto& v = j.at(key);
            if (v.is_string())
                mode = v.get<std::string>();
            else
                for (const auto& x : v) list.push_back(x.get<std::string>());
        };
        read_set("rho", r.rho_list, r.rho_mode);
        read_set("rho2", r.rho2_list, r.rho2_mode);
        if (j.contains("reconstructed")) r.reconstructed = j.at("reconstructed").get<bool>();
        if (j.contains("note")) r.note = j.at("note").get<std::string>();

        std::string pat;
        for (const auto& a : r.pattern) {
            if (!pat.empty()) pat += ",";
            pat += a.canon;
        }
        std::string alts;
        for (unsigned i = 0; i < r.when_any.size(); ++i) {
            if (i) alts += "/";
            for (unsigned k = 0; k < r.when_any[i].size(); ++k) {
                if (k) alts += "&";
                alts += r.when_any[i][k];
            }
        }
        auto join = [](const std::vector<std::string>& v, const char* sep) {
            std::string s;
            for (unsigned i = 0; i < v.size(); ++i) {
                if (i) s += sep;
                s += v[i];
            }
            return s;
        };
        std::string rho_c = r.rho_mode.empty() ? join(r.rho_list, ",") : r.rho_mode;
        std::string rho2_c = r.rho2_mode.empty() ? join(r.rho2_list, ",") : r.rho2_mode;
        canon += r.id + "|" + std::to_string(r.table) + "|" + r.family + "|" + r.kind + "|" +
                 join(r.when, "&") + "|" + alts + "|" + r.group + "|" + r.t_expr + "|" + pat +
                 "|" + r.t2_expr + "|" + rho_c + "|" + rho2_c + "|" +
                 (r.reconstructed ? "1" : "0") + ";";
        rows.push_back(std::move(r));
    }
    std::string expect = doc.at("checksum").get<std::string>();
    std::string actual = fnv1a64_hex(canon);
    if (expect != actual)
        throw DataError("table_rows.json: checksum drift (file says " + expect + ", content is " +
                        actual + ")");
    return rows;
}

// ---- alternating-group helpers -------------------------------------------

inline bool is_small_prime(unsigned long n) {
    if (n < 2) return false;
    for (unsigned long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// largest prime s with 2s <= n
inline unsigned long alt_s_low(unsigned long n) {
    for (unsigned long s = n / 2; s >= 2; --s)
        if (is_small_prime(s)) return s;
    throw std::logic_error("alt_s_low: no prime below n/2");
}

// smallest prime s with 2s > n
inline unsigned long alt_s_high(unsigned long n) {
    for (unsigned long s = n / 2 + 1;; ++s)
        if (is_small_prime(s)) return s;
}

inline std::vector<unsigned long> alt_tau(unsigned long n) {
    std::vector<unsigned long> out;
    for (unsigned long s = n / 2 + 1; s <= n; ++s)
        if (is_small_prime(s)) out.push_back(s);
    return out;
}

inline std::vector<unsigned long> alt_tau2(unsigned long n) {
    std::vector<unsigned long> out;
    for (unsigned long s = (n >= 3 ? n - 3 : 2); s <= n; ++s)
        if (is_small_prime(s)) out.push_back(s);
    return out;
}

// ---- matcher context ------------------------------------------------------

struct Ctx {
    const GroupSpec& g;
    unsigned long n = 0; // Alt degree; A/2A dimension; B..2D rank; Suzuki/Ree field exponent
    BigNat q = 0;

    explicit Ctx(const GroupSpec& g_) : g(g_) {
        if (g.kind == GroupSpec::Kind::Alternating) {
            n = g.degree;
        } else if (g.kind == GroupSpec::Kind::Lie) {
            q = g.q;
            n = is_suzuki_ree(g.series) ? g.suzree_param() : g.classical_n();
        }
    }
};

inline bool eval_atom(const std::string& atom, const Ctx& c);

inline bool eval_cmp(const std::string& s, const Ctx& c) {
    // "<var>[%M]<op><K>" with var in {n,q}; ops =, !=, >, >=, <, <=
    unsigned long lhs_mod = 0;
    std::size_t pos = 1;
    const bool is_n = (s[0] == 'n');
    if (pos < s.size() && s[pos] == '%') {
        std::size_t end = pos + 1;
        while (end < s.size() && std::isdigit(static_cast<unsigned char>(s[end]))) ++end;
        lhs_mod = std::stoul(s.substr(pos + 1, end - pos - 1));
        pos = end;
    }
    std::string op;
    while (pos < s.size() && !std::isdigit(static_cast<unsigned char>(s[pos]))) op += s[pos++];
    const unsigned long rhs = std::stoul(s.substr(pos));
    BigNat lhs = is_n ? BigNat(c.n) : c.q;
    if (lhs_mod) lhs %= lhs_mod;
    if (op == "=") return lhs == rhs;
    if (op == "!=") return lhs != rhs;
    if (op == ">") return lhs > rhs;
    if (op == ">=") return lhs >= rhs;
    if (op == "<") return lhs < rhs;
    if (op == "<=") return lhs <= rhs;
    throw DataError("table_rows.json: bad comparison atom " + s);
}

inline bool eval_atom(const std::string& atom, const Ctx& c) {
    if (atom == "q odd") return c.q % 2 == 1;
    if (atom.rfind("or:", 0) == 0) {
        std::string body = atom.substr(3);
        auto bar = body.find('|');
        return eval_atom(body.substr(0, bar), c) || eval_atom(body.substr(bar + 1), c);
    }
    if (atom.rfind("not:", 0) == 0) {
        // "(n1,q1)(n2,q2)..." exclusion pairs
        std::string body = atom.substr(4);
        std::size_t pos = 0;
        while (pos < body.size() && body[pos] == '(') {
            auto close = body.find(')', pos);
            std::string pair = body.substr(pos + 1, close - pos - 1);
            auto comma = pair.find(',');
            unsigned long pn = std::stoul(pair.substr(0, comma));
            unsigned long pq = std::stoul(pair.substr(comma + 1));
            if (c.n == pn && c.q == pq) return false;
            pos = close + 1;
        }
        return true;
    }
    if (atom.rfind("n in", 0) == 0) {
        std::string body = atom.substr(4);
        std::size_t pos = 0;
        for (;;) {
            auto comma = body.find(',', pos);
            std::string tok = body.substr(pos, comma == std::string::npos ? std::string::npos
                                                                          : comma - pos);
            if (!tok.empty() && c.n == std::stoul(tok)) return true;
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
        return false;
    }
    if (atom == "spsum>n") return alt_s_low(c.n) + alt_s_high(c.n) > c.n;
    if (atom == "spsum<=n") return alt_s_low(c.n) + alt_s_high(c.n) <= c.n;

    const BigNat n2 = r_part(BigNat(c.n), 2);
    auto qm1_part = [&](unsigned long r) { return r_part(c.q - 1, r); };
    auto qp1_part = [&](unsigned long r) { return r_part(c.q + 1, r); };
    auto power_of_two = [&](const BigNat& v) { return r_part(v, 2) == v; };

    if (atom == "(q-1)_3=3") return qm1_part(3) == 3;
    if (atom == "(q-1)_3!=3") return qm1_part(3) != 3;
    if (atom == "(q+1)_3=3") return qp1_part(3) == 3;
    if (atom == "(q+1)_3!=3") return qp1_part(3) != 3;
    if (atom == "(q-1)_2=2") return qm1_part(2) == 2;
    if (atom == "(q-1)_2>2") return qm1_part(2) > 2;
    if (atom == "q+1=2^k") return power_of_two(c.q + 1);
    if (atom == "q+1!=2^k") return !power_of_two(c.q + 1);
    if (atom == "q-1=2^k") return power_of_two(c.q - 1);
    if (atom == "q-1!=2^k") return !power_of_two(c.q - 1);
    if (atom == "n_2=1") return n2 == 1;
    if (atom == "n_2<(q-1)_2") return n2 < qm1_part(2);
    if (atom == "n_2>(q-1)_2") return n2 > qm1_part(2);
    if (atom == "n_2=(q-1)_2=2") return n2 == qm1_part(2) && n2 == 2;
    if (atom == "n_2=(q-1)_2>2") return n2 == qm1_part(2) && n2 > 2;
    if (atom == "n_2>(q+1)_2") return n2 > qp1_part(2);
    if (atom == "2<n_2<(q+1)_2") return n2 > 2 && n2 < qp1_part(2);
    if (atom == "n_2=2<(q+1)_2") return n2 == 2 && qp1_part(2) > 2;
    if (atom == "n_2=(q+1)_2=2") return n2 == qp1_part(2) && n2 == 2;
    if (atom == "n_2=(q+1)_2>2") return n2 == qp1_part(2) && n2 > 2;

    if (atom[0] == 'n' || atom[0] == 'q') return eval_cmp(atom, c);
    throw DataError("table_rows.json: unknown condition atom " + atom);
}

inline bool row_matches(const TableRow& row, const GroupSpec& g) {
    switch (g.kind) {
        case GroupSpec::Kind::Alternating:
            if (row.family != "Alt") return false;
            break;
        case GroupSpec::Kind::Sporadic: return row.family == "Sporadic" && row.group == g.name;
        case GroupSpec::Kind::Lie: {
            const std::string fam = series_name(g.series);
            if (row.family == "BC") {
                if (fam != "B" && fam != "C") return false;
            } else if (row.family != fam)
                return false;
            break;
        }
    }
    Ctx c(g);
    for (const auto& a : row.when)
        if (!eval_atom(a, c)) return false;
    if (!row.when_any.empty()) {
        bool any = false;
        for (const auto& conj : row.when_any) {
            bool all = true;
            for (const auto& a : conj)
                if (!eval_atom(a, c)) {
                    all = false;
                    break;
                }
            if (all) any = true;
        }
        if (!any) return false;
    }
    return true;
}

// ---- expression evaluation -----------------------------------------------

// floor((coeff*n + off) / den) from "(coeff n off)/den" bodies
inline unsigned long eval_linear_floor(const std::string& lin, unsigned long den, const Ctx& c) {
    auto npos = lin.find('n');
    unsigned long coeff = (npos == 0) ? 1 : std::stoul(lin.substr(0, npos));
    long off = 0;
    if (npos + 1 < lin.size()) off = std::stol(lin.substr(npos + 1));
    long num = static_cast<long>(coeff * c.n) + off;
    if (num < 0) throw DataError("negative numerator in table expression");
    return static_cast<unsigned long>(num) / den;
}

// t expressions: integers, "[(An+B)/C]", "tau", "tau+1", "tau2+1"
inline unsigned long eval_t_expr(const std::string& expr, const Ctx& c) {
    if (expr == "tau") return alt_tau(c.n).size();
    if (expr == "tau+1") return alt_tau(c.n).size() + 1;
    if (expr == "tau2+1") return alt_tau2(c.n).size() + 1;
    if (std::isdigit(static_cast<unsigned char>(expr[0])) && expr.find('n') == std::string::npos)
        return std::stoul(expr);
    if (expr[0] == '[') {
        std::string body = expr.substr(1, expr.size() - 2);
        auto slash = body.rfind('/');
        unsigned long den = std::stoul(body.substr(slash + 1));
        std::string lin = body.substr(0, slash);
        if (lin.front() == '(') lin = lin.substr(1, lin.size() - 2);
        return eval_linear_floor(lin, den, c);
    }
    throw DataError("table_rows.json: bad t expression " + expr);
}

// exact e-value expressions: "K", "n", "n-1", "2n", "2n-2", "n/2", "(n-1)/2"
inline unsigned long eval_e_expr(const std::string& expr, const Ctx& c) {
    if (expr.find('n') == std::string::npos) return std::stoul(expr);
    std::string body = expr;
    unsigned long den = 1;
    auto slash = body.rfind('/');
    if (slash != std::string::npos) {
        den = std::stoul(body.substr(slash + 1));
        body = body.substr(0, slash);
        if (body.front() == '(') body = body.substr(1, body.size() - 2);
    }
    auto npos = body.find('n');
    unsigned long coeff = (npos == 0) ? 1 : std::stoul(body.substr(0, npos));
    long off = 0;
    if (npos + 1 < body.size()) off = std::stol(body.substr(npos + 1));
    long num = static_cast<long>(coeff * c.n) + off;
    if (num <= 0 || static_cast<unsigned long>(num) % den != 0)
        throw DataError("e expression " + expr + " is not a positive integer here");
    return static_cast<unsigned long>(num) / den;
}

// set bounds: "[n/2]" / "[(n+1)/2]" with optional "+1" suffix, "n", "n-1"
inline unsigned long eval_bound(const std::string& expr, const Ctx& c) {
    std::string body = expr;
    unsigned long add = 0;
    if (body.size() > 2 && body.compare(body.size() - 2, 2, "+1") == 0 && body.front() == '[') {
        add = 1;
        body = body.substr(0, body.size() - 2);
    }
    if (body.front() == '[') {
        std::string inner = body.substr(1, body.size() - 2);
        auto slash = inner.rfind('/');
        unsigned long den = std::stoul(inner.substr(slash + 1));
        std::string lin = inner.substr(0, slash);
        if (lin.front() == '(') lin = lin.substr(1, lin.size() - 2);
        return eval_linear_floor(lin, den, c) + add;
    }
    return eval_e_expr(body, c) + add;
}

// expands a set atom into its e-values
inline std::vector<unsigned long> expand_set(const PatternAtom& a, const Ctx& c) {
    const unsigned long lo = eval_bound(a.lo, c), hi = eval_bound(a.hi, c);
    std::vector<unsigned long> out;
    for (unsigned long i = lo; i <= hi; ++i) {
        unsigned long e = 0;
        if (a.set_type == "2i")
            e = 2 * i;
        else if (a.set_type == "odd") {
            if (i % 2 == 0) continue;
            e = i;
        } else if (a.set_type == "all")
            e = i;
        else if (a.set_type == "nuinv")
            e = nu(i); // nu is an involution
        else
            throw DataError("unknown set type " + a.set_type);
        if (std::find(a.skip.begin(), a.skip.end(), e) != a.skip.end()) continue;
        out.push_back(e);
    }
    return out;
}

} // namespace refdetail

inline const std::vector<TableRow>& table_rows() {
    static const std::vector<TableRow> rows = refdetail::load_rows();
    return rows;
}

// ---- row verification ------------------------------------------------------

struct RowCheck {
    std::string instance;
    bool ok = true;
    std::string detail;
};

struct RowReport {
    std::string row_id;
    int table = 0;
    std::vector<RowCheck> checks;

    bool ok() const {
        for (const auto& c : checks)
            if (!c.ok) return false;
        return true;
    }
};

namespace refdetail {

// Resolves the expected pattern atoms at a concrete instance.
inline std::vector<PatternEntry> expected_pattern(const TableRow& row, const GroupSpec& g,
                                                  std::uint64_t budget) {
    Ctx c(g);
    std::vector<PatternEntry> out;
    for (const auto& a : row.pattern) {
        switch (a.kind) {
            case PatternAtom::Kind::Char: out.push_back({true, 0}); break;
            case PatternAtom::Kind::Two: out.push_back(vertex_pattern_entry(g, 2, budget)); break;
            case PatternAtom::Kind::Prime3:
                out.push_back({false, e_order_small(3, g.q, budget)});
                break;
            case PatternAtom::Kind::E:
                out.push_back({false, eval_e_expr(a.e_expr, c)});
                break;
            case PatternAtom::Kind::MClass: out.push_back({false, a.mclass}); break;
            case PatternAtom::Kind::Set:
                for (unsigned long e : expand_set(a, c)) out.push_back({false, e});
                break;
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

// Materializes a concrete witness set realizing the pattern (one prime per
// atom, all distinct).
inline std::vector<BigNat> materialize_pattern(const TableRow& row, const GroupSpec& g,
                                               std::uint64_t budget) {
    Ctx c(g);
    std::set<BigNat> used;
    auto pick_ppd = [&](unsigned long m) -> BigNat {
        for (const BigNat& r : primitive_prime_divisors(g.q, m, budget))
            if (!used.count(r)) return r;
        throw DataError("no unused primitive prime divisor for e=" + std::to_string(m) +
                        " at q=" + g.q.get_str());
    };
    auto pick_mclass = [&](unsigned cls, unsigned long excl) -> BigNat {
        BigNat m = suzuki_ree_m(detail::suzree_series_of(g.series), g.suzree_param(), cls);
        for (const auto& [p, e] : factorize(m, budget).factors)
            if (p != excl && !used.count(p)) return p;
        throw DataError("no admissible prime in divisor class m_" + std::to_string(cls));
    };
    std::vector<BigNat> out;
    for (const auto& a : row.pattern) {
        switch (a.kind) {
            case PatternAtom::Kind::Char: out.push_back(g.p); break;
            case PatternAtom::Kind::Two: out.push_back(2); break;
            case PatternAtom::Kind::Prime3: out.push_back(3); break;
            case PatternAtom::Kind::E: out.push_back(pick_ppd(eval_e_expr(a.e_expr, c))); break;
            case PatternAtom::Kind::MClass: out.push_back(pick_mclass(a.mclass, a.mexclude)); break;
            case PatternAtom::Kind::Set:
                for (unsigned long e : expand_set(a, c)) out.push_back(pick_ppd(e));
                break;
        }
        used.insert(out.back());
        for (const BigNat& v : out) used.insert(v);
    }
    std::sort(out.begin(), out.end());
    return out;
}

inline std::string pattern_str(const std::vector<PatternEntry>& pat, const GroupSpec& g) {
    const bool sr = g.kind == GroupSpec::Kind::Lie && is_suzuki_ree(g.series);
    return pattern_to_string(pat, sr);
}

inline std::string set_str(const std::vector<BigNat>& v) {
    std::string s = "{";
    for (unsigned i = 0; i < v.size(); ++i) {
        if (i) s += ",";
        s += v[i].get_str();
    }
    return s + "}";
}

inline bool set_is_independent(const PrimeGraph& graph, const std::vector<BigNat>& set,
                               std::string& why) {
    for (unsigned i = 0; i < set.size(); ++i)
        for (unsigned j = i + 1; j < set.size(); ++j) {
            int a = graph.index_of(set[i]), b = graph.index_of(set[j]);
            if (a < 0 || b < 0) {
                why = "vertex " + (a < 0 ? set[i] : set[j]).get_str() + " not in pi(G)";
                return false;
            }
            if (graph.edge(static_cast<unsigned>(a), static_cast<unsigned>(b))) {
                why = set[i].get_str() + " and " + set[j].get_str() + " are adjacent";
                return false;
            }
        }
    return true;
}

inline std::vector<BigNat> alt_expected_set(const std::string& mode,
                                            const std::vector<std::string>& list,
                                            unsigned long n) {
    std::vector<BigNat> out;
    if (!list.empty()) {
        for (const auto& s : list) out.emplace_back(s);
    } else if (mode == "tau") {
        for (unsigned long s : alt_tau(n)) out.emplace_back(s);
    } else if (mode == "tau+s1") {
        for (unsigned long s : alt_tau(n)) out.emplace_back(s);
        out.emplace_back(alt_s_low(n));
    } else if (mode == "tau2+2") {
        for (unsigned long s : alt_tau2(n)) out.emplace_back(s);
        out.emplace_back(2);
    } else
        throw DataError("unknown alternating set mode: " + mode);
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace refdetail

// Checks one table row at one instance; failures append details.
inline RowCheck verify_row_at(const TableRow& row, const GroupSpec& g,
                              std::uint64_t budget = default_budget()) {
    RowCheck check;
    check.instance = render(g);
    auto fail = [&](const std::string& msg) {
        check.ok = false;
        if (!check.detail.empty()) check.detail += "; ";
        check.detail += msg;
    };
    try {
        if (!refdetail::row_matches(row, g))
            throw DataError("instance does not match row " + row.id);
        refdetail::Ctx c(g);
        PrimeGraph graph = build_graph(g, budget);

        if (row.kind == "p" || row.kind == "two") {
            const BigNat forced_vertex = (row.kind == "p") ? g.p : BigNat(2);
            const std::string& expr = (row.kind == "p") ? row.t_expr : row.t2_expr;
            IndependenceResult res = independence_result(graph, {forced_vertex}, budget);
            unsigned long expect_t = refdetail::eval_t_expr(expr, c);
            if (res.t != expect_t)
                fail("t=" + std::to_string(res.t) + " expected " + std::to_string(expect_t));
            auto expect_pat = refdetail::expected_pattern(row, g, budget);
            if (res.e_pattern != expect_pat)
                fail("pattern " + refdetail::pattern_str(res.e_pattern, g) + " expected " +
                     refdetail::pattern_str(expect_pat, g));
        } else if (row.kind == "t") {
            IndependenceResult res = independence_result(graph, {}, budget);
            unsigned long expect_t = refdetail::eval_t_expr(row.t_expr, c);
            if (res.t != expect_t)
                fail("t=" + std::to_string(res.t) + " expected " + std::to_string(expect_t));
            // the table's stated witness pattern must be realizable
            std::vector<BigNat> witness = refdetail::materialize_pattern(row, g, budget);
            if (witness.size() != expect_t)
                fail("witness size " + std::to_string(witness.size()) + " expected " +
                     std::to_string(expect_t));
            std::string why;
            if (!refdetail::set_is_independent(graph, witness, why))
                fail("witness " + refdetail::set_str(witness) + " not independent: " + why);
        } else if (row.kind == "sporadic") {
            if (!row.t_expr.empty()) {
                IndependenceResult res = max_independent_set(graph);
                unsigned long expect_t = refdetail::eval_t_expr(row.t_expr, c);
                if (res.t != expect_t)
                    fail("t=" + std::to_string(res.t) + " expected " + std::to_string(expect_t));
                std::vector<BigNat> rho;
                for (const auto& s : row.rho_list) rho.emplace_back(s);
                std::sort(rho.begin(), rho.end());
                std::string why;
                if (rho.size() != expect_t)
                    fail("stated rho has wrong size");
                else if (!refdetail::set_is_independent(graph, rho, why))
                    fail("stated rho not independent: " + why);
            }
            if (!row.t2_expr.empty()) {
                IndependenceResult res = max_independent_set(graph, {2});
                unsigned long expect_t2 = refdetail::eval_t_expr(row.t2_expr, c);
                if (res.t != expect_t2)
                    fail("t2=" + std::to_string(res.t) + " expected " + std::to_string(expect_t2));
                std::vector<BigNat> rho2;
                for (const auto& s : row.rho2_list) rho2.emplace_back(s);
                std::sort(rho2.begin(), rho2.end());
                if (res.rho != rho2)
                    fail("rho2 " + refdetail::set_str(res.rho) + " expected " +
                         refdetail::set_str(rho2));
            }
        } else if (row.kind == "alt") {
            IndependenceResult res = max_independent_set(graph);
            unsigned long expect_t = refdetail::eval_t_expr(row.t_expr, c);
            if (res.t != expect_t)
                fail("t=" + std::to_string(res.t) + " expected " + std::to_string(expect_t));
            std::vector<BigNat> rho = refdetail::alt_expected_set(row.rho_mode, row.rho_list, c.n);
            std::string why;
            if (rho.size() != expect_t)
                fail("stated rho has wrong size");
            else if (!refdetail::set_is_independent(graph, rho, why))
                fail("stated rho not independent: " + why);
            IndependenceResult res2 = max_independent_set(graph, {2});
            unsigned long expect_t2 = refdetail::eval_t_expr(row.t2_expr, c);
            if (res2.t != expect_t2)
                fail("t2=" + std::to_string(res2.t) + " expected " + std::to_string(expect_t2));
            std::vector<BigNat> rho2 =
                refdetail::alt_expected_set(row.rho2_mode, row.rho2_list, c.n);
            if (res2.rho != rho2)
                fail("rho2 " + refdetail::set_str(res2.rho) + " expected " +
                     refdetail::set_str(rho2));
        } else
            throw DataError("unknown row kind " + row.kind);
    } catch (const BudgetExceeded&) {
        throw;
    } catch (const std::exception& e) {
        fail(std::string("error: ") + e.what());
    }
    return check;
}

// Smallest admissible instances satisfying the row matcher: the two
// (n,q)-least matches, the first match with a larger n, and one match from
// every further disjunct of a split row. Finite rows yield all matches.
inline std::vector<GroupSpec> default_instances(const TableRow& row) {
    std::vector<GroupSpec> out;
    auto push_if = [&](const GroupSpec& g) {
        if (refdetail::row_matches(row, g)) out.push_back(g);
    };
    if (row.family == "Sporadic") {
        out.push_back(make_sporadic(row.group));
        return out;
    }
    if (row.family == "Alt") {
        std::vector<GroupSpec> all;
        for (unsigned n = 5; n <= 34; ++n) {
            GroupSpec g = make_alternating(n);
            if (refdetail::row_matches(row, g)) all.push_back(g);
        }
        if (all.size() <= 3) return all;
        return {all[0], all[1], all[2]};
    }

    static const std::vector<unsigned long> classical_q = {2,  3,  4,  5,  7,  8,  9,
                                                           11, 13, 16, 17, 19, 23, 25,
                                                           27, 29, 31, 32};
    static const std::vector<unsigned long> suzree_q2 = {8, 32, 128, 512};
    static const std::vector<unsigned long> suzree_q3 = {27, 243, 2187};

    std::vector<Series> series_list;
    if (row.family == "BC")
        series_list = {Series::B, Series::C};
    else
        for (Series s : {Series::A, Series::TwoA, Series::B, Series::C, Series::D, Series::TwoD,
                         Series::G2, Series::F4, Series::E6, Series::TwoE6, Series::E7, Series::E8,
                         Series::ThreeD4, Series::TwoB2, Series::TwoG2, Series::TwoF4})
            if (row.family == series_name(s)) series_list = {s};
    if (series_list.empty()) throw DataError("default_instances: unknown family " + row.family);

    std::vector<GroupSpec> matches;
    auto try_spec = [&](Series s, unsigned rank, unsigned long q) {
        try {
            GroupSpec g = make_lie(s, rank, BigNat(q));
            if (refdetail::row_matches(row, g)) matches.push_back(g);
        } catch (const std::exception&) {
            // not a valid simple-group spec here
        }
    };
    const Series s0 = series_list.front();
    if (is_suzuki_ree(s0)) {
        const auto& qs = (s0 == Series::TwoG2) ? suzree_q3 : suzree_q2;
        for (unsigned long q : qs)
            for (Series s : series_list) try_spec(s, s == Series::TwoF4 ? 2 : 1, q);
    } else if (!is_classical(s0)) {
        static const std::map<Series, unsigned> fixed = {
            {Series::G2, 2}, {Series::F4, 4}, {Series::E6, 6},      {Series::TwoE6, 6},
            {Series::E7, 7}, {Series::E8, 8}, {Series::ThreeD4, 4},
        };
        for (unsigned long q : classical_q)
            for (Series s : series_list) try_spec(s, fixed.at(s), q);
    } else {
        // iterate by (dimension, q)
        for (unsigned n = 2; n <= 24; ++n) {
            for (unsigned long q : classical_q) {
                for (Series s : series_list) {
                    unsigned rank = (s == Series::A || s == Series::TwoA) ? n - 1 : n;
                    if (s == Series::A && n < 2) continue;
                    if ((s == Series::B || s == Series::C || s == Series::D || s == Series::TwoD) &&
                        n > 13)
                        continue;
                    try_spec(s, rank, q);
                }
            }
        }
    }
    if (matches.empty()) throw DataError("NoMatchingInstances for row " + row.id);
    if (matches.size() <= 3) {
        out = matches;
    } else {
        out.push_back(matches[0]);
        out.push_back(matches[1]);
        refdetail::Ctx c0(matches[0]);
        bool found = false;
        for (unsigned i = 2; i < matches.size(); ++i) {
            refdetail::Ctx ci(matches[i]);
            if (ci.n != c0.n) {
                out.push_back(matches[i]);
                found = true;
                break;
            }
        }
        if (!found) out.push_back(matches[2]);
    }
    // one instance from every disjunct of a split row beyond the first
    for (unsigned alt = 1; alt < row.when_any.size(); ++alt) {
        for (const GroupSpec& g : matches) {
            refdetail::Ctx c(g);
            bool in_alt = true;
            for (const auto& a : row.when_any[alt])
                if (!refdetail::eval_atom(a, c)) {
                    in_alt = false;
                    break;
                }
            if (in_alt) {
                if (std::find_if(out.begin(), out.end(), [&](const GroupSpec& x) {
                        return x == g;
                    }) == out.end())
                    out.push_back(g);
                break;
            }
        }
    }
    return out;
}

inline RowReport verify_row(const TableRow& row, const std::vector<GroupSpec>& instances,
                            std::uint64_t budget = default_budget()) {
    if (instances.empty()) throw DataError("NoMatchingInstances for row " + row.id);
    RowReport report;
    report.row_id = row.id;
    report.table = row.table;
    for (const GroupSpec& g : instances) report.checks.push_back(verify_row_at(row, g, budget));
    return report;
}

inline std::vector<RowReport> verify_tables(const std::vector<int>& tables,
                                            std::uint64_t budget = default_budget()) {
    std::vector<RowReport> reports;
    for (const TableRow& row : table_rows()) {
        if (!tables.empty() && std::find(tables.begin(), tables.end(), row.table) == tables.end())
            continue;
        reports.push_back(verify_row(row, default_instances(row), budget));
    }
    return reports;
}

} // namespace gk
