#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <cstdlib>
#include <map>
#include <mutex>
#include <set>
#include <string>
#include <vector>

#include "gk/errors.hpp"

namespace gk {

// All group-theoretic quantities are exact non-negative integers.
using BigNat = mpz_class;

inline std::uint64_t default_budget() {
    static const std::uint64_t value = [] {
        if (const char* env = std::getenv("GK_BUDGET")) {
            char* end = nullptr;
            unsigned long long v = std::strtoull(env, &end, 10);
            if (end && *end == '\0' && v > 0) return static_cast<std::uint64_t>(v);
        }
        return static_cast<std::uint64_t>(40'000'000);
    }();
    return value;
}

// Effort meter shared by the factorization routines. One unit is one
// candidate-elimination step (a trial division or one rho iteration), so a
// run is reproducible for a fixed limit.
struct Budget {
    std::uint64_t limit;
    std::uint64_t used = 0;

    explicit Budget(std::uint64_t limit_ = default_budget()) : limit(limit_) {}

    void spend(std::uint64_t n, const char* where) {
        used += n;
        if (used > limit)
            throw BudgetExceeded(std::string(where) + ": factorization budget exhausted (limit " +
                                 std::to_string(limit) + " steps)");
    }
};

struct Factorization {
    std::map<BigNat, unsigned> factors; // prime -> exponent
    BigNat subject = 1;

    BigNat value() const {
        BigNat v = 1;
        for (const auto& [p, e] : factors) {
            BigNat pe;
            mpz_pow_ui(pe.get_mpz_t(), p.get_mpz_t(), e);
            v *= pe;
        }
        return v;
    }

    void mul_prime(const BigNat& p, unsigned e) { factors[p] += e; }

    void mul(const Factorization& other) {
        for (const auto& [p, e] : other.factors) factors[p] += e;
        subject *= other.subject;
    }

    // Exact division; throws if not a divisor.
    void div(const Factorization& other) {
        for (const auto& [p, e] : other.factors) {
            auto it = factors.find(p);
            if (it == factors.end() || it->second < e)
                throw std::logic_error("Factorization::div: not an exact divisor");
            it->second -= e;
            if (it->second == 0) factors.erase(it);
        }
        if (mpz_divisible_p(subject.get_mpz_t(), other.subject.get_mpz_t()) == 0)
            throw std::logic_error("Factorization::div: subject not divisible");
        subject /= other.subject;
    }

    std::vector<BigNat> primes() const {
        std::vector<BigNat> out;
        out.reserve(factors.size());
        for (const auto& [p, e] : factors) out.push_back(p);
        return out;
    }
};

inline BigNat pow_ui(const BigNat& base, unsigned long exp) {
    BigNat r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
    return r;
}

inline BigNat gcd(const BigNat& a, const BigNat& b) {
    BigNat r;
    mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

inline BigNat powm(const BigNat& base, const BigNat& exp, const BigNat& mod) {
    BigNat r;
    mpz_powm(r.get_mpz_t(), base.get_mpz_t(), exp.get_mpz_t(), mod.get_mpz_t());
    return r;
}

namespace detail {

// Deterministic below 2^64 (the first twelve prime bases decide primality
// there); the same fixed base list is used above 2^64, where the test is
// probabilistic with error < 4^-20 per composite.
inline const std::vector<unsigned long>& miller_rabin_bases() {
    static const std::vector<unsigned long> bases = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29,
                                                     31, 37, 41, 43, 47, 53, 59, 61, 67, 71};
    return bases;
}

inline bool miller_rabin(const BigNat& n) {
    BigNat d = n - 1;
    unsigned long s = mpz_scan1(d.get_mpz_t(), 0);
    mpz_tdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), s);
    for (unsigned long a : miller_rabin_bases()) {
        BigNat base(a);
        if (mpz_cmp_ui(n.get_mpz_t(), a) <= 0) continue;
        BigNat x = powm(base, d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (unsigned long i = 1; i < s; ++i) {
            x = (x * x) % n;
            if (x == n - 1) {
                witness = false;
                break;
            }
        }
        if (witness) return false;
    }
    return true;
}

} // namespace detail

inline bool is_prime(const BigNat& n) {
    if (n < 2) return false;
    for (unsigned long p : {2UL, 3UL, 5UL, 7UL, 11UL, 13UL, 17UL, 19UL, 23UL, 29UL, 31UL, 37UL}) {
        if (mpz_cmp_ui(n.get_mpz_t(), p) == 0) return true;
        if (mpz_divisible_ui_p(n.get_mpz_t(), p)) return false;
    }
    return detail::miller_rabin(n);
}

namespace detail {

// Brent's cycle variant of the rho method. Returns a non-trivial factor of n
// (n composite, odd, not a perfect power). The polynomial constant advances
// deterministically, so results do not depend on run order.
inline BigNat rho_brent(const BigNat& n, Budget& budget) {
    for (unsigned long c = 1;; ++c) {
        BigNat y = 2, r = 1, q = 1, g = 1, x, ys;
        const unsigned long batch = 128;
        while (g == 1) {
            x = y;
            for (BigNat i = 0; i < r; ++i) y = (y * y + c) % n;
            BigNat k = 0;
            while (k < r && g == 1) {
                ys = y;
                unsigned long steps = batch;
                if (r - k < batch) steps = mpz_get_ui(BigNat(r - k).get_mpz_t());
                budget.spend(steps, "rho");
                for (unsigned long i = 0; i < steps; ++i) {
                    y = (y * y + c) % n;
                    BigNat diff = x > y ? x - y : y - x;
                    q = (q * diff) % n;
                }
                g = gcd(q, n);
                k += steps;
            }
            r *= 2;
        }
        if (g == n) {
            // backtrack one step at a time
            g = 1;
            while (g == 1) {
                budget.spend(1, "rho");
                ys = (ys * ys + c) % n;
                BigNat diff = x > ys ? x - ys : ys - x;
                g = gcd(diff, n);
            }
        }
        if (g != n) return g;
        // cycle degenerated for this constant, try the next one
    }
}

inline void factor_into(const BigNat& n, Factorization& out, Budget& budget);

inline void factor_composite(const BigNat& n, Factorization& out, Budget& budget) {
    if (mpz_perfect_power_p(n.get_mpz_t())) {
        for (unsigned long k = 2; k <= mpz_sizeinbase(n.get_mpz_t(), 2); ++k) {
            BigNat root;
            if (mpz_root(root.get_mpz_t(), n.get_mpz_t(), k) != 0) {
                Factorization base;
                factor_into(root, base, budget);
                for (const auto& [p, e] : base.factors) out.mul_prime(p, e * k);
                return;
            }
        }
    }
    BigNat g = rho_brent(n, budget);
    factor_into(g, out, budget);
    factor_into(n / g, out, budget);
}

inline void factor_into(const BigNat& n, Factorization& out, Budget& budget) {
    if (n == 1) return;
    if (is_prime(n)) {
        out.mul_prime(n, 1);
        return;
    }
    factor_composite(n, out, budget);
}

inline std::map<BigNat, Factorization>& factor_cache() {
    static std::map<BigNat, Factorization> cache;
    return cache;
}

inline std::mutex& factor_cache_mutex() {
    static std::mutex m;
    return m;
}

} // namespace detail

// Complete prime factorization of n >= 1. Deterministic for a fixed budget;
// throws BudgetExceeded rather than ever returning a partial answer. Results
// are memoized behind a lock, and cached answers are identical to fresh ones.
inline Factorization factorize(const BigNat& n, std::uint64_t budget_limit = default_budget()) {
    if (n < 1) throw std::invalid_argument("factorize: n must be >= 1");
    {
        std::lock_guard<std::mutex> lock(detail::factor_cache_mutex());
        auto it = detail::factor_cache().find(n);
        if (it != detail::factor_cache().end()) return it->second;
    }
    Budget budget(budget_limit);
    Factorization out;
    out.subject = n;
    BigNat m = n;
    // trial division first; each candidate costs one step
    if (m > 1) {
        budget.spend(1, "trial");
        while (mpz_even_p(m.get_mpz_t())) {
            out.mul_prime(2, 1);
            m /= 2;
        }
    }
    for (unsigned long d = 3; d <= 99'991 && m > 1; d += 2) {
        budget.spend(1, "trial");
        if (mpz_divisible_ui_p(m.get_mpz_t(), d)) {
            unsigned e = 0;
            while (mpz_divisible_ui_p(m.get_mpz_t(), d)) {
                m /= d;
                ++e;
            }
            out.mul_prime(BigNat(d), e);
        }
        BigNat dd(d);
        if (dd * dd > m) break;
    }
    if (m > 1) detail::factor_into(m, out, budget);
    {
        std::lock_guard<std::mutex> lock(detail::factor_cache_mutex());
        detail::factor_cache().emplace(n, out);
    }
    return out;
}

inline std::set<BigNat> prime_divisors(const BigNat& n, std::uint64_t budget = default_budget()) {
    std::set<BigNat> out;
    for (const auto& [p, e] : factorize(n, budget).factors) out.insert(p);
    return out;
}

// e(r,q): multiplicative order of q modulo an odd prime r; for r = 2 and odd
// q the value is 1 when q = 1 mod 4 and 2 when q = -1 mod 4. Rejects
// gcd(r,q) != 1.
inline BigNat e_order(const BigNat& r, const BigNat& q, std::uint64_t budget = default_budget()) {
    if (q < 2) throw std::invalid_argument("e_order: q must be >= 2");
    if (gcd(r, q) != 1) throw std::invalid_argument("e_order: gcd(r,q) must be 1");
    if (r == 2) return (q % 4 == 1) ? 1 : 2;
    BigNat e = r - 1;
    Factorization f = factorize(r - 1, budget);
    for (const auto& [p, a] : f.factors) {
        for (unsigned i = 0; i < a; ++i) {
            BigNat cand = e / p;
            if (powm(q % r, cand, r) == 1)
                e = cand;
            else
                break;
        }
    }
    return e;
}

inline unsigned long e_order_small(const BigNat& r, const BigNat& q,
                                   std::uint64_t budget = default_budget()) {
    BigNat e = e_order(r, q, budget);
    if (!e.fits_ulong_p()) throw std::logic_error("e_order_small: order does not fit a machine word");
    return e.get_ui();
}

inline unsigned long nu(unsigned long m) {
    if (m == 0) throw std::invalid_argument("nu: m must be >= 1");
    if (m % 4 == 0) return m;
    if (m % 4 == 2) return m / 2;
    return 2 * m;
}

inline unsigned long eta(unsigned long m) {
    if (m == 0) throw std::invalid_argument("eta: m must be >= 1");
    return (m % 2 == 1) ? m : m / 2;
}

enum class SignEps : int { Plus = +1, Minus = -1 };

inline unsigned long nu_eps(SignEps eps, unsigned long m) {
    return eps == SignEps::Plus ? m : nu(m);
}

// nu is an involution on the positive integers, so it is its own inverse.
inline unsigned long nu_eps_inverse(SignEps eps, unsigned long m) {
    return eps == SignEps::Plus ? m : nu(m);
}

// Largest divisor of n all of whose prime divisors lie in pi.
inline BigNat pi_part(const BigNat& n, const std::set<BigNat>& pi) {
    if (n < 1) throw std::invalid_argument("pi_part: n must be >= 1");
    BigNat part = 1, m = n;
    for (const BigNat& r : pi) {
        while (mpz_divisible_p(m.get_mpz_t(), r.get_mpz_t())) {
            m /= r;
            part *= r;
        }
    }
    return part;
}

inline BigNat r_part(const BigNat& n, const BigNat& r) { return pi_part(n, {r}); }

// Value of the d-th cyclotomic polynomial at q, computed by exact division:
// Phi_d(q) = (q^d - 1) / prod_{e | d, e < d} Phi_e(q).
inline BigNat cyclotomic_value(unsigned long d, const BigNat& q) {
    if (d == 0) throw std::invalid_argument("cyclotomic_value: d must be >= 1");
    if (d == 1) return q - 1;
    BigNat num = pow_ui(q, d) - 1;
    for (unsigned long e = 1; e < d; ++e) {
        if (d % e == 0) {
            BigNat phi = cyclotomic_value(e, q);
            if (mpz_divisible_p(num.get_mpz_t(), phi.get_mpz_t()) == 0)
                throw std::logic_error("cyclotomic_value: non-exact division");
            num /= phi;
        }
    }
    return num;
}

// Factorization of q^m - 1 assembled from its cyclotomic pieces; keeps the
// individual numbers small enough for the rho method.
inline Factorization factor_pow_minus_one(const BigNat& q, unsigned long m,
                                          std::uint64_t budget = default_budget()) {
    Factorization out;
    out.subject = pow_ui(q, m) - 1;
    for (unsigned long d = 1; d <= m; ++d)
        if (m % d == 0) out.mul(factorize(cyclotomic_value(d, q), budget));
    out.subject = pow_ui(q, m) - 1;
    return out;
}

// q^m + 1 = prod of Phi_d(q) over d | 2m with d not dividing m.
inline Factorization factor_pow_plus_one(const BigNat& q, unsigned long m,
                                         std::uint64_t budget = default_budget()) {
    Factorization out;
    for (unsigned long d = 1; d <= 2 * m; ++d)
        if ((2 * m) % d == 0 && m % d != 0) out.mul(factorize(cyclotomic_value(d, q), budget));
    out.subject = pow_ui(q, m) + 1;
    return out;
}

// The exceptional (q,m) pairs with no primitive prime divisor.
inline bool zsigmondy_exists(const BigNat& q, unsigned long m) {
    if (q < 2 || m == 0) throw std::invalid_argument("zsigmondy_exists: need q >= 2, m >= 1");
    if (q == 2 && m == 1) return false;
    if (q == 3 && m == 1) return false;
    if (q == 2 && m == 6) return false;
    return true;
}

namespace detail {

// Part of q^m - 1 coprime to every q^d - 1 with d a proper divisor of m,
// computed by repeated gcd stripping. Its odd prime divisors are exactly the
// odd primes r with e(r,q) = m.
inline BigNat primitive_part(const BigNat& q, unsigned long m) {
    BigNat c = pow_ui(q, m) - 1;
    for (unsigned long d = 1; d < m; ++d) {
        if (m % d != 0) continue;
        BigNat level = pow_ui(q, d) - 1;
        for (;;) {
            BigNat g = gcd(c, level);
            if (g == 1) break;
            c /= g;
        }
    }
    return c;
}

inline BigNat odd_part(BigNat n) {
    while (n > 0 && mpz_even_p(n.get_mpz_t())) n /= 2;
    return n;
}

} // namespace detail

// Existence of a primitive prime divisor decided by direct search (gcd
// sieve plus the e(2,q) convention); serves as the independent check of
// zsigmondy_exists.
inline bool zsigmondy_exists_by_search(const BigNat& q, unsigned long m) {
    if (q < 2 || m == 0) throw std::invalid_argument("zsigmondy search: need q >= 2, m >= 1");
    if (detail::odd_part(detail::primitive_part(q, m)) > 1) return true;
    if (mpz_odd_p(q.get_mpz_t())) {
        unsigned long e2 = (q % 4 == 1) ? 1 : 2;
        if (m == e2) return true;
    }
    return false;
}

// All primes r dividing q^m - 1 with e(r,q) = m, under the convention that 2
// is a primitive prime divisor of q - 1 when e(2,q) = 1 and of q^2 - 1 when
// e(2,q) = 2.
inline std::set<BigNat> primitive_prime_divisors(const BigNat& q, unsigned long m,
                                                 std::uint64_t budget = default_budget()) {
    if (q < 2 || m == 0)
        throw std::invalid_argument("primitive_prime_divisors: need q >= 2, m >= 1");
    std::set<BigNat> out;
    BigNat c = detail::odd_part(detail::primitive_part(q, m));
    for (const auto& [p, e] : factorize(c, budget).factors) {
        if (e_order(p, q, budget) != m)
            throw std::logic_error("primitive_prime_divisors: sieve produced a non-primitive prime");
        out.insert(p);
    }
    if (mpz_odd_p(q.get_mpz_t()) && m == ((q % 4 == 1) ? 1u : 2u)) out.insert(2);
    return out;
}

enum class SuzukiReeSeries { B, G, F };

// The pairwise near-coprime divisor numbers m_i(series, n) of the Suzuki and
// Ree group orders.
inline BigNat suzuki_ree_m(SuzukiReeSeries series, unsigned long n, unsigned i) {
    if (n == 0) throw std::invalid_argument("suzuki_ree_m: n must be >= 1");
    const BigNat two = 2, three = 3;
    switch (series) {
        case SuzukiReeSeries::B: {
            if (i < 1 || i > 3) throw std::out_of_range("suzuki_ree_m: B-series index must be 1..3");
            BigNat a = pow_ui(two, 2 * n + 1), b = pow_ui(two, n + 1);
            if (i == 1) return a - 1;
            if (i == 2) return a - b + 1;
            return a + b + 1;
        }
        case SuzukiReeSeries::G: {
            if (i < 1 || i > 4) throw std::out_of_range("suzuki_ree_m: G-series index must be 1..4");
            BigNat a = pow_ui(three, 2 * n + 1), b = pow_ui(three, n + 1);
            if (i == 1) return a - 1;
            if (i == 2) return a + 1;
            if (i == 3) return a - b + 1;
            return a + b + 1;
        }
        case SuzukiReeSeries::F: {
            if (i < 1 || i > 6) throw std::out_of_range("suzuki_ree_m: F-series index must be 1..6");
            BigNat a = pow_ui(two, 2 * n + 1), b = pow_ui(two, n + 1);
            BigNat a2 = pow_ui(two, 4 * n + 2), c = pow_ui(two, 3 * n + 2);
            if (i == 1) return a - 1;
            if (i == 2) return a + 1;
            if (i == 3) return a2 + 1;
            if (i == 4) return a2 - a + 1;
            if (i == 5) return a2 - c + a - b + 1;
            return a2 + c + a + b + 1;
        }
    }
    throw std::logic_error("suzuki_ree_m: unreachable");
}

inline unsigned suzuki_ree_class_count(SuzukiReeSeries series) {
    switch (series) {
        case SuzukiReeSeries::B: return 3;
        case SuzukiReeSeries::G: return 4;
        case SuzukiReeSeries::F: return 6;
    }
    return 0;
}

} // namespace gk
