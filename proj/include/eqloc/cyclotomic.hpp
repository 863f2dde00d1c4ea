#pragma once

#include <map>
#include <mutex>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "eqloc/rep_ring.hpp"

namespace eqloc {

// Dense univariate polynomials, ascending coefficients.
using IntPoly = std::vector<Int>;
using RatPoly = std::vector<Rat>;

namespace detail {

template <class Poly>
void trim(Poly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

template <class Poly>
Poly poly_add(const Poly& a, const Poly& b) {
    Poly out(std::max(a.size(), b.size()));
    for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) out[i] += b[i];
    trim(out);
    return out;
}

template <class Poly>
Poly poly_mul(const Poly& a, const Poly& b) {
    if (a.empty() || b.empty()) return {};
    Poly out(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    trim(out);
    return out;
}

// Quotient and remainder by a monic divisor.
template <class Poly>
std::pair<Poly, Poly> poly_divmod_monic(Poly num, const Poly& div) {
    if (div.empty() || div.back() != 1)
        throw InternalError("poly_divmod_monic: divisor must be monic");
    trim(num);
    if (num.size() < div.size()) return {{}, std::move(num)};
    Poly quot(num.size() - div.size() + 1);
    for (std::size_t i = num.size(); i >= div.size(); --i) {
        auto c = num[i - 1];
        if (c == 0) continue;
        std::size_t shift = i - div.size();
        quot[shift] = c;
        for (std::size_t j = 0; j < div.size(); ++j) num[shift + j] -= c * div[j];
    }
    trim(num);
    trim(quot);
    return {std::move(quot), std::move(num)};
}

inline RatPoly to_rat_poly(const IntPoly& p) {
    RatPoly out(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) out[i] = Rat(p[i]);
    return out;
}

// Extended Euclid over Q[t]: returns (u, v) with u*a + v*b = 1; requires
// gcd(a, b) = 1.
inline std::pair<RatPoly, RatPoly> poly_bezout(const RatPoly& a, const RatPoly& b) {
    RatPoly r0 = a, r1 = b;
    RatPoly u0 = {Rat(1)}, u1 = {};
    RatPoly v0 = {}, v1 = {Rat(1)};
    trim(r0);
    trim(r1);
    while (!r1.empty()) {
        // General (non-monic) division: normalize the divisor first.
        Rat lead = r1.back();
        RatPoly r1m = r1;
        for (auto& c : r1m) c /= lead;
        auto divided = poly_divmod_monic(r0, r1m);
        RatPoly quot = std::move(divided.first);
        RatPoly rem = std::move(divided.second);
        for (auto& c : quot) c /= lead;
        auto step = [&quot](const RatPoly& x0, const RatPoly& x1) {
            RatPoly qx = poly_mul(quot, x1);
            for (auto& c : qx) c = -c;
            return poly_add(x0, qx);
        };
        RatPoly u2 = step(u0, u1);
        RatPoly v2 = step(v0, v1);
        r0 = std::move(r1);
        r1 = std::move(rem);
        u0 = std::move(u1);
        u1 = std::move(u2);
        v0 = std::move(v1);
        v1 = std::move(v2);
    }
    if (r0.size() != 1) throw InternalError("poly_bezout: inputs are not coprime");
    for (auto& c : u0) c /= r0[0];
    for (auto& c : v0) c /= r0[0];
    return {std::move(u0), std::move(v0)};
}

inline std::vector<long long> divisors_of(long long n) {
    std::vector<long long> out;
    for (long long d = 1; d <= n; ++d)
        if (n % d == 0) out.push_back(d);
    return out;
}

}  // namespace detail

// t^n - 1 as an integer polynomial.
inline IntPoly t_power_n_minus_one(long long n) {
    IntPoly p(n + 1);
    p[0] = -1;
    p[n] = 1;
    return p;
}

// The n-th cyclotomic polynomial via Phi_n = (t^n - 1) / prod_{d|n, d<n} Phi_d.
inline IntPoly cyclotomic_poly(long long n) {
    if (n < 1) throw MalformedInput("cyclotomic index must be >= 1");
    static std::map<long long, IntPoly> cache;
    static std::mutex mutex;
    {
        std::lock_guard lock(mutex);
        if (auto it = cache.find(n); it != cache.end()) return it->second;
    }
    IntPoly result;
    if (n == 1) {
        result = IntPoly{-1, 1};
    } else {
        IntPoly quotient = t_power_n_minus_one(n);
        for (long long d : detail::divisors_of(n)) {
            if (d == n) continue;
            auto [q, rem] = detail::poly_divmod_monic(std::move(quotient), cyclotomic_poly(d));
            if (!rem.empty()) throw InternalError("cyclotomic recursion left a remainder");
            quotient = std::move(q);
        }
        result = std::move(quotient);
    }
    std::lock_guard lock(mutex);
    return cache.emplace(n, std::move(result)).first->second;
}

// An element of Z[1/r][t] / (t^n - 1): the restriction ring R(mu_n)_{1/r}
// under the choice of a generator t of mu_n^vee.
struct CyclotomicImage {
    long long n = 1;
    Int r = 1;
    RatPoly poly;  // degree < n

    CyclotomicImage(long long n_, Int r_, RatPoly p) : n(n_), r(std::move(r_)), poly(std::move(p)) {
        if (n < 1) throw MalformedInput("cyclotomic modulus must be >= 1");
        // Fold t^n = 1 and validate the coefficient ring.
        RatPoly folded(n);
        for (std::size_t i = 0; i < poly.size(); ++i) folded[i % n] += poly[i];
        poly = std::move(folded);
        detail::trim(poly);
        for (const auto& c : poly)
            if (!rat_in_z_inv_r(c, r))
                throw PrimeNotInverted("coefficient " + rat_to_string(c) +
                                       " is not in Z[1/" + r.str() + "]");
    }

    static CyclotomicImage one(long long n, Int r) { return {n, std::move(r), {Rat(1)}}; }

    friend bool operator==(const CyclotomicImage&, const CyclotomicImage&) = default;

    friend CyclotomicImage operator+(const CyclotomicImage& a, const CyclotomicImage& b) {
        a.check_compatible(b);
        return {a.n, a.r, detail::poly_add(a.poly, b.poly)};
    }
    friend CyclotomicImage operator*(const CyclotomicImage& a, const CyclotomicImage& b) {
        a.check_compatible(b);
        return {a.n, a.r, detail::poly_mul(a.poly, b.poly)};
    }

    void check_compatible(const CyclotomicImage& b) const {
        if (n != b.n || r != b.r)
            throw GroupMismatch("cyclotomic images over different moduli");
    }
};

// A component of the splitting modulo Phi_d, d | n.
struct PhiComponent {
    long long n = 1;
    long long d = 1;
    Int r = 1;
    RatPoly poly;  // reduced mod Phi_d

    friend bool operator==(const PhiComponent&, const PhiComponent&) = default;
};

// The restriction homomorphism R(T)_{1/r} -> R(mu_n)_{1/r} along the
// embedding t -> (t^c_1, ..., t^c_r): each monomial t^chi maps to
// t^{<chi, c> mod n}.
inline CyclotomicImage restrict_to_mu_n(const RingElement& a, const std::vector<long long>& c,
                                        long long n, Int r) {
    const CharacterGroup& g = a.group();
    if (!g.is_torsion_free() || c.size() != g.rank())
        throw GroupMismatch("restriction needs a torus element and a full-length embedding");
    if (n < 1) throw InvalidEmbedding("subgroup order must be positive");
    long long gcd_all = n;
    for (long long ci : c) gcd_all = std::gcd(gcd_all, ci % n);
    if (n > 1 && gcd_all != 1)
        throw InvalidEmbedding("embedding vector is not primitive mod " + std::to_string(n));
    RatPoly poly(n);
    for (const auto& [chi, coeff] : a.terms()) {
        long long e = 0;
        for (std::size_t i = 0; i < c.size(); ++i)
            e = ((e + (chi.free[i] % n) * (c[i] % n)) % n + n) % n;
        poly[e] += coeff;
    }
    return CyclotomicImage(n, std::move(r), std::move(poly));
}

namespace detail {
inline void require_primes_inverted(long long n, const Int& r) {
    long long m = n;
    for (long long p = 2; p * p <= m; ++p) {
        if (m % p != 0) continue;
        while (m % p == 0) m /= p;
        if (r % p != 0)
            throw PrimeNotInverted("prime " + std::to_string(p) + " of " + std::to_string(n) +
                                   " does not divide r = " + r.str());
    }
    if (m > 1 && r % m != 0)
        throw PrimeNotInverted("prime " + std::to_string(m) + " of " + std::to_string(n) +
                               " does not divide r = " + r.str());
}
}  // namespace detail

// Splits x in Z[1/r][t]/(t^n - 1) into its residues modulo the cyclotomic
// factors Phi_d, one component per divisor d of n.
inline std::vector<PhiComponent> crt_decompose(const CyclotomicImage& x) {
    detail::require_primes_inverted(x.n, x.r);
    std::vector<PhiComponent> out;
    for (long long d : detail::divisors_of(x.n)) {
        RatPoly rem =
            detail::poly_divmod_monic(x.poly, detail::to_rat_poly(cyclotomic_poly(d))).second;
        out.push_back(PhiComponent{x.n, d, x.r, std::move(rem)});
    }
    return out;
}

// Inverse of crt_decompose.  The Bezout idempotents are computed over Q[t]
// and must land in Z[1/r][t]; a failure there is a broken invariant, not a
// user error.
inline CyclotomicImage crt_reconstruct(const std::vector<PhiComponent>& components) {
    if (components.empty()) throw EmptySet("no components to reconstruct from");
    const long long n = components.front().n;
    const Int r = components.front().r;
    detail::require_primes_inverted(n, r);
    auto divisors = detail::divisors_of(n);
    if (components.size() != divisors.size())
        throw MalformedInput("need exactly one component per divisor of n");

    const RatPoly modulus = detail::to_rat_poly(t_power_n_minus_one(n));
    RatPoly acc;
    for (std::size_t k = 0; k < divisors.size(); ++k) {
        const PhiComponent& comp = components[k];
        if (comp.n != n || comp.r != r || comp.d != divisors[k])
            throw MalformedInput("components do not enumerate the divisors of n in order");
        const RatPoly phi = detail::to_rat_poly(cyclotomic_poly(comp.d));
        auto [q_int, rem_int] =
            detail::poly_divmod_monic(t_power_n_minus_one(n), cyclotomic_poly(comp.d));
        if (!rem_int.empty()) throw InternalError("Phi_d does not divide t^n - 1");
        const RatPoly cofactor = detail::to_rat_poly(q_int);
        RatPoly bezout = detail::poly_bezout(phi, cofactor).second;
        RatPoly idempotent = detail::poly_mul(bezout, cofactor);
        idempotent = detail::poly_divmod_monic(std::move(idempotent), modulus).second;
        for (const auto& coef : idempotent)
            if (!rat_in_z_inv_r(coef, r))
                throw InternalError("Bezout idempotent escapes Z[1/r] for n = " +
                                    std::to_string(n));
        acc = detail::poly_add(acc, detail::poly_mul(comp.poly, idempotent));
    }
    return CyclotomicImage(n, r, std::move(acc));
}

// Membership in the multiplicative set defined as the preimage of 1 under
// restriction to mu_n followed by projection onto the Phi_n factor.
inline bool in_sbar_mu_n(const RingElement& s, const std::vector<long long>& c, long long n,
                         const Int& r) {
    detail::require_primes_inverted(n, r);
    CyclotomicImage image = restrict_to_mu_n(s, c, n, r);
    RatPoly rem =
        detail::poly_divmod_monic(image.poly, detail::to_rat_poly(cyclotomic_poly(n))).second;
    return rem.size() == 1 && rem[0] == 1;
}

// Least common multiple of the stabilizer orders.
inline Int compute_r(const std::vector<long long>& orders) {
    if (orders.empty()) throw EmptySet("no stabilizer orders given");
    Int out = 1;
    for (long long n : orders) {
        if (n < 1) throw InvalidOrder("stabilizer order must be positive");
        out = lcm(out, Int(n));
    }
    return out;
}

}  // namespace eqloc
