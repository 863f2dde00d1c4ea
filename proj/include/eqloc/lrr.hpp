#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <numeric>
#include <unordered_map>
#include <utility>
#include <vector>

#include "eqloc/cyclotomic.hpp"
#include "eqloc/localization.hpp"
#include "eqloc/toric.hpp"

namespace eqloc {

namespace detail {

// ---------------------------------------------------------------------------
// Exact summation engine.
//
// A sum of fractions num_sigma / prod_i (1 - t^chi_i) over a torus is put
// over the common denominator and the numerator is divided by every binomial
// factor in turn, in lexicographic factor order.  Division by 1 - t^chi
// splits the numerator into residue classes along the exponent direction chi;
// on each class it is a univariate division by 1 - u, i.e. prefix sums, and a
// nonzero class total is exactly a nonzero remainder.
//
// Two interchangeable implementations: a packed one keying monomials into
// 16-bit lanes of a uint64 (rank <= 4 and small exponents, which covers every fan
// computation at desk scale) and a generic one on exponent vectors.
// ---------------------------------------------------------------------------

inline long long floor_div(long long a, long long b) {
    long long q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

// ----- packed representation -----

constexpr int kLaneBits = 16;
constexpr long long kLaneBias = 1LL << 14;
constexpr long long kLaneBound = 16000;  // |exponent| limit for the packed path

using PackedKey = std::uint64_t;
using PackedPoly = std::vector<std::pair<PackedKey, Int>>;  // sorted by key

inline PackedKey packed_zero(std::size_t rank) {
    PackedKey k = 0;
    for (std::size_t i = 0; i < rank; ++i)
        k |= static_cast<PackedKey>(kLaneBias) << (kLaneBits * i);
    return k;
}

inline PackedKey pack(const std::vector<long long>& e) {
    PackedKey k = 0;
    for (std::size_t i = 0; i < e.size(); ++i)
        k |= static_cast<PackedKey>(e[i] + kLaneBias) << (kLaneBits * i);
    return k;
}

inline long long lane(PackedKey k, std::size_t i) {
    return static_cast<long long>((k >> (kLaneBits * i)) & 0xFFFF) - kLaneBias;
}

inline void packed_normalize(PackedPoly& p) {
    std::sort(p.begin(), p.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    std::size_t out = 0;
    for (std::size_t i = 0; i < p.size();) {
        PackedKey key = p[i].first;
        Int coef = std::move(p[i].second);
        for (++i; i < p.size() && p[i].first == key; ++i) coef += p[i].second;
        if (coef != 0) p[out++] = {key, std::move(coef)};
    }
    p.resize(out);
}

// p * (1 - t^chi) as a linear merge of p with its shifted negation.
inline PackedPoly packed_mul_binomial(const PackedPoly& p, PackedKey chi, PackedKey zero) {
    const PackedKey delta = chi - zero;
    PackedPoly out;
    out.reserve(2 * p.size());
    std::size_t i = 0, j = 0;
    while (i < p.size() || j < p.size()) {
        PackedKey ki = i < p.size() ? p[i].first : ~PackedKey(0);
        PackedKey kj = j < p.size() ? p[j].first + delta : ~PackedKey(0);
        if (i < p.size() && (j >= p.size() || ki < kj)) {
            out.emplace_back(ki, p[i].second);
            ++i;
        } else if (j < p.size() && (i >= p.size() || kj < ki)) {
            out.emplace_back(kj, -p[j].second);
            ++j;
        } else {
            Int c = p[i].second - p[j].second;
            if (c != 0) out.emplace_back(ki, std::move(c));
            ++i;
            ++j;
        }
    }
    return out;
}

inline PackedPoly packed_mul(const PackedPoly& a, const PackedPoly& b, PackedKey zero) {
    PackedPoly out;
    out.reserve(a.size() * b.size());
    for (const auto& [ka, ca] : a)
        for (const auto& [kb, cb] : b) out.emplace_back(ka + kb - zero, ca * cb);
    packed_normalize(out);
    return out;
}

// Exact division by 1 - t^chi; throws NotPolynomial on a remainder.
inline PackedPoly packed_divide_binomial(const PackedPoly& p, const std::vector<long long>& chi,
                                         PackedKey zero) {
    std::size_t pivot = 0;
    while (pivot < chi.size() && chi[pivot] == 0) ++pivot;
    if (pivot == chi.size()) throw NotPolynomial("division by 1 - t^0 = 0");
    const long long c = chi[pivot];
    const PackedKey delta = pack(chi) - zero;

    // class key -> sorted (offset k, coefficient) along the chi direction
    std::unordered_map<PackedKey, std::map<long long, Int>> classes;
    classes.reserve(p.size());
    for (const auto& [key, coef] : p) {
        long long k = floor_div(lane(key, pivot), c);
        PackedKey base = key - static_cast<PackedKey>(k) * delta;
        classes[base][k] += coef;
    }

    PackedPoly out;
    out.reserve(p.size());
    for (const auto& [base, entries] : classes) {
        Int running = 0;
        auto it = entries.begin();
        while (it != entries.end()) {
            long long k = it->first;
            running += it->second;
            ++it;
            if (running == 0) continue;
            if (it == entries.end())
                throw NotPolynomial("localized sum is not a Laurent polynomial");
            for (long long j = k; j < it->first; ++j)
                out.emplace_back(base + static_cast<PackedKey>(j) * delta, running);
        }
    }
    packed_normalize(out);
    return out;
}

// ----- generic representation -----

using VecKey = std::vector<long long>;
using VecPoly = std::map<VecKey, Int>;

inline void vec_add_term(VecPoly& p, const VecKey& k, const Int& c) {
    if (c == 0) return;
    auto [it, inserted] = p.emplace(k, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) p.erase(it);
    }
}

inline VecKey vec_shift(const VecKey& a, const VecKey& chi, long long mult) {
    VecKey out = a;
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += mult * chi[i];
    return out;
}

inline VecPoly vec_mul_binomial(const VecPoly& p, const VecKey& chi) {
    VecPoly out = p;
    for (const auto& [k, c] : p) vec_add_term(out, vec_shift(k, chi, 1), -c);
    return out;
}

inline VecPoly vec_mul(const VecPoly& a, const VecPoly& b) {
    VecPoly out;
    for (const auto& [ka, ca] : a)
        for (const auto& [kb, cb] : b) {
            VecKey k = ka;
            for (std::size_t i = 0; i < k.size(); ++i) k[i] += kb[i];
            vec_add_term(out, k, ca * cb);
        }
    return out;
}

inline VecPoly vec_divide_binomial(const VecPoly& p, const VecKey& chi) {
    std::size_t pivot = 0;
    while (pivot < chi.size() && chi[pivot] == 0) ++pivot;
    if (pivot == chi.size()) throw NotPolynomial("division by 1 - t^0 = 0");
    const long long c = chi[pivot];

    std::map<VecKey, std::map<long long, Int>> classes;
    for (const auto& [key, coef] : p) {
        long long k = floor_div(key[pivot], c);
        classes[vec_shift(key, chi, -k)][k] += coef;
    }
    VecPoly out;
    for (const auto& [base, entries] : classes) {
        Int running = 0;
        auto it = entries.begin();
        while (it != entries.end()) {
            long long k = it->first;
            running += it->second;
            ++it;
            if (running == 0) continue;
            if (it == entries.end())
                throw NotPolynomial("localized sum is not a Laurent polynomial");
            for (long long j = k; j < it->first; ++j)
                vec_add_term(out, vec_shift(base, chi, j), running);
        }
    }
    return out;
}

// ----- shared driver -----

struct FractionSumInput {
    // Numerators with rational coefficients cleared: scaled[i] = scale * num_i.
    std::vector<std::vector<std::pair<VecKey, Int>>> numerators;
    std::vector<std::vector<VecKey>> denominators;  // factor characters per term
    std::vector<VecKey> all_factors;                // concatenated, sorted
    Int scale = 1;
    std::size_t rank = 0;
};

inline FractionSumInput prepare_sum(const std::vector<LocalizedElement>& terms) {
    if (terms.empty()) throw MalformedInput("cannot sum an empty list of fractions");
    const CharacterGroup& g = terms.front().set().group;
    if (!g.is_torsion_free())
        throw TorsionUnsupported("exact fraction summation needs a torus group");
    FractionSumInput in;
    in.rank = g.rank();
    for (const auto& t : terms) {
        check_same_set(terms.front(), t);
        for (const auto& [chi, coef] : t.numerator().terms())
            in.scale = lcm(in.scale, Int(denominator(coef)));
    }
    for (const auto& t : terms) {
        std::vector<std::pair<VecKey, Int>> num;
        for (const auto& [chi, coef] : t.numerator().terms()) {
            Rat scaled = Rat(in.scale) * coef;
            num.emplace_back(chi.free, Int(numerator(scaled)));
        }
        in.numerators.push_back(std::move(num));
        std::vector<VecKey> den;
        for (const auto& chi : t.denominator()) {
            if (chi.is_zero()) throw NotPolynomial("denominator factor 1 - t^0 = 0");
            den.push_back(chi.free);
            in.all_factors.push_back(chi.free);
        }
        in.denominators.push_back(std::move(den));
    }
    std::sort(in.all_factors.begin(), in.all_factors.end());
    return in;
}

inline bool packed_path_fits(const FractionSumInput& in) {
    if (in.rank == 0 || in.rank > 4) return false;
    long long num_bound = 0, factor_bound = 0, factor_total = 0;
    for (const auto& num : in.numerators)
        for (const auto& [k, c] : num)
            for (long long e : k) num_bound = std::max(num_bound, std::llabs(e));
    for (const auto& chi : in.all_factors) {
        long long m = 0;
        for (long long e : chi) m = std::max(m, std::llabs(e));
        factor_bound = std::max(factor_bound, m);
        factor_total += m;
    }
    // Every intermediate exponent lives in the numerator support box, whose
    // half-width is at most num_bound + factor_total; division class keys add
    // at most another (box)*(factor_bound) along one direction.
    long long box = num_bound + factor_total;
    return box * (factor_bound + 1) + box <= kLaneBound;
}

inline RingElement run_sum_packed(const FractionSumInput& in, const CharacterGroup& g) {
    const PackedKey zero = packed_zero(in.rank);
    const std::size_t n = in.numerators.size();
    std::vector<PackedPoly> pre(n + 1), suf(n + 1);
    pre[0] = {{zero, Int(1)}};
    for (std::size_t i = 0; i < n; ++i) {
        pre[i + 1] = pre[i];
        for (const auto& chi : in.denominators[i])
            pre[i + 1] = packed_mul_binomial(pre[i + 1], pack(chi), zero);
    }
    suf[n] = {{zero, Int(1)}};
    for (std::size_t i = n; i-- > 0;) {
        suf[i] = suf[i + 1];
        for (const auto& chi : in.denominators[i])
            suf[i] = packed_mul_binomial(suf[i], pack(chi), zero);
    }
    PackedPoly acc;
    for (std::size_t i = 0; i < n; ++i) {
        PackedPoly num;
        num.reserve(in.numerators[i].size());
        for (const auto& [k, c] : in.numerators[i]) num.emplace_back(pack(k), c);
        packed_normalize(num);
        PackedPoly term = packed_mul(packed_mul(num, pre[i], zero), suf[i + 1], zero);
        acc.insert(acc.end(), term.begin(), term.end());
    }
    packed_normalize(acc);
    for (const auto& chi : in.all_factors) acc = packed_divide_binomial(acc, chi, zero);

    RingElement out(g);
    for (const auto& [key, coef] : acc) {
        VecKey e(in.rank);
        for (std::size_t i = 0; i < in.rank; ++i) e[i] = lane(key, i);
        out.add_term(g.character(std::move(e)), Rat(coef, in.scale));
    }
    return out;
}

inline RingElement run_sum_generic(const FractionSumInput& in, const CharacterGroup& g) {
    const std::size_t n = in.numerators.size();
    const VecKey zero(in.rank, 0);
    std::vector<VecPoly> pre(n + 1), suf(n + 1);
    pre[0] = {{zero, Int(1)}};
    for (std::size_t i = 0; i < n; ++i) {
        pre[i + 1] = pre[i];
        for (const auto& chi : in.denominators[i])
            pre[i + 1] = vec_mul_binomial(pre[i + 1], chi);
    }
    suf[n] = {{zero, Int(1)}};
    for (std::size_t i = n; i-- > 0;) {
        suf[i] = suf[i + 1];
        for (const auto& chi : in.denominators[i]) suf[i] = vec_mul_binomial(suf[i], chi);
    }
    VecPoly acc;
    for (std::size_t i = 0; i < n; ++i) {
        VecPoly num;
        for (const auto& [k, c] : in.numerators[i]) vec_add_term(num, k, c);
        VecPoly term = vec_mul(vec_mul(num, pre[i]), suf[i + 1]);
        for (const auto& [k, c] : term) vec_add_term(acc, k, c);
    }
    for (const auto& chi : in.all_factors) acc = vec_divide_binomial(acc, chi);

    RingElement out(g);
    for (const auto& [key, coef] : acc) out.add_term(g.character(key), Rat(coef, in.scale));
    return out;
}

inline RingElement sum_fractions_impl(const std::vector<LocalizedElement>& terms,
                                      bool force_generic) {
    FractionSumInput in = prepare_sum(terms);
    const CharacterGroup& g = terms.front().set().group;
    if (!force_generic && packed_path_fits(in)) return run_sum_packed(in, g);
    return run_sum_generic(in, g);
}

}  // namespace detail

// Sums localized fractions over a torus and certifies that the result lies in
// the group ring: common denominator, then exact division by every binomial
// factor in lexicographic order.  NotPolynomial signals a genuine remainder.
inline RingElement sum_fractions_exact(const std::vector<LocalizedElement>& terms) {
    return detail::sum_fractions_impl(terms, false);
}

// An equivariant class presented by its restrictions to the torus fixed
// points, one localized fraction per maximal cone.
struct LocalizedTuple {
    const Fan* fan = nullptr;
    MultiplicativeSet set;
    std::vector<LocalizedElement> entries;

    const LocalizedElement& at(std::size_t fixed_point) const { return entries.at(fixed_point); }
};

// The restriction of [O(D)] to the fixed points: the tuple of fiber
// characters t^{m_sigma}.
inline LocalizedTuple restriction_tuple(const Fan& fan, const CartierData& d) {
    MultiplicativeSet set = MultiplicativeSet::full_torus(fan.dim());
    LocalizedTuple out{&fan, set, {}};
    for (const auto& fp : fixed_points(fan, &d))
        out.entries.push_back(LocalizedElement::from_ring(
            RingElement::monomial(set.group, *fp.fiber_char), set));
    return out;
}

// Pushforward from the fixed point x: the entry at x is
// lambda_{-1}(T^vee_x) * alpha
// and every other restriction vanishes.
inline LocalizedTuple pushforward_from_fixed_point(const Fan& fan, std::size_t x,
                                                   const LocalizedElement& alpha) {
    MultiplicativeSet set = alpha.set();
    LocalizedTuple out{&fan, set, {}};
    const auto fps = fixed_points(fan);
    if (x >= fps.size()) throw MalformedInput("fixed point index out of range");
    for (std::size_t i = 0; i < fps.size(); ++i) {
        if (i != x) {
            out.entries.push_back(LocalizedElement::zero(set));
            continue;
        }
        BundleClass conormal(set.group, fps[i].cotangent_chars);
        out.entries.push_back(
            frac_mul(LocalizedElement::from_ring(lambda_minus_one(conormal), set), alpha));
    }
    return out;
}

// The co-diagonal: pushforward to the point, i.e. the exact sum over fixed
// points.
inline RingElement codiagonal(const LocalizedTuple& tuple) {
    return sum_fractions_exact(tuple.entries);
}

// The fixed-point formula for the equivariant Euler characteristic of O(D):
// sum over fixed points of t^{m_sigma} / prod_i (1 - t^{m_{i,sigma}}).
inline RingElement euler_characteristic(const Fan& fan, const CartierData& d) {
    MultiplicativeSet set = MultiplicativeSet::full_torus(fan.dim());
    std::vector<LocalizedElement> terms;
    for (const auto& fp : fixed_points(fan, &d))
        terms.push_back(LocalizedElement(RingElement::monomial(set.group, *fp.fiber_char),
                                         fp.cotangent_chars, set));
    return sum_fractions_exact(terms);
}

// Pull back after pushing forward at x: equals lambda_{-1}(T^vee_x) . -,
// checked through the tuple
// machinery on one side and the direct product on the other.
inline bool self_intersection_check(const Fan& fan, std::size_t x,
                                    const LocalizedElement& alpha) {
    LocalizedTuple pushed = pushforward_from_fixed_point(fan, x, alpha);
    const LocalizedElement& lhs = pushed.at(x);
    BundleClass conormal(alpha.set().group, fixed_points(fan)[x].cotangent_chars);
    LocalizedElement rhs(lambda_minus_one(conormal) * alpha.numerator(), alpha.denominator(),
                         alpha.set());
    return frac_eq(lhs, rhs);
}

// Commutativity of the concentration diagram for [O(D)]: restricting to the
// fixed points, applying (lambda_{-1} . -)^{-1} and summing must reproduce
// the Euler characteristic.
inline bool concentration_roundtrip(const Fan& fan, const CartierData& d) {
    LocalizedTuple tuple = restriction_tuple(fan, d);
    const auto fps = fixed_points(fan);
    for (std::size_t i = 0; i < tuple.entries.size(); ++i) {
        BundleClass conormal(tuple.set.group, fps[i].cotangent_chars);
        tuple.entries[i] = frac_mul(tuple.entries[i], invert_lambda(conormal, tuple.set));
    }
    return codiagonal(tuple) == euler_characteristic(fan, d);
}

// Brion's generating function: sum over vertices of t^v / prod (1 - t^w)
// with w running over the primitive edge directions at v.
inline RingElement brion_generating_function(const Polytope& p) {
    const CharacterGroup torus = CharacterGroup::torus(p.dim());
    const auto vertices = p.lattice_vertices();
    if (vertices.empty()) return RingElement::zero(torus);
    if (vertices.size() == 1) return RingElement::monomial(torus, torus.character(vertices[0]));

    MultiplicativeSet set = MultiplicativeSet::full_torus(p.dim());
    std::vector<LocalizedElement> terms;
    for (const auto& v : vertices) {
        std::vector<std::size_t> tight;
        for (std::size_t i = 0; i < p.normals().size(); ++i)
            if (detail::dot(p.normals()[i], v) == p.rhs()[i]) tight.push_back(i);
        if (tight.size() != p.dim())
            throw NotSmoothVertexCone("vertex has " + std::to_string(tight.size()) +
                                      " tight inequalities, expected " +
                                      std::to_string(p.dim()));
        IntMat normals(p.dim(), std::vector<Int>(p.dim()));
        for (std::size_t row = 0; row < p.dim(); ++row)
            for (std::size_t col = 0; col < p.dim(); ++col)
                normals[row][col] = p.normals()[tight[row]][col];
        Int dt = det(normals);
        if (dt != 1 && dt != -1)
            throw NotSmoothVertexCone("vertex cone has |det| = " +
                                      Int(boost::multiprecision::abs(dt)).str());
        IntMat dual = unimodular_inverse(normals);  // columns are edge directions
        std::vector<Character> edges;
        for (std::size_t j = 0; j < p.dim(); ++j) {
            std::vector<long long> w(p.dim());
            for (std::size_t i = 0; i < p.dim(); ++i) w[i] = static_cast<long long>(dual[i][j]);
            edges.push_back(set.group.character(std::move(w)));
        }
        terms.push_back(
            LocalizedElement(RingElement::monomial(set.group, set.group.character(v)),
                             std::move(edges), set));
    }
    return sum_fractions_exact(terms);
}

// Lattice-point count: augmentation applied strictly after the exact
// summation (substituting t = 1 into the fractions would hit poles).
inline Int count_points(const Polytope& p) {
    Rat total = augmentation(brion_generating_function(p));
    if (denominator(total) != 1) throw InternalError("non-integral point count");
    return numerator(total);
}

// One finite stabilizer subgroup mu_n acting through the torus.
struct StabilizerEmbedding {
    long long n = 1;
    std::vector<long long> c;  // embedding vector mu_n -> T
};

// The finite-stabilizer splitting on the class [O(D)]: restricting the Euler
// characteristic to each mu_n, splitting modulo the cyclotomic factors and
// reconstructing must round-trip, with r the lcm of the stabilizer orders.
inline bool decomposition_check(const Fan& fan, const std::vector<StabilizerEmbedding>& embeddings,
                                const CartierData& d) {
    std::vector<long long> orders;
    for (const auto& e : embeddings) orders.push_back(e.n);
    const Int r = compute_r(orders);
    const RingElement chi = euler_characteristic(fan, d);
    for (const auto& e : embeddings) {
        CyclotomicImage image = restrict_to_mu_n(chi, e.c, e.n, r);
        if (!(crt_reconstruct(crt_decompose(image)) == image)) return false;
    }
    return true;
}

}  // namespace eqloc
