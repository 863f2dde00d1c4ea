#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <numeric>
#include <string>
#include <vector>

#include "eqloc/linalg.hpp"
#include "eqloc/rational.hpp"

namespace eqloc {

// A character of a diagonalizable group, written additively: the exponent
// vector of the monomial t^chi.  Torsion entries are kept in [0, n_i) by the
// owning CharacterGroup.
struct Character {
    std::vector<long long> free;
    std::vector<long long> tors;

    friend bool operator==(const Character&, const Character&) = default;
    friend auto operator<=>(const Character& a, const Character& b) {
        if (auto c = std::lexicographical_compare_three_way(a.free.begin(), a.free.end(),
                                                            b.free.begin(), b.free.end());
            c != 0)
            return c;
        return std::lexicographical_compare_three_way(a.tors.begin(), a.tors.end(),
                                                      b.tors.begin(), b.tors.end());
    }

    bool is_zero() const {
        auto zero = [](long long v) { return v == 0; };
        return std::all_of(free.begin(), free.end(), zero) &&
               std::all_of(tors.begin(), tors.end(), zero);
    }
};

// The character group Z^rank + sum_i Z/n_i of a diagonalizable group, with
// torsion orders kept sorted nondecreasing.
class CharacterGroup {
public:
    CharacterGroup() = default;
    CharacterGroup(std::size_t rank, std::vector<long long> torsion)
        : rank_(rank), torsion_(std::move(torsion)) {
        for (long long n : torsion_)
            if (n < 2) throw InvalidOrder("torsion order " + std::to_string(n) + " is below 2");
        std::sort(torsion_.begin(), torsion_.end());
    }

    static CharacterGroup torus(std::size_t rank) { return CharacterGroup(rank, {}); }
    static CharacterGroup mu(long long n) {
        return n == 1 ? CharacterGroup(0, {}) : CharacterGroup(0, {n});
    }

    std::size_t rank() const { return rank_; }
    const std::vector<long long>& torsion() const { return torsion_; }
    std::size_t generator_count() const { return rank_ + torsion_.size(); }
    bool is_torsion_free() const { return torsion_.empty(); }
    bool is_trivial() const { return rank_ == 0 && torsion_.empty(); }

    friend bool operator==(const CharacterGroup&, const CharacterGroup&) = default;

    Character zero() const {
        return Character{std::vector<long long>(rank_, 0),
                         std::vector<long long>(torsion_.size(), 0)};
    }

    // i-th standard generator, free generators first.
    Character generator(std::size_t i) const {
        Character chi = zero();
        if (i < rank_)
            chi.free[i] = 1;
        else
            chi.tors[i - rank_] = torsion_[i - rank_] == 1 ? 0 : 1;
        return chi;
    }

    Character canonicalize(Character chi) const {
        check_shape(chi);
        for (std::size_t i = 0; i < torsion_.size(); ++i) {
            long long n = torsion_[i];
            long long v = chi.tors[i] % n;
            chi.tors[i] = v < 0 ? v + n : v;
        }
        return chi;
    }

    Character character(std::vector<long long> free, std::vector<long long> tors = {}) const {
        if (tors.empty()) tors.assign(torsion_.size(), 0);
        return canonicalize(Character{std::move(free), std::move(tors)});
    }

    Character add(const Character& a, const Character& b) const {
        check_shape(a);
        check_shape(b);
        Character out = a;
        for (std::size_t i = 0; i < rank_; ++i) out.free[i] += b.free[i];
        for (std::size_t i = 0; i < torsion_.size(); ++i) out.tors[i] += b.tors[i];
        return canonicalize(std::move(out));
    }

    Character negate(const Character& a) const {
        check_shape(a);
        Character out = a;
        for (auto& v : out.free) v = -v;
        for (auto& v : out.tors) v = -v;
        return canonicalize(std::move(out));
    }

    Character scale(long long k, const Character& a) const {
        check_shape(a);
        Character out = a;
        for (auto& v : out.free) v *= k;
        for (auto& v : out.tors) v *= k;
        return canonicalize(std::move(out));
    }

    // Exponents as one flat vector, free entries first.
    std::vector<long long> flatten(const Character& chi) const {
        check_shape(chi);
        std::vector<long long> out = chi.free;
        out.insert(out.end(), chi.tors.begin(), chi.tors.end());
        return out;
    }

    std::string describe() const {
        if (is_trivial()) return "trivial";
        std::string out;
        if (rank_ == 1) out = "Z";
        if (rank_ > 1) out = "Z^" + std::to_string(rank_);
        for (long long n : torsion_) {
            if (!out.empty()) out += " x ";
            out += "Z/" + std::to_string(n);
        }
        return out;
    }

private:
    void check_shape(const Character& chi) const {
        if (chi.free.size() != rank_ || chi.tors.size() != torsion_.size())
            throw GroupMismatch("character shape does not match group " + describe());
    }

    std::size_t rank_ = 0;
    std::vector<long long> torsion_;
};

inline CharacterGroup make_character_group(std::size_t rank, std::vector<long long> torsion) {
    return CharacterGroup(rank, std::move(torsion));
}

// A closed diagonalizable subgroup H of G, presented by the surjection
// G^vee ->> H^vee: the image of each generator of G^vee in H^vee.
class Subgroup {
public:
    Subgroup(CharacterGroup ambient, CharacterGroup target, std::vector<Character> images)
        : ambient_(std::move(ambient)), target_(std::move(target)), images_(std::move(images)) {
        if (images_.size() != ambient_.generator_count())
            throw MalformedInput("subgroup matrix needs one image per ambient generator");
        for (auto& chi : images_) chi = target_.canonicalize(std::move(chi));
        // Torsion relations of the ambient group must die in the target.
        for (std::size_t i = 0; i < ambient_.torsion().size(); ++i) {
            long long n = ambient_.torsion()[i];
            if (!target_.scale(n, images_[ambient_.rank() + i]).is_zero())
                throw MalformedInput("subgroup matrix does not respect torsion order " +
                                     std::to_string(n));
        }
    }

    // H = G.
    static Subgroup full(const CharacterGroup& g) {
        std::vector<Character> images;
        for (std::size_t i = 0; i < g.generator_count(); ++i) images.push_back(g.generator(i));
        return Subgroup(g, g, std::move(images));
    }

    // mu_n inside a torus via the one-parameter embedding t -> (t^c_1, ..., t^c_r).
    // The restriction of a character chi is <chi, c> mod n.
    static Subgroup mu_in_torus(const CharacterGroup& torus, const std::vector<long long>& c,
                                long long n) {
        if (!torus.is_torsion_free() || c.size() != torus.rank())
            throw GroupMismatch("mu_in_torus needs a torus and a full-length embedding vector");
        if (n < 1) throw InvalidOrder("subgroup order must be positive");
        long long g = n;
        for (long long ci : c) g = std::gcd(g, ci % n);
        if (n > 1 && g != 1)
            throw InvalidEmbedding("embedding vector is not primitive mod " + std::to_string(n));
        CharacterGroup target = CharacterGroup::mu(n);
        std::vector<Character> images;
        for (long long ci : c) images.push_back(target.character({}, n == 1 ? std::vector<long long>{} : std::vector<long long>{ci}));
        return Subgroup(torus, target, std::move(images));
    }

    static Subgroup mu_in_gm(long long n) {
        return mu_in_torus(CharacterGroup::torus(1), {1}, n);
    }

    // A subtorus (or any diagonalizable target): row i of `matrix` is the image
    // of ambient free generator i in Z^target_rank.
    static Subgroup from_matrix(const CharacterGroup& ambient, const IntMat& matrix,
                                std::size_t target_rank) {
        if (!ambient.is_torsion_free() || matrix.size() != ambient.rank())
            throw GroupMismatch("from_matrix needs a torus ambient and one row per generator");
        CharacterGroup target = CharacterGroup::torus(target_rank);
        std::vector<Character> images;
        for (const auto& row : matrix) {
            if (row.size() != target_rank) throw MalformedInput("ragged subgroup matrix");
            std::vector<long long> f;
            for (const Int& v : row) f.push_back(static_cast<long long>(v));
            images.push_back(target.character(std::move(f)));
        }
        return Subgroup(ambient, target, std::move(images));
    }

    const CharacterGroup& ambient() const { return ambient_; }
    const CharacterGroup& target() const { return target_; }
    const std::vector<Character>& images() const { return images_; }

    friend bool operator==(const Subgroup&, const Subgroup&) = default;

private:
    CharacterGroup ambient_;
    CharacterGroup target_;
    std::vector<Character> images_;
};

inline Character restrict_character(const Character& chi, const Subgroup& h) {
    const auto flat = h.ambient().flatten(chi);  // throws GroupMismatch on shape clash
    Character out = h.target().zero();
    for (std::size_t i = 0; i < flat.size(); ++i)
        if (flat[i] != 0) out = h.target().add(out, h.target().scale(flat[i], h.images()[i]));
    return out;
}

inline bool is_nontrivial_on(const Character& chi, const Subgroup& h) {
    return !restrict_character(chi, h).is_zero();
}

// Evaluation of every generator of G^vee at a point g of G: generator i maps
// to the root of unity zeta_{order}^{numerator}.
struct RootAssignment {
    long long numerator = 0;
    long long order = 1;
};

// The support of the prime "functions vanishing at g": the congruence
// describing K_rho = {chi : chi(g) = 1}, a lattice basis for its preimage in
// the free cover, and H_rho = D(G^vee / K_rho).
struct PrimeSupport {
    std::vector<long long> congruence;  // c_i, one per generator
    long long modulus = 1;              // chi in K_rho  iff  sum c_i x_i = 0 mod M
    std::vector<std::vector<Int>> kernel;  // columns generating K_rho's preimage
    CharacterGroup h;

    bool in_k(const CharacterGroup& g, const Character& chi) const {
        const auto flat = g.flatten(chi);
        long long acc = 0;
        for (std::size_t i = 0; i < flat.size(); ++i)
            acc = (acc + (congruence[i] % modulus) * (flat[i] % modulus)) % modulus;
        return acc % modulus == 0;
    }
};

inline PrimeSupport prime_support(const CharacterGroup& g,
                                  const std::vector<RootAssignment>& eval) {
    if (eval.size() != g.generator_count())
        throw InvalidEvaluation("need one root assignment per generator");
    long long m = 1;
    for (const auto& a : eval) {
        if (a.order < 1) throw InvalidEvaluation("root order must be positive");
        m = std::lcm(m, a.order);
    }
    // Torsion compatibility: the assigned root on a torsion generator of order n
    // must itself have order dividing n.
    for (std::size_t i = 0; i < g.torsion().size(); ++i) {
        const auto& a = eval[g.rank() + i];
        long long num = ((a.numerator % a.order) + a.order) % a.order;
        long long root_order = a.order / std::gcd(a.order, num == 0 ? a.order : num);
        if (g.torsion()[i] % root_order != 0)
            throw InvalidEvaluation("torsion generator " + std::to_string(i) +
                                    " cannot evaluate to a root of order " +
                                    std::to_string(root_order));
    }

    PrimeSupport out;
    out.modulus = m;
    for (const auto& a : eval) {
        long long c = ((a.numerator % a.order) + a.order) % a.order;
        out.congruence.push_back(c * (m / a.order) % m);
    }

    // Preimage of K_rho in the free cover Z^n: kernel of x -> <c, x> mod M,
    // obtained from the integer kernel of the row [c_1 ... c_n M].
    const std::size_t n = g.generator_count();
    IntMat row(1, std::vector<Int>(n + 1));
    for (std::size_t i = 0; i < n; ++i) row[0][i] = out.congruence[i];
    row[0][n] = m;
    for (const auto& col : kernel_basis(row)) {
        std::vector<Int> projected(col.begin(), col.begin() + n);
        out.kernel.push_back(std::move(projected));
    }

    // H_rho via the Smith form of the quotient Z^n / K_rho-preimage.
    IntMat rel(n, std::vector<Int>(out.kernel.size()));
    for (std::size_t j = 0; j < out.kernel.size(); ++j)
        for (std::size_t i = 0; i < n; ++i) rel[i][j] = out.kernel[j][i];
    SmithForm f = smith_normal_form(rel);
    std::size_t free_rank = 0;
    std::vector<long long> torsion;
    for (std::size_t i = 0; i < n; ++i) {
        Int d = i < out.kernel.size() ? f.s[i][i] : Int(0);
        if (d == 0)
            ++free_rank;
        else if (d > 1)
            torsion.push_back(static_cast<long long>(d));
    }
    out.h = CharacterGroup(free_rank, std::move(torsion));
    return out;
}

}  // namespace eqloc
