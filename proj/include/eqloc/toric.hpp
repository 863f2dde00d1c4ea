#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "eqloc/linalg.hpp"
#include "eqloc/rep_ring.hpp"

namespace eqloc {

using LatticeVector = std::vector<long long>;

namespace detail {
inline IntMat rays_as_columns(const std::vector<LatticeVector>& rays,
                              const std::vector<std::size_t>& indices) {
    const std::size_t dim = rays.empty() ? 0 : rays[0].size();
    IntMat m(dim, std::vector<Int>(indices.size()));
    for (std::size_t j = 0; j < indices.size(); ++j)
        for (std::size_t i = 0; i < dim; ++i) m[i][j] = rays[indices[j]][i];
    return m;
}

inline long long dot(const LatticeVector& a, const LatticeVector& b) {
    long long out = 0;
    for (std::size_t i = 0; i < a.size(); ++i) out += a[i] * b[i];
    return out;
}
}  // namespace detail

// A smooth complete fan: primitive rays, maximal cones given as ray index
// sets of size dim, every cone a Z-basis.  Validation runs in the
// constructor; all later queries assume a valid fan.
class Fan {
public:
    Fan(std::size_t dim, std::vector<LatticeVector> rays,
        std::vector<std::vector<std::size_t>> max_cones)
        : dim_(dim), rays_(std::move(rays)), cones_(std::move(max_cones)) {
        validate();
    }

    std::size_t dim() const { return dim_; }
    const std::vector<LatticeVector>& rays() const { return rays_; }
    const std::vector<std::vector<std::size_t>>& max_cones() const { return cones_; }
    CharacterGroup torus() const { return CharacterGroup::torus(dim_); }

    // Is x inside the cone?  (Nonnegative coordinates in the cone's ray basis.)
    bool cone_contains(std::size_t cone, const LatticeVector& x) const {
        IntMat m = detail::rays_as_columns(rays_, cones_[cone]);
        std::vector<Int> b(x.begin(), x.end());
        auto sol = solve(m, b);
        if (!sol) return false;
        return std::all_of(sol->begin(), sol->end(), [](const Rat& v) { return v >= 0; });
    }

    friend bool operator==(const Fan&, const Fan&) = default;

private:
    void validate() const {
        if (dim_ == 0) throw MalformedInput("fan dimension must be positive");
        for (std::size_t i = 0; i < rays_.size(); ++i) {
            if (rays_[i].size() != dim_)
                throw MalformedInput("ray " + std::to_string(i) + " has wrong dimension");
            long long g = 0;
            for (long long v : rays_[i]) g = std::gcd(g, v);
            if (g != 1)
                throw NotPrimitive("ray " + std::to_string(i) + " is not primitive");
        }
        std::set<LatticeVector> seen_rays(rays_.begin(), rays_.end());
        if (seen_rays.size() != rays_.size()) throw MalformedInput("duplicate rays");
        if (cones_.empty()) throw MalformedInput("fan needs at least one maximal cone");

        for (std::size_t c = 0; c < cones_.size(); ++c) {
            const auto& cone = cones_[c];
            if (cone.size() != dim_)
                throw MalformedInput("cone " + std::to_string(c) + " is not full-dimensional");
            std::set<std::size_t> dedup(cone.begin(), cone.end());
            if (dedup.size() != dim_)
                throw MalformedInput("cone " + std::to_string(c) + " repeats a ray");
            for (std::size_t idx : cone)
                if (idx >= rays_.size())
                    throw MalformedInput("cone " + std::to_string(c) + " references ray " +
                                         std::to_string(idx));
            Int d = det(detail::rays_as_columns(rays_, cone));
            if (d != 1 && d != -1)
                throw NotSmooth("cone " + std::to_string(c) + " has |det| = " +
                                Int(boost::multiprecision::abs(d)).str());
        }

        // Completeness, first pass: every facet shared by exactly two maximal
        // cones and the facet-adjacency graph connected.
        std::map<std::vector<std::size_t>, std::vector<std::size_t>> facets;
        for (std::size_t c = 0; c < cones_.size(); ++c) {
            std::vector<std::size_t> sorted = cones_[c];
            std::sort(sorted.begin(), sorted.end());
            for (std::size_t drop = 0; drop < dim_; ++drop) {
                std::vector<std::size_t> facet = sorted;
                facet.erase(facet.begin() + drop);
                facets[facet].push_back(c);
            }
        }
        for (const auto& [facet, owners] : facets) {
            if (owners.size() != 2) {
                std::string name = "{";
                for (std::size_t i = 0; i < facet.size(); ++i)
                    name += (i ? "," : "") + std::to_string(facet[i]);
                name += "}";
                throw NotComplete("facet " + name + " lies on " +
                                  std::to_string(owners.size()) + " maximal cone(s)");
            }
        }
        std::vector<char> visited(cones_.size(), 0);
        std::vector<std::size_t> stack{0};
        visited[0] = 1;
        while (!stack.empty()) {
            std::size_t c = stack.back();
            stack.pop_back();
            for (const auto& [facet, owners] : facets)
                for (std::size_t other : owners)
                    if ((owners[0] == c || owners[1] == c) && !visited[other]) {
                        visited[other] = 1;
                        stack.push_back(other);
                    }
        }
        if (!std::all_of(visited.begin(), visited.end(), [](char v) { return v == 1; }))
            throw NotComplete("maximal cones are not facet-connected");

        // Second pass for low dimensions: random points must be covered.
        if (dim_ <= 3) {
            std::mt19937 rng(20240817);
            std::uniform_int_distribution<long long> coord(-9, 9);
            for (int trial = 0; trial < 200; ++trial) {
                LatticeVector x(dim_);
                for (auto& v : x) v = coord(rng);
                bool covered = false;
                for (std::size_t c = 0; c < cones_.size() && !covered; ++c)
                    covered = cone_contains(c, x);
                if (!covered) {
                    std::string p = "(";
                    for (std::size_t i = 0; i < dim_; ++i)
                        p += (i ? "," : "") + std::to_string(x[i]);
                    throw NotComplete("support does not cover the point " + p + ")");
                }
            }
        }
    }

    std::size_t dim_;
    std::vector<LatticeVector> rays_;
    std::vector<std::vector<std::size_t>> cones_;
};

// The fan of X x Y: block rays and unions of cones.
inline Fan product_fan(const Fan& a, const Fan& b) {
    std::vector<LatticeVector> rays;
    for (const auto& r : a.rays()) {
        LatticeVector v = r;
        v.resize(a.dim() + b.dim(), 0);
        rays.push_back(std::move(v));
    }
    for (const auto& r : b.rays()) {
        LatticeVector v(a.dim(), 0);
        v.insert(v.end(), r.begin(), r.end());
        rays.push_back(std::move(v));
    }
    std::vector<std::vector<std::size_t>> cones;
    for (const auto& ca : a.max_cones())
        for (const auto& cb : b.max_cones()) {
            std::vector<std::size_t> cone = ca;
            for (std::size_t idx : cb) cone.push_back(a.rays().size() + idx);
            cones.push_back(std::move(cone));
        }
    return Fan(a.dim() + b.dim(), std::move(rays), std::move(cones));
}

// An equivariant line bundle O(D), D = sum a_rho D_rho, carried as the ray
// coefficients plus the per-cone linear data m_sigma with
// <m_sigma, v_rho> = -a_rho on the cone's rays.
struct CartierData {
    Fan fan;
    std::vector<long long> ray_coeffs;
    std::vector<LatticeVector> per_cone_m;
};

inline CartierData cartier_from_divisor(const Fan& fan, std::vector<long long> ray_coeffs) {
    if (ray_coeffs.size() != fan.rays().size())
        throw MalformedInput("need one divisor coefficient per ray");
    CartierData out{fan, std::move(ray_coeffs), {}};
    for (std::size_t c = 0; c < fan.max_cones().size(); ++c) {
        const auto& cone = fan.max_cones()[c];
        // Solve <m, v_i> = -a_i over the cone's ray basis.
        IntMat m(fan.dim(), std::vector<Int>(fan.dim()));
        std::vector<Int> rhs(fan.dim());
        for (std::size_t row = 0; row < fan.dim(); ++row) {
            for (std::size_t col = 0; col < fan.dim(); ++col)
                m[row][col] = fan.rays()[cone[row]][col];
            rhs[row] = -Int(out.ray_coeffs[cone[row]]);
        }
        auto sol = solve(m, rhs);
        if (!sol) throw InconsistentData("singular cone matrix");  // excluded by smoothness
        LatticeVector mv(fan.dim());
        for (std::size_t i = 0; i < fan.dim(); ++i) {
            if (denominator((*sol)[i]) != 1)
                throw InconsistentData("non-integral Cartier solution on a smooth cone");
            mv[i] = static_cast<long long>(numerator((*sol)[i]));
        }
        out.per_cone_m.push_back(std::move(mv));
    }
    return out;
}

// Convexity of the support function: <m_sigma, v_rho> >= -a_rho globally.
inline bool is_nef(const CartierData& d) {
    const Fan& fan = d.fan;
    for (const auto& m : d.per_cone_m)
        for (std::size_t r = 0; r < fan.rays().size(); ++r)
            if (detail::dot(m, fan.rays()[r]) < -d.ray_coeffs[r]) return false;
    return true;
}

// The torus fixed point of a maximal cone: its cotangent characters are the
// dual basis of the cone's rays, and the fiber character of O(D) is
// t^{m_sigma}.
struct FixedPointDatum {
    std::size_t cone = 0;
    std::vector<Character> cotangent_chars;
    std::optional<Character> fiber_char;
};

inline std::vector<FixedPointDatum> fixed_points(const Fan& fan,
                                                 const CartierData* d = nullptr) {
    if (d && !(d->fan == fan)) throw GroupMismatch("Cartier data belongs to a different fan");
    const CharacterGroup torus = fan.torus();
    std::vector<FixedPointDatum> out;
    for (std::size_t c = 0; c < fan.max_cones().size(); ++c) {
        FixedPointDatum fp;
        fp.cone = c;
        IntMat rays = detail::rays_as_columns(fan.rays(), fan.max_cones()[c]);
        IntMat dual = unimodular_inverse(rays);  // row i is the i-th dual basis vector
        for (std::size_t i = 0; i < fan.dim(); ++i) {
            std::vector<long long> v(fan.dim());
            for (std::size_t j = 0; j < fan.dim(); ++j) v[j] = static_cast<long long>(dual[i][j]);
            fp.cotangent_chars.push_back(torus.character(std::move(v)));
        }
        if (d) {
            std::vector<long long> m = d->per_cone_m[c];
            fp.fiber_char = torus.character(std::move(m));
        }
        out.push_back(std::move(fp));
    }
    return out;
}

// Lattice points of {m : <m, v_rho> >= -a_rho}, enumerated over the bounding
// box of the per-cone vertices (which always contains the polytope for a
// complete fan) and returned sorted lexicographically.
inline std::vector<LatticeVector> polytope_points(const CartierData& d) {
    const Fan& fan = d.fan;
    LatticeVector lo(fan.dim()), hi(fan.dim());
    for (std::size_t i = 0; i < fan.dim(); ++i) {
        lo[i] = hi[i] = d.per_cone_m[0][i];
        for (const auto& m : d.per_cone_m) {
            lo[i] = std::min(lo[i], m[i]);
            hi[i] = std::max(hi[i], m[i]);
        }
    }
    Int box = 1;
    for (std::size_t i = 0; i < fan.dim(); ++i) box *= Int(hi[i] - lo[i] + 1);
    if (box > 1000000)
        throw OracleTooLarge("bounding box has " + box.str() + " candidate points");

    std::vector<LatticeVector> out;
    LatticeVector m = lo;
    for (;;) {
        bool inside = true;
        for (std::size_t r = 0; r < fan.rays().size() && inside; ++r)
            inside = detail::dot(m, fan.rays()[r]) >= -d.ray_coeffs[r];
        if (inside) out.push_back(m);
        std::size_t i = fan.dim();
        bool advanced = false;
        while (i > 0) {
            --i;
            if (m[i] < hi[i]) {
                ++m[i];
                for (std::size_t j = i + 1; j < fan.dim(); ++j) m[j] = lo[j];
                advanced = true;
                break;
            }
        }
        if (!advanced) break;
    }
    std::sort(out.begin(), out.end());
    return out;
}

// The polytope's character sum as a ring element over the fan's torus.
inline RingElement points_generating_function(const CharacterGroup& torus,
                                              const std::vector<LatticeVector>& points) {
    RingElement out(torus);
    for (const auto& p : points) out.add_term(torus.character(p), 1);
    return out;
}

// A rational polytope given by inequalities <m, normal_i> >= rhs_i, with the
// vertex list maintained alongside.  Vertices are enumerated exactly by
// solving the dim-subsets of tight constraints.
class Polytope {
public:
    Polytope(std::size_t dim, std::vector<LatticeVector> normals, std::vector<long long> rhs)
        : dim_(dim), normals_(std::move(normals)), rhs_(std::move(rhs)) {
        if (normals_.size() != rhs_.size()) throw MalformedInput("one rhs per inequality");
        for (const auto& n : normals_)
            if (n.size() != dim_) throw MalformedInput("inequality normal has wrong dimension");
        enumerate_vertices();
    }

    // Convex hull form: computes the facet inequalities by brute force.
    static Polytope from_vertices(std::size_t dim, std::vector<LatticeVector> vertices);

    std::size_t dim() const { return dim_; }
    const std::vector<LatticeVector>& normals() const { return normals_; }
    const std::vector<long long>& rhs() const { return rhs_; }
    const std::vector<std::vector<Rat>>& vertices() const { return vertices_; }

    bool contains(const LatticeVector& p) const {
        for (std::size_t i = 0; i < normals_.size(); ++i)
            if (detail::dot(normals_[i], p) < rhs_[i]) return false;
        return true;
    }

    // Integer vertex coordinates; MalformedInput when some vertex is not a
    // lattice point.
    std::vector<LatticeVector> lattice_vertices() const {
        std::vector<LatticeVector> out;
        for (const auto& v : vertices_) {
            LatticeVector w(dim_);
            for (std::size_t i = 0; i < dim_; ++i) {
                if (denominator(v[i]) != 1)
                    throw MalformedInput("polytope vertex is not a lattice point");
                w[i] = static_cast<long long>(numerator(v[i]));
            }
            out.push_back(std::move(w));
        }
        return out;
    }

    // Exhaustive lattice-point enumeration over the vertex bounding box.
    std::vector<LatticeVector> lattice_points() const {
        if (vertices_.empty()) return {};
        LatticeVector lo(dim_), hi(dim_);
        for (std::size_t i = 0; i < dim_; ++i) {
            Rat mn = vertices_[0][i], mx = vertices_[0][i];
            for (const auto& v : vertices_) {
                mn = std::min(mn, v[i]);
                mx = std::max(mx, v[i]);
            }
            // floor/ceil of exact rationals
            Int fl = numerator(mn) >= 0 ? numerator(mn) / denominator(mn)
                                        : -((-numerator(mn) + denominator(mn) - 1) / denominator(mn));
            Int ce = numerator(mx) >= 0 ? (numerator(mx) + denominator(mx) - 1) / denominator(mx)
                                        : -((-numerator(mx)) / denominator(mx));
            lo[i] = static_cast<long long>(fl);
            hi[i] = static_cast<long long>(ce);
        }
        Int box = 1;
        for (std::size_t i = 0; i < dim_; ++i) box *= Int(hi[i] - lo[i] + 1);
        if (box > 1000000)
            throw OracleTooLarge("bounding box has " + box.str() + " candidate points");
        std::vector<LatticeVector> out;
        LatticeVector m = lo;
        for (;;) {
            if (contains(m)) out.push_back(m);
            std::size_t i = dim_;
            bool advanced = false;
            while (i > 0) {
                --i;
                if (m[i] < hi[i]) {
                    ++m[i];
                    for (std::size_t j = i + 1; j < dim_; ++j) m[j] = lo[j];
                    advanced = true;
                    break;
                }
            }
            if (!advanced) break;
        }
        std::sort(out.begin(), out.end());
        return out;
    }

private:
    void enumerate_vertices() {
        std::set<std::vector<Rat>> found;
        const std::size_t k = normals_.size();
        if (dim_ == 0 || k < dim_) return;
        std::vector<std::size_t> subset(dim_);
        // Iterate over all dim-subsets of the inequalities.
        std::iota(subset.begin(), subset.end(), 0);
        for (;;) {
            IntMat m(dim_, std::vector<Int>(dim_));
            std::vector<Int> b(dim_);
            for (std::size_t row = 0; row < dim_; ++row) {
                for (std::size_t col = 0; col < dim_; ++col)
                    m[row][col] = normals_[subset[row]][col];
                b[row] = rhs_[subset[row]];
            }
            if (auto sol = solve(m, b)) {
                bool feasible = true;
                for (std::size_t i = 0; i < k && feasible; ++i) {
                    Rat lhs = 0;
                    for (std::size_t j = 0; j < dim_; ++j) lhs += Rat(normals_[i][j]) * (*sol)[j];
                    feasible = lhs >= Rat(rhs_[i]);
                }
                if (feasible) found.insert(*sol);
            }
            // next subset
            std::size_t i = dim_;
            while (i > 0) {
                --i;
                if (subset[i] + (dim_ - i) < k) {
                    ++subset[i];
                    for (std::size_t j = i + 1; j < dim_; ++j) subset[j] = subset[j - 1] + 1;
                    break;
                }
                if (i == 0) {
                    vertices_.assign(found.begin(), found.end());
                    return;
                }
            }
        }
    }

    std::size_t dim_;
    std::vector<LatticeVector> normals_;
    std::vector<long long> rhs_;
    std::vector<std::vector<Rat>> vertices_;
};

inline Polytope Polytope::from_vertices(std::size_t dim, std::vector<LatticeVector> vertices) {
    if (vertices.empty()) throw MalformedInput("polytope needs at least one vertex");
    std::sort(vertices.begin(), vertices.end());
    vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
    if (vertices.size() == 1) {
        // A single point: cut it out by coordinate equalities.
        std::vector<LatticeVector> normals;
        std::vector<long long> rhs;
        for (std::size_t i = 0; i < dim; ++i) {
            LatticeVector plus(dim, 0), minus(dim, 0);
            plus[i] = 1;
            minus[i] = -1;
            normals.push_back(plus);
            rhs.push_back(vertices[0][i]);
            normals.push_back(minus);
            rhs.push_back(-vertices[0][i]);
        }
        return Polytope(dim, std::move(normals), std::move(rhs));
    }

    // Brute-force facet search: every dim-subset spanning a hyperplane with
    // all points on one side contributes an inequality.
    std::set<std::pair<LatticeVector, long long>> facets;
    std::vector<std::size_t> subset(dim);
    std::iota(subset.begin(), subset.end(), 0);
    const std::size_t k = vertices.size();
    if (k < dim) throw MalformedInput("polytope is not full-dimensional");
    for (;;) {
        // Normal of the affine span of the subset: kernel of the difference matrix.
        IntMat diffs(dim - 1, std::vector<Int>(dim));
        for (std::size_t row = 0; row + 1 < dim; ++row)
            for (std::size_t col = 0; col < dim; ++col)
                diffs[row][col] =
                    Int(vertices[subset[row + 1]][col]) - Int(vertices[subset[0]][col]);
        auto basis = kernel_basis(diffs);
        if (dim == 1) basis = {{Int(1)}};
        if (basis.size() == 1) {
            // Primitive normal.
            std::vector<Int>& n = basis[0];
            Int g = 0;
            for (const Int& v : n) g = gcd(g, v);
            if (g != 0)
                for (Int& v : n) v /= g;
            LatticeVector normal(dim);
            for (std::size_t i = 0; i < dim; ++i) normal[i] = static_cast<long long>(n[i]);
            long long level = detail::dot(normal, vertices[subset[0]]);
            bool all_ge = true, all_le = true;
            for (const auto& v : vertices) {
                long long val = detail::dot(normal, v);
                all_ge = all_ge && val >= level;
                all_le = all_le && val <= level;
            }
            if (all_ge && !all_le) facets.insert({normal, level});
            if (all_le && !all_ge) {
                LatticeVector neg(dim);
                for (std::size_t i = 0; i < dim; ++i) neg[i] = -normal[i];
                facets.insert({neg, -level});
            }
        }
        std::size_t i = dim;
        bool advanced = false;
        while (i > 0) {
            --i;
            if (subset[i] + (dim - i) < k) {
                ++subset[i];
                for (std::size_t j = i + 1; j < dim; ++j) subset[j] = subset[j - 1] + 1;
                advanced = true;
                break;
            }
        }
        if (!advanced) break;
    }
    if (facets.empty()) throw MalformedInput("polytope is not full-dimensional");
    std::vector<LatticeVector> normals;
    std::vector<long long> rhs;
    for (const auto& [n, b] : facets) {
        normals.push_back(n);
        rhs.push_back(b);
    }
    return Polytope(dim, std::move(normals), std::move(rhs));
}

}  // namespace eqloc
