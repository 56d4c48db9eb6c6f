#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

#include "ratiocert/cells.hpp"
#include "ratiocert/linear_system.hpp"
#include "ratiocert/rational.hpp"

namespace ratiocert {

// Point configuration attached to a system: in dimension n = r + J + K the
// generators are the n standard basis vectors followed by one column vector
// per variable, a_{n+s} = e_s + sum_j c_{js} e_{r+j} - sum_k d_{ks} e_{r+J+k}.
// Column balance puts every generator on the hyperplane of coordinate sum 1,
// so the polytope spanned together with the origin is a slice of the cone
// over the generators: u lies in the z-dilate iff u is in the cone and has
// coordinate sum at most z.
struct PointConfiguration {
    std::size_t r = 0, J = 0, K = 0;
    std::size_t n = 0;
    std::vector<std::vector<long long>> points;  // n + r generators
};

inline PointConfiguration build_configuration(const LinearFormSystem& sys) {
    PointConfiguration cfg;
    cfg.r = sys.r();
    cfg.J = sys.J();
    cfg.K = sys.K();
    cfg.n = cfg.r + cfg.J + cfg.K;
    for (std::size_t i = 0; i < cfg.n; ++i) {
        std::vector<long long> e(cfg.n, 0);
        e[i] = 1;
        cfg.points.push_back(std::move(e));
    }
    for (std::size_t s = 0; s < cfg.r; ++s) {
        std::vector<long long> a(cfg.n, 0);
        a[s] = 1;
        for (std::size_t j = 0; j < cfg.J; ++j) a[cfg.r + j] = sys.C()[j][s];
        for (std::size_t k = 0; k < cfg.K; ++k) a[cfg.r + cfg.J + k] = -sys.D()[k][s];
        cfg.points.push_back(std::move(a));
    }
    return cfg;
}

namespace detail {

inline Integer idot(const std::vector<Integer>& a, const std::vector<long long>& b) {
    Integer acc = 0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
}

inline Integer idot(const std::vector<Integer>& a, const std::vector<Integer>& b) {
    Integer acc = 0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
}

inline void make_primitive(std::vector<Integer>& v) {
    Integer g = 0;
    for (const Integer& c : v) g = boost::multiprecision::gcd(g, c);
    if (g > 1)
        for (Integer& c : v) c /= g;
}

// Rank over the rationals by gcd-scaled integer elimination.
inline std::size_t integer_matrix_rank(std::vector<std::vector<Integer>> M) {
    if (M.empty()) return 0;
    const std::size_t rows = M.size(), cols = M[0].size();
    std::size_t rank = 0;
    for (std::size_t col = 0; col < cols && rank < rows; ++col) {
        std::size_t pivot = rank;
        while (pivot < rows && M[pivot][col] == 0) ++pivot;
        if (pivot == rows) continue;
        std::swap(M[pivot], M[rank]);
        for (std::size_t row = rank + 1; row < rows; ++row) {
            if (M[row][col] == 0) continue;
            Integer a = M[rank][col], b = M[row][col];
            Integer g = boost::multiprecision::gcd(a, b);
            Integer fa = a / g, fb = b / g;
            for (std::size_t c = 0; c < cols; ++c) M[row][c] = M[row][c] * fa - M[rank][c] * fb;
        }
        ++rank;
    }
    return rank;
}

// Bareiss fraction-free determinant.
inline Integer integer_matrix_determinant(std::vector<std::vector<Integer>> M) {
    const std::size_t n = M.size();
    if (n == 0) return 1;
    for (const auto& row : M)
        if (row.size() != n) throw std::invalid_argument("determinant: matrix not square");
    Integer prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        std::size_t pivot = k;
        while (pivot < n && M[pivot][k] == 0) ++pivot;
        if (pivot == n) return 0;
        if (pivot != k) {
            std::swap(M[pivot], M[k]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) / prev;
        prev = M[k][k];
    }
    return sign > 0 ? M[n - 1][n - 1] : -M[n - 1][n - 1];
}

}  // namespace detail

// Facet normals of the cone spanned by integer generators, as primitive
// integer vectors sorted lexicographically.  Incremental double description
// on the dual cone: lineality is eliminated first, then each cut keeps the
// tight and satisfied rays and splices adjacent satisfied/violated pairs.
// Requires a full-dimensional pointed cone; both hold for configurations
// built here (the basis vectors span, and every generator has coordinate
// sum 1 so the all-ones functional is strictly positive on the cone).
inline std::vector<std::vector<Integer>> cone_facets_from_generators(
    const std::vector<std::vector<long long>>& gens, std::size_t n) {
    using detail::idot;
    std::vector<std::vector<Integer>> lineal, rays;
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<Integer> e(n, 0);
        e[i] = 1;
        lineal.push_back(std::move(e));
    }

    // Tightness of a ray against an already-processed constraint.
    auto tight = [&](const std::vector<Integer>& ray, std::size_t t) {
        return idot(ray, gens[t]) == 0;
    };

    for (std::size_t t = 0; t < gens.size(); ++t) {
        const auto& g = gens[t];
        std::size_t pivot = lineal.size();
        for (std::size_t i = 0; i < lineal.size(); ++i)
            if (idot(lineal[i], g) != 0) {
                pivot = i;
                break;
            }
        if (pivot < lineal.size()) {
            std::vector<Integer> l0 = lineal[pivot];
            Integer v0 = idot(l0, g);
            if (v0 < 0) {
                for (Integer& c : l0) c = -c;
                v0 = -v0;
            }
            std::vector<std::vector<Integer>> nl;
            for (std::size_t i = 0; i < lineal.size(); ++i) {
                if (i == pivot) continue;
                Integer vi = idot(lineal[i], g);
                std::vector<Integer> l(n);
                for (std::size_t c = 0; c < n; ++c) l[c] = lineal[i][c] * v0 - l0[c] * vi;
                detail::make_primitive(l);
                nl.push_back(std::move(l));
            }
            lineal = std::move(nl);
            for (auto& ray : rays) {
                Integer vr = idot(ray, g);
                if (vr == 0) continue;
                std::vector<Integer> w(n);
                for (std::size_t c = 0; c < n; ++c) w[c] = ray[c] * v0 - l0[c] * vr;
                detail::make_primitive(w);
                ray = std::move(w);
            }
            rays.push_back(std::move(l0));
            std::sort(rays.begin(), rays.end());
            rays.erase(std::unique(rays.begin(), rays.end()), rays.end());
            continue;
        }

        std::vector<Integer> vals(rays.size());
        bool any_neg = false;
        for (std::size_t i = 0; i < rays.size(); ++i) {
            vals[i] = idot(rays[i], g);
            if (vals[i] < 0) any_neg = true;
        }
        if (!any_neg) continue;
        if (!lineal.empty())
            throw std::logic_error("cone_facets: cut with residual lineality unsupported");

        // Adjacency of a satisfied/violated pair: no third ray is tight on
        // every processed constraint the pair is jointly tight on.
        auto adjacent = [&](std::size_t p, std::size_t q) {
            std::vector<std::size_t> common;
            for (std::size_t c = 0; c <= t; ++c)
                if (tight(rays[p], c) && tight(rays[q], c)) common.push_back(c);
            for (std::size_t o = 0; o < rays.size(); ++o) {
                if (o == p || o == q) continue;
                bool covers = true;
                for (std::size_t c : common)
                    if (!tight(rays[o], c)) {
                        covers = false;
                        break;
                    }
                if (covers) return false;
            }
            return true;
        };

        std::vector<std::vector<Integer>> next;
        for (std::size_t i = 0; i < rays.size(); ++i)
            if (vals[i] >= 0) next.push_back(rays[i]);
        for (std::size_t p = 0; p < rays.size(); ++p) {
            if (vals[p] <= 0) continue;
            for (std::size_t q = 0; q < rays.size(); ++q) {
                if (vals[q] >= 0 || !adjacent(p, q)) continue;
                std::vector<Integer> w(n);
                for (std::size_t c = 0; c < n; ++c)
                    w[c] = rays[q][c] * vals[p] - rays[p][c] * vals[q];
                detail::make_primitive(w);
                next.push_back(std::move(w));
            }
        }
        std::sort(next.begin(), next.end());
        next.erase(std::unique(next.begin(), next.end()), next.end());
        rays = std::move(next);
    }

    if (!lineal.empty()) throw std::logic_error("cone_facets: generators do not span");

    for (const auto& h : rays) {
        bool nonzero = false;
        std::vector<std::vector<Integer>> tight_gens;
        for (const auto& g : gens) {
            Integer v = idot(h, g);
            if (v < 0) throw std::logic_error("cone_facets: normal cuts a generator");
            if (v == 0) {
                std::vector<Integer> row(n);
                for (std::size_t c = 0; c < n; ++c) row[c] = g[c];
                tight_gens.push_back(std::move(row));
            } else {
                nonzero = true;
            }
        }
        if (!nonzero || detail::integer_matrix_rank(tight_gens) != n - 1)
            throw std::logic_error("cone_facets: ray is not a facet normal");
    }
    std::sort(rays.begin(), rays.end());
    return rays;
}

inline std::vector<std::vector<Integer>> cone_facets(const PointConfiguration& cfg) {
    return cone_facets_from_generators(cfg.points, cfg.n);
}

struct PolytopeContext {
    PointConfiguration cfg;
    std::vector<std::vector<Integer>> facets;
};

inline PolytopeContext make_polytope_context(const LinearFormSystem& sys) {
    PolytopeContext ctx;
    ctx.cfg = build_configuration(sys);
    ctx.facets = cone_facets(ctx.cfg);
    return ctx;
}

inline bool in_cone(const std::vector<std::vector<Integer>>& facets,
                    const std::vector<long long>& u) {
    for (const auto& h : facets)
        if (detail::idot(h, u) < 0) return false;
    return true;
}

inline bool interior_in_cone(const std::vector<std::vector<Integer>>& facets,
                             const std::vector<long long>& u) {
    for (const auto& h : facets)
        if (detail::idot(h, u) <= 0) return false;
    return true;
}

inline bool in_dilate(const std::vector<std::vector<Integer>>& facets,
                      const std::vector<long long>& u, long long z) {
    long long sum = 0;
    for (long long c : u) sum += c;
    return sum <= z && in_cone(facets, u);
}

inline bool interior_in_dilate(const std::vector<std::vector<Integer>>& facets,
                               const std::vector<long long>& u, long long z) {
    long long sum = 0;
    for (long long c : u) sum += c;
    return sum < z && interior_in_cone(facets, u);
}

namespace detail {

inline long long floor_div_ll(long long a, long long b) {
    long long q = a / b, r = a % b;
    return (r != 0 && (r < 0) != (b < 0)) ? q - 1 : q;
}
inline long long to_ll(long long v) { return v; }
inline long long to_ll(const Integer& v) { return v.convert_to<long long>(); }
inline long long floor_div_t(long long a, long long b) { return floor_div_ll(a, b); }
inline Integer floor_div_t(const Integer& a, const Integer& b) { return floor_div(a, b); }

// Depth-first enumeration of the interior lattice points of the z-dilate.
// Coordinate order is the r leading variables, then the K trailing block,
// then the middle block of size J.  Cuts, all exact:
//  - the box spanned by z times the generator coordinate extremes,
//  - positivity of the first r + J coordinates (their unit functionals are
//    valid on the cone, hence positive on its interior),
//  - once the leading prefix w is fixed, u_{r+J+k} >= 1 - D_k(w),
//  - a running budget against the strict coordinate-sum bound,
//  - per-facet pruning with static suffix maxima, valid because every
//    facet normal is componentwise nonnegative here.
template <class IntT>
class InteriorDilateEnum {
  public:
    InteriorDilateEnum(const PointConfiguration& cfg, const std::vector<std::vector<IntT>>& H,
                       long long z)
        : cfg_(cfg), H_(H), z_(z), n_(cfg.n) {
        for (const auto& h : H_)
            for (const auto& c : h)
                if (c < 0) throw std::logic_error("interior enumeration needs nonnegative normals");
        for (std::size_t s = 0; s < cfg_.r; ++s) perm_.push_back(s);
        for (std::size_t k = 0; k < cfg_.K; ++k) perm_.push_back(cfg_.r + cfg_.J + k);
        for (std::size_t j = 0; j < cfg_.J; ++j) perm_.push_back(cfg_.r + j);

        lo_.assign(n_, 0);
        hi_.assign(n_, 0);
        for (std::size_t i = 0; i < n_; ++i) {
            long long mn = 0, mx = 0;
            for (const auto& g : cfg_.points) {
                mn = std::min(mn, g[i]);
                mx = std::max(mx, g[i]);
            }
            lo_[i] = z * mn;
            hi_[i] = z * mx;
        }

        suffmax_.assign(n_ + 1, std::vector<IntT>(H_.size(), IntT(0)));
        for (std::size_t t = n_; t-- > 0;)
            for (std::size_t f = 0; f < H_.size(); ++f)
                suffmax_[t][f] = suffmax_[t + 1][f] + H_[f][perm_[t]] * IntT(hi_[perm_[t]]);

        // Conservative minima for depths not past the leading prefix; exact
        // minima are recomputed once the prefix is known.
        static_minrest_.assign(n_ + 1, 0);
        dyn_minrest_.assign(n_ + 1, 0);
        for (std::size_t t = n_; t-- > 0;) {
            std::size_t i = perm_[t];
            long long mn = i < cfg_.r + cfg_.J ? std::max(lo_[i], 1LL) : lo_[i];
            static_minrest_[t] = static_minrest_[t + 1] + mn;
        }
        val_.assign(n_, 0);
        partial_.assign(H_.size(), IntT(0));
        dmin_.assign(cfg_.K, 0);
    }

    std::vector<std::vector<long long>> run() {
        out_.clear();
        rec(0, 0);
        std::sort(out_.begin(), out_.end());
        return out_;
    }

  private:
    long long minrest(std::size_t t) const {
        return t <= cfg_.r ? static_minrest_[t] : dyn_minrest_[t];
    }

    void rec(std::size_t t, long long sum) {
        if (t == n_) {
            out_.push_back(val_);
            return;
        }
        if (t == cfg_.r) {
            // Leading prefix complete: exact lower bounds for the trailing
            // block, then refreshed suffix minima.
            for (std::size_t k = 0; k < cfg_.K; ++k) {
                long long dk = 0;
                for (std::size_t s = 0; s < cfg_.r; ++s) dk += dcoef_(k, s) * val_[s];
                dmin_[k] = std::max(lo_[cfg_.r + cfg_.J + k], 1 - dk);
            }
            dyn_minrest_[n_] = 0;
            for (std::size_t d = n_; d-- > cfg_.r;) {
                std::size_t i = perm_[d];
                long long mn = i < cfg_.r + cfg_.J ? std::max(lo_[i], 1LL)
                                                   : dmin_[i - cfg_.r - cfg_.J];
                dyn_minrest_[d] = dyn_minrest_[d + 1] + mn;
            }
        }

        const std::size_t i = perm_[t];
        long long vlo = i < cfg_.r + cfg_.J ? std::max(lo_[i], 1LL)
                                            : dmin_[i - cfg_.r - cfg_.J];
        long long vhi = std::min(hi_[i], z_ - 1 - sum - minrest(t + 1));
        for (std::size_t f = 0; f < H_.size(); ++f) {
            IntT slack = partial_[f] + suffmax_[t + 1][f];
            const IntT& hc = H_[f][i];
            if (hc == 0) {
                if (slack <= 0) return;
            } else {
                IntT bound = floor_div_t(-slack, hc) + 1;
                if (bound > IntT(vhi)) return;
                vlo = std::max(vlo, to_ll(bound));
            }
        }
        for (long long v = vlo; v <= vhi; ++v) {
            val_[i] = v;
            for (std::size_t f = 0; f < H_.size(); ++f) partial_[f] += H_[f][i] * IntT(v);
            rec(t + 1, sum + v);
            for (std::size_t f = 0; f < H_.size(); ++f) partial_[f] -= H_[f][i] * IntT(v);
        }
        val_[i] = 0;
    }

    long long dcoef_(std::size_t k, std::size_t s) const {
        // d_{ks} is recoverable from the generator block: a_{n+s} carries
        // -d_{ks} at coordinate r+J+k.
        return -cfg_.points[n_ + s][cfg_.r + cfg_.J + k];
    }

    const PointConfiguration& cfg_;
    const std::vector<std::vector<IntT>>& H_;
    long long z_;
    std::size_t n_;
    std::vector<std::size_t> perm_;
    std::vector<long long> lo_, hi_, val_, static_minrest_, dyn_minrest_, dmin_;
    std::vector<std::vector<IntT>> suffmax_;
    std::vector<IntT> partial_;
    std::vector<std::vector<long long>> out_;
};

}  // namespace detail

// All interior lattice points of the z-dilate, lexicographically sorted.
// Uses a native-integer search when the facet data provably fits, and exact
// big integers otherwise.
inline std::vector<std::vector<long long>> interior_lattice_points(const PolytopeContext& ctx,
                                                                   long long z) {
    if (z <= 0) return {};
    const auto& cfg = ctx.cfg;
    const long long huge = std::numeric_limits<long long>::max() / 4;
    bool narrow = true;
    std::vector<std::vector<long long>> Hll;
    for (const auto& h : ctx.facets) {
        std::vector<long long> row(cfg.n);
        Integer mag = 0;
        for (std::size_t i = 0; i < cfg.n; ++i) {
            if (h[i] > huge) {
                narrow = false;
                break;
            }
            row[i] = h[i].convert_to<long long>();
            long long mn = 0, mx = 0;
            for (const auto& g : cfg.points) {
                mn = std::min(mn, g[i]);
                mx = std::max(mx, g[i]);
            }
            mag += h[i] * Integer(z * std::max(std::abs(mn), std::abs(mx)));
        }
        if (!narrow || mag > huge) {
            narrow = false;
            break;
        }
        Hll.push_back(std::move(row));
    }
    if (narrow) {
        detail::InteriorDilateEnum<long long> e(cfg, Hll, z);
        return e.run();
    }
    detail::InteriorDilateEnum<Integer> e(cfg, ctx.facets, z);
    return e.run();
}

inline std::vector<long long> distinguished_point(const PointConfiguration& cfg) {
    std::vector<long long> u(cfg.n, 0);
    for (std::size_t i = 0; i < cfg.r + cfg.J; ++i) u[i] = 1;
    return u;
}

// Polytope route to integrality of the factorial ratios: the dilate by
// r + J has no interior lattice point.
inline bool integrality_via_polytope(const PolytopeContext& ctx) {
    return interior_lattice_points(ctx, static_cast<long long>(ctx.cfg.r + ctx.cfg.J)).empty();
}

struct MirrorPolytopeResult {
    bool holds = false;
    std::vector<std::vector<long long>> points;  // interior points found
    std::vector<long long> expected;             // the distinguished point
};

// Polytope route to integrality of ratios and mirror maps together: the
// dilate by r + J + 1 has the distinguished point as its unique interior
// lattice point.
inline MirrorPolytopeResult mirror_integrality_via_polytope(const PolytopeContext& ctx) {
    MirrorPolytopeResult out;
    out.expected = distinguished_point(ctx.cfg);
    out.points =
        interior_lattice_points(ctx, static_cast<long long>(ctx.cfg.r + ctx.cfg.J) + 1);
    out.holds = out.points.size() == 1 && out.points[0] == out.expected;
    return out;
}

// Minimal coordinate sum over interior lattice points of the cone.  The
// distinguished point caps it at r + J, so searching the next dilate is
// exhaustive.
inline long long min_interior_sum(const PolytopeContext& ctx) {
    auto pts = interior_lattice_points(ctx, static_cast<long long>(ctx.cfg.r + ctx.cfg.J) + 1);
    if (pts.empty())
        throw std::logic_error("min_interior_sum: the distinguished point must be interior");
    long long best = std::numeric_limits<long long>::max();
    for (const auto& u : pts) {
        long long s = 0;
        for (long long c : u) s += c;
        best = std::min(best, s);
    }
    return best;
}

// Dual-route consistency: that minimum equals r + J plus the minimum of the
// step function.
inline bool interior_sum_matches_step_minimum(const PolytopeContext& ctx, const PhiSummary& s) {
    return min_interior_sum(ctx) ==
           static_cast<long long>(ctx.cfg.r + ctx.cfg.J) + s.min_value;
}

// Independent interior test through the defining forms: u is interior to
// the cone iff some w >= 0 satisfies w_s < u_s, C_j(w) < u_{r+j}, and
// D_k(w) >= -u_{r+J+k}.  Resolved exactly by the half-open elimination
// machinery; returns such a w when one exists.
inline std::optional<RationalPoint> interior_witness(const LinearFormSystem& sys,
                                                     const std::vector<long long>& u) {
    const std::size_t r = sys.r();
    if (u.size() != r + sys.J() + sys.K())
        throw std::invalid_argument("interior_witness: point has wrong dimension");
    HalfOpenPolyhedron poly;
    poly.dim = r;
    for (std::size_t s = 0; s < r; ++s) {
        HalfOpenRow ge0;
        ge0.a.assign(r, 0);
        ge0.a[s] = 1;
        ge0.b = 0;
        ge0.strict = false;
        poly.rows.push_back(ge0);
        HalfOpenRow lt;
        lt.a.assign(r, 0);
        lt.a[s] = -1;
        lt.b = -Integer(u[s]);
        lt.strict = true;
        poly.rows.push_back(lt);
    }
    for (std::size_t j = 0; j < sys.J(); ++j) {
        HalfOpenRow row;
        row.a.assign(r, 0);
        for (std::size_t s = 0; s < r; ++s) row.a[s] = -Integer(sys.C()[j][s]);
        row.b = -Integer(u[r + j]);
        row.strict = true;
        poly.rows.push_back(row);
    }
    for (std::size_t k = 0; k < sys.K(); ++k) {
        HalfOpenRow row;
        row.a.assign(r, 0);
        for (std::size_t s = 0; s < r; ++s) row.a[s] = Integer(sys.D()[k][s]);
        row.b = -Integer(u[r + sys.J() + k]);
        row.strict = false;
        poly.rows.push_back(row);
    }
    return feasible_point(poly);
}

// Coordinate change aligning a configuration with the one of the
// row-swapped system: the first r coordinates are fixed, the middle block
// lands negated on the new trailing block and vice versa.  A signed
// permutation, hence unimodular.
inline std::vector<std::vector<long long>> swap_coordinate_map(std::size_t r, std::size_t J,
                                                               std::size_t K) {
    const std::size_t n = r + J + K;
    std::vector<std::vector<long long>> M(n, std::vector<long long>(n, 0));
    for (std::size_t s = 0; s < r; ++s) M[s][s] = 1;
    for (std::size_t k = 0; k < K; ++k) M[r + k][r + J + k] = -1;
    for (std::size_t j = 0; j < J; ++j) M[r + K + j][r + j] = -1;
    return M;
}

inline std::vector<long long> apply_linear_map(const std::vector<std::vector<long long>>& M,
                                               const std::vector<long long>& u) {
    std::vector<long long> v(M.size(), 0);
    for (std::size_t p = 0; p < M.size(); ++p)
        for (std::size_t q = 0; q < u.size(); ++q) v[p] += M[p][q] * u[q];
    return v;
}

// Inverse of a signed permutation matrix; rejects anything else.
inline std::vector<std::vector<long long>> signed_permutation_inverse(
    const std::vector<std::vector<long long>>& M) {
    const std::size_t n = M.size();
    std::vector<std::vector<long long>> inv(n, std::vector<long long>(n, 0));
    std::vector<bool> col_used(n, false);
    for (std::size_t p = 0; p < n; ++p) {
        std::size_t found = n;
        for (std::size_t q = 0; q < n; ++q) {
            if (M[p][q] == 0) continue;
            if (found != n || (M[p][q] != 1 && M[p][q] != -1) || col_used[q])
                throw std::invalid_argument("not a signed permutation matrix");
            found = q;
        }
        if (found == n) throw std::invalid_argument("not a signed permutation matrix");
        col_used[found] = true;
        inv[found][p] = M[p][found];
    }
    return inv;
}

inline Integer matrix_determinant(const std::vector<std::vector<long long>>& M) {
    std::vector<std::vector<Integer>> I(M.size());
    for (std::size_t p = 0; p < M.size(); ++p) I[p].assign(M[p].begin(), M[p].end());
    return detail::integer_matrix_determinant(std::move(I));
}

// When the numerator family is at least as large as the denominator family,
// the ratios can never all be integers; the cell minimizer produces the
// disproving point.
struct RowCountObstruction {
    bool applicable = false;             // K <= J
    bool nonintegrality_confirmed = false;
    long long min_value = 0;
    RationalPoint witness;
};

inline RowCountObstruction row_count_obstruction(const LinearFormSystem& sys,
                                                 const PhiSummary* precomputed = nullptr) {
    RowCountObstruction out;
    out.applicable = sys.K() <= sys.J();
    if (!out.applicable) return out;
    PhiSummary s = precomputed ? *precomputed : min_phi(sys);
    out.min_value = s.min_value;
    if (s.min_value < 0) {
        out.nonintegrality_confirmed = true;
        out.witness = s.witness_point;
    }
    return out;
}

}  // namespace ratiocert
