#pragma once

#include <algorithm>
#include <cstdlib>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "ratiocert/grading.hpp"
#include "ratiocert/linear_system.hpp"
#include "ratiocert/polytope.hpp"
#include "ratiocert/rational.hpp"
#include "ratiocert/series.hpp"

namespace ratiocert {

struct DivisionByZeroError : std::domain_error {
    DivisionByZeroError() : std::domain_error("bracket: zero factor in denominator") {}
};

// One-variable bracket: [z]_0 = 1; for k > 0 the reciprocal rising product
// 1/((z+1)...(z+k)), rejecting zero factors; for k < 0 the falling product
// z(z-1)...(z+k+1).
inline Rational bracket(long long z, long long k) {
    if (k == 0) return Rational(1);
    if (k > 0) {
        Integer den = 1;
        for (long long t = 1; t <= k; ++t) {
            if (z + t == 0) throw DivisionByZeroError();
            den *= Integer(z + t);
        }
        return Rational(Integer(1), den);
    }
    Integer num = 1;
    for (long long t = 0; t < -k; ++t) num *= Integer(z - t);
    return Rational(num);
}

// Lattice relation attached to an integer direction p: the coefficient
// vector (-p | -C(p) | D(p) | p) over the n + r generators, which pairs to
// zero with the configuration.
inline std::vector<long long> lattice_element(const LinearFormSystem& sys,
                                              const std::vector<long long>& p) {
    if (p.size() != sys.r()) throw std::invalid_argument("lattice_element: wrong arity");
    std::vector<long long> l;
    l.reserve(sys.r() + sys.J() + sys.K() + sys.r());
    for (std::size_t s = 0; s < sys.r(); ++s) l.push_back(-p[s]);
    for (std::size_t j = 0; j < sys.J(); ++j) l.push_back(-sys.eval_C(j, p));
    for (std::size_t k = 0; k < sys.K(); ++k) l.push_back(sys.eval_D(k, p));
    for (std::size_t s = 0; s < sys.r(); ++s) l.push_back(p[s]);
    return l;
}

// Base exponent of the solution family: -1 on the first r + J variables.
inline std::vector<long long> base_exponent(const LinearFormSystem& sys) {
    std::vector<long long> v(sys.r() + sys.J() + sys.K() + sys.r(), 0);
    for (std::size_t i = 0; i < sys.r() + sys.J(); ++i) v[i] = -1;
    return v;
}

// Its degree under the configuration: -1 on the first r + J coordinates.
inline std::vector<long long> base_degree(const LinearFormSystem& sys) {
    std::vector<long long> b(sys.r() + sys.J() + sys.K(), 0);
    for (std::size_t i = 0; i < sys.r() + sys.J(); ++i) b[i] = -1;
    return b;
}

// Formal series in the N torus variables, keyed by full integer exponent
// vectors.  beta records the common degree the stored exponents are meant
// to have; euler_check verifies it.
struct HGSeries {
    std::size_t nvars = 0;
    std::vector<long long> beta;
    std::map<std::vector<long long>, Rational> terms;

    Rational get(const std::vector<long long>& w) const {
        auto it = terms.find(w);
        return it == terms.end() ? Rational(0) : it->second;
    }
    void set(const std::vector<long long>& w, const Rational& c) {
        if (w.size() != nvars) throw std::invalid_argument("HGSeries: exponent arity mismatch");
        if (c.is_zero()) terms.erase(w);
        else terms[w] = c;
    }
};

namespace detail {

template <class Fn>
void for_each_box(const std::vector<long long>& lo, const std::vector<long long>& hi, Fn&& fn) {
    std::vector<long long> p = lo;
    while (true) {
        fn(p);
        std::size_t i = 0;
        while (i < p.size() && p[i] == hi[i]) p[i++] = lo[i];
        if (i == p.size()) return;
        ++p[i];
    }
}

inline int sign_pow(long long e) { return (e % 2 + 2) % 2 == 0 ? 1 : -1; }

// Base coefficient at direction p: sign (-1)^{sum p + sum C(p)} times
// prod C_j(p)! / prod D_k(p)!.
inline Rational hg_base_coefficient(const LinearFormSystem& sys,
                                    const std::vector<long long>& p) {
    long long e = 0;
    for (long long v : p) e += v;
    Integer num = 1, den = 1;
    for (std::size_t j = 0; j < sys.J(); ++j) {
        long long v = sys.eval_C(j, p);
        e += v;
        num *= factorial(static_cast<std::size_t>(v));
    }
    for (std::size_t k = 0; k < sys.K(); ++k)
        den *= factorial(static_cast<std::size_t>(sys.eval_D(k, p)));
    Rational c(num, den);
    return sign_pow(e) == 1 ? c : -c;
}

// Componentwise falling factorial prod_i w_i (w_i - 1) ... (w_i - m_i + 1).
inline Integer falling_factorial(const std::vector<long long>& w,
                                 const std::vector<long long>& m) {
    Integer acc = 1;
    for (std::size_t i = 0; i < w.size(); ++i)
        for (long long t = 0; t < m[i]; ++t) acc *= Integer(w[i] - t);
    return acc;
}

}  // namespace detail

// Torus-variable expansion of the ratio generating function, truncated to
// directions p in the box [0, P]^r.
inline HGSeries build_F(const LinearFormSystem& sys, long long P) {
    if (P < 0) throw std::invalid_argument("build_F: negative box bound");
    HGSeries out;
    out.nvars = sys.r() + sys.J() + sys.K() + sys.r();
    out.beta = base_degree(sys);
    const std::vector<long long> v0 = base_exponent(sys);
    detail::for_each_box(std::vector<long long>(sys.r(), 0),
                         std::vector<long long>(sys.r(), P),
                         [&](const std::vector<long long>& p) {
                             std::vector<long long> w = v0;
                             std::vector<long long> l = lattice_element(sys, p);
                             for (std::size_t i = 0; i < w.size(); ++i) w[i] += l[i];
                             out.set(w, detail::hg_base_coefficient(sys, p));
                         });
    return out;
}

// Companion series for the variable paired with a middle-block generator:
// i indexes the basis variables r..r+J+K-1; the coefficient carries the
// harmonic weight of the matching form value and an overall sign flip,
// vanishing where the form does.
inline HGSeries build_G(const LinearFormSystem& sys, std::size_t i, long long P) {
    const std::size_t r = sys.r(), J = sys.J(), K = sys.K();
    if (i < r || i >= r + J + K) throw std::out_of_range("build_G: variable index out of range");
    if (P < 0) throw std::invalid_argument("build_G: negative box bound");
    HGSeries out;
    out.nvars = r + J + K + r;
    out.beta = base_degree(sys);
    const std::vector<long long> v0 = base_exponent(sys);
    detail::for_each_box(
        std::vector<long long>(r, 0), std::vector<long long>(r, P),
        [&](const std::vector<long long>& p) {
            long long v = i < r + J ? sys.eval_C(i - r, p) : sys.eval_D(i - r - J, p);
            if (v == 0) return;
            std::vector<long long> w = v0;
            std::vector<long long> l = lattice_element(sys, p);
            for (std::size_t c = 0; c < w.size(); ++c) w[c] += l[c];
            out.set(w, -harmonic(static_cast<std::size_t>(v)) *
                           detail::hg_base_coefficient(sys, p));
        });
    return out;
}

struct EulerReport {
    bool ok = true;
    std::size_t terms_checked = 0;
    std::optional<std::vector<long long>> failing_exponent;
};

// Degree homogeneity: every stored exponent must pair with the generators
// to the series' recorded degree.
inline EulerReport euler_check(const LinearFormSystem& sys, const HGSeries& s) {
    PointConfiguration cfg = build_configuration(sys);
    EulerReport rep;
    for (const auto& [w, c] : s.terms) {
        ++rep.terms_checked;
        for (std::size_t i = 0; i < cfg.n; ++i) {
            long long acc = 0;
            for (std::size_t q = 0; q < cfg.points.size(); ++q) acc += w[q] * cfg.points[q][i];
            if (acc != s.beta[i]) {
                rep.ok = false;
                if (!rep.failing_exponent) rep.failing_exponent = w;
            }
        }
    }
    return rep;
}

enum class BoxClass { inside, negative, outside };

inline BoxClass classify_direction(const std::vector<long long>& p, long long P) {
    for (long long v : p)
        if (v < 0) return BoxClass::negative;
    for (long long v : p)
        if (v > P) return BoxClass::outside;
    return BoxClass::inside;
}

struct RecurrenceReport {
    bool ok = true;
    std::size_t checked = 0;   // positions compared exactly
    std::size_t skipped = 0;   // positions with a truncated endpoint
    std::optional<std::vector<long long>> failing_direction;
};

namespace detail {

// Positions touching the stored box from either side of the two-term
// relation in direction q.
inline std::set<std::vector<long long>> relation_positions(std::size_t r, long long P,
                                                           const std::vector<long long>& q) {
    std::set<std::vector<long long>> out;
    for_each_box(std::vector<long long>(r, 0), std::vector<long long>(r, P),
                 [&](const std::vector<long long>& p) {
                     out.insert(p);
                     std::vector<long long> shifted = p;
                     for (std::size_t s = 0; s < r; ++s) shifted[s] += q[s];
                     out.insert(shifted);
                 });
    return out;
}

}  // namespace detail

// Two-term contiguity relation in direction q, checked across the stored
// box: with l the lattice relation of q split into positive and negative
// parts, the coefficient at p scaled by the falling factorial of l+ must
// equal the coefficient at p - q scaled by the falling factorial of l-.
// Positions whose endpoints fall beyond the truncation are skipped and
// counted; endpoints with a negative direction have true coefficient zero.
inline RecurrenceReport box_check(const LinearFormSystem& sys, const HGSeries& s,
                                  const std::vector<long long>& q, long long P) {
    const std::size_t r = sys.r();
    if (q.size() != r) throw std::invalid_argument("box_check: wrong direction arity");
    const std::vector<long long> v0 = base_exponent(sys);
    const std::vector<long long> l = lattice_element(sys, q);
    std::vector<long long> lplus(l.size()), lminus(l.size());
    for (std::size_t i = 0; i < l.size(); ++i) {
        lplus[i] = std::max(l[i], 0LL);
        lminus[i] = std::max(-l[i], 0LL);
    }

    auto exponent_at = [&](const std::vector<long long>& p) {
        std::vector<long long> w = v0;
        std::vector<long long> le = lattice_element(sys, p);
        for (std::size_t i = 0; i < w.size(); ++i) w[i] += le[i];
        return w;
    };

    RecurrenceReport rep;
    for (const auto& p : detail::relation_positions(r, P, q)) {
        std::vector<long long> pm = p;
        for (std::size_t s = 0; s < r; ++s) pm[s] -= q[s];
        BoxClass cp = classify_direction(p, P), cm = classify_direction(pm, P);
        if (cp == BoxClass::outside || cm == BoxClass::outside) {
            ++rep.skipped;
            continue;
        }
        std::vector<long long> wp = exponent_at(p), wm = exponent_at(pm);
        Rational cplus = cp == BoxClass::negative ? Rational(0) : s.get(wp);
        Rational cminus = cm == BoxClass::negative ? Rational(0) : s.get(wm);
        Rational lhs = cplus * Rational(detail::falling_factorial(wp, lplus));
        Rational rhs = cminus * Rational(detail::falling_factorial(wm, lminus));
        ++rep.checked;
        if (lhs != rhs) {
            rep.ok = false;
            if (!rep.failing_direction) rep.failing_direction = p;
        }
    }
    return rep;
}

namespace detail {

// Value P log(x_i) + Q under iterated coordinate derivatives: each step
// shifts every touched term by exactly one unit in the derived coordinate,
// the logarithmic term dropping a shifted copy of its multiplier.
struct LogPair {
    std::map<std::vector<long long>, Rational> logpart, plain;
};

inline std::map<std::vector<long long>, Rational> derive_terms(
    const std::map<std::vector<long long>, Rational>& terms, std::size_t m) {
    std::map<std::vector<long long>, Rational> out;
    for (const auto& [w, c] : terms) {
        if (w[m] == 0) continue;
        std::vector<long long> u = w;
        --u[m];
        Rational add = c * Rational(w[m]);
        auto [it, fresh] = out.try_emplace(u, add);
        if (!fresh) {
            it->second += add;
            if (it->second.is_zero()) out.erase(it);
        }
    }
    return out;
}

inline LogPair derive_logpair(const LogPair& v, std::size_t m, std::size_t logindex) {
    LogPair out;
    out.logpart = derive_terms(v.logpart, m);
    out.plain = derive_terms(v.plain, m);
    if (m == logindex) {
        for (const auto& [w, c] : v.logpart) {
            std::vector<long long> u = w;
            --u[m];
            auto [it, fresh] = out.plain.try_emplace(u, c);
            if (!fresh) {
                it->second += c;
                if (it->second.is_zero()) out.plain.erase(it);
            }
        }
    }
    return out;
}

inline Rational map_get(const std::map<std::vector<long long>, Rational>& m,
                        const std::vector<long long>& w) {
    auto it = m.find(w);
    return it == m.end() ? Rational(0) : it->second;
}

}  // namespace detail

// The pair (F, G_i) represents F log(x_i) + G_i.  Applying the two halves
// of the direction-q operator must agree wherever both contributing
// positions are inside the truncation (or have true coefficient zero).
inline RecurrenceReport quasi_solution_check(const LinearFormSystem& sys, std::size_t i,
                                             const HGSeries& F, const HGSeries& G,
                                             const std::vector<long long>& q, long long P) {
    const std::size_t r = sys.r();
    if (q.size() != r) throw std::invalid_argument("quasi_solution_check: wrong arity");
    if (i < r || i >= r + sys.J() + sys.K())
        throw std::out_of_range("quasi_solution_check: variable index out of range");
    const std::vector<long long> v0 = base_exponent(sys);
    const std::vector<long long> l = lattice_element(sys, q);
    std::vector<long long> lplus(l.size()), lminus(l.size());
    for (std::size_t c = 0; c < l.size(); ++c) {
        lplus[c] = std::max(l[c], 0LL);
        lminus[c] = std::max(-l[c], 0LL);
    }

    detail::LogPair plus{F.terms, G.terms}, minus{F.terms, G.terms};
    for (std::size_t c = 0; c < lplus.size(); ++c)
        for (long long t = 0; t < lplus[c]; ++t) plus = detail::derive_logpair(plus, c, i);
    for (std::size_t c = 0; c < lminus.size(); ++c)
        for (long long t = 0; t < lminus[c]; ++t) minus = detail::derive_logpair(minus, c, i);

    auto exponent_at = [&](const std::vector<long long>& p) {
        std::vector<long long> w = v0;
        std::vector<long long> le = lattice_element(sys, p);
        for (std::size_t c = 0; c < w.size(); ++c) w[c] += le[c];
        return w;
    };

    RecurrenceReport rep;
    for (const auto& p : detail::relation_positions(r, P, q)) {
        std::vector<long long> pm = p;
        for (std::size_t s = 0; s < r; ++s) pm[s] -= q[s];
        BoxClass cp = classify_direction(p, P), cm = classify_direction(pm, P);
        if (cp == BoxClass::outside || cm == BoxClass::outside) {
            ++rep.skipped;
            continue;
        }
        std::vector<long long> u = exponent_at(p);
        for (std::size_t c = 0; c < u.size(); ++c) u[c] -= lplus[c];
        ++rep.checked;
        if (detail::map_get(plus.logpart, u) != detail::map_get(minus.logpart, u) ||
            detail::map_get(plus.plain, u) != detail::map_get(minus.plain, u)) {
            rep.ok = false;
            if (!rep.failing_direction) rep.failing_direction = p;
        }
    }
    return rep;
}

inline std::vector<std::size_t> negative_support(const std::vector<long long>& w) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < w.size(); ++i)
        if (w[i] < 0) out.push_back(i);
    return out;
}

namespace detail {
inline std::vector<std::size_t> negative_support_omit(const std::vector<long long>& w,
                                                      std::optional<std::size_t> omit) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < w.size(); ++i)
        if (w[i] < 0 && (!omit || i != *omit)) out.push_back(i);
    return out;
}
inline bool proper_subset(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
    return a.size() < b.size() && std::includes(b.begin(), b.end(), a.begin(), a.end());
}
}  // namespace detail

struct SupportScan {
    bool minimal = true;
    std::vector<std::vector<long long>> violations;  // directions p
};

// Scans directions p in [-P, P]^r for translates whose negative support,
// optionally ignoring one coordinate, properly shrinks below the base
// exponent's.  Minimality of the base support is what keeps the solution
// family logarithm-free at the omitted variable.
inline SupportScan minimal_negative_support_scan(const LinearFormSystem& sys, long long P,
                                                 std::optional<std::size_t> omit = std::nullopt) {
    const std::vector<long long> v0 = base_exponent(sys);
    if (omit && *omit >= v0.size())
        throw std::out_of_range("minimal_negative_support_scan: omitted index out of range");
    const std::vector<std::size_t> base = detail::negative_support_omit(v0, omit);
    SupportScan scan;
    detail::for_each_box(std::vector<long long>(sys.r(), -P), std::vector<long long>(sys.r(), P),
                         [&](const std::vector<long long>& p) {
                             std::vector<long long> w = v0;
                             std::vector<long long> l = lattice_element(sys, p);
                             for (std::size_t i = 0; i < w.size(); ++i) w[i] += l[i];
                             if (detail::proper_subset(
                                     detail::negative_support_omit(w, omit), base)) {
                                 scan.minimal = false;
                                 scan.violations.push_back(p);
                             }
                         });
    return scan;
}

// Directions whose translate keeps exactly the base negative support,
// optionally ignoring one coordinate; sorted for set comparison.
inline std::vector<std::vector<long long>> support_preserving_translates(
    const LinearFormSystem& sys, long long P, std::optional<std::size_t> omit = std::nullopt) {
    const std::vector<long long> v0 = base_exponent(sys);
    if (omit && *omit >= v0.size())
        throw std::out_of_range("support_preserving_translates: omitted index out of range");
    const std::vector<std::size_t> base = detail::negative_support_omit(v0, omit);
    std::vector<std::vector<long long>> out;
    detail::for_each_box(std::vector<long long>(sys.r(), -P), std::vector<long long>(sys.r(), P),
                         [&](const std::vector<long long>& p) {
                             std::vector<long long> w = v0;
                             std::vector<long long> l = lattice_element(sys, p);
                             for (std::size_t i = 0; i < w.size(); ++i) w[i] += l[i];
                             if (detail::negative_support_omit(w, omit) == base)
                                 out.push_back(p);
                         });
    return out;
}

// Torus specialization onto the r-variable series ring: the first r + J
// variables go to 1, the trailing-block basis variables to -1, and the
// column variables to -t_s.  On the built series this reproduces the
// coefficient series exactly: F specializes to the ratio series and G to
// the negated harmonic-weighted series.
inline TruncatedSeries specialize(const LinearFormSystem& sys, const HGSeries& s,
                                  long long cap) {
    const std::size_t r = sys.r(), J = sys.J(), K = sys.K();
    const std::size_t n = r + J + K;
    TruncatedSeries out(r, cap);
    for (const auto& [w, c] : s.terms) {
        std::vector<long long> m(w.begin() + static_cast<long>(n), w.end());
        long long total = 0;
        for (long long v : m) {
            if (v < 0) throw std::invalid_argument("specialize: negative column exponent");
            total += v;
        }
        if (total > cap) continue;
        long long parity = total;
        for (std::size_t i = r + J; i < n; ++i) parity += w[i];
        out.add_to(m, detail::sign_pow(parity) == 1 ? c : -c);
    }
    return out;
}

// Canonical text keyed by the column-variable block: one line per term,
// graded-lex in p, coefficient always as num/den.
inline std::string serialize_torus(const LinearFormSystem& sys, const HGSeries& s) {
    const std::size_t n = sys.r() + sys.J() + sys.K();
    std::map<std::vector<long long>, Rational, GradedLexLess> by_p;
    for (const auto& [w, c] : s.terms) {
        std::vector<long long> p(w.begin() + static_cast<long>(n), w.end());
        by_p[p] = c;
    }
    std::ostringstream os;
    for (const auto& [p, c] : by_p) {
        for (std::size_t i = 0; i < p.size(); ++i) os << p[i] << ' ';
        os << ": " << c.str() << '\n';
    }
    return os.str();
}

}  // namespace ratiocert
