#pragma once

#include <algorithm>
#include <cassert>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "ratiocert/linear_system.hpp"
#include "ratiocert/rational.hpp"

namespace ratiocert {

// Phi(x) = sum_j floor(C_j(x)) - sum_k floor(D_k(x)) is constant on the cells
// of the arrangement cut out of [0,1)^r by the hyperplanes C_j(x) = integer
// and D_k(x) = integer.  A cell is indexed by its floor signature
// (m_j = floor C_j, n_k = floor D_k), where Phi equals sum m - sum n.  E(m)
// is integral for all m iff the minimum of Phi over [0,1)^r is >= 0, and the
// mirror maps are integral iff Phi >= 1 on the subset where some form
// reaches 1 (every cell except the all-zero signature).  Both minima are
// exact: cells are enumerated in increasing value order and tested for
// feasibility by Fourier-Motzkin elimination over the rationals.

struct CellSignature {
    std::vector<long long> m;  // floor(C_j), 0 <= m_j <= C_j(1,...,1) - 1
    std::vector<long long> n;  // floor(D_k), 0 <= n_k <= D_k(1,...,1) - 1

    long long value() const {
        long long v = 0;
        for (long long x : m) v += x;
        for (long long x : n) v -= x;
        return v;
    }
    bool is_zero() const {
        return std::all_of(m.begin(), m.end(), [](long long x) { return x == 0; }) &&
               std::all_of(n.begin(), n.end(), [](long long x) { return x == 0; });
    }
    friend bool operator==(const CellSignature& a, const CellSignature& b) {
        return a.m == b.m && a.n == b.n;
    }
};

// One inequality a.x >= b (weak) or a.x > b (strict), integer data.
struct HalfOpenRow {
    std::vector<Integer> a;
    Integer b;
    bool strict = false;
};

struct HalfOpenPolyhedron {
    std::size_t dim = 0;
    std::vector<HalfOpenRow> rows;
};

namespace detail {

// Keeps only the strongest bound per primitive direction.  Directions are
// canonicalized by dividing out the gcd of the coefficients; the bound is
// carried as a rational and re-integerized afterwards.
inline void dedupe_rows(std::vector<HalfOpenRow>& rows) {
    struct Bound {
        Rational b;
        bool strict;
    };
    std::map<std::vector<Integer>, Bound> best;
    for (auto& row : rows) {
        Integer g = 0;
        for (const Integer& c : row.a) g = boost::multiprecision::gcd(g, c);
        assert(g != 0 && "dedupe_rows expects nonzero directions");
        std::vector<Integer> dir(row.a.size());
        for (std::size_t i = 0; i < dir.size(); ++i) dir[i] = row.a[i] / g;
        Rational bound(row.b, g);
        auto it = best.find(dir);
        if (it == best.end()) {
            best.emplace(std::move(dir), Bound{bound, row.strict});
        } else if (bound > it->second.b ||
                   (bound == it->second.b && row.strict && !it->second.strict)) {
            it->second = Bound{bound, row.strict};
        }
    }
    rows.clear();
    for (auto& [dir, bd] : best) {
        HalfOpenRow row;
        Integer den = bd.b.den();
        row.a.resize(dir.size());
        for (std::size_t i = 0; i < dir.size(); ++i) row.a[i] = dir[i] * den;
        row.b = bd.b.num();
        row.strict = bd.strict;
        rows.push_back(std::move(row));
    }
}

}  // namespace detail

// Fourier-Motzkin feasibility over Q with strict/weak bookkeeping.  Returns
// a rational interior witness when the system is feasible: back-substitution
// picks, on each 1-D interval, the lower endpoint when weakly attained and
// the midpoint otherwise, so witnesses are canonical.
inline std::optional<RationalPoint> feasible_point(const HalfOpenPolyhedron& poly) {
    const std::size_t dim = poly.dim;

    // stages[t] holds the system with variables t..dim-1 still live.
    std::vector<std::vector<HalfOpenRow>> stages(dim + 1);

    auto settle_constant_rows = [](std::vector<HalfOpenRow>& rows) -> bool {
        std::vector<HalfOpenRow> kept;
        for (auto& row : rows) {
            bool allzero = std::all_of(row.a.begin(), row.a.end(),
                                       [](const Integer& c) { return c == 0; });
            if (!allzero) {
                kept.push_back(std::move(row));
            } else if (row.strict ? !(Integer(0) > row.b) : !(Integer(0) >= row.b)) {
                return false;  // 0 >= b (or >) violated
            }
        }
        rows = std::move(kept);
        return true;
    };

    stages[0] = poly.rows;
    if (!settle_constant_rows(stages[0])) return std::nullopt;

    for (std::size_t t = 0; t < dim; ++t) {
        detail::dedupe_rows(stages[t]);
        std::vector<HalfOpenRow> next;
        std::vector<const HalfOpenRow*> lower, upper;
        for (const auto& row : stages[t]) {
            if (row.a[t] > 0) lower.push_back(&row);
            else if (row.a[t] < 0) upper.push_back(&row);
            else next.push_back(row);
        }
        for (const auto* lo : lower) {
            for (const auto* up : upper) {
                // (-up.a[t]) * lo + lo.a[t] * up cancels variable t; both
                // multipliers are positive so the direction is preserved.
                Integer mlo = -up->a[t], mup = lo->a[t];
                HalfOpenRow row;
                row.a.resize(dim);
                for (std::size_t s = 0; s < dim; ++s)
                    row.a[s] = mlo * lo->a[s] + mup * up->a[s];
                row.b = mlo * lo->b + mup * up->b;
                row.strict = lo->strict || up->strict;
                next.push_back(std::move(row));
            }
        }
        if (!settle_constant_rows(next)) return std::nullopt;
        stages[t + 1] = std::move(next);
    }

    // Feasible; back-substitute from the last variable down.
    RationalPoint x(dim, Rational(0));
    for (std::size_t ti = dim; ti-- > 0;) {
        std::optional<Rational> lo, hi;
        bool lo_strict = false, hi_strict = false;
        for (const auto& row : stages[ti]) {
            if (row.a[ti] == 0) continue;
            Rational rest(row.b);
            for (std::size_t s = ti + 1; s < dim; ++s)
                rest -= Rational(row.a[s]) * x[s];
            Rational bound = rest / Rational(row.a[ti]);
            if (row.a[ti] > 0) {  // x_t >= bound
                if (!lo || bound > *lo) { lo = bound; lo_strict = row.strict; }
                else if (bound == *lo) lo_strict = lo_strict || row.strict;
            } else {  // x_t <= bound
                if (!hi || bound < *hi) { hi = bound; hi_strict = row.strict; }
                else if (bound == *hi) hi_strict = hi_strict || row.strict;
            }
        }
        if (!lo || !hi)
            throw std::logic_error("feasible_point: variable unbounded; caller must box it");
        assert((*lo < *hi || (*lo == *hi && !lo_strict && !hi_strict)) &&
               "projection promised a nonempty interval");
        x[ti] = lo_strict ? (*lo + *hi) / Rational(2) : *lo;
    }
    return x;
}

// The half-open cell { x in [0,1)^r : m_j <= C_j(x) < m_j+1, n_k <= D_k(x) < n_k+1 }.
inline HalfOpenPolyhedron cell_polyhedron(const LinearFormSystem& sys,
                                          const CellSignature& sig) {
    HalfOpenPolyhedron poly;
    poly.dim = sys.r();
    auto add_band = [&poly](const std::vector<long long>& row, long long lo) {
        HalfOpenRow ge, lt;
        ge.a.assign(row.begin(), row.end());
        ge.b = lo;
        ge.strict = false;
        lt.a.resize(row.size());
        for (std::size_t s = 0; s < row.size(); ++s) lt.a[s] = -row[s];
        lt.b = -(lo + 1);
        lt.strict = true;
        poly.rows.push_back(std::move(ge));
        poly.rows.push_back(std::move(lt));
    };
    for (std::size_t j = 0; j < sys.J(); ++j) add_band(sys.C()[j], sig.m[j]);
    for (std::size_t k = 0; k < sys.K(); ++k) add_band(sys.D()[k], sig.n[k]);
    for (std::size_t s = 0; s < sys.r(); ++s) {
        std::vector<long long> unit(sys.r(), 0);
        unit[s] = 1;
        add_band(unit, 0);  // 0 <= x_s < 1
    }
    return poly;
}

inline std::optional<RationalPoint> cell_feasible(const LinearFormSystem& sys,
                                                  const CellSignature& sig) {
    return feasible_point(cell_polyhedron(sys, sig));
}

// All signatures within the a-priori bounds, sorted by value ascending (ties
// lex), so a linear scan meets the minimum first.
inline std::vector<CellSignature> enumerate_signatures(const LinearFormSystem& sys) {
    std::vector<long long> mbound(sys.J()), nbound(sys.K());
    for (std::size_t j = 0; j < sys.J(); ++j) mbound[j] = sys.row_sum_C(j) - 1;
    for (std::size_t k = 0; k < sys.K(); ++k) nbound[k] = sys.row_sum_D(k) - 1;

    std::vector<CellSignature> sigs;
    CellSignature cur;
    cur.m.assign(sys.J(), 0);
    cur.n.assign(sys.K(), 0);
    auto rec_n = [&](auto&& self, std::size_t k) -> void {
        if (k == sys.K()) { sigs.push_back(cur); return; }
        for (long long v = 0; v <= nbound[k]; ++v) { cur.n[k] = v; self(self, k + 1); }
    };
    auto rec_m = [&](auto&& self, std::size_t j) -> void {
        if (j == sys.J()) { rec_n(rec_n, 0); return; }
        for (long long v = 0; v <= mbound[j]; ++v) { cur.m[j] = v; self(self, j + 1); }
    };
    rec_m(rec_m, 0);

    std::sort(sigs.begin(), sigs.end(), [](const CellSignature& a, const CellSignature& b) {
        long long va = a.value(), vb = b.value();
        if (va != vb) return va < vb;
        if (a.m != b.m) return a.m < b.m;
        return a.n < b.n;
    });
    return sigs;
}

struct PhiSummary {
    long long min_value = 0;
    CellSignature witness_cell;
    RationalPoint witness_point;
    // Minimum over the cells where some form reaches 1 (all except the
    // all-zero signature).  Disengaged only if no such cell is feasible,
    // which cannot happen for a validated system.
    std::optional<long long> min_on_D;
    CellSignature witness_cell_on_D;
    RationalPoint witness_point_on_D;
    std::size_t cells_considered = 0;
};

inline PhiSummary min_phi(const LinearFormSystem& sys) {
    PhiSummary out;
    bool have_min = false, have_min_d = false;
    for (const CellSignature& sig : enumerate_signatures(sys)) {
        if (have_min && have_min_d) break;
        if (have_min && sig.is_zero()) continue;  // only min_on_D still open
        ++out.cells_considered;
        auto witness = cell_feasible(sys, sig);
        if (!witness) continue;
        assert(phi(sys, *witness) == sig.value() && "witness must realize the cell value");
        if (!have_min) {
            have_min = true;
            out.min_value = sig.value();
            out.witness_cell = sig;
            out.witness_point = *witness;
        }
        if (!have_min_d && !sig.is_zero()) {
            have_min_d = true;
            out.min_on_D = sig.value();
            out.witness_cell_on_D = sig;
            out.witness_point_on_D = *witness;
        }
    }
    assert(have_min && "the all-zero cell contains x = 0");
    return out;
}

inline bool landau_holds(const PhiSummary& s) { return s.min_value >= 0; }
inline bool landau_holds(const LinearFormSystem& sys) { return landau_holds(min_phi(sys)); }

enum class DelaygueStatus { holds, fails, landau_precondition_failed };

// The mirror-map criterion presupposes that E itself is integral.
inline DelaygueStatus delaygue_holds(const PhiSummary& s) {
    if (!landau_holds(s)) return DelaygueStatus::landau_precondition_failed;
    if (!s.min_on_D) return DelaygueStatus::holds;  // vacuous; unreachable for valid systems
    return *s.min_on_D >= 1 ? DelaygueStatus::holds : DelaygueStatus::fails;
}
inline DelaygueStatus delaygue_holds(const LinearFormSystem& sys) {
    return delaygue_holds(min_phi(sys));
}

// Brute-force lower-bound oracle: min of Phi over the grid (a_1/Q,...,a_r/Q),
// 0 <= a_s < Q.  Since cells are half-open and grids only refine, this is
// always >= the true minimum, with equality when Q clears the witness
// denominators.
inline long long grid_oracle_min_phi(const LinearFormSystem& sys, long long Q) {
    if (Q <= 0) throw std::invalid_argument("grid_oracle_min_phi: Q must be positive");
    long long best = 0;
    bool first = true;
    RationalPoint x(sys.r());
    auto rec = [&](auto&& self, std::size_t s) -> void {
        if (s == sys.r()) {
            long long v = phi(sys, x);
            if (first || v < best) { best = v; first = false; }
            return;
        }
        for (long long a = 0; a < Q; ++a) {
            x[s] = Rational(Integer(a), Integer(Q));
            self(self, s + 1);
        }
    };
    rec(rec, 0);
    return best;
}

}  // namespace ratiocert
