#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ratiocert/cells.hpp"
#include "ratiocert/grading.hpp"
#include "ratiocert/linear_system.hpp"
#include "ratiocert/rational.hpp"

namespace ratiocert {

struct ZeroConstantTermError : std::domain_error {
    ZeroConstantTermError() : std::domain_error("divide: divisor has zero constant term") {}
};
struct NonzeroConstantTermError : std::domain_error {
    NonzeroConstantTermError()
        : std::domain_error("exp_series: argument has nonzero constant term") {}
};
struct LandauPreconditionError : std::domain_error {
    LandauPreconditionError()
        : std::domain_error("mirror_map: factorial ratio is not integral (Landau fails)") {}
};

// Multivariate power series truncated at a total-degree cap.  Coefficients
// are exact rationals in a sparse graded-lex map; absent exponents are zero
// and zeros are never stored, so equality is map equality.
class TruncatedSeries {
  public:
    using TermMap = std::map<std::vector<long long>, Rational, GradedLexLess>;

    TruncatedSeries(std::size_t vars, long long cap) : vars_(vars), cap_(cap) {}

    static TruncatedSeries constant(std::size_t vars, long long cap, const Rational& c) {
        TruncatedSeries s(vars, cap);
        s.set(std::vector<long long>(vars, 0), c);
        return s;
    }

    std::size_t vars() const { return vars_; }
    long long cap() const { return cap_; }
    const TermMap& terms() const { return terms_; }

    Rational get(const std::vector<long long>& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    void set(const std::vector<long long>& m, const Rational& c) {
        if (m.size() != vars_) throw std::invalid_argument("series: exponent arity mismatch");
        long long total = 0;
        for (long long v : m) {
            if (v < 0) throw std::invalid_argument("series: negative exponent");
            total += v;
        }
        if (total > cap_) throw std::invalid_argument("series: exponent beyond cap");
        if (c.is_zero()) terms_.erase(m);
        else terms_[m] = c;
    }

    void add_to(const std::vector<long long>& m, const Rational& c) { set(m, get(m) + c); }

    friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) {
        return a.vars_ == b.vars_ && a.terms_ == b.terms_;
    }

  private:
    std::size_t vars_;
    long long cap_;
    TermMap terms_;
};

namespace detail {
inline void require_compatible(const TruncatedSeries& a, const TruncatedSeries& b) {
    if (a.vars() != b.vars())
        throw std::invalid_argument("series: operand variable counts differ");
}
}  // namespace detail

inline TruncatedSeries add(const TruncatedSeries& a, const TruncatedSeries& b) {
    detail::require_compatible(a, b);
    TruncatedSeries out(a.vars(), std::min(a.cap(), b.cap()));
    for (const auto& [m, c] : a.terms()) out.add_to(m, c);
    for (const auto& [m, c] : b.terms()) out.add_to(m, c);
    return out;
}

inline TruncatedSeries sub(const TruncatedSeries& a, const TruncatedSeries& b) {
    detail::require_compatible(a, b);
    TruncatedSeries out(a.vars(), std::min(a.cap(), b.cap()));
    for (const auto& [m, c] : a.terms()) out.add_to(m, c);
    for (const auto& [m, c] : b.terms()) out.add_to(m, -c);
    return out;
}

inline TruncatedSeries scale(const TruncatedSeries& a, const Rational& c) {
    TruncatedSeries out(a.vars(), a.cap());
    for (const auto& [m, v] : a.terms()) out.set(m, v * c);
    return out;
}

inline TruncatedSeries mul(const TruncatedSeries& a, const TruncatedSeries& b) {
    detail::require_compatible(a, b);
    const long long cap = std::min(a.cap(), b.cap());
    TruncatedSeries out(a.vars(), cap);
    for (const auto& [ma, ca] : a.terms()) {
        long long da = 0;
        for (long long v : ma) da += v;
        for (const auto& [mb, cb] : b.terms()) {
            long long db = 0;
            for (long long v : mb) db += v;
            if (da + db > cap) continue;
            std::vector<long long> m(a.vars());
            for (std::size_t s = 0; s < m.size(); ++s) m[s] = ma[s] + mb[s];
            out.add_to(m, ca * cb);
        }
    }
    return out;
}

// Exact quotient N/D through the common cap; requires an invertible
// (nonzero) constant term on D.  Coefficients are produced in graded-lex
// order, each from already-known ones.
inline TruncatedSeries divide(const TruncatedSeries& num, const TruncatedSeries& den) {
    detail::require_compatible(num, den);
    const std::vector<long long> zero(num.vars(), 0);
    const Rational d0 = den.get(zero);
    if (d0.is_zero()) throw ZeroConstantTermError();
    const long long cap = std::min(num.cap(), den.cap());
    TruncatedSeries q(num.vars(), cap);
    for_each_graded_simplex(num.vars(), cap, [&](const std::vector<long long>& e) {
        Rational acc = num.get(e);
        for (const auto& [f, df] : den.terms()) {
            if (f == zero) continue;
            std::vector<long long> g(e.size());
            bool inside = true;
            for (std::size_t s = 0; s < e.size(); ++s) {
                g[s] = e[s] - f[s];
                if (g[s] < 0) { inside = false; break; }
            }
            if (inside) acc -= df * q.get(g);
        }
        q.set(e, acc / d0);
    });
    return q;
}

// exp of a series with zero constant term, via the Euler-derivative
// recurrence: with theta = sum_s t_s d/dt_s, exp(S) satisfies
// theta E = (theta S) E, so d * E_d = sum_{e=1}^{d} e * S_e * E_{d-e}
// on total-degree components.  Stays in exact rationals throughout.
inline TruncatedSeries exp_series(const TruncatedSeries& s) {
    const std::vector<long long> zero(s.vars(), 0);
    if (!s.get(zero).is_zero()) throw NonzeroConstantTermError();

    const long long cap = s.cap();
    std::vector<std::vector<std::pair<std::vector<long long>, Rational>>> sbud(cap + 1), ebud(cap + 1);
    for (const auto& [m, c] : s.terms()) {
        long long d = 0;
        for (long long v : m) d += v;
        if (d <= cap) sbud[d].push_back({m, c});
    }
    ebud[0].push_back({zero, Rational(1)});

    TruncatedSeries out(s.vars(), cap);
    out.set(zero, Rational(1));
    for (long long d = 1; d <= cap; ++d) {
        std::map<std::vector<long long>, Rational, GradedLexLess> acc;
        for (long long e = 1; e <= d; ++e) {
            for (const auto& [ms, cs] : sbud[e]) {
                for (const auto& [me, ce] : ebud[d - e]) {
                    std::vector<long long> m(s.vars());
                    for (std::size_t i = 0; i < m.size(); ++i) m[i] = ms[i] + me[i];
                    acc[m] += Rational(e) * cs * ce;
                }
            }
        }
        for (auto& [m, c] : acc) {
            Rational coeff = c / Rational(d);
            if (!coeff.is_zero()) {
                out.set(m, coeff);
                ebud[d].push_back({m, coeff});
            }
        }
    }
    return out;
}

// F(t) = sum_m E(m) t^m over the total-degree simplex.
inline TruncatedSeries series_F(const LinearFormSystem& sys, long long cap) {
    TruncatedSeries out(sys.r(), cap);
    for_each_graded_simplex(sys.r(), cap, [&](const std::vector<long long>& m) {
        out.set(m, factorial_ratio(sys, m));
    });
    return out;
}

// G for the form C_j: coefficients E(m) H_{C_j(m)}, skipping m where the
// form vanishes (the harmonic weight of an empty product is empty).
inline TruncatedSeries series_G_C(const LinearFormSystem& sys, std::size_t j, long long cap) {
    if (j >= sys.J()) throw std::out_of_range("series_G_C: j out of range");
    TruncatedSeries out(sys.r(), cap);
    for_each_graded_simplex(sys.r(), cap, [&](const std::vector<long long>& m) {
        long long v = sys.eval_C(j, m);
        if (v != 0)
            out.set(m, factorial_ratio(sys, m) * harmonic(static_cast<std::size_t>(v)));
    });
    return out;
}

inline TruncatedSeries series_G_D(const LinearFormSystem& sys, std::size_t k, long long cap) {
    if (k >= sys.K()) throw std::out_of_range("series_G_D: k out of range");
    TruncatedSeries out(sys.r(), cap);
    for_each_graded_simplex(sys.r(), cap, [&](const std::vector<long long>& m) {
        long long v = sys.eval_D(k, m);
        if (v != 0)
            out.set(m, factorial_ratio(sys, m) * harmonic(static_cast<std::size_t>(v)));
    });
    return out;
}

struct MirrorIndex {
    enum class Family { C, D };
    Family family = Family::C;
    std::size_t index = 0;  // row within the family

    static MirrorIndex forC(std::size_t j) { return {Family::C, j}; }
    static MirrorIndex forD(std::size_t k) { return {Family::D, k}; }
};

// Mirror map q_i = exp(G_i / F).  Only defined when E is integral; callers
// that already ran min_phi can pass the summary to skip recomputing it.
inline TruncatedSeries mirror_map(const LinearFormSystem& sys, MirrorIndex which, long long cap,
                                  const PhiSummary* precomputed = nullptr) {
    if (precomputed ? !landau_holds(*precomputed) : !landau_holds(sys))
        throw LandauPreconditionError();
    TruncatedSeries g = which.family == MirrorIndex::Family::C
                            ? series_G_C(sys, which.index, cap)
                            : series_G_D(sys, which.index, cap);
    return exp_series(divide(g, series_F(sys, cap)));
}

struct IntegralityReport {
    bool all_integral = true;
    std::optional<long long> prime;  // engaged in p-integrality mode
    std::size_t terms_checked = 0;
    std::vector<std::pair<std::vector<long long>, Rational>> witnesses;
};

// Denominator-based integrality check; with a prime p, checks p-integrality
// (denominator coprime to p) instead.
inline IntegralityReport integrality_report(const TruncatedSeries& s,
                                            std::optional<long long> p = std::nullopt) {
    if (p) {
        if (*p < 2) throw std::invalid_argument("integrality_report: p is not prime");
        for (long long q = 2; q * q <= *p; ++q)
            if (*p % q == 0) throw std::invalid_argument("integrality_report: p is not prime");
    }
    IntegralityReport rep;
    rep.prime = p;
    for (const auto& [m, c] : s.terms()) {
        ++rep.terms_checked;
        bool ok = p ? (c.den() % Integer(*p) != 0) : c.is_integer();
        if (!ok) {
            rep.all_integral = false;
            rep.witnesses.push_back({m, c});
        }
    }
    return rep;
}

// Canonical text: one line per stored term, graded-lex order, exponents
// space-separated, coefficient always as num/den.
inline std::string serialize(const TruncatedSeries& s) {
    std::ostringstream os;
    for (const auto& [m, c] : s.terms()) {
        for (std::size_t i = 0; i < m.size(); ++i) os << m[i] << ' ';
        os << ": " << c.str() << '\n';
    }
    return os.str();
}

}  // namespace ratiocert
