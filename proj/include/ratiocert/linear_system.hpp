#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "ratiocert/grading.hpp"
#include "ratiocert/rational.hpp"

namespace ratiocert {

// A factorial-ratio system: two families of linear forms with nonnegative
// integer coefficients,
//
//   C_j(m) = sum_s c_js m_s   (j = 1..J),   D_k(m) = sum_s d_ks m_s   (k = 1..K),
//
// defining the ratio E(m) = prod_j C_j(m)! / prod_k D_k(m)!.  Instances only
// exist validated; the five hypotheses below are class invariants:
//   (1) no all-zero row in C or D,
//   (2) C_j != D_k for every pair (repeats within one family are fine),
//   (3) every variable has a nonzero coefficient somewhere,
//   (4) per-column balance: sum_j c_js == sum_k d_ks for every s,
//   (5) all entries nonnegative integers, r >= 1, J >= 1, K >= 1.
// Balance makes E(m) grow like a pure product of multinomials and makes the
// step function Phi below periodic mod Z^r.
class LinearFormSystem;

enum class IssueCode {
    malformed,         // ragged rows, r == 0, empty C or D
    negative_entry,
    zero_form,
    duplicate_form,    // C_j == D_k
    unused_variable,
    unbalanced,
};

struct ValidationIssue {
    IssueCode code;
    std::string detail;
};

inline const char* issue_code_name(IssueCode c) {
    switch (c) {
        case IssueCode::malformed: return "malformed";
        case IssueCode::negative_entry: return "negative_entry";
        case IssueCode::zero_form: return "zero_form";
        case IssueCode::duplicate_form: return "duplicate_form";
        case IssueCode::unused_variable: return "unused_variable";
        case IssueCode::unbalanced: return "unbalanced";
    }
    return "unknown";
}

struct ValidationResult;

using Matrix = std::vector<std::vector<long long>>;

ValidationResult validate_system(std::size_t r, Matrix C, Matrix D);

class LinearFormSystem {
  public:
    std::size_t r() const { return r_; }
    std::size_t J() const { return C_.size(); }
    std::size_t K() const { return D_.size(); }
    const Matrix& C() const { return C_; }
    const Matrix& D() const { return D_; }

    long long eval_C(std::size_t j, const std::vector<long long>& m) const {
        return dot(C_[j], m);
    }
    long long eval_D(std::size_t k, const std::vector<long long>& m) const {
        return dot(D_[k], m);
    }
    Rational eval_C(std::size_t j, const RationalPoint& x) const { return dot(C_[j], x); }
    Rational eval_D(std::size_t k, const RationalPoint& x) const { return dot(D_[k], x); }

    // Row sum = value of the form at (1,...,1); bounds the form on [0,1)^r.
    long long row_sum_C(std::size_t j) const { return row_sum(C_[j]); }
    long long row_sum_D(std::size_t k) const { return row_sum(D_[k]); }

    friend ValidationResult validate_system(std::size_t r, Matrix C, Matrix D);

  private:
    LinearFormSystem(std::size_t r, Matrix C, Matrix D)
        : r_(r), C_(std::move(C)), D_(std::move(D)) {}

    static long long dot(const std::vector<long long>& row, const std::vector<long long>& m) {
        long long acc = 0;
        for (std::size_t s = 0; s < row.size(); ++s) acc += row[s] * m[s];
        return acc;
    }
    static Rational dot(const std::vector<long long>& row, const RationalPoint& x) {
        Rational acc;
        for (std::size_t s = 0; s < row.size(); ++s) acc += Rational(row[s]) * x[s];
        return acc;
    }
    static long long row_sum(const std::vector<long long>& row) {
        return std::accumulate(row.begin(), row.end(), 0LL);
    }

    std::size_t r_;
    Matrix C_, D_;
};

struct ValidationResult {
    std::optional<LinearFormSystem> system;  // engaged iff issues empty
    std::vector<ValidationIssue> issues;
    bool ok() const { return issues.empty(); }
};

// Checks all hypotheses and reports every violation, not just the first.
// The system is only constructed when the issue list is empty.
inline ValidationResult validate_system(std::size_t r, Matrix C, Matrix D) {
    ValidationResult res;
    auto issue = [&res](IssueCode code, std::string detail) {
        res.issues.push_back({code, std::move(detail)});
    };

    if (r == 0) issue(IssueCode::malformed, "r must be at least 1");
    if (C.empty()) issue(IssueCode::malformed, "C has no rows");
    if (D.empty()) issue(IssueCode::malformed, "D has no rows");
    for (std::size_t j = 0; j < C.size(); ++j)
        if (C[j].size() != r)
            issue(IssueCode::malformed,
                  "C row " + std::to_string(j + 1) + " has " + std::to_string(C[j].size()) +
                      " entries, expected " + std::to_string(r));
    for (std::size_t k = 0; k < D.size(); ++k)
        if (D[k].size() != r)
            issue(IssueCode::malformed,
                  "D row " + std::to_string(k + 1) + " has " + std::to_string(D[k].size()) +
                      " entries, expected " + std::to_string(r));
    if (!res.issues.empty()) return res;  // shape broken; nothing else is well-posed

    auto scan_family = [&](const Matrix& M, char name) {
        for (std::size_t i = 0; i < M.size(); ++i) {
            bool allzero = true;
            for (std::size_t s = 0; s < r; ++s) {
                if (M[i][s] < 0)
                    issue(IssueCode::negative_entry,
                          std::string(1, name) + " entry (" + std::to_string(i + 1) + "," +
                              std::to_string(s + 1) + ") is negative");
                if (M[i][s] != 0) allzero = false;
            }
            if (allzero)
                issue(IssueCode::zero_form,
                      std::string(1, name) + " row " + std::to_string(i + 1) + " is zero");
        }
    };
    scan_family(C, 'C');
    scan_family(D, 'D');

    for (std::size_t j = 0; j < C.size(); ++j)
        for (std::size_t k = 0; k < D.size(); ++k)
            if (C[j] == D[k])
                issue(IssueCode::duplicate_form, "C row " + std::to_string(j + 1) +
                                                     " equals D row " + std::to_string(k + 1));

    for (std::size_t s = 0; s < r; ++s) {
        bool used = false;
        long long csum = 0, dsum = 0;
        for (const auto& row : C) { csum += row[s]; used = used || row[s] != 0; }
        for (const auto& row : D) { dsum += row[s]; used = used || row[s] != 0; }
        if (!used)
            issue(IssueCode::unused_variable, "variable " + std::to_string(s + 1) +
                                                  " appears in no form");
        if (csum != dsum)
            issue(IssueCode::unbalanced, "column " + std::to_string(s + 1) + ": C sum " +
                                             std::to_string(csum) + " != D sum " +
                                             std::to_string(dsum));
    }

    if (res.issues.empty())
        res.system = LinearFormSystem(r, std::move(C), std::move(D));
    return res;
}

// Throwing convenience for code that constructs known-good systems.
inline LinearFormSystem make_system(std::size_t r, Matrix C, Matrix D) {
    ValidationResult res = validate_system(r, std::move(C), std::move(D));
    if (!res.ok()) {
        std::ostringstream os;
        os << "invalid system:";
        for (const auto& iss : res.issues)
            os << " [" << issue_code_name(iss.code) << "] " << iss.detail << ";";
        throw std::invalid_argument(os.str());
    }
    return *std::move(res.system);
}

// E(m) = prod_j C_j(m)! / prod_k D_k(m)! as an exact rational.
inline Rational factorial_ratio(const LinearFormSystem& sys, const std::vector<long long>& m) {
    Integer num = 1, den = 1;
    for (std::size_t j = 0; j < sys.J(); ++j)
        num *= factorial(static_cast<std::size_t>(sys.eval_C(j, m)));
    for (std::size_t k = 0; k < sys.K(); ++k)
        den *= factorial(static_cast<std::size_t>(sys.eval_D(k, m)));
    return Rational(num, den);
}

// Phi(x) = sum_j floor(C_j(x)) - sum_k floor(D_k(x)).  Defined for any
// rational point; column balance makes it periodic mod Z^r, so everything
// about it is decided on [0,1)^r.
inline long long phi(const LinearFormSystem& sys, const RationalPoint& x) {
    if (x.size() != sys.r()) throw std::invalid_argument("phi: point has wrong dimension");
    Integer acc = 0;
    for (std::size_t j = 0; j < sys.J(); ++j) acc += sys.eval_C(j, x).floor();
    for (std::size_t k = 0; k < sys.K(); ++k) acc -= sys.eval_D(k, x).floor();
    return static_cast<long long>(acc);
}

struct ScanWitness {
    std::vector<long long> m;
    Rational value;
};

struct ScanReport {
    bool all_integral = true;
    long long bound = 0;
    std::size_t checked = 0;
    std::vector<ScanWitness> witnesses;  // first one only unless all requested
};

// Evaluates E(m) on the box [0,B]^r in graded lex order, so the first
// non-integral value reported is the graded-lex-least witness.
inline ScanReport integrality_scan(const LinearFormSystem& sys, long long B,
                                   bool collect_all = false) {
    ScanReport rep;
    rep.bound = B;
    bool done = false;
    for_each_graded_box(sys.r(), B, [&](const std::vector<long long>& m) {
        if (done) return;
        ++rep.checked;
        Rational e = factorial_ratio(sys, m);
        if (!e.is_integer()) {
            rep.all_integral = false;
            rep.witnesses.push_back({m, e});
            if (!collect_all) done = true;
        }
    });
    return rep;
}

struct ColumnPrecheck {
    std::vector<bool> column_ok;  // max_j c_js >= max_k d_ks
    bool all_ok = true;
};

// Necessary condition for integrality of E: in every column the largest C
// coefficient must reach the largest D coefficient.  Cheap screen only; the
// full criteria live in the cell and polytope modules.
inline ColumnPrecheck column_max_precheck(const LinearFormSystem& sys) {
    ColumnPrecheck pc;
    pc.column_ok.resize(sys.r());
    for (std::size_t s = 0; s < sys.r(); ++s) {
        long long cmax = 0, dmax = 0;
        for (const auto& row : sys.C()) cmax = std::max(cmax, row[s]);
        for (const auto& row : sys.D()) dmax = std::max(dmax, row[s]);
        pc.column_ok[s] = cmax >= dmax;
        pc.all_ok = pc.all_ok && pc.column_ok[s];
    }
    return pc;
}

// Exchange the roles of C and D; the swapped ratio is 1/E(m).
inline LinearFormSystem swap_system(const LinearFormSystem& sys) {
    return make_system(sys.r(), sys.D(), sys.C());
}

}  // namespace ratiocert
