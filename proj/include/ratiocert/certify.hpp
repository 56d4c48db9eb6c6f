#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "ratiocert/cells.hpp"
#include "ratiocert/corpus.hpp"
#include "ratiocert/hypergeom.hpp"
#include "ratiocert/linear_system.hpp"
#include "ratiocert/polytope.hpp"
#include "ratiocert/series.hpp"

namespace ratiocert {

using Json = nlohmann::ordered_json;

// Malformed input document (shape, types, unknown keys).  Distinct from
// hypothesis violations, which are ValidationIssues on a well-formed spec.
struct SpecParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

inline Matrix matrix_from_json(const Json& j, const char* name) {
    if (!j.is_array()) throw SpecParseError(std::string(name) + " must be an array of rows");
    Matrix m;
    for (const auto& row : j) {
        if (!row.is_array())
            throw SpecParseError(std::string(name) + " rows must be arrays of integers");
        std::vector<long long> out;
        for (const auto& v : row) {
            if (!v.is_number_integer())
                throw SpecParseError(std::string(name) + " entries must be integers");
            out.push_back(v.get<long long>());
        }
        m.push_back(std::move(out));
    }
    return m;
}

}  // namespace detail

inline SystemSpec spec_from_json(const Json& j) {
    if (!j.is_object()) throw SpecParseError("system spec must be a JSON object");
    for (const auto& [key, value] : j.items())
        if (key != "r" && key != "C" && key != "D" && key != "label")
            throw SpecParseError("unknown key in system spec: " + key);
    if (!j.contains("r") || !j.contains("C") || !j.contains("D"))
        throw SpecParseError("system spec needs keys r, C, D");
    if (!j["r"].is_number_integer() || j["r"].get<long long>() < 0)
        throw SpecParseError("r must be a nonnegative integer");
    SystemSpec spec;
    spec.r = static_cast<std::size_t>(j["r"].get<long long>());
    spec.C = detail::matrix_from_json(j["C"], "C");
    spec.D = detail::matrix_from_json(j["D"], "D");
    if (j.contains("label")) {
        if (!j["label"].is_string()) throw SpecParseError("label must be a string");
        spec.label = j["label"].get<std::string>();
    }
    return spec;
}

inline Json spec_to_json(const SystemSpec& spec) {
    Json j;
    j["r"] = spec.r;
    j["C"] = spec.C;
    j["D"] = spec.D;
    if (!spec.label.empty()) j["label"] = spec.label;
    return j;
}

inline SystemSpec parse_system_spec(const std::string& text) {
    Json j = Json::parse(text, nullptr, false);
    if (j.is_discarded()) throw SpecParseError("not valid JSON");
    return spec_from_json(j);
}

inline std::vector<SystemSpec> parse_corpus(const std::string& text) {
    Json j = Json::parse(text, nullptr, false);
    if (j.is_discarded()) throw SpecParseError("not valid JSON");
    if (!j.is_array()) throw SpecParseError("corpus must be a JSON array of system specs");
    std::vector<SystemSpec> out;
    for (const auto& item : j) out.push_back(spec_from_json(item));
    return out;
}

inline std::string serialize_corpus(const std::vector<SystemSpec>& specs) {
    Json j = Json::array();
    for (const auto& spec : specs) j.push_back(spec_to_json(spec));
    return j.dump(2) + "\n";
}

struct CertifyOptions {
    long long cap = 8;         // series truncation order
    long long pbox = 6;        // torus-series box bound
    long long scan_bound = 8;  // ratio box scan; witness search doubles it up to 64
};

struct MirrorIntegrality {
    std::string which;  // "C1".."CJ", "D1".."DK"
    bool integral = false;
    std::size_t terms_checked = 0;
};

// Everything both routes and both engines said about one system.  The
// cross-check verdicts are member functions so they are always derived from
// the stored route outputs, never cached alongside them.
struct CertificationReport {
    SystemSpec spec;
    CertifyOptions options;

    // Step-function route.
    long long min_phi_value = 0;
    bool landau = false;
    DelaygueStatus delaygue = DelaygueStatus::landau_precondition_failed;
    std::optional<long long> min_on_cells;
    RationalPoint step_witness;

    // Geometric route.
    bool ratio_criterion = false;
    MirrorPolytopeResult mirror;
    std::vector<std::size_t> interior_counts;  // dilates 1 .. J+r+1
    long long min_sum = 0;
    RowCountObstruction row_count;

    // Series engine.
    ScanReport box_scan;
    bool coefficients_integral = false;
    std::size_t coefficient_terms = 0;
    std::optional<ScanWitness> nonintegral_witness;
    long long witness_bound_used = 0;
    std::vector<MirrorIntegrality> mirrors;

    // Operator checks on the torus series.
    bool degree_ok = false;
    std::size_t contiguity_runs = 0;
    bool contiguity_ok = false;
    std::size_t quasi_runs = 0;
    bool quasi_ok = false;
    bool support_plain_ok = false;
    bool support_omit_ok = false;
    bool specialization_ok = false;

    double step_ms = 0, geometry_ms = 0, series_ms = 0, operators_ms = 0;

    bool ratio_routes_agree() const { return landau == ratio_criterion; }
    bool mirror_routes_agree() const {
        return mirror.holds == (delaygue == DelaygueStatus::holds);
    }
    bool sum_identity_agrees() const {
        return min_sum ==
               static_cast<long long>(spec.C.size() + spec.r) + min_phi_value;
    }
    bool row_count_consistent() const {
        return !row_count.applicable || (row_count.nonintegrality_confirmed && !landau);
    }
    // One-way implications only: a truncated engine cannot refute
    // integrality beyond its horizon, but integrality claims must hold on
    // it, and a negative verdict must be backed by a concrete witness.
    bool series_consistent() const {
        if (landau && (!box_scan.all_integral || !coefficients_integral)) return false;
        if (!landau && !nonintegral_witness) return false;
        if (delaygue == DelaygueStatus::holds)
            for (const auto& m : mirrors)
                if (!m.integral) return false;
        return true;
    }
    bool operator_checks_pass() const {
        return degree_ok && contiguity_ok && quasi_ok && support_plain_ok &&
               support_omit_ok && specialization_ok;
    }
    bool consistent() const {
        return ratio_routes_agree() && mirror_routes_agree() && sum_identity_agrees() &&
               row_count_consistent() && series_consistent() && operator_checks_pass();
    }
};

// Graded box scan for a non-integral ratio value, doubling the bound until
// the hard limit.  A disagreement between "some E(m) is non-integral" and
// an exhausted scan is reported by leaving the witness empty.
inline std::optional<ScanWitness> find_nonintegral_witness(const LinearFormSystem& sys,
                                                           long long start_bound,
                                                           long long hard_limit,
                                                           long long* bound_used = nullptr) {
    long long B = std::max<long long>(1, start_bound);
    while (true) {
        ScanReport rep = integrality_scan(sys, B);
        if (!rep.all_integral) {
            if (bound_used) *bound_used = B;
            return rep.witnesses.front();
        }
        if (B >= hard_limit) return std::nullopt;
        B = std::min(2 * B, hard_limit);
    }
}

inline CertificationReport certify(const LinearFormSystem& sys, const SystemSpec& spec,
                                   const CertifyOptions& opt = {}) {
    using clock = std::chrono::steady_clock;
    auto ms_since = [](clock::time_point t0) {
        return std::chrono::duration<double, std::milli>(clock::now() - t0).count();
    };

    CertificationReport rep;
    rep.spec = spec;
    rep.options = opt;
    const std::size_t r = sys.r(), J = sys.J(), K = sys.K();
    const std::size_t n = r + J + K;

    auto t0 = clock::now();
    PhiSummary summary = min_phi(sys);
    rep.min_phi_value = summary.min_value;
    rep.landau = landau_holds(summary);
    rep.delaygue = delaygue_holds(summary);
    rep.min_on_cells = summary.min_on_D;
    rep.step_witness = summary.witness_point;
    rep.step_ms = ms_since(t0);

    t0 = clock::now();
    PolytopeContext ctx = make_polytope_context(sys);
    for (long long z = 1; z <= static_cast<long long>(J + r) + 1; ++z)
        rep.interior_counts.push_back(interior_lattice_points(ctx, z).size());
    rep.ratio_criterion = integrality_via_polytope(ctx);
    rep.mirror = mirror_integrality_via_polytope(ctx);
    rep.min_sum = min_interior_sum(ctx);
    rep.row_count = row_count_obstruction(sys, &summary);
    rep.geometry_ms = ms_since(t0);

    t0 = clock::now();
    rep.box_scan = integrality_scan(sys, opt.scan_bound);
    TruncatedSeries F = series_F(sys, opt.cap);
    IntegralityReport coeffs = integrality_report(F);
    rep.coefficients_integral = coeffs.all_integral;
    rep.coefficient_terms = coeffs.terms_checked;
    if (!rep.landau)
        rep.nonintegral_witness = find_nonintegral_witness(
            sys, opt.scan_bound, std::max<long long>(64, opt.scan_bound),
            &rep.witness_bound_used);
    if (rep.landau) {
        for (std::size_t j = 0; j < J; ++j) {
            IntegralityReport ir = integrality_report(
                mirror_map(sys, MirrorIndex::forC(j), opt.cap, &summary));
            rep.mirrors.push_back(
                {"C" + std::to_string(j + 1), ir.all_integral, ir.terms_checked});
        }
        for (std::size_t k = 0; k < K; ++k) {
            IntegralityReport ir = integrality_report(
                mirror_map(sys, MirrorIndex::forD(k), opt.cap, &summary));
            rep.mirrors.push_back(
                {"D" + std::to_string(k + 1), ir.all_integral, ir.terms_checked});
        }
    }
    rep.series_ms = ms_since(t0);

    t0 = clock::now();
    HGSeries Fhg = build_F(sys, opt.pbox);
    rep.degree_ok = euler_check(sys, Fhg).ok;
    rep.contiguity_ok = true;
    for (std::size_t s = 0; s < r; ++s) {
        std::vector<long long> q(r, 0);
        q[s] = 1;
        RecurrenceReport rr = box_check(sys, Fhg, q, opt.pbox);
        ++rep.contiguity_runs;
        rep.contiguity_ok = rep.contiguity_ok && rr.ok;
    }
    rep.quasi_ok = true;
    rep.specialization_ok = true;
    const long long spec_cap = std::min(opt.cap, opt.pbox);
    rep.specialization_ok = specialize(sys, Fhg, spec_cap) == series_F(sys, spec_cap);
    for (std::size_t i = r; i < n; ++i) {
        HGSeries G = build_G(sys, i, opt.pbox);
        rep.degree_ok = rep.degree_ok && euler_check(sys, G).ok;
        for (std::size_t s = 0; s < r; ++s) {
            std::vector<long long> q(r, 0);
            q[s] = 1;
            RecurrenceReport rr = quasi_solution_check(sys, i, Fhg, G, q, opt.pbox);
            ++rep.quasi_runs;
            rep.quasi_ok = rep.quasi_ok && rr.ok;
        }
        TruncatedSeries want = i < r + J ? series_G_C(sys, i - r, spec_cap)
                                         : series_G_D(sys, i - r - J, spec_cap);
        rep.specialization_ok = rep.specialization_ok &&
                                specialize(sys, G, spec_cap) == scale(want, Rational(-1));
    }
    rep.support_plain_ok = minimal_negative_support_scan(sys, opt.pbox).minimal;
    rep.support_omit_ok = true;
    if (rep.mirror.holds)
        for (std::size_t i = n; i < n + r; ++i)
            rep.support_omit_ok =
                rep.support_omit_ok && minimal_negative_support_scan(sys, opt.pbox, i).minimal;
    rep.operators_ms = ms_since(t0);

    return rep;
}

inline CertificationReport certify(const SystemSpec& spec, const CertifyOptions& opt = {}) {
    return certify(make_system(spec.r, spec.C, spec.D), spec, opt);
}

namespace detail {

inline Json point_to_json(const RationalPoint& x) {
    Json arr = Json::array();
    for (const auto& c : x) arr.push_back(c.str());
    return arr;
}

}  // namespace detail

inline Json report_to_json(const CertificationReport& rep, bool include_timings = false) {
    Json j;
    j["label"] = rep.spec.label;
    j["system"] = spec_to_json(rep.spec);
    j["options"] = Json{{"cap", rep.options.cap},
                        {"pbox", rep.options.pbox},
                        {"scan_bound", rep.options.scan_bound}};

    j["landau"] = Json{{"holds", rep.landau},
                       {"min_phi", rep.min_phi_value},
                       {"witness", detail::point_to_json(rep.step_witness)}};

    Json del;
    del["holds"] = rep.delaygue == DelaygueStatus::holds;
    del["status"] = rep.delaygue == DelaygueStatus::holds  ? "holds"
                    : rep.delaygue == DelaygueStatus::fails ? "fails"
                                                            : "landau_precondition_failed";
    if (rep.min_on_cells) del["min_on_cells"] = *rep.min_on_cells;
    else del["min_on_cells"] = nullptr;
    j["delaygue"] = del;

    Json geo;
    geo["ratio_criterion"] = rep.ratio_criterion;
    geo["mirror_criterion"] = rep.mirror.holds;
    Json counts = Json::array();
    for (std::size_t z = 0; z < rep.interior_counts.size(); ++z)
        counts.push_back(Json{{"dilate", z + 1}, {"count", rep.interior_counts[z]}});
    geo["interior_counts"] = counts;
    geo["min_interior_sum"] = rep.min_sum;
    geo["distinguished_point"] = rep.mirror.expected;
    geo["row_count_obstruction"] = Json{{"applicable", rep.row_count.applicable},
                                        {"confirmed", rep.row_count.nonintegrality_confirmed}};
    j["geometry"] = geo;

    Json ser;
    ser["cap"] = rep.options.cap;
    ser["box_scan"] = Json{{"bound", rep.box_scan.bound},
                           {"checked", rep.box_scan.checked},
                           {"all_integral", rep.box_scan.all_integral}};
    ser["coefficients_all_integral"] = rep.coefficients_integral;
    ser["coefficient_terms"] = rep.coefficient_terms;
    if (rep.nonintegral_witness) {
        ser["nonintegral_witness"] = Json{{"m", rep.nonintegral_witness->m},
                                          {"value", rep.nonintegral_witness->value.str()},
                                          {"bound_used", rep.witness_bound_used}};
    } else {
        ser["nonintegral_witness"] = nullptr;
    }
    Json mirrors = Json::array();
    for (const auto& m : rep.mirrors)
        mirrors.push_back(Json{{"which", m.which},
                               {"integral", m.integral},
                               {"terms_checked", m.terms_checked}});
    ser["mirrors"] = mirrors;
    j["series"] = ser;

    j["hypergeometric"] = Json{
        {"pbox", rep.options.pbox},
        {"degree_homogeneity", rep.degree_ok},
        {"contiguity", Json{{"runs", rep.contiguity_runs}, {"ok", rep.contiguity_ok}}},
        {"quasi_solutions", Json{{"runs", rep.quasi_runs}, {"ok", rep.quasi_ok}}},
        {"support_scans",
         Json{{"plain_minimal", rep.support_plain_ok}, {"omitted_clean", rep.support_omit_ok}}},
        {"specialization_matches", rep.specialization_ok}};

    j["cross_checks"] = Json{{"ratio_routes_agree", rep.ratio_routes_agree()},
                             {"mirror_routes_agree", rep.mirror_routes_agree()},
                             {"interior_sum_identity", rep.sum_identity_agrees()},
                             {"row_count_consistent", rep.row_count_consistent()},
                             {"series_consistent", rep.series_consistent()},
                             {"operator_checks_pass", rep.operator_checks_pass()},
                             {"all_consistent", rep.consistent()}};

    if (include_timings)
        j["timings_ms"] = Json{{"step", rep.step_ms},
                               {"geometry", rep.geometry_ms},
                               {"series", rep.series_ms},
                               {"operators", rep.operators_ms}};
    return j;
}

// Pool size: hardware concurrency, capped by RATIOCERT_THREADS when set to a
// positive integer.
inline std::size_t worker_count() {
    unsigned hw = std::thread::hardware_concurrency();
    std::size_t base = hw == 0 ? 1 : hw;
    if (const char* env = std::getenv("RATIOCERT_THREADS")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end && *end == '\0' && v >= 1 && static_cast<std::size_t>(v) < base)
            base = static_cast<std::size_t>(v);
    }
    return base;
}

// Certifies every spec, fanning out over a worker pool; reports come back
// in corpus order regardless of scheduling.
inline std::vector<CertificationReport> certify_corpus(const std::vector<SystemSpec>& specs,
                                                       const CertifyOptions& opt = {}) {
    std::vector<CertificationReport> reports(specs.size());
    if (specs.empty()) return reports;
    const std::size_t workers = std::min(worker_count(), specs.size());
    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    auto run = [&]() {
        while (true) {
            std::size_t i = next.fetch_add(1);
            if (i >= specs.size()) return;
            try {
                reports[i] = certify(specs[i], opt);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
                return;
            }
        }
    };
    if (workers <= 1) {
        run();
    } else {
        std::vector<std::thread> pool;
        for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(run);
        for (auto& t : pool) t.join();
    }
    if (first_error) std::rethrow_exception(first_error);
    return reports;
}

}  // namespace ratiocert
