// Acceptance gate: one line per criterion, nonzero exit iff any fails.
// Every check compares two independently computed quantities; nothing is
// asserted from a single route.

#include <algorithm>
#include <chrono>
#include <cstdarg>
#include <cstdio>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "ratiocert/certify.hpp"
#include "ratiocert/hypergeom.hpp"
#include "test_support.hpp"

using namespace ratiocert;

namespace {

constexpr std::uint64_t kCorpusSeed = 20260815;
constexpr std::size_t kCorpusSize = 200;

int failures = 0;

void line(int idx, const char* name, bool ok, const std::string& detail) {
    std::printf("[%s] criterion %2d: %s (%s)\n", ok ? "PASS" : "FAIL", idx, name,
                detail.c_str());
    if (!ok) ++failures;
}

std::string fmt(const char* f, ...) {
    char buf[256];
    va_list args;
    va_start(args, f);
    std::vsnprintf(buf, sizeof buf, f, args);
    va_end(args);
    return buf;
}

struct CorpusEntry {
    LinearFormSystem sys;
    PhiSummary summary;
    bool landau = false;
    DelaygueStatus delaygue = DelaygueStatus::landau_precondition_failed;
    PolytopeContext ctx;
    bool ratio_criterion = false;
    bool mirror_criterion = false;
    long long min_sum = 0;
};

// Box sweep helpers for the transport check (independent of the library's
// dilate enumerator, which assumes nonnegative facet normals).
std::vector<long long> box_corner(const PointConfiguration& cfg, long long z, bool hi) {
    std::vector<long long> out(cfg.n, 0);
    for (std::size_t i = 0; i < cfg.n; ++i) {
        long long ext = 0;
        for (const auto& g : cfg.points) ext = hi ? std::max(ext, g[i]) : std::min(ext, g[i]);
        out[i] = z * ext;
    }
    return out;
}

template <class Fn>
bool for_each_box_point(const std::vector<long long>& lo, const std::vector<long long>& hi,
                        long long budget, Fn&& fn) {
    long long size = 1;
    for (std::size_t i = 0; i < lo.size(); ++i) {
        size *= hi[i] - lo[i] + 1;
        if (size > budget) return false;
    }
    std::vector<long long> u = lo;
    while (true) {
        fn(u);
        std::size_t i = 0;
        while (i < u.size() && u[i] == hi[i]) u[i++] = lo[i];
        if (i == u.size()) return true;
        ++u[i];
    }
}

std::vector<long long> map_point(const std::vector<std::vector<long long>>& M,
                                 const std::vector<long long>& u) {
    return apply_linear_map(M, u);
}

}  // namespace

int main() {
    CorpusParams params;
    params.count = kCorpusSize;
    params.seed = kCorpusSeed;
    std::vector<SystemSpec> specs = generate_corpus(params);

    // Shared pipeline for criteria 1-3: both routes on every system.
    auto t0 = std::chrono::steady_clock::now();
    std::vector<CorpusEntry> corpus;
    corpus.reserve(specs.size());
    for (const auto& sp : specs) {
        CorpusEntry e{make_system(sp.r, sp.C, sp.D), {}, false,
                      DelaygueStatus::landau_precondition_failed, {}, false, false, 0};
        e.summary = min_phi(e.sys);
        e.landau = landau_holds(e.summary);
        e.delaygue = delaygue_holds(e.summary);
        e.ctx = make_polytope_context(e.sys);
        e.ratio_criterion = integrality_via_polytope(e.ctx);
        e.mirror_criterion = mirror_integrality_via_polytope(e.ctx).holds;
        e.min_sum = min_interior_sum(e.ctx);
        corpus.push_back(std::move(e));
    }
    double corpus_secs = std::chrono::duration<double>(
                             std::chrono::steady_clock::now() - t0).count();

    // 1. The step-function route and the dilated-polytope route must agree
    //    on ratio integrality for every corpus system, within budget.
    {
        std::size_t disagreements = 0;
        for (const auto& e : corpus)
            if (e.landau != e.ratio_criterion) ++disagreements;
        line(1, "ratio integrality routes agree on the corpus",
             disagreements == 0 && corpus_secs < 120.0,
             fmt("%zu systems, %zu disagreements, %.2f s", corpus.size(), disagreements,
                 corpus_secs));
    }

    // 2. On the systems whose ratios are integral, the cell criterion and
    //    the unique-interior-point criterion must agree.
    {
        std::size_t checked = 0, disagreements = 0;
        for (const auto& e : corpus) {
            if (!e.landau) continue;
            ++checked;
            if ((e.delaygue == DelaygueStatus::holds) != e.mirror_criterion) ++disagreements;
        }
        line(2, "mirror integrality routes agree on integral systems",
             checked > 0 && disagreements == 0,
             fmt("%zu systems, %zu disagreements", checked, disagreements));
    }

    // 3. The least interior coordinate sum equals J + r plus the step
    //    minimum, exactly, on every system.
    {
        std::size_t mismatches = 0;
        for (const auto& e : corpus) {
            long long expected = static_cast<long long>(e.sys.J() + e.sys.r()) +
                                 e.summary.min_value;
            if (e.min_sum != expected) ++mismatches;
        }
        line(3, "interior sum identity holds exactly", mismatches == 0,
             fmt("%zu systems, %zu mismatches", corpus.size(), mismatches));
    }

    // 4. Integral systems scan clean; non-integral systems must yield a
    //    concrete witness under the doubling search (absence is an error).
    std::map<std::size_t, ScanWitness> witnesses;
    {
        std::size_t integral_ok = 0, witness_ok = 0, bad = 0;
        for (std::size_t idx = 0; idx < corpus.size(); ++idx) {
            const auto& e = corpus[idx];
            if (e.landau) {
                bool scan_ok = integrality_scan(e.sys, 8).all_integral;
                bool coeff_ok = integrality_report(series_F(e.sys, 8)).all_integral;
                if (scan_ok && coeff_ok) ++integral_ok;
                else ++bad;
            } else {
                auto w = find_nonintegral_witness(e.sys, 8, 64);
                if (w.has_value()) {
                    witnesses.emplace(idx, *w);
                    ++witness_ok;
                } else {
                    ++bad;
                }
            }
        }
        line(4, "scans certify integral systems and refute the rest", bad == 0,
             fmt("%zu integral, %zu witnesses, %zu failures", integral_ok, witness_ok, bad));
    }

    // 5. Every mirror map of every cell-criterion-true system is integral
    //    through the cap.
    {
        std::size_t systems = 0, maps = 0, bad = 0;
        for (const auto& e : corpus) {
            if (e.delaygue != DelaygueStatus::holds) continue;
            ++systems;
            for (std::size_t j = 0; j < e.sys.J(); ++j) {
                ++maps;
                if (!integrality_report(mirror_map(e.sys, MirrorIndex::forC(j), 8, &e.summary))
                         .all_integral)
                    ++bad;
            }
            for (std::size_t k = 0; k < e.sys.K(); ++k) {
                ++maps;
                if (!integrality_report(mirror_map(e.sys, MirrorIndex::forD(k), 8, &e.summary))
                         .all_integral)
                    ++bad;
            }
        }
        line(5, "mirror maps of cell-true systems are integral",
             systems > 0 && bad == 0,
             fmt("%zu systems, %zu maps, %zu non-integral", systems, maps, bad));
    }

    // 6. Row-count surplus (K <= J) forces non-integrality with a witness,
    //    and interior point sets transport exactly through the swap map.
    {
        std::size_t surplus = 0, surplus_bad = 0;
        for (std::size_t idx = 0; idx < corpus.size(); ++idx) {
            const auto& e = corpus[idx];
            if (e.sys.K() > e.sys.J()) continue;
            ++surplus;
            if (e.landau || witnesses.find(idx) == witnesses.end()) ++surplus_bad;
        }

        std::size_t transported = 0, sweeps = 0, transport_bad = 0;
        auto sample = testsupport::sample_systems(20, 818201, 2, 2, 2);
        for (const auto& sys : sample) {
            auto M = swap_coordinate_map(sys.r(), sys.J(), sys.K());
            auto inv = signed_permutation_inverse(M);
            PolytopeContext ctx = make_polytope_context(sys);
            long long z = static_cast<long long>(sys.r() + sys.J()) + 1;

            std::vector<std::vector<long long>> mapped_gens;
            for (const auto& g : ctx.cfg.points) mapped_gens.push_back(map_point(M, g));
            auto mapped_facets = cone_facets_from_generators(mapped_gens, ctx.cfg.n);

            // Facet sets must correspond: pulling each recomputed facet of
            // the image cone back through the map recovers the original
            // facet list exactly (both lists are primitive and sorted).
            std::vector<std::vector<Integer>> pulled;
            for (const auto& h : mapped_facets) {
                std::vector<Integer> b(ctx.cfg.n, 0);
                for (std::size_t i = 0; i < ctx.cfg.n; ++i)
                    for (std::size_t c = 0; c < ctx.cfg.n; ++c) b[i] += h[c] * M[c][i];
                pulled.push_back(std::move(b));
            }
            std::sort(pulled.begin(), pulled.end());
            bool facets_match = pulled == ctx.facets;

            // Every interior point maps to an interior point of the image
            // cone with the pulled-back functional below the dilate bound.
            auto pts = interior_lattice_points(ctx, z);
            std::vector<std::vector<long long>> image;
            bool members_ok = true;
            for (const auto& u : pts) {
                auto v = map_point(M, u);
                long long pulled_sum = 0;
                for (long long c : map_point(inv, v)) pulled_sum += c;
                if (!interior_in_cone(mapped_facets, v) || pulled_sum >= z)
                    members_ok = false;
                image.push_back(std::move(v));
            }
            std::sort(image.begin(), image.end());

            // Full sweep of the image box when it fits the budget: the
            // image set must be exhaustive, not merely contained.
            auto lo = box_corner(ctx.cfg, z, false), hi = box_corner(ctx.cfg, z, true);
            std::vector<long long> mlo(ctx.cfg.n), mhi(ctx.cfg.n);
            auto a = map_point(M, lo), b = map_point(M, hi);
            for (std::size_t i = 0; i < a.size(); ++i) {
                mlo[i] = std::min(a[i], b[i]);
                mhi[i] = std::max(a[i], b[i]);
            }
            std::vector<std::vector<long long>> found;
            bool swept = for_each_box_point(
                mlo, mhi, 2000000, [&](const std::vector<long long>& v) {
                    if (!interior_in_cone(mapped_facets, v)) return;
                    long long pulled_sum = 0;
                    for (long long c : map_point(inv, v)) pulled_sum += c;
                    if (pulled_sum < z) found.push_back(v);
                });
            bool sweep_ok = true;
            if (swept) {
                ++sweeps;
                std::sort(found.begin(), found.end());
                sweep_ok = found == image;
            }

            if (facets_match && members_ok && sweep_ok) ++transported;
            else ++transport_bad;
        }

        line(6, "row surplus refutes integrality; swap transport is exact",
             surplus > 0 && surplus_bad == 0 && transport_bad == 0 && sweeps >= 5,
             fmt("%zu surplus systems refuted, transport %zu/%zu, %zu full sweeps",
                 surplus - surplus_bad, transported, sample.size(), sweeps));
    }

    // 7. The operator identities: degree homogeneity and contiguity hold
    //    for the built series; a corrupted coefficient is always caught.
    {
        std::mt19937_64 rng(828301);
        auto sample = testsupport::sample_systems(20, 828302);
        std::size_t systems_ok = 0, checks = 0, controls = 0, bad = 0;
        for (std::size_t t = 0; t < sample.size(); ++t) {
            const auto& sys = sample[t];
            HGSeries F = build_F(sys, 5);
            bool ok = euler_check(sys, F).ok;
            ++checks;

            std::vector<std::vector<long long>> dirs;
            for (std::size_t s = 0; s < sys.r(); ++s) {
                std::vector<long long> q(sys.r(), 0);
                q[s] = 1;
                dirs.push_back(std::move(q));
            }
            for (int extra = 0; extra < 10; ++extra) {
                std::vector<long long> q(sys.r(), 0);
                bool nonzero = false;
                for (auto& c : q) {
                    c = testsupport::rand_below(rng, 5) - 2;
                    nonzero |= c != 0;
                }
                if (!nonzero) q[0] = 1;
                dirs.push_back(std::move(q));
            }
            for (const auto& q : dirs) {
                ok = ok && box_check(sys, F, q, 5).ok;
                ++checks;
            }
            if (ok) ++systems_ok;
            else ++bad;

            if (t < 5) {
                // Value corruption breaks contiguity along the first axis.
                HGSeries dented = F;
                std::vector<long long> pstar(sys.r(), 2);
                std::vector<long long> w = base_exponent(sys);
                std::vector<long long> l = lattice_element(sys, pstar);
                for (std::size_t i = 0; i < w.size(); ++i) w[i] += l[i];
                dented.set(w, dented.get(w) + 1);
                std::vector<long long> e1(sys.r(), 0);
                e1[0] = 1;
                ++controls;
                if (box_check(sys, dented, e1, 5).ok) ++bad;

                // An off-lattice term breaks degree homogeneity.
                HGSeries shifted = F;
                std::vector<long long> w2 = base_exponent(sys);
                w2[0] += 1;
                shifted.set(w2, Rational(1));
                ++controls;
                if (euler_check(sys, shifted).ok) ++bad;
            }
        }
        line(7, "operator identities hold and catch corrupted coefficients",
             systems_ok == sample.size() && bad == 0,
             fmt("%zu systems, %zu checks, %zu negative controls, %zu failures",
                 systems_ok, checks, controls, bad));
    }

    // 8. Quasi-solutions satisfy their two-part identity on integral
    //    systems, and the omitted-coordinate support scans are clean on
    //    every system passing the unique-interior-point criterion.
    {
        std::size_t quasi_systems = 0, quasi_checks = 0, bad = 0;
        for (const auto& sys : testsupport::sample_systems(80, 838401)) {
            if (quasi_systems == 10) break;
            if (!landau_holds(sys)) continue;
            ++quasi_systems;
            HGSeries F = build_F(sys, 4);
            std::size_t n = sys.r() + sys.J() + sys.K();
            for (std::size_t i = sys.r(); i < n; ++i) {
                HGSeries G = build_G(sys, i, 4);
                for (std::size_t s = 0; s < sys.r(); ++s) {
                    std::vector<long long> q(sys.r(), 0);
                    q[s] = 1;
                    ++quasi_checks;
                    if (!quasi_solution_check(sys, i, F, G, q, 4).ok) ++bad;
                }
            }
        }

        std::size_t scan_systems = 0, scans = 0;
        for (const auto& e : corpus) {
            if (!e.mirror_criterion) continue;
            ++scan_systems;
            std::size_t n = e.sys.r() + e.sys.J() + e.sys.K();
            for (std::size_t omit = n; omit < n + e.sys.r(); ++omit) {
                ++scans;
                if (!minimal_negative_support_scan(e.sys, 6, omit).minimal) ++bad;
            }
        }

        line(8, "quasi-solution identities and omitted-support scans hold",
             quasi_systems == 10 && scan_systems > 0 && bad == 0,
             fmt("%zu quasi systems (%zu checks), %zu scan systems (%zu scans), %zu failures",
                 quasi_systems, quasi_checks, scan_systems, scans, bad));
    }

    // 9. The grid oracle can only overestimate the step minimum, and it is
    //    exact once the grid contains the witness point.
    {
        std::size_t violations = 0, exact_misses = 0;
        for (const auto& e : corpus) {
            for (long long Q = 1; Q <= 12; ++Q)
                if (grid_oracle_min_phi(e.sys, Q) < e.summary.min_value) ++violations;
            Integer L = 1;
            for (const auto& c : e.summary.witness_point)
                L = boost::multiprecision::lcm(L, c.den());
            long long Qw = L.convert_to<long long>();
            if (grid_oracle_min_phi(e.sys, Qw) != e.summary.min_value) ++exact_misses;
        }
        line(9, "grid oracle sandwiches the step minimum",
             violations == 0 && exact_misses == 0,
             fmt("%zu systems, 12 grids each, %zu violations, %zu misses at witness lcm",
                 corpus.size(), violations, exact_misses));
    }

    // 10. Specializing the formal series to the torus variables reproduces
    //     the coefficient series; companions come back negated.
    {
        std::size_t systems_ok = 0, series_checked = 0, bad = 0;
        for (const auto& sys : testsupport::sample_systems(20, 848501)) {
            bool ok = specialize(sys, build_F(sys, 6), 6) == series_F(sys, 6);
            ++series_checked;
            std::size_t n = sys.r() + sys.J() + sys.K();
            for (std::size_t i = sys.r(); i < n; ++i) {
                TruncatedSeries got = specialize(sys, build_G(sys, i, 6), 6);
                TruncatedSeries want =
                    i < sys.r() + sys.J()
                        ? series_G_C(sys, i - sys.r(), 6)
                        : series_G_D(sys, i - sys.r() - sys.J(), 6);
                ok = ok && got == scale(want, Rational(-1));
                ++series_checked;
            }
            if (ok) ++systems_ok;
            else ++bad;
        }
        line(10, "torus specialization reproduces the coefficient series",
             bad == 0, fmt("%zu systems, %zu series compared, %zu mismatches",
                           systems_ok, series_checked, bad));
    }

    if (failures == 0) std::printf("acceptance: all 10 criteria passed\n");
    else std::printf("acceptance: %d criteria FAILED\n", failures);
    return failures == 0 ? 0 : 1;
}
