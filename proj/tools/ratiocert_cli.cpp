// Command-line front door: validate system specs, run the full dual-route
// certification, print canonical series, generate corpora, and cross-check
// whole corpora.
//
// Exit codes: 0 success (certify/cross-check: all cross-checks agree),
// 1 cross-check disagreement (an implementation-defect signal, never a data
// outcome), 2 invalid system or request on a well-formed document,
// 3 malformed input document.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "ratiocert/certify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitDisagreement = 1;
constexpr int kExitInvalid = 2;
constexpr int kExitMalformed = 3;

struct FileError {
    std::string message;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FileError{"cannot read " + path};
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_output(const std::optional<std::string>& path, const std::string& text) {
    if (!path) {
        std::fputs(text.c_str(), stdout);
        return;
    }
    std::ofstream out(*path, std::ios::binary);
    if (!out) throw FileError{"cannot write " + *path};
    out << text;
}

int report_issues(const ratiocert::ValidationResult& res) {
    for (const auto& issue : res.issues)
        std::fprintf(stderr, "[%s] %s\n", ratiocert::issue_code_name(issue.code),
                     issue.detail.c_str());
    return kExitInvalid;
}

// Parse (exit 3 on malformed) and validate (exit 2 with all violations);
// on success hands the system and its spec to the continuation.
template <class Fn>
int with_valid_system(const std::string& path, Fn&& fn) {
    ratiocert::SystemSpec spec;
    try {
        spec = ratiocert::parse_system_spec(read_file(path));
    } catch (const ratiocert::SpecParseError& e) {
        std::fprintf(stderr, "malformed spec: %s\n", e.what());
        return kExitMalformed;
    } catch (const FileError& e) {
        std::fprintf(stderr, "%s\n", e.message.c_str());
        return kExitMalformed;
    }
    ratiocert::ValidationResult res = ratiocert::validate_system(spec.r, spec.C, spec.D);
    if (!res.ok()) return report_issues(res);
    return fn(*res.system, spec);
}

int cmd_validate(const std::string& path) {
    return with_valid_system(path, [](const ratiocert::LinearFormSystem& sys,
                                      const ratiocert::SystemSpec&) {
        std::printf("valid: r=%zu J=%zu K=%zu\n", sys.r(), sys.J(), sys.K());
        return kExitOk;
    });
}

int cmd_certify(const std::string& path, const ratiocert::CertifyOptions& opt,
                const std::optional<std::string>& json_path, bool timings) {
    return with_valid_system(path, [&](const ratiocert::LinearFormSystem& sys,
                                       const ratiocert::SystemSpec& spec) {
        ratiocert::CertificationReport rep = ratiocert::certify(sys, spec, opt);
        try {
            write_output(json_path, ratiocert::report_to_json(rep, timings).dump(2) + "\n");
        } catch (const FileError& e) {
            std::fprintf(stderr, "%s\n", e.message.c_str());
            return kExitMalformed;
        }
        return rep.consistent() ? kExitOk : kExitDisagreement;
    });
}

int cmd_series(const std::string& path, const std::string& which, long long cap) {
    return with_valid_system(path, [&](const ratiocert::LinearFormSystem& sys,
                                       const ratiocert::SystemSpec&) {
        using namespace ratiocert;
        auto indexed = [&](const std::string& prefix) -> std::optional<std::size_t> {
            if (which.size() <= prefix.size() || which.compare(0, prefix.size(), prefix) != 0)
                return std::nullopt;
            std::size_t idx = 0;
            for (std::size_t i = prefix.size(); i < which.size(); ++i) {
                if (which[i] < '0' || which[i] > '9') return std::nullopt;
                idx = idx * 10 + static_cast<std::size_t>(which[i] - '0');
            }
            return idx;
        };
        try {
            TruncatedSeries out(sys.r(), cap);
            if (which == "F") {
                out = series_F(sys, cap);
            } else if (auto j = indexed("GC")) {
                if (*j < 1 || *j > sys.J()) throw std::out_of_range("GC index out of range");
                out = series_G_C(sys, *j - 1, cap);
            } else if (auto k = indexed("GD")) {
                if (*k < 1 || *k > sys.K()) throw std::out_of_range("GD index out of range");
                out = series_G_D(sys, *k - 1, cap);
            } else if (auto j = indexed("mirrorC")) {
                if (*j < 1 || *j > sys.J()) throw std::out_of_range("mirror index out of range");
                out = mirror_map(sys, MirrorIndex::forC(*j - 1), cap);
            } else if (auto k = indexed("mirrorD")) {
                if (*k < 1 || *k > sys.K()) throw std::out_of_range("mirror index out of range");
                out = mirror_map(sys, MirrorIndex::forD(*k - 1), cap);
            } else {
                std::fprintf(stderr,
                             "unknown --which %s (expected F, GC<j>, GD<k>, mirrorC<j>, "
                             "mirrorD<k>)\n",
                             which.c_str());
                return kExitInvalid;
            }
            std::fputs(serialize(out).c_str(), stdout);
            return kExitOk;
        } catch (const std::out_of_range& e) {
            std::fprintf(stderr, "%s\n", e.what());
            return kExitInvalid;
        } catch (const ratiocert::LandauPreconditionError& e) {
            std::fprintf(stderr, "%s\n", e.what());
            return kExitInvalid;
        }
    });
}

int cmd_corpus(const ratiocert::CorpusParams& params,
               const std::optional<std::string>& out_path) {
    auto specs = ratiocert::generate_corpus(params);
    try {
        write_output(out_path, ratiocert::serialize_corpus(specs));
    } catch (const FileError& e) {
        std::fprintf(stderr, "%s\n", e.message.c_str());
        return kExitMalformed;
    }
    return kExitOk;
}

int cmd_cross_check(const std::string& path, const ratiocert::CertifyOptions& opt,
                    const std::optional<std::string>& json_path, bool timings) {
    std::vector<ratiocert::SystemSpec> specs;
    try {
        specs = ratiocert::parse_corpus(read_file(path));
    } catch (const ratiocert::SpecParseError& e) {
        std::fprintf(stderr, "malformed corpus: %s\n", e.what());
        return kExitMalformed;
    } catch (const FileError& e) {
        std::fprintf(stderr, "%s\n", e.message.c_str());
        return kExitMalformed;
    }

    bool any_invalid = false;
    for (std::size_t i = 0; i < specs.size(); ++i) {
        ratiocert::ValidationResult res =
            ratiocert::validate_system(specs[i].r, specs[i].C, specs[i].D);
        if (!res.ok()) {
            any_invalid = true;
            std::fprintf(stderr, "spec %zu (%s) is invalid:\n", i, specs[i].label.c_str());
            report_issues(res);
        }
    }
    if (any_invalid) return kExitInvalid;

    std::vector<ratiocert::CertificationReport> reports =
        ratiocert::certify_corpus(specs, opt);
    std::size_t disagreements = 0;
    for (std::size_t i = 0; i < reports.size(); ++i) {
        bool ok = reports[i].consistent();
        if (!ok) ++disagreements;
        std::printf("[%zu] %s: %s\n", i,
                    specs[i].label.empty() ? "(unlabeled)" : specs[i].label.c_str(),
                    ok ? "consistent" : "DISAGREEMENT");
    }
    std::printf("checked %zu systems: %s\n", reports.size(),
                disagreements == 0 ? "all consistent"
                                   : (std::to_string(disagreements) + " disagreements").c_str());
    if (json_path) {
        ratiocert::Json arr = ratiocert::Json::array();
        for (const auto& rep : reports)
            arr.push_back(ratiocert::report_to_json(rep, timings));
        try {
            write_output(json_path, arr.dump(2) + "\n");
        } catch (const FileError& e) {
            std::fprintf(stderr, "%s\n", e.message.c_str());
            return kExitMalformed;
        }
    }
    return disagreements == 0 ? kExitOk : kExitDisagreement;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "ratiocert: exact certification of factorial-ratio and mirror-map integrality "
        "by independent step-function and lattice-point routes"};
    app.require_subcommand(1);

    std::string spec_path;
    ratiocert::CertifyOptions opt;
    std::optional<std::string> json_path, out_path;
    bool timings = false;
    std::string which = "F";
    long long series_cap = 8;
    ratiocert::CorpusParams corpus_params;
    corpus_params.count = 10;

    CLI::App* validate = app.add_subcommand("validate", "check the hypotheses of a system spec");
    validate->add_option("spec", spec_path, "JSON system spec file")->required();

    CLI::App* certify = app.add_subcommand(
        "certify", "run both certification routes plus series and operator checks");
    certify->add_option("spec", spec_path, "JSON system spec file")->required();
    certify->add_option("--cap", opt.cap, "series truncation order")->capture_default_str();
    certify->add_option("--pbox", opt.pbox, "torus-series box bound")->capture_default_str();
    certify->add_option("--scan-bound", opt.scan_bound, "ratio box-scan bound")
        ->capture_default_str();
    certify->add_option("--json", json_path, "write the report here instead of stdout");
    certify->add_flag("--timings", timings, "include the timing section in the report");

    CLI::App* series = app.add_subcommand("series", "print a canonical series expansion");
    series->add_option("spec", spec_path, "JSON system spec file")->required();
    series->add_option("--which", which,
                       "F, GC<j>, GD<k>, mirrorC<j>, or mirrorD<k> (1-based rows)")
        ->capture_default_str();
    series->add_option("--cap", series_cap, "series truncation order")->capture_default_str();

    CLI::App* corpus = app.add_subcommand("corpus", "generate a deterministic random corpus");
    corpus->add_option("--count", corpus_params.count, "number of systems")
        ->capture_default_str();
    corpus->add_option("--seed", corpus_params.seed, "RNG seed")->capture_default_str();
    corpus->add_option("--max-r", corpus_params.max_r, "max variables")->capture_default_str();
    corpus->add_option("--max-forms", corpus_params.max_forms, "max rows per family")
        ->capture_default_str();
    corpus->add_option("--max-coeff", corpus_params.max_coeff, "max coefficient")
        ->capture_default_str();
    corpus->add_option("--out", out_path, "write the corpus here instead of stdout");

    CLI::App* cross = app.add_subcommand(
        "cross-check", "certify every system in a corpus and demand route agreement");
    cross->add_option("corpus", spec_path, "JSON corpus file")->required();
    cross->add_option("--cap", opt.cap, "series truncation order")->capture_default_str();
    cross->add_option("--pbox", opt.pbox, "torus-series box bound")->capture_default_str();
    cross->add_option("--scan-bound", opt.scan_bound, "ratio box-scan bound")
        ->capture_default_str();
    cross->add_option("--json", json_path, "write the full report array here");
    cross->add_flag("--timings", timings, "include timing sections in reports");

    CLI11_PARSE(app, argc, argv);

    if (validate->parsed()) return cmd_validate(spec_path);
    if (certify->parsed()) return cmd_certify(spec_path, opt, json_path, timings);
    if (series->parsed()) return cmd_series(spec_path, which, series_cap);
    if (corpus->parsed()) return cmd_corpus(corpus_params, out_path);
    if (cross->parsed()) return cmd_cross_check(spec_path, opt, json_path, timings);
    return kExitOk;
}
