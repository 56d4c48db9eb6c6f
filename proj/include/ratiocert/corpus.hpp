#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "ratiocert/linear_system.hpp"

namespace ratiocert {

// A system as it travels through files and reports: raw matrices plus label,
// not yet validated.
struct SystemSpec {
    std::size_t r = 0;
    Matrix C, D;
    std::string label;
};

struct CorpusParams {
    std::size_t count = 0;
    std::uint64_t seed = 0;
    std::size_t max_r = 2;
    std::size_t max_forms = 3;
    long long max_coeff = 3;
};

// Deterministic random corpus.  mt19937_64 with plain modulo sampling keeps
// the byte stream identical across platforms (std::uniform_int_distribution
// is implementation-defined, so it is deliberately avoided).  Column balance
// holds by construction: each D column is a random composition of the
// matching C column sum with parts capped at max_coeff.  Attempts that
// violate any remaining hypothesis are discarded and redrawn.
inline std::vector<SystemSpec> generate_corpus(const CorpusParams& params) {
    std::mt19937_64 rng(params.seed);
    auto below = [&rng](std::uint64_t n) { return static_cast<std::size_t>(rng() % n); };

    std::vector<SystemSpec> out;
    out.reserve(params.count);
    while (out.size() < params.count) {
        const std::size_t r = 1 + below(params.max_r);
        const std::size_t J = 1 + below(params.max_forms);
        const std::size_t K = 1 + below(params.max_forms);

        Matrix C(J, std::vector<long long>(r));
        bool shape_ok = true;
        for (auto& row : C)
            for (auto& entry : row)
                entry = static_cast<long long>(below(static_cast<std::uint64_t>(params.max_coeff) + 1));
        for (std::size_t s = 0; s < r && shape_ok; ++s) {
            long long colsum = 0;
            for (const auto& row : C) colsum += row[s];
            // Every variable must be used, and the column sum must admit a
            // composition into K parts of size <= max_coeff.
            if (colsum == 0 || colsum > static_cast<long long>(K) * params.max_coeff)
                shape_ok = false;
        }
        if (!shape_ok) continue;

        Matrix D(K, std::vector<long long>(r, 0));
        for (std::size_t s = 0; s < r; ++s) {
            long long colsum = 0;
            for (const auto& row : C) colsum += row[s];
            for (long long unit = 0; unit < colsum; ++unit) {
                std::size_t k;
                do { k = below(K); } while (D[k][s] >= params.max_coeff);
                ++D[k][s];
            }
        }

        if (!validate_system(r, C, D).ok()) continue;

        SystemSpec spec;
        spec.r = r;
        spec.C = std::move(C);
        spec.D = std::move(D);
        spec.label = "gen-" + std::to_string(params.seed) + "-" + std::to_string(out.size());
        out.push_back(std::move(spec));
    }
    return out;
}

}  // namespace ratiocert
