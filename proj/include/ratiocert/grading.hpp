#pragma once

#include <cstddef>
#include <vector>

namespace ratiocert {

// Graded lexicographic order on exponent vectors: total degree first, then
// componentwise lex.  This is the canonical ordering for every enumeration
// and serialization in the library, so witnesses are reproducible.
struct GradedLexLess {
    bool operator()(const std::vector<long long>& a, const std::vector<long long>& b) const {
        long long sa = 0, sb = 0;
        for (long long v : a) sa += v;
        for (long long v : b) sb += v;
        if (sa != sb) return sa < sb;
        return a < b;
    }
};

namespace detail {

template <typename Fn>
void graded_compositions(long long remaining, long long part_cap, std::size_t idx,
                         std::vector<long long>& m, Fn&& fn) {
    if (idx + 1 == m.size()) {
        if (remaining <= part_cap) {
            m[idx] = remaining;
            fn(const_cast<const std::vector<long long>&>(m));
        }
        return;
    }
    long long hi = remaining < part_cap ? remaining : part_cap;
    for (long long v = 0; v <= hi; ++v) {
        m[idx] = v;
        graded_compositions(remaining - v, part_cap, idx + 1, m, fn);
    }
}

}  // namespace detail

// Visits every m in [0,B]^r in graded lex order (degree ascending, lex within
// a degree).  fn receives const std::vector<long long>&.
template <typename Fn>
void for_each_graded_box(std::size_t r, long long B, Fn&& fn) {
    std::vector<long long> m(r, 0);
    for (long long total = 0; total <= B * static_cast<long long>(r); ++total)
        detail::graded_compositions(total, B, 0, m, fn);
}

// Same, over the simplex { m >= 0 : sum m_s <= cap }.
template <typename Fn>
void for_each_graded_simplex(std::size_t r, long long cap, Fn&& fn) {
    std::vector<long long> m(r, 0);
    for (long long total = 0; total <= cap; ++total)
        detail::graded_compositions(total, total, 0, m, fn);
}

}  // namespace ratiocert
