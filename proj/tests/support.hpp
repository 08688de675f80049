#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "sclab/rng.hpp"
#include "sclab/words.hpp"

namespace testsupport {

// Uniform reduced word of exactly the requested length (non-backtracking draw).
inline sclab::Word random_reduced(int rank, std::int64_t n, sclab::Rng& rng) {
    std::vector<sclab::LetterCode> letters;
    letters.reserve(static_cast<std::size_t>(n));
    const std::uint64_t total = 2 * static_cast<std::uint64_t>(rank);
    for (std::int64_t i = 0; i < n; ++i) {
        sclab::LetterCode c;
        do {
            const std::uint64_t r = rng.below(total);
            c = r < static_cast<std::uint64_t>(rank) ? sclab::LetterCode(r + 1)
                                                     : -sclab::LetterCode(r - rank + 1);
        } while (!letters.empty() && c == -letters.back());
        letters.push_back(c);
    }
    return sclab::Word(rank, letters);
}

// Unreduced letter soup, for exercising reduction itself.
inline std::vector<sclab::LetterCode> random_raw(int rank, std::int64_t n, sclab::Rng& rng) {
    std::vector<sclab::LetterCode> letters;
    letters.reserve(static_cast<std::size_t>(n));
    const std::uint64_t total = 2 * static_cast<std::uint64_t>(rank);
    for (std::int64_t i = 0; i < n; ++i) {
        const std::uint64_t r = rng.below(total);
        letters.push_back(r < static_cast<std::uint64_t>(rank)
                              ? sclab::LetterCode(r + 1)
                              : -sclab::LetterCode(r - rank + 1));
    }
    return letters;
}

// Independent maximum-disjoint-copies oracle: dynamic program over start
// positions (take the best occurrence starting here, or move on). Exact for
// interval scheduling, and structured nothing like the greedy under test.
// Works on raw letter arrays so cyclic rotations stay unreduced.
inline std::int64_t disjoint_oracle_letters(const std::vector<sclab::LetterCode>& w,
                                            const std::vector<sclab::Word>& sigmas) {
    const std::size_t n = w.size();
    std::vector<std::int64_t> best(n + 1, 0);
    for (std::size_t pos = n; pos-- > 0;) {
        best[pos] = best[pos + 1];
        for (const sclab::Word& s : sigmas) {
            const std::size_t len = s.size();
            if (pos + len > n) continue;
            bool hit = true;
            for (std::size_t j = 0; j < len && hit; ++j) hit = w[pos + j] == s.at(j);
            if (hit) best[pos] = std::max(best[pos], 1 + best[pos + len]);
        }
    }
    return best[0];
}

inline std::int64_t disjoint_oracle_linear(const sclab::Word& w,
                                           const std::vector<sclab::Word>& sigmas) {
    return disjoint_oracle_letters(w.letters(), sigmas);
}

// Cyclic oracle: every optimal circular selection leaves a cut point at some
// occurrence boundary, so the maximum over all rotations of the linear answer
// is exact. The rotated array is matched verbatim; the circle of a word that
// is not cyclically reduced still carries the cancelling pair.
inline std::int64_t disjoint_oracle_cyclic(const sclab::Word& w,
                                           const std::vector<sclab::Word>& sigmas) {
    const std::size_t n = w.size();
    if (n == 0) return 0;
    std::int64_t best = 0;
    std::vector<sclab::LetterCode> rot(w.letters());
    for (std::size_t r = 0; r < n; ++r) {
        best = std::max(best, disjoint_oracle_letters(rot, sigmas));
        std::rotate(rot.begin(), rot.begin() + 1, rot.end());
    }
    return best;
}

// Box-Muller pair, one value per call.
inline double gaussian(sclab::Rng& rng) {
    const double u = 1.0 - rng.uniform();
    const double v = rng.uniform();
    return std::sqrt(-2.0 * std::log(u)) * std::cos(6.283185307179586 * v);
}

}  // namespace testsupport
