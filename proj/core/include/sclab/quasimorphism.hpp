#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sclab/rational.hpp"
#include "sclab/words.hpp"

namespace sclab {

// A finite counting family: reduced words of length at least 2 over one rank.
class CountingFamily {
  public:
    CountingFamily(int rank, std::vector<Word> members);
    static CountingFamily parse(int rank, const std::vector<std::string>& texts);

    int rank() const { return rank_; }
    const std::vector<Word>& members() const { return members_; }
    CountingFamily inverse() const;

  private:
    int rank_;
    std::vector<Word> members_;
};

// c_Sigma(g): maximum number of pairwise disjoint copies of family members in
// the reduced word of g. In a tree the unique geodesic realizes the infimum
// of length minus copy count over all paths: a detour of length 2d can gain
// at most d extra copies, each copy having length at least 2, so detours
// never pay for themselves.
std::int64_t small_count(const Word& g, const CountingFamily& family);

// h_Sigma(g) = c_Sigma(g) - c_SigmaInverse(g); antisymmetric under inversion.
std::int64_t h_sigma(const Word& g, const CountingFamily& family);

// Certified defect bound D for h_Sigma, fixed at 6 for every family. The
// tripod argument behind it: the reduced words of g, h, gh trace a tripod
// with three legs; passing from counts on the sides to counts on the legs
// breaks at most two disjoint copies per leg end, once for each counting
// orientation. The constant is deliberately conservative; lower bounds built
// from it only improve if the true defect is smaller.
Rational defect_certificate(const CountingFamily& family);

// Max of |h(gh) - h(g) - h(h)| over random reduced pairs with lengths up to
// max_length. The certificate is falsified if this ever exceeds it.
std::int64_t empirical_defect(const CountingFamily& family, std::int64_t trials,
                              std::uint64_t seed, std::size_t max_length = 48);

struct HomogenizeEstimate {
    Rational value;        // h_Sigma(g^N) / N
    Rational error_bound;  // D / N against the homogenization limit
};
HomogenizeEstimate homogenize_estimate(const CountingFamily& family, const Word& g,
                                       std::int64_t N);

enum class LowerRoute {
    direct,  // counts on g itself: scl >= (c - c_inv - D) / (4 D)
    power,   // counts on core(g)^N: superadditivity pushes the estimate to the limit
};

// Self-contained lower-bound certificate: re-deriving every count from the
// stored family reproduces lower_bound exactly.
struct LowerCertificate {
    LowerRoute route = LowerRoute::direct;
    std::vector<Word> family;
    std::int64_t c = 0;
    std::int64_t c_inv = 0;
    Rational defect_bound{6};
    Rational lower_bound{0};
    std::int64_t power = 1;       // power route: counts taken on core(g)^power
    bool inverse_absent = false;  // power route: no member inverse ever occurs in core powers

    std::string to_json() const;
    static LowerCertificate from_json(const std::string& text, int rank);
};

// Direct Bavard route on g as given. Builds the family from the successive
// blocks of g (length floor(L log n / log(2k-1))) whose inverses do not occur
// in g. When the block recipe degenerates or scores nonpositive, falls back
// to fallback_family if nonempty, else to the single best block by h-value.
// Requires zero abelianization.
LowerCertificate bavard_lower(const Word& g, double L, std::uint64_t seed,
                              const std::vector<Word>& fallback_family = {});

// Power route: counts on core(g)^N. Disjoint copies in consecutive powers
// concatenate, so c(core^t)/t increases to the homogenized value and every
// finite N already gives a valid bound; the inverse count enters through
// c(core^N) + 1 over N unless member inverses provably never occur in any
// power, which is decidable by checking a window of ceil(max |sigma| / |core|)
// plus two periods.
LowerCertificate power_lower(const Word& g, const CountingFamily& family, std::int64_t N);

// Recompute every count and the bound formula for cert against g.
bool verify_lower(const LowerCertificate& cert, const Word& g);

}  // namespace sclab
