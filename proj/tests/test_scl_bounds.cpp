#include <doctest.h>

#include <cstdint>
#include <vector>

#include "sclab/errors.hpp"
#include "sclab/montecarlo.hpp"
#include "sclab/rng.hpp"
#include "sclab/scl_bounds.hpp"
#include "sclab/words.hpp"
#include "support.hpp"

using namespace sclab;

TEST_SUITE("scl_bounds") {

TEST_CASE("homology correction spells the abelianization") {
    CHECK(homology_correction(Word::parse("aab", 2)).str() == "aab");
    CHECK(homology_correction(Word::parse("abAB", 2)).size() == 0);
    CHECK(homology_correction(Word::parse("bba", 2)).str() == "abb");
    CHECK(homology_correction(Word::parse("aBAb", 2)).size() == 0);
    CHECK(homology_correction(Word::parse("BaB", 2)).str() == "aBB");

    Rng rng(401);
    for (int it = 0; it < 2000; ++it) {
        const Word w = testsupport::random_reduced(2, int(rng.below(40)), rng);
        const Word h = concat(w, invert(homology_correction(w)));
        CHECK(is_homologically_trivial(h));
    }
}

TEST_CASE("trivial commutator length bound") {
    CHECK(cl_trivial_bound(Word::parse("abAB", 2)) == 2);
    CHECK(cl_trivial_bound(Word(2)) == 0);
    CHECK_THROWS_AS(cl_trivial_bound(Word::parse("ab", 2)), HomologyError);

    // never better than the sharp answer where one is known
    CHECK(cl_trivial_bound(Word::parse("abAB", 2)) >= 1);

    Rng rng(402);
    for (int it = 0; it < 500; ++it) {
        const Word w = testsupport::random_reduced(2, int(rng.below(20)), rng);
        const Word h = concat(w, invert(homology_correction(w)));
        CHECK(cl_trivial_bound(h) <= std::int64_t(h.size()) / 2);
    }
}

TEST_CASE("pairing upper bound on the basic commutator") {
    const Word g = Word::parse("abAB", 2);
    const PairingCertificate cert = pairing_upper(g, 0.9, 1);
    CHECK(cert.scl_upper <= Rational(2));
    CHECK(verify_pairing(cert, g));

    PairingCertificate bent = cert;
    bent.scl_upper = bent.scl_upper + Rational(1);
    CHECK_FALSE(verify_pairing(bent, g));
}

TEST_CASE("pairing bound improves with the power") {
    Rng rng(17);
    const Word g = conditioned_geodesic(2, 1024, rng).word;
    const PairingCertificate c1 = pairing_upper(g, 0.9, 1);
    const PairingCertificate c2 = pairing_upper(g, 0.9, 2);
    const PairingCertificate c4 = pairing_upper(g, 0.9, 4);
    CHECK(c1.scl_upper.to_double() == doctest::Approx(75.0));
    CHECK(c2.scl_upper.to_double() == doctest::Approx(72.5));
    CHECK(c4.scl_upper.to_double() == doctest::Approx(71.5));
    CHECK(c4.scl_upper <= c1.scl_upper);
    CHECK(verify_pairing(c2, g));
}

TEST_CASE("pairing certificates survive serialization") {
    Rng rng(23);
    const Word g = conditioned_geodesic(2, 256, rng).word;
    const PairingCertificate cert = pairing_upper(g, 0.9, 2);
    const PairingCertificate back = PairingCertificate::from_json(cert.to_json(), 2);
    CHECK(back.to_json() == cert.to_json());
    CHECK(back.scl_upper == cert.scl_upper);
    CHECK(verify_pairing(back, g));
}

TEST_CASE("bounded commutator search") {
    const auto empty_hit = is_commutator_budget(Word(2), 1);
    REQUIRE(empty_hit.has_value());
    CHECK(empty_hit->x.size() == 0);

    const auto hit = is_commutator_budget(Word::parse("abAB", 2), 2);
    REQUIRE(hit.has_value());
    const Word rebuilt = concat(concat(hit->x, hit->y), concat(invert(hit->x), invert(hit->y)));
    CHECK(rebuilt.letters() == Word::parse("abAB", 2).letters());

    CHECK_FALSE(is_commutator_budget(power(Word::parse("abAB", 2), 2), 4).has_value());
    CHECK_THROWS_AS(is_commutator_budget(Word::parse("abAB", 2), 7), BudgetError);
    CHECK_THROWS_AS(is_commutator_budget(Word::parse("ab", 2), 2), HomologyError);
}

TEST_CASE("sandwich on the basic commutator") {
    const SclSandwich s = sandwich(Word::parse("abAB", 2));
    CHECK(Rational(1, 24) <= s.lower);
    CHECK(s.upper <= Rational(1));
    CHECK(s.lower <= s.upper);
    CHECK(s.upper_from_witness);
    CHECK(verify_lower(s.lower_certificate, s.word));
}

TEST_CASE("sandwich on the empty word") {
    const SclSandwich s = sandwich(Word(2));
    CHECK(s.lower == Rational(0));
    CHECK(s.upper == Rational(0));
}

TEST_CASE("sandwich order holds on random conditioned geodesics") {
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
        Rng rng(seed);
        const Word g = conditioned_geodesic(2, 512, rng).word;
        SandwichParams p;
        p.powers = {1, 2};
        p.seed = seed;
        const SclSandwich s = sandwich(g, p);
        CHECK(s.lower <= s.upper);
        CHECK(Rational(0) <= s.lower);
        if (!s.upper_from_witness) CHECK(verify_pairing(s.upper_certificate, g));
    }
}

TEST_CASE("sandwich respects subadditivity across products") {
    // scl(gh) <= scl(g) + scl(h) + 1/2 for independent words, so the lower
    // bound of the product must stay under the upper bounds plus the slack
    Rng rng(23);
    for (int it = 0; it < 8; ++it) {
        const Word g = conditioned_geodesic(2, 256, rng).word;
        const Word h = conditioned_geodesic(2, 256, rng).word;
        SandwichParams p;
        p.powers = {1, 2};
        const SclSandwich sg = sandwich(g, p);
        const SclSandwich sh = sandwich(h, p);
        const SclSandwich sgh = sandwich(concat(g, h), p);
        CHECK(sgh.lower <= sg.upper + sh.upper + Rational(1, 2));
    }
}

}  // TEST_SUITE
