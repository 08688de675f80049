#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sclab/quasimorphism.hpp"
#include "sclab/rational.hpp"
#include "sclab/words.hpp"

namespace sclab {

// The word with the same abelianization as g spelled as concatenated
// generator powers; g * invert(correction) lies in the commutator subgroup.
Word homology_correction(const Word& g);

// Constructive cl bound |h|/2 for h in the commutator subgroup: while h is
// nonempty some generator occurs with both signs, and excising one positive
// and one negative occurrence together costs one commutator
// (x a y a^{-1} z = [x a, y] (x y z), and symmetrically).
std::int64_t cl_trivial_bound(const Word& h);

// One excision round: at this block length, every stored pair (i, j) has
// i < j and the letters at [j, j+b) spelling exactly the inverse of the
// letters at [i, i+b), all 2|pairs| intervals pairwise disjoint. Offsets
// refer to the residual word as it stands when the round is replayed.
struct PairingRound {
    std::size_t block_length = 0;
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
};

// Replayable upper-bound certificate: starting from the reduced word of
// g^power, apply each round (excise all paired intervals, freely reduce),
// ending at leftover. Each pair costs one commutator, the leftover is
// absorbed by cl_trivial_bound, and scl_upper divides by the power.
struct PairingCertificate {
    std::int64_t power = 1;
    std::vector<PairingRound> rounds;
    Word leftover;
    std::int64_t pair_count = 0;
    std::int64_t commutator_count_bound = 0;
    Rational scl_upper{0};

    PairingCertificate() : leftover(1) {}

    std::string to_json() const;
    static PairingCertificate from_json(const std::string& text, int rank);
};

// Pairing upper bound for scl(g) computed on g^N: repeatedly sweep the block
// scale from just above the birthday length (where inverse substring pairs
// stop existing) down to 2, each time excising a maximal greedy set of
// disjoint exactly-inverse substring pairs, reducing, and re-sweeping until
// no pair remains at any scale. Unpaired residue goes to cl_trivial_bound.
// ell is validated against the usual block-length precondition but the sweep
// schedule is scale-adaptive rather than fixed at one block length; matching
// at a single aligned block scale leaves far too much unpaired mass to meet
// the target constants.
PairingCertificate pairing_upper(const Word& g, double ell, std::int64_t N,
                                 std::size_t max_letters = std::size_t(1) << 24);

// Replay cert against g from scratch; true iff every round is legal and all
// stored numbers reproduce.
bool verify_pairing(const PairingCertificate& cert, const Word& g);

struct CommutatorWitness {
    Word x;
    Word y;
};

// Exhaustive search for w = [x, y] over reduced x, y up to the length budget.
// A hit certifies cl(w) = 1 (hence scl(w) <= 1); absence proves nothing.
std::optional<CommutatorWitness> is_commutator_budget(const Word& w, int budget);

struct SandwichParams {
    double ell = 0.9;
    double L = 2.5;
    std::vector<std::int64_t> powers = {1, 2, 4, 8};
    std::vector<Word> hint_family;  // optional extra counting family for the lower route
    std::uint64_t seed = 0;
    std::size_t max_letters = std::size_t(1) << 24;
};

struct SclSandwich {
    Word word;
    Rational lower{0};
    Rational upper{0};
    std::int64_t power_used = 1;
    LowerCertificate lower_certificate;
    PairingCertificate upper_certificate;
    bool upper_from_witness = false;  // when set, witness certifies cl = 1
    CommutatorWitness witness;

    SclSandwich() : word(1), witness{Word(1), Word(1)} {}

    std::string to_json() const;
};

// Assemble lower and upper bounds for scl(g); lower <= upper is enforced as
// a hard check, not merely reported.
SclSandwich sandwich(const Word& g, const SandwichParams& params = {});

}  // namespace sclab
