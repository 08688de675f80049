#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "sclab/errors.hpp"

namespace sclab {

// Letters are nonzero signed codes: +i is the i-th generator, -i its inverse
// (i in 1..rank). The packed form keeps word ops branch-light; the struct view
// below is for callers that want named fields.
using LetterCode = std::int32_t;

struct Letter {
    int index;  // 1-based generator index
    int sign;   // +1 or -1
};

inline Letter letter_of(LetterCode c) { return {c > 0 ? c : -c, c > 0 ? 1 : -1}; }
inline LetterCode code_of(Letter l) { return l.sign > 0 ? l.index : -l.index; }

// A reduced word in the free group of a fixed rank. Construction reduces, so
// every Word in flight is freely reduced by invariant.
class Word {
  public:
    explicit Word(int rank) : rank_(rank) { check_rank(rank); }
    Word(int rank, std::vector<LetterCode> raw_letters);

    int rank() const { return rank_; }
    std::size_t size() const { return letters_.size(); }
    bool empty() const { return letters_.empty(); }
    const std::vector<LetterCode>& letters() const { return letters_; }
    LetterCode at(std::size_t i) const { return letters_[i]; }

    friend bool operator==(const Word& a, const Word& b) {
        return a.rank_ == b.rank_ && a.letters_ == b.letters_;
    }
    friend bool operator!=(const Word& a, const Word& b) { return !(a == b); }

    // Text form: 'a'..'z' generators, 'A'..'Z' inverses. Only ranks up to 26
    // have a text form; larger ranks still work through the letter-code API.
    static Word parse(const std::string& text, int rank);
    std::string str() const;

    static void check_rank(int rank);

  private:
    int rank_;
    std::vector<LetterCode> letters_;
};

// Free reduction of a raw letter sequence (stack scan, single pass).
std::vector<LetterCode> reduce_letters(const std::vector<LetterCode>& raw);

Word invert(const Word& w);
Word concat(const Word& a, const Word& b);

// g^n by iterated reduced concatenation. Throws BudgetError past max_letters.
Word power(const Word& g, std::int64_t n, std::size_t max_letters = std::size_t(1) << 24);

// w = conjugator * core * conjugator^{-1} with core cyclically reduced.
struct CyclicForm {
    Word core;
    Word conjugator;
};
CyclicForm cyclic_reduce(const Word& w);

// Exponent-sum vector, one entry per generator.
std::vector<std::int64_t> abelianize(const Word& w);
bool is_homologically_trivial(const Word& w);

// Translation length on the Cayley tree = length of the cyclically reduced core.
std::size_t translation_length(const Word& w);

// All start positions where sigma occurs as a (literal, possibly overlapping)
// subword of w.
std::vector<std::size_t> find_occurrences(const Word& w, const Word& sigma);
bool contains_subword(const Word& w, const Word& sigma);

struct Occurrence {
    std::size_t start;   // in cyclic mode, taken mod |w|
    std::size_t length;
    std::size_t family_index;
};

struct DisjointCount {
    std::int64_t count = 0;
    std::vector<Occurrence> chosen;
};

// Maximum number of pairwise disjoint occurrences of members of sigmas in w.
// Linear mode is the classic earliest-endpoint greedy (optimal for interval
// scheduling). Cyclic mode finds occurrences on w*w with starts capped to the
// first period, then solves the circular selection exactly by fixing each
// occurrence in turn and scheduling its complementary arc.
DisjointCount max_disjoint_occurrences(const Word& w, const std::vector<Word>& sigmas,
                                       bool cyclic = false);

}  // namespace sclab
