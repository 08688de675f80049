#include "sclab/words.hpp"

#include <algorithm>
#include <unordered_map>

#include "sclab/detail/rolling_hash.hpp"

namespace sclab {

void Word::check_rank(int rank) {
    if (rank < 1) throw InvalidAlphabetError("rank must be at least 1");
}

std::vector<LetterCode> reduce_letters(const std::vector<LetterCode>& raw) {
    std::vector<LetterCode> out;
    out.reserve(raw.size());
    for (LetterCode c : raw) {
        if (!out.empty() && out.back() == -c)
            out.pop_back();
        else
            out.push_back(c);
    }
    return out;
}

Word::Word(int rank, std::vector<LetterCode> raw_letters) : rank_(rank) {
    check_rank(rank);
    for (LetterCode c : raw_letters) {
        if (c == 0 || c > rank || c < -rank)
            throw InvalidAlphabetError("letter code " + std::to_string(c) +
                                       " outside rank " + std::to_string(rank));
    }
    letters_ = reduce_letters(raw_letters);
}

Word Word::parse(const std::string& text, int rank) {
    check_rank(rank);
    if (rank > 26) throw InvalidAlphabetError("text form only covers ranks up to 26");
    std::vector<LetterCode> raw;
    raw.reserve(text.size());
    for (char ch : text) {
        LetterCode c;
        if (ch >= 'a' && ch <= 'z')
            c = ch - 'a' + 1;
        else if (ch >= 'A' && ch <= 'Z')
            c = -(ch - 'A' + 1);
        else
            throw InvalidAlphabetError(std::string("bad character '") + ch + "' in word");
        if (c > rank || c < -rank)
            throw InvalidAlphabetError(std::string("letter '") + ch + "' outside rank " +
                                       std::to_string(rank));
        raw.push_back(c);
    }
    return Word(rank, std::move(raw));
}

std::string Word::str() const {
    if (rank_ > 26) throw InvalidAlphabetError("text form only covers ranks up to 26");
    std::string s;
    s.reserve(letters_.size());
    for (LetterCode c : letters_)
        s.push_back(c > 0 ? char('a' + c - 1) : char('A' - c - 1));
    return s;
}

Word invert(const Word& w) {
    std::vector<LetterCode> raw(w.letters().rbegin(), w.letters().rend());
    for (auto& c : raw) c = -c;
    return Word(w.rank(), std::move(raw));
}

Word concat(const Word& a, const Word& b) {
    if (a.rank() != b.rank()) throw RankMismatchError("concat over different ranks");
    std::vector<LetterCode> raw = a.letters();
    raw.insert(raw.end(), b.letters().begin(), b.letters().end());
    return Word(a.rank(), std::move(raw));
}

Word power(const Word& g, std::int64_t n, std::size_t max_letters) {
    if (n < 0) return power(invert(g), -n, max_letters);
    if (g.size() * static_cast<std::size_t>(n ? n : 1) > max_letters)
        throw BudgetError("power exceeds letter budget");
    Word acc(g.rank());
    for (std::int64_t i = 0; i < n; ++i) acc = concat(acc, g);
    return acc;
}

CyclicForm cyclic_reduce(const Word& w) {
    const auto& ls = w.letters();
    std::size_t lo = 0, hi = ls.size();
    while (hi - lo >= 2 && ls[lo] == -ls[hi - 1]) {
        ++lo;
        --hi;
    }
    Word core(w.rank(), std::vector<LetterCode>(ls.begin() + lo, ls.begin() + hi));
    Word conj(w.rank(), std::vector<LetterCode>(ls.begin(), ls.begin() + lo));
    return {std::move(core), std::move(conj)};
}

std::vector<std::int64_t> abelianize(const Word& w) {
    std::vector<std::int64_t> e(w.rank(), 0);
    for (LetterCode c : w.letters()) {
        if (c > 0)
            ++e[c - 1];
        else
            --e[-c - 1];
    }
    return e;
}

bool is_homologically_trivial(const Word& w) {
    for (auto v : abelianize(w))
        if (v != 0) return false;
    return true;
}

std::size_t translation_length(const Word& w) { return cyclic_reduce(w).core.size(); }

std::vector<std::size_t> find_occurrences(const Word& w, const Word& sigma) {
    std::vector<std::size_t> hits;
    if (sigma.empty() || sigma.size() > w.size()) return hits;
    const auto& h = w.letters();
    const auto& p = sigma.letters();
    for (std::size_t i = 0; i + p.size() <= h.size(); ++i) {
        bool ok = true;
        for (std::size_t j = 0; j < p.size(); ++j) {
            if (h[i + j] != p[j]) {
                ok = false;
                break;
            }
        }
        if (ok) hits.push_back(i);
    }
    return hits;
}

bool contains_subword(const Word& w, const Word& sigma) {
    if (sigma.empty()) return true;
    return !find_occurrences(w, sigma).empty();
}

namespace {

// Earliest-endpoint greedy over [start, start+len) intervals; optimal for
// disjoint interval selection.
DisjointCount schedule_linear(std::vector<Occurrence> occs) {
    std::sort(occs.begin(), occs.end(), [](const Occurrence& a, const Occurrence& b) {
        const std::size_t ea = a.start + a.length, eb = b.start + b.length;
        if (ea != eb) return ea < eb;
        return a.start < b.start;
    });
    DisjointCount result;
    std::size_t free_from = 0;
    for (const auto& o : occs) {
        if (o.start >= free_from) {
            result.chosen.push_back(o);
            free_from = o.start + o.length;
        }
    }
    result.count = static_cast<std::int64_t>(result.chosen.size());
    return result;
}

}  // namespace

DisjointCount max_disjoint_occurrences(const Word& w, const std::vector<Word>& sigmas,
                                       bool cyclic) {
    for (const auto& s : sigmas) {
        if (s.rank() != w.rank()) throw RankMismatchError("family rank differs from word rank");
        if (s.size() < 2) throw FamilyError("family members must have length at least 2");
    }
    const std::size_t n = w.size();
    if (n == 0) return {};

    std::vector<Occurrence> occs;
    if (!cyclic) {
        bool uniform = sigmas.size() > 1;
        const std::size_t b = sigmas.empty() ? 0 : sigmas.front().size();
        for (const auto& s : sigmas)
            if (s.size() != b) uniform = false;
        if (uniform && b <= n && sigmas.size() * n > (std::size_t(1) << 22)) {
            // Large same-length family: hash every window of w once instead of
            // scanning the whole word per member.
            const detail::RollingHash wh(w.letters());
            std::unordered_map<std::uint64_t, std::vector<std::size_t>> member_of;
            member_of.reserve(sigmas.size() * 2);
            for (std::size_t fi = 0; fi < sigmas.size(); ++fi) {
                const detail::RollingHash sh(sigmas[fi].letters());
                member_of[sh.slice(0, b)].push_back(fi);
            }
            for (std::size_t i = 0; i + b <= n; ++i) {
                const auto it = member_of.find(wh.slice(i, b));
                if (it == member_of.end()) continue;
                for (std::size_t fi : it->second) {
                    const auto& p = sigmas[fi].letters();
                    bool ok = true;
                    for (std::size_t j = 0; j < b; ++j) {
                        if (w.letters()[i + j] != p[j]) {
                            ok = false;
                            break;
                        }
                    }
                    if (ok) {
                        occs.push_back({i, b, fi});
                        break;
                    }
                }
            }
        } else {
            for (std::size_t fi = 0; fi < sigmas.size(); ++fi)
                for (std::size_t s : find_occurrences(w, sigmas[fi]))
                    occs.push_back({s, sigmas[fi].size(), fi});
        }
        return schedule_linear(std::move(occs));
    }

    // Cyclic: scan w*w, keep starts in the first period. A member longer than
    // the cycle cannot occur disjointly at all.
    std::vector<LetterCode> doubled = w.letters();
    doubled.insert(doubled.end(), w.letters().begin(), w.letters().end());
    for (std::size_t fi = 0; fi < sigmas.size(); ++fi) {
        const auto& p = sigmas[fi].letters();
        if (p.size() > n) continue;
        for (std::size_t i = 0; i < n; ++i) {
            bool ok = true;
            for (std::size_t j = 0; j < p.size(); ++j) {
                if (doubled[i + j] != p[j]) {
                    ok = false;
                    break;
                }
            }
            if (ok) occs.push_back({i, p.size(), fi});
        }
    }
    if (occs.empty()) return {};

    // Exact circular selection: one chosen arc J splits the circle; the rest
    // is a linear instance on the complementary arc.
    DisjointCount best;
    for (const auto& J : occs) {
        const std::size_t arc_start = (J.start + J.length) % n;
        const std::size_t arc_len = n - J.length;
        std::vector<Occurrence> linearized;
        for (const auto& o : occs) {
            if (&o == &J) continue;
            const std::size_t rel = (o.start + n - arc_start) % n;
            if (rel + o.length <= arc_len) linearized.push_back({rel, o.length, o.family_index});
        }
        DisjointCount inner = schedule_linear(std::move(linearized));
        if (inner.count + 1 > best.count) {
            best.count = inner.count + 1;
            best.chosen.clear();
            best.chosen.push_back(J);
            for (auto o : inner.chosen) {
                o.start = (o.start + arc_start) % n;
                best.chosen.push_back(o);
            }
        }
    }
    return best;
}

}  // namespace sclab
