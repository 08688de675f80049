#include "sclab/scl_bounds.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <unordered_map>

#include <nlohmann/json.hpp>

#include "sclab/detail/rolling_hash.hpp"
#include "sclab/errors.hpp"

namespace sclab {

namespace {

using Letters = std::vector<LetterCode>;

// Cap on how many same-hash candidates are probed per position; keeps highly
// repetitive words from going quadratic while barely affecting the greedy
// pair count.
constexpr std::size_t kCandidateCap = 64;

std::vector<std::pair<std::size_t, std::size_t>> greedy_pairs(const Letters& cur,
                                                              std::size_t b) {
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    const std::size_t m = cur.size();
    if (b < 1 || m < 2 * b) return pairs;

    const detail::RollingHash fwd(cur);
    Letters rev(m);
    for (std::size_t i = 0; i < m; ++i) rev[i] = -cur[m - 1 - i];
    const detail::RollingHash bwd(rev);

    std::unordered_map<std::uint64_t, std::vector<std::size_t>> at;
    at.reserve(m * 2);
    for (std::size_t p = 0; p + b <= m; ++p) at[fwd.slice(p, b)].push_back(p);

    std::vector<char> taken(m, 0);
    const auto interval_free = [&](std::size_t start) {
        for (std::size_t i = start; i < start + b; ++i)
            if (taken[i]) return false;
        return true;
    };
    const auto mark = [&](std::size_t start) {
        for (std::size_t i = start; i < start + b; ++i) taken[i] = 1;
    };

    for (std::size_t p = 0; p + b <= m; ++p) {
        if (taken[p] || !interval_free(p)) continue;
        // hash of the inverse of cur[p, p+b): a window of the reversed
        // negated word
        const std::uint64_t want = bwd.slice(m - p - b, b);
        const auto it = at.find(want);
        if (it == at.end()) continue;
        std::size_t probes = 0;
        for (std::size_t q : it->second) {
            if (++probes > kCandidateCap) break;
            if (q + b > p && p + b > q) continue;  // overlapping intervals
            if (!interval_free(q)) continue;
            bool inverse = true;
            for (std::size_t i = 0; i < b; ++i)
                if (cur[q + i] != -cur[p + b - 1 - i]) {
                    inverse = false;
                    break;
                }
            if (!inverse) continue;
            mark(p);
            mark(q);
            pairs.emplace_back(std::min(p, q), std::max(p, q));
            break;
        }
    }
    std::sort(pairs.begin(), pairs.end());
    return pairs;
}

Letters excise(const Letters& cur, const std::vector<std::pair<std::size_t, std::size_t>>& pairs,
               std::size_t b) {
    std::vector<char> cut(cur.size(), 0);
    for (const auto& [i, j] : pairs) {
        for (std::size_t t = 0; t < b; ++t) {
            cut[i + t] = 1;
            cut[j + t] = 1;
        }
    }
    Letters kept;
    kept.reserve(cur.size());
    for (std::size_t i = 0; i < cur.size(); ++i)
        if (!cut[i]) kept.push_back(cur[i]);
    return reduce_letters(kept);
}

std::size_t top_scale(std::size_t m, double log_lambda) {
    if (m < 4) return 0;
    const auto birthday =
        static_cast<std::size_t>(2.0 * std::log(static_cast<double>(m)) / log_lambda) + 4;
    return std::min(m / 2, birthday);
}

nlohmann::json as_json(const std::string& text) { return nlohmann::json::parse(text); }

}  // namespace

Word homology_correction(const Word& g) {
    const std::vector<std::int64_t> e = abelianize(g);
    std::vector<LetterCode> letters;
    for (int i = 0; i < g.rank(); ++i) {
        const LetterCode c = e[i] >= 0 ? (i + 1) : -(i + 1);
        for (std::int64_t t = 0; t < std::llabs(e[i]); ++t) letters.push_back(c);
    }
    return Word(g.rank(), std::move(letters));
}

std::int64_t cl_trivial_bound(const Word& h) {
    if (!is_homologically_trivial(h))
        throw HomologyError("trivial bound needs zero abelianization");
    return static_cast<std::int64_t>((h.size() + 1) / 2);
}

PairingCertificate pairing_upper(const Word& g, double ell, std::int64_t N,
                                 std::size_t max_letters) {
    if (ell <= 0.0 || ell >= 1.0) throw Error("ell must lie strictly between 0 and 1");
    if (N < 1) throw Error("power must be at least 1");
    if (!is_homologically_trivial(g))
        throw HomologyError("pairing bound needs zero abelianization");

    PairingCertificate cert;
    cert.power = N;
    cert.leftover = Word(g.rank());
    if (g.empty()) return cert;
    if (g.rank() < 2) throw Error("pairing bound needs rank at least 2");

    const Word w = power(g, N, max_letters);
    const double log_lambda = std::log(2.0 * g.rank() - 1.0);
    const double n = static_cast<double>(w.size());
    if (std::floor(ell * std::log(n) / log_lambda) < 1.0)
        throw Error("block length below 1, the word is too short for this ell");

    Letters cur = w.letters();
    for (;;) {
        bool progress = false;
        for (std::size_t b = top_scale(cur.size(), log_lambda); b >= 2; --b) {
            auto pairs = greedy_pairs(cur, b);
            if (pairs.empty()) continue;
            cert.pair_count += static_cast<std::int64_t>(pairs.size());
            cur = excise(cur, pairs, b);
            cert.rounds.push_back({b, std::move(pairs)});
            progress = true;
            if (cur.size() < 4) break;
        }
        if (!progress || cur.size() < 4) break;
    }

    cert.leftover = Word(g.rank(), std::move(cur));
    cert.commutator_count_bound = cert.pair_count + cl_trivial_bound(cert.leftover);
    cert.scl_upper = Rational(cert.commutator_count_bound, N);
    return cert;
}

bool verify_pairing(const PairingCertificate& cert, const Word& g) {
    try {
        const Word w = power(g, cert.power);
        Letters cur = w.letters();
        std::int64_t pair_count = 0;
        for (const PairingRound& round : cert.rounds) {
            const std::size_t b = round.block_length;
            if (b < 1) return false;
            std::vector<char> cut(cur.size(), 0);
            for (const auto& [i, j] : round.pairs) {
                if (i + b > cur.size() || j + b > cur.size()) return false;
                if (i + b > j && j + b > i) return false;
                for (std::size_t t = 0; t < b; ++t) {
                    if (cur[j + t] != -cur[i + b - 1 - t]) return false;
                    if (cut[i + t] || cut[j + t]) return false;
                    cut[i + t] = 1;
                    cut[j + t] = 1;
                }
                ++pair_count;
            }
            Letters kept;
            kept.reserve(cur.size());
            for (std::size_t i = 0; i < cur.size(); ++i)
                if (!cut[i]) kept.push_back(cur[i]);
            cur = reduce_letters(kept);
        }
        if (cur != cert.leftover.letters()) return false;
        if (pair_count != cert.pair_count) return false;
        if (cert.commutator_count_bound != pair_count + cl_trivial_bound(cert.leftover))
            return false;
        return cert.scl_upper == Rational(cert.commutator_count_bound, cert.power);
    } catch (const Error&) {
        return false;
    }
}

std::optional<CommutatorWitness> is_commutator_budget(const Word& w, int budget) {
    if (budget > 6) throw BudgetError("commutator search budget above 6 refused");
    if (!is_homologically_trivial(w))
        throw HomologyError("commutators have zero abelianization");

    // all reduced words up to the budget, shortest first, stable order
    std::vector<Word> pool;
    pool.emplace_back(w.rank());
    std::size_t level_begin = 0;
    std::vector<LetterCode> alphabet;
    for (int i = 1; i <= w.rank(); ++i) {
        alphabet.push_back(i);
        alphabet.push_back(-i);
    }
    for (int len = 1; len <= budget; ++len) {
        const std::size_t level_end = pool.size();
        for (std::size_t p = level_begin; p < level_end; ++p) {
            for (LetterCode c : alphabet) {
                if (!pool[p].empty() && pool[p].letters().back() == -c) continue;
                Letters next = pool[p].letters();
                next.push_back(c);
                pool.emplace_back(w.rank(), std::move(next));
            }
        }
        level_begin = level_end;
    }

    for (const Word& x : pool) {
        for (const Word& y : pool) {
            if (2 * (x.size() + y.size()) < w.size()) continue;
            Letters raw;
            raw.reserve(2 * (x.size() + y.size()));
            raw.insert(raw.end(), x.letters().begin(), x.letters().end());
            raw.insert(raw.end(), y.letters().begin(), y.letters().end());
            for (auto it = x.letters().rbegin(); it != x.letters().rend(); ++it)
                raw.push_back(-*it);
            for (auto it = y.letters().rbegin(); it != y.letters().rend(); ++it)
                raw.push_back(-*it);
            if (reduce_letters(raw) == w.letters()) return CommutatorWitness{x, y};
        }
    }
    return std::nullopt;
}

std::string PairingCertificate::to_json() const {
    nlohmann::json j;
    j["power"] = power;
    j["rounds"] = nlohmann::json::array();
    for (const PairingRound& r : rounds) {
        nlohmann::json jr;
        jr["block_length"] = r.block_length;
        jr["pairs"] = nlohmann::json::array();
        for (const auto& [a, b] : r.pairs) jr["pairs"].push_back({a, b});
        j["rounds"].push_back(std::move(jr));
    }
    j["leftover"] = leftover.str();
    j["pair_count"] = pair_count;
    j["commutator_count_bound"] = commutator_count_bound;
    j["scl_upper"] = scl_upper.str();
    return j.dump(2);
}

PairingCertificate PairingCertificate::from_json(const std::string& text, int rank) {
    try {
        const nlohmann::json j = nlohmann::json::parse(text);
        PairingCertificate cert;
        cert.power = j.at("power").get<std::int64_t>();
        for (const auto& jr : j.at("rounds")) {
            PairingRound round;
            round.block_length = jr.at("block_length").get<std::size_t>();
            for (const auto& jp : jr.at("pairs"))
                round.pairs.emplace_back(jp.at(0).get<std::size_t>(), jp.at(1).get<std::size_t>());
            cert.rounds.push_back(std::move(round));
        }
        cert.leftover = Word::parse(j.at("leftover").get<std::string>(), rank);
        cert.pair_count = j.at("pair_count").get<std::int64_t>();
        cert.commutator_count_bound = j.at("commutator_count_bound").get<std::int64_t>();
        const std::string u = j.at("scl_upper").get<std::string>();
        const auto slash = u.find('/');
        cert.scl_upper = slash == std::string::npos
                             ? Rational(std::stoll(u))
                             : Rational(std::stoll(u.substr(0, slash)),
                                        std::stoll(u.substr(slash + 1)));
        return cert;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("pairing certificate JSON: ") + e.what());
    }
}

std::string SclSandwich::to_json() const {
    nlohmann::json j;
    j["word"] = word.str();
    j["n"] = word.size();
    j["lower"] = lower.str();
    j["upper"] = upper.str();
    j["lower_certificate"] = as_json(lower_certificate.to_json());
    if (upper_from_witness) {
        j["upper_certificate"] = {{"commutator_witness", {{"x", witness.x.str()},
                                                          {"y", witness.y.str()}}}};
    } else {
        j["upper_certificate"] = as_json(upper_certificate.to_json());
    }
    j["power_used"] = power_used;
    return j.dump(2);
}

SclSandwich sandwich(const Word& g, const SandwichParams& params) {
    if (!is_homologically_trivial(g))
        throw HomologyError("sandwich needs a word in the commutator subgroup");

    SclSandwich result;
    result.word = g;
    if (g.empty()) return result;

    std::vector<std::int64_t> powers = params.powers;
    if (powers.empty()) powers.push_back(1);
    std::sort(powers.begin(), powers.end());
    powers.erase(std::unique(powers.begin(), powers.end()), powers.end());

    // Upper: best pairing bound over the configured powers.
    bool have_upper = false;
    for (std::int64_t N : powers) {
        if (N < 1) continue;
        try {
            PairingCertificate cert = pairing_upper(g, params.ell, N, params.max_letters);
            if (!have_upper || cert.scl_upper < result.upper) {
                result.upper = cert.scl_upper;
                result.upper_certificate = std::move(cert);
                result.power_used = N;
                have_upper = true;
            }
        } catch (const BudgetError&) {
            continue;  // this power is too long; smaller ones may still work
        }
    }
    if (!have_upper) throw BudgetError("every configured power exceeds the letter budget");

    // A tiny word that is literally a commutator gives cl = 1, so scl <= 1.
    if (g.size() <= 24) {
        std::optional<CommutatorWitness> hit = is_commutator_budget(g, 2);
        if (!hit) hit = is_commutator_budget(g, 4);
        if (!hit && g.size() <= 12) hit = is_commutator_budget(g, 6);
        if (hit && Rational(1) < result.upper) {
            result.upper = Rational(1);
            result.upper_from_witness = true;
            result.witness = *hit;
            result.power_used = 1;
        }
    }

    // Lower: direct Bavard route, then power-route sharpening over candidate
    // families (the block family, the hint, and for short cores every short
    // subword as a singleton).
    result.lower_certificate = bavard_lower(g, params.L, params.seed, params.hint_family);
    const auto consider = [&result](const LowerCertificate& cand) {
        if (result.lower_certificate.lower_bound < cand.lower_bound)
            result.lower_certificate = cand;
    };

    std::vector<std::vector<Word>> families;
    if (!result.lower_certificate.family.empty()) families.push_back(result.lower_certificate.family);
    if (!params.hint_family.empty()) families.push_back(params.hint_family);
    const Word core = cyclic_reduce(g).core;
    if (core.size() >= 2 && core.size() <= 32) {
        std::set<std::vector<LetterCode>> seen;
        for (std::size_t len = 2; len <= std::min<std::size_t>(8, core.size()); ++len)
            for (std::size_t start = 0; start + len <= core.size(); ++start) {
                std::vector<LetterCode> piece(core.letters().begin() + start,
                                              core.letters().begin() + start + len);
                if (seen.insert(piece).second)
                    families.push_back({Word(g.rank(), std::move(piece))});
            }
    }
    for (const auto& members : families) {
        for (std::int64_t N : powers) {
            if (N < 1) continue;
            try {
                consider(power_lower(g, CountingFamily(g.rank(), members), N));
            } catch (const BudgetError&) {
                break;
            }
        }
    }
    result.lower = result.lower_certificate.lower_bound;

    if (result.upper < result.lower)
        throw NumericalIntegrityError("sandwich inverted: lower " + result.lower.str() +
                                      " above upper " + result.upper.str());
    return result;
}

}  // namespace sclab
