#include "sclab/quasimorphism.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include <nlohmann/json.hpp>

#include "sclab/errors.hpp"
#include "sclab/rng.hpp"

namespace sclab {

namespace {

// Uniform sphere sampler: first letter uniform on 2k codes, later letters
// uniform on the 2k-1 codes that do not cancel. Codes are indexed
// [+1..+k, -1..-k] and the forbidden index is skipped.
Word random_reduced(Rng& rng, int rank, std::size_t length) {
    std::vector<LetterCode> letters;
    letters.reserve(length);
    const auto code_at = [rank](int idx) {
        return idx < rank ? idx + 1 : -(idx - rank + 1);
    };
    const auto index_of = [rank](LetterCode c) { return c > 0 ? c - 1 : rank - c - 1; };
    for (std::size_t i = 0; i < length; ++i) {
        if (letters.empty()) {
            letters.push_back(code_at(static_cast<int>(rng.below(2 * rank))));
        } else {
            const int forbidden = index_of(-letters.back());
            int pick = static_cast<int>(rng.below(2 * rank - 1));
            if (pick >= forbidden) ++pick;
            letters.push_back(code_at(pick));
        }
    }
    return Word(rank, std::move(letters));
}

Rational clamped_bound(std::int64_t numerator, std::int64_t denominator) {
    if (numerator <= 0) return Rational(0);
    return Rational(numerator, denominator);
}

Rational parse_rational(const std::string& text) {
    const auto slash = text.find('/');
    if (slash == std::string::npos) return Rational(std::stoll(text));
    return Rational(std::stoll(text.substr(0, slash)), std::stoll(text.substr(slash + 1)));
}

// Successive blocks of g of the n/log n scale; returns only those whose
// inverse does not occur in g, deduplicated, preserving first appearance.
std::vector<Word> block_family(const Word& g, double L) {
    std::vector<Word> blocks;
    const std::size_t n = g.size();
    if (g.rank() < 2 || n < 4) return blocks;
    const double base = 2.0 * g.rank() - 1.0;
    const auto b = static_cast<std::size_t>(
        std::floor(L * std::log(static_cast<double>(n)) / std::log(base)));
    if (b < 2 || b > n) return blocks;
    std::set<std::vector<LetterCode>> seen;
    for (std::size_t i = 0; i + b <= n; i += b) {
        Word block(g.rank(),
                   std::vector<LetterCode>(g.letters().begin() + static_cast<std::ptrdiff_t>(i),
                                           g.letters().begin() + static_cast<std::ptrdiff_t>(i + b)));
        if (contains_subword(g, invert(block))) continue;
        if (seen.insert(block.letters()).second) blocks.push_back(std::move(block));
    }
    return blocks;
}

// All successive blocks regardless of anti-alignment, for the degenerate
// fallback.
std::vector<Word> raw_blocks(const Word& g, double L) {
    std::vector<Word> blocks;
    const std::size_t n = g.size();
    if (g.rank() < 2 || n < 4) return blocks;
    const double base = 2.0 * g.rank() - 1.0;
    auto b = static_cast<std::size_t>(
        std::floor(L * std::log(static_cast<double>(n)) / std::log(base)));
    if (b > n) b = n;
    if (b < 2) return blocks;
    std::set<std::vector<LetterCode>> seen;
    for (std::size_t i = 0; i + b <= n; i += b) {
        Word block(g.rank(),
                   std::vector<LetterCode>(g.letters().begin() + static_cast<std::ptrdiff_t>(i),
                                           g.letters().begin() + static_cast<std::ptrdiff_t>(i + b)));
        if (seen.insert(block.letters()).second) blocks.push_back(std::move(block));
    }
    return blocks;
}

LowerCertificate direct_certificate(const Word& g, const std::vector<Word>& members) {
    LowerCertificate cert;
    cert.route = LowerRoute::direct;
    cert.family = members;
    if (!members.empty()) {
        const CountingFamily family(g.rank(), members);
        cert.c = small_count(g, family);
        cert.c_inv = small_count(g, family.inverse());
    }
    cert.lower_bound = clamped_bound(cert.c - cert.c_inv - 6, 24);
    return cert;
}

}  // namespace

CountingFamily::CountingFamily(int rank, std::vector<Word> members)
    : rank_(rank), members_(std::move(members)) {
    Word::check_rank(rank_);
    if (members_.empty()) throw FamilyError("counting family must not be empty");
    for (const Word& m : members_) {
        if (m.rank() != rank_) throw RankMismatchError("family member rank differs");
        if (m.size() < 2) throw FamilyError("family members must have length at least 2");
    }
}

CountingFamily CountingFamily::parse(int rank, const std::vector<std::string>& texts) {
    std::vector<Word> members;
    members.reserve(texts.size());
    for (const auto& t : texts) members.push_back(Word::parse(t, rank));
    return CountingFamily(rank, std::move(members));
}

CountingFamily CountingFamily::inverse() const {
    std::vector<Word> inv;
    inv.reserve(members_.size());
    for (const Word& m : members_) inv.push_back(invert(m));
    return CountingFamily(rank_, std::move(inv));
}

std::int64_t small_count(const Word& g, const CountingFamily& family) {
    if (g.rank() != family.rank()) throw RankMismatchError("word rank differs from family rank");
    if (g.empty()) return 0;
    return max_disjoint_occurrences(g, family.members()).count;
}

std::int64_t h_sigma(const Word& g, const CountingFamily& family) {
    return small_count(g, family) - small_count(g, family.inverse());
}

Rational defect_certificate(const CountingFamily& family) {
    (void)family;
    return Rational(6);
}

std::int64_t empirical_defect(const CountingFamily& family, std::int64_t trials,
                              std::uint64_t seed, std::size_t max_length) {
    std::int64_t worst = 0;
    for (std::int64_t trial = 0; trial < trials; ++trial) {
        Rng rng(derive_seed(seed, static_cast<std::uint64_t>(trial)));
        const auto len_g = static_cast<std::size_t>(rng.below(max_length + 1));
        const auto len_h = static_cast<std::size_t>(rng.below(max_length + 1));
        const Word g = random_reduced(rng, family.rank(), len_g);
        const Word h = random_reduced(rng, family.rank(), len_h);
        const std::int64_t d =
            std::abs(h_sigma(concat(g, h), family) - h_sigma(g, family) - h_sigma(h, family));
        worst = std::max(worst, d);
    }
    return worst;
}

HomogenizeEstimate homogenize_estimate(const CountingFamily& family, const Word& g,
                                       std::int64_t N) {
    if (N < 1) throw Error("homogenization power must be at least 1");
    const Word gn = power(g, N);
    HomogenizeEstimate est;
    est.value = Rational(h_sigma(gn, family), N);
    est.error_bound = defect_certificate(family) / Rational(N);
    return est;
}

LowerCertificate bavard_lower(const Word& g, double L, std::uint64_t seed,
                              const std::vector<Word>& fallback_family) {
    (void)seed;  // the construction is deterministic in g
    if (!is_homologically_trivial(g))
        throw HomologyError("word lies outside the commutator subgroup");
    if (g.empty()) return direct_certificate(g, {});

    LowerCertificate best = direct_certificate(g, block_family(g, L));
    if (Rational(0) < best.lower_bound) return best;

    if (!fallback_family.empty()) {
        LowerCertificate fb = direct_certificate(g, fallback_family);
        if (best.lower_bound < fb.lower_bound || best.family.empty()) best = std::move(fb);
        return best;
    }

    // Degenerate recipe: keep the single block that scores best on its own.
    std::int64_t best_h = INT64_MIN;
    bool have_single = false;
    LowerCertificate single;
    for (const Word& block : raw_blocks(g, L)) {
        const std::int64_t h = h_sigma(g, CountingFamily(g.rank(), {block}));
        if (h > best_h) {
            best_h = h;
            single = direct_certificate(g, {block});
            have_single = true;
        }
    }
    if (have_single && (best.family.empty() || best.lower_bound < single.lower_bound))
        best = std::move(single);
    return best;
}

LowerCertificate power_lower(const Word& g, const CountingFamily& family, std::int64_t N) {
    if (N < 1) throw Error("power must be at least 1");
    if (!is_homologically_trivial(g))
        throw HomologyError("word lies outside the commutator subgroup");
    LowerCertificate cert;
    cert.route = LowerRoute::power;
    cert.family = family.members();
    cert.power = N;
    if (g.empty()) {
        cert.route = LowerRoute::direct;
        cert.family.clear();
        return cert;
    }

    const Word core = cyclic_reduce(g).core;
    const Word wN = power(core, N);
    cert.c = small_count(wN, family);

    // Any occurrence of an inverse member in any power of the core already
    // shows up inside this many consecutive periods.
    std::size_t longest = 0;
    for (const Word& m : family.members()) longest = std::max(longest, m.size());
    const std::int64_t window =
        static_cast<std::int64_t>((longest + core.size() - 1) / core.size()) + 2;
    const Word wP = power(core, std::max<std::int64_t>(window, N));
    bool absent = true;
    for (const Word& m : family.members())
        if (contains_subword(wP, invert(m))) {
            absent = false;
            break;
        }
    cert.inverse_absent = absent;
    if (absent) {
        cert.c_inv = 0;
        cert.lower_bound = clamped_bound(cert.c, 24 * N);
    } else {
        cert.c_inv = small_count(wN, family.inverse());
        cert.lower_bound = clamped_bound(cert.c - cert.c_inv - 1, 24 * N);
    }
    return cert;
}

std::string LowerCertificate::to_json() const {
    nlohmann::json j;
    j["route"] = route == LowerRoute::direct ? "direct" : "power";
    j["family"] = nlohmann::json::array();
    for (const Word& m : family) j["family"].push_back(m.str());
    j["c"] = c;
    j["c_inv"] = c_inv;
    j["defect_bound"] = defect_bound.str();
    j["lower_bound"] = lower_bound.str();
    j["power"] = power;
    j["inverse_absent"] = inverse_absent;
    return j.dump(2);
}

LowerCertificate LowerCertificate::from_json(const std::string& text, int rank) {
    try {
        const nlohmann::json j = nlohmann::json::parse(text);
        LowerCertificate cert;
        const std::string route = j.at("route").get<std::string>();
        if (route == "direct")
            cert.route = LowerRoute::direct;
        else if (route == "power")
            cert.route = LowerRoute::power;
        else
            throw ParseError("unknown certificate route \"" + route + "\"");
        for (const auto& m : j.at("family")) cert.family.push_back(Word::parse(m.get<std::string>(), rank));
        cert.c = j.at("c").get<std::int64_t>();
        cert.c_inv = j.at("c_inv").get<std::int64_t>();
        cert.defect_bound = parse_rational(j.at("defect_bound").get<std::string>());
        cert.lower_bound = parse_rational(j.at("lower_bound").get<std::string>());
        cert.power = j.at("power").get<std::int64_t>();
        cert.inverse_absent = j.at("inverse_absent").get<bool>();
        return cert;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("certificate JSON: ") + e.what());
    }
}

bool verify_lower(const LowerCertificate& cert, const Word& g) {
    if (!(cert.defect_bound == Rational(6))) return false;
    if (cert.family.empty())
        return cert.c == 0 && cert.c_inv == 0 && cert.lower_bound == Rational(0);
    LowerCertificate fresh;
    if (cert.route == LowerRoute::direct) {
        fresh = direct_certificate(g, cert.family);
    } else {
        fresh = power_lower(g, CountingFamily(g.rank(), cert.family), cert.power);
        if (fresh.inverse_absent != cert.inverse_absent) return false;
    }
    return fresh.c == cert.c && fresh.c_inv == cert.c_inv &&
           fresh.lower_bound == cert.lower_bound;
}

}  // namespace sclab
