#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "sclab/automaton.hpp"
#include "sclab/errors.hpp"
#include "sclab/rng.hpp"
#include "support.hpp"

using namespace sclab;

namespace {

std::string data_file(const char* name) {
    return std::string(SCLAB_DATA_DIR) + "/" + name;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(bool(in));
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Path counts by integer matrix-vector iteration, nothing spectral about it.
std::int64_t count_paths(const CombingAutomaton& aut, int length) {
    std::vector<std::int64_t> at(static_cast<std::size_t>(aut.vertex_count()), 0);
    at[static_cast<std::size_t>(aut.initial())] = 1;
    for (int step = 0; step < length; ++step) {
        std::vector<std::int64_t> next(at.size(), 0);
        for (const AutEdge& e : aut.edges()) next[std::size_t(e.to)] += at[std::size_t(e.from)];
        at = std::move(next);
    }
    std::int64_t total = 0;
    for (std::int64_t c : at) total += c;
    return total;
}

}  // namespace

TEST_SUITE("automaton") {

TEST_CASE("free group automaton has the expected shape") {
    const CombingAutomaton aut = CombingAutomaton::free_group(2);
    CHECK(aut.vertex_count() == 5);
    CHECK(aut.edges().size() == 16);
    CHECK(aut.rank() == 2);
    CHECK_THROWS_AS(CombingAutomaton::free_group(0), Error);
}

TEST_CASE("path counts match the sphere sizes") {
    const CombingAutomaton aut = CombingAutomaton::free_group(2);
    std::int64_t expected = 4;
    for (int n = 1; n <= 8; ++n) {
        CHECK(count_paths(aut, n) == expected);
        expected *= 3;
    }
    const CombingAutomaton aut3 = CombingAutomaton::free_group(3);
    CHECK(count_paths(aut3, 1) == 6);
    CHECK(count_paths(aut3, 4) == 6 * 5 * 5 * 5);
}

TEST_CASE("serialization round trips") {
    const CombingAutomaton aut = CombingAutomaton::free_group(2);
    const CombingAutomaton back = CombingAutomaton::from_json(aut.to_json());
    CHECK(back.to_json() == aut.to_json());
    CHECK(back.vertex_count() == aut.vertex_count());
    CHECK(back.initial() == aut.initial());
}

TEST_CASE("construction rejects broken automata") {
    const char* dup = R"({"vertices": 2, "initial": 0, "rank": 1, "edges": [
        {"from": 0, "to": 1, "label": "a"}, {"from": 0, "to": 0, "label": "a"}]})";
    CHECK_THROWS_AS(CombingAutomaton::from_json(dup), Error);

    const char* unreachable = R"({"vertices": 3, "initial": 0, "rank": 1, "edges": [
        {"from": 0, "to": 1, "label": "a"}, {"from": 2, "to": 2, "label": "A"}]})";
    CHECK_THROWS_AS(CombingAutomaton::from_json(unreachable), Error);

    CHECK_THROWS_AS(CombingAutomaton::from_json("not json"), ParseError);
}

TEST_CASE("spectral analysis of the free automaton") {
    const MarkovModel m = MarkovModel::analyze(CombingAutomaton::free_group(2));
    CHECK(m.lambda == doctest::Approx(3.0).epsilon(1e-9));
    CHECK(m.coornaert);

    // one maximal component holding the four non-initial vertices
    int maximal = 0;
    for (const ComponentInfo& c : m.components) {
        CHECK(c.lambda <= m.lambda + 1e-12);
        if (c.maximal) {
            ++maximal;
            CHECK(c.vertices.size() == 4);
        }
    }
    CHECK(maximal == 1);

    // symmetry forces uniform measures: mu = 1/4 off the initial vertex,
    // transition rows 1/3, first step 1/4
    for (int v = 1; v <= 4; ++v) CHECK(m.mu[std::size_t(v)] == doctest::Approx(0.25).epsilon(1e-10));
    CHECK(m.mu[0] == doctest::Approx(0.0));
    for (int v = 1; v <= 4; ++v) CHECK(m.nu[std::size_t(v)] == doctest::Approx(0.25).epsilon(1e-10));

    // stationarity mu N = mu and stochastic rows on the support
    for (int i = 0; i < m.n; ++i) {
        double row = 0.0, push = 0.0;
        for (int j = 0; j < m.n; ++j) {
            row += m.N[std::size_t(i)][std::size_t(j)];
            push += m.mu[std::size_t(j)] * m.N[std::size_t(j)][std::size_t(i)];
        }
        if (m.mu[std::size_t(i)] > 0.0) CHECK(row == doctest::Approx(1.0).epsilon(1e-10));
        CHECK(push == doctest::Approx(m.mu[std::size_t(i)]).epsilon(1e-10));
    }
}

TEST_CASE("single loop automaton is spectrally trivial") {
    const CombingAutomaton aut = CombingAutomaton::from_json(
        R"({"vertices": 1, "initial": 0, "rank": 1, "edges": [{"from":0,"to":0,"label":"a"}]})");
    const MarkovModel m = MarkovModel::analyze(aut);
    CHECK(m.lambda == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(m.mu[0] == doctest::Approx(1.0));
    CHECK(m.components.size() == 1);
}

TEST_CASE("two parallel branches pass validation with two maximal components") {
    const CombingAutomaton aut = CombingAutomaton::from_json(slurp(data_file("two_component.json")));
    const ValidationReport rep = validate(aut);
    CHECK(rep.deterministic);
    CHECK(rep.reachable);
    CHECK(rep.coornaert);

    const MarkovModel m = MarkovModel::analyze(aut);
    CHECK(m.lambda == doctest::Approx(2.0).epsilon(1e-10));
    int maximal = 0;
    double entry_total = 0.0;
    for (std::size_t c = 0; c < m.components.size(); ++c) {
        if (m.components[c].maximal) ++maximal;
        entry_total += m.entry_probability[c];
    }
    CHECK(maximal == 2);
    CHECK(entry_total == doctest::Approx(1.0).epsilon(1e-10));

    // every sampled path commits to one branch and stays there
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
        const PathSample s = sample_geodesic(m, 30, seed);
        REQUIRE(s.component_entered >= 0);
        CHECK(m.components[std::size_t(s.component_entered)].maximal);
        const int branch = s.vertices[1];
        for (std::size_t i = 1; i < s.vertices.size(); ++i) CHECK(s.vertices[i] == branch);
    }
}

TEST_CASE("shipped free automaton file matches the builtin") {
    const CombingAutomaton aut = CombingAutomaton::from_json(slurp(data_file("free_f2.json")));
    CHECK(aut.to_json() == CombingAutomaton::free_group(2).to_json());
}

TEST_CASE("geodesic samples are deterministic reduced words") {
    const MarkovModel m = MarkovModel::analyze(CombingAutomaton::free_group(2));
    const PathSample a = sample_geodesic(m, 64, 42);
    const PathSample b = sample_geodesic(m, 64, 42);
    CHECK(a.word == b.word);
    CHECK(a.vertices == b.vertices);
    CHECK(a.word.size() == 64);
    CHECK(a.vertices.size() == 65);
    for (std::size_t i = 1; i < a.word.size(); ++i) CHECK(a.word.at(i) != -a.word.at(i - 1));

    const PathSample zero = sample_geodesic(m, 0, 42);
    CHECK(zero.word.empty());
    CHECK(zero.component_entered == -1);
}

TEST_CASE("sampled length-3 words are uniform on the sphere") {
    const MarkovModel m = MarkovModel::analyze(CombingAutomaton::free_group(2));
    const std::int64_t samples = 360000;
    std::map<std::string, std::int64_t> freq;
    for (std::int64_t t = 0; t < samples; ++t)
        ++freq[sample_geodesic(m, 3, derive_seed(7, std::uint64_t(t))).word.str()];
    CHECK(freq.size() == 36);
    const double p = 1.0 / 36.0;
    const double se = std::sqrt(p * (1.0 - p) / double(samples));
    for (const auto& [word, count] : freq) {
        CHECK(std::abs(double(count) / double(samples) - p) <= 4.0 * se);
    }
}

TEST_CASE("block values are inverse-symmetric in distribution") {
    // tree shadow of the measure symmetry: a length-3 block and its inverse
    // are equally likely under the stationary chain
    const MarkovModel m = MarkovModel::analyze(CombingAutomaton::free_group(2));
    std::map<std::string, std::int64_t> freq;
    const std::int64_t samples = 200000;
    for (std::int64_t t = 0; t < samples; ++t) {
        const Word w = sample_geodesic(m, 3, derive_seed(8, std::uint64_t(t))).word;
        ++freq[w.str()];
    }
    const double se = std::sqrt((1.0 / 36.0) * (35.0 / 36.0) / double(samples));
    for (const auto& [text, count] : freq) {
        const Word w = Word::parse(text, 2);
        const std::int64_t mirror = freq[invert(w).str()];
        CHECK(std::abs(double(count - mirror)) / double(samples) <= 4.0 * se);
    }
}

TEST_CASE("subword counting on vertex paths") {
    const std::vector<int> gamma = {0, 1, 2, 1, 2, 3};
    CHECK(count_subword({}, gamma) == 6);
    CHECK(count_subword({1, 2}, gamma) == 2);
    CHECK(count_subword(gamma, gamma) == 1);
    CHECK(count_subword({9}, gamma) == 0);
}

TEST_CASE("path measure follows the product formula") {
    const MarkovModel m = MarkovModel::analyze(CombingAutomaton::free_group(2));
    // legal three-edge path: a, then b, then b again (vertices 1, 2, 2)
    const double expect = 0.25 * (1.0 / 3.0) * (1.0 / 3.0);
    CHECK(path_measure(m, {1, 2, 2}) == doctest::Approx(expect).epsilon(1e-12));
    // immediate backtrack a then A is not an edge
    CHECK(path_measure(m, {1, 3}) == 0.0);
}

TEST_CASE("chernoff experiment geometry and gates") {
    const MarkovModel m = MarkovModel::analyze(CombingAutomaton::free_group(2));

    ChernoffParams tiny;
    tiny.n = 8;
    tiny.ell = 0.1;
    tiny.trials = 10;
    CHECK_THROWS_AS(chernoff_experiment(m, tiny), Error);

    ChernoffParams p;
    p.n = 2048;
    p.trials = 200;
    p.ell = 0.5;
    p.master_seed = 5;
    p.threads = 1;
    const ChernoffReport rep = chernoff_experiment(m, p);
    CHECK(rep.block_edges == int(0.5 * std::log(2048.0) / std::log(3.0)));
    CHECK(rep.threshold == doctest::Approx(std::pow(2048.0, 0.1 + 0.25)).epsilon(1e-12));
    CHECK(rep.per_trial_max.size() == 200);
    CHECK(rep.violation_fraction <= 0.05);

    // thread count must not change the statistics
    p.threads = 3;
    const ChernoffReport rep3 = chernoff_experiment(m, p);
    CHECK(rep3.per_trial_max == rep.per_trial_max);
}

TEST_CASE("anti-aligned block fraction on constructed words") {
    CHECK(antialign_fraction(power(Word::parse("ab", 2), 64), 2.5) == 0.0);

    // both halves carry the other's inverses and the block grid respects the
    // halves, so every block finds its inverse
    const Word g = concat(power(Word::parse("ab", 2), 54), power(Word::parse("AB", 2), 54));
    CHECK(antialign_fraction(g, 2.5) == 1.0);

    CHECK_THROWS_AS(antialign_fraction(Word::parse("ab", 2), 2.5), Error);
}

}  // TEST_SUITE
