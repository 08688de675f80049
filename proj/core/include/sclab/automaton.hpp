#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sclab/rng.hpp"
#include "sclab/words.hpp"

namespace sclab {

struct AutEdge {
    int from;
    int to;
    LetterCode label;
};

inline bool operator==(const AutEdge& a, const AutEdge& b) {
    return a.from == b.from && a.to == b.to && a.label == b.label;
}

// Labeled directed graph whose paths from the initial vertex spell words.
// Construction enforces the structural contract (labels in range, at most one
// outgoing edge per (vertex, label), every vertex reachable from the initial
// one); the dynamical properties are reported by validate()/MarkovModel.
class CombingAutomaton {
  public:
    CombingAutomaton(int vertex_count, int initial, int rank, std::vector<AutEdge> edges);

    // Geodesic combing of the free group of the given rank: one hub vertex
    // plus one vertex per last letter; edges forbid immediate backtracking.
    static CombingAutomaton free_group(int rank);

    static CombingAutomaton from_json(const std::string& text);
    std::string to_json() const;

    int vertex_count() const { return vertex_count_; }
    int initial() const { return initial_; }
    int rank() const { return rank_; }
    const std::vector<AutEdge>& edges() const { return edges_; }
    const std::vector<std::vector<int>>& out_edges() const { return out_; }

  private:
    int vertex_count_;
    int initial_;
    int rank_;
    std::vector<AutEdge> edges_;
    std::vector<std::vector<int>> out_;  // vertex -> edge indices
};

struct ComponentInfo {
    std::vector<int> vertices;
    double lambda = 0.0;
    bool maximal = false;
};

struct ValidationReport {
    bool deterministic = true;  // always true post-construction; kept for reports
    bool reachable = true;
    bool coornaert = false;
    std::vector<std::string> notes;
};

// Spectral and Markov data for an automaton: Perron eigenvalue, component
// structure, the maximal-entropy chain N_ij = M_ij v_j / (lambda v_i), its
// stationary measure, and the one-step law out of the initial vertex.
// Holds its own copy of the automaton.
class MarkovModel {
  public:
    static MarkovModel analyze(const CombingAutomaton& aut);

    CombingAutomaton automaton;
    int n = 0;
    std::vector<std::vector<double>> M;  // edge-count matrix
    double lambda = 0.0;
    std::vector<double> growth;  // right Perron profile v, scale-free
    std::vector<ComponentInfo> components;
    std::vector<int> comp_of;
    bool coornaert = false;
    std::vector<std::vector<double>> N;  // rows sum to 1 where growth > 0
    std::vector<double> mu;              // stationary; support = maximal components
    std::vector<double> nu;              // first-step law from the initial vertex

    // Probability that the nu-chain ever enters the given maximal component.
    std::vector<double> entry_probability;  // indexed like components

  private:
    explicit MarkovModel(CombingAutomaton aut) : automaton(std::move(aut)) {}
};

ValidationReport validate(const CombingAutomaton& aut);

struct PathSample {
    Word word = Word(1);
    std::vector<int> vertices;     // length n+1 including the initial vertex
    int component_entered = -1;    // first maximal component hit, -1 if none
};

// Walk n steps from the initial vertex under N, spelling edge labels.
PathSample sample_geodesic(const MarkovModel& model, std::int64_t n, std::uint64_t seed);

// Overlapping occurrences of the vertex path sigma inside the vertex path of
// gamma. An empty sigma occurs once per vertex position.
std::int64_t count_subword(const std::vector<int>& sigma, const std::vector<int>& gamma);

// Product-formula measure of a legal vertex path under (mu, N); 0 if illegal.
double path_measure(const MarkovModel& model, const std::vector<int>& sigma);

struct ChernoffParams {
    std::int64_t n = 4096;
    std::int64_t trials = 1000;
    double ell = 0.5;
    double epsilon = 0.1;
    int sigmas_per_trial = 8;
    std::uint64_t master_seed = 1;
    int threads = 0;  // 0 = hardware default
};

struct ChernoffReport {
    std::int64_t n = 0;
    std::int64_t trials = 0;
    int block_edges = 0;  // sigma length in edges: floor(ell * log n / log lambda)
    double lambda = 0.0;
    double threshold = 0.0;  // n^{epsilon + (1 - ell)/2}
    std::vector<double> per_trial_max;  // max over sampled sigma of |C - n mu| / threshold
    double violation_fraction = 0.0;    // fraction of trials with statistic >= 1
};

ChernoffReport chernoff_experiment(const MarkovModel& model, const ChernoffParams& params);

// Fraction of successive blocks of g (length floor(L log n / log(2k-1)))
// whose inverse occurs somewhere in g as a subword. This is the K = 0,
// delta = 0 anti-alignment criterion specialized to trees.
double antialign_fraction(const Word& g, double L);

}  // namespace sclab
