#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "sclab/errors.hpp"
#include "sclab/rng.hpp"
#include "sclab/words.hpp"

namespace sclab {

// ---------------------------------------------------------------------------
// Trial engine
// ---------------------------------------------------------------------------

// One row per trial, in trial order. A failed trial leaves an empty row and a
// nonempty error string; the batch as a whole is still usable (partial()).
struct TrialBatch {
    std::vector<std::vector<double>> rows;
    std::vector<std::string> errors;
    std::size_t failed = 0;

    bool partial() const { return failed > 0; }
};

using TrialFn = std::function<std::vector<double>(std::int64_t index, std::uint64_t seed)>;

// Runs fn(i, derive_seed(master_seed, i)) for i in [0, trials). Workers split
// the index range and write into preallocated slots, so the batch is the same
// for every thread count. threads <= 1 runs serially; fn must be thread-safe
// when threads > 1 (per-trial seeds make pure samplers safe by construction).
TrialBatch run_trial_batch(std::int64_t trials, std::uint64_t master_seed, int threads,
                           const TrialFn& fn);

// ---------------------------------------------------------------------------
// Word samplers
// ---------------------------------------------------------------------------

// Uniform point on the sphere of radius n in the free group of the given
// rank: first letter uniform over 2k, each later letter uniform over the
// 2k - 1 non-backtracking choices. The result is reduced of length exactly n.
Word random_geodesic_word(int rank, std::int64_t n, Rng& rng);

// Product of n i.i.d. uniform generators (simple random walk), freely
// reduced. Callers that need the reduced length just read size().
Word random_walk_word(int rank, std::int64_t n, Rng& rng);

// ---------------------------------------------------------------------------
// Conditioning by rejection
// ---------------------------------------------------------------------------

// Wraps any word sampler and rejects until the abelianization vanishes.
// Bookkeeping is cumulative across calls; a single call that burns through
// probe_batch attempts without an acceptance aborts with the measured rate
// bound, which is how impossible conditions (parity obstructions) surface.
class ConditionedSampler {
  public:
    explicit ConditionedSampler(std::function<Word(Rng&)> base,
                                std::int64_t probe_batch = 1000000);

    Word sample(Rng& rng);

    std::int64_t accepted() const { return accepted_; }
    std::int64_t attempted() const { return attempted_; }
    double acceptance_rate() const;

  private:
    std::function<Word(Rng&)> base_;
    std::int64_t probe_batch_;
    std::int64_t accepted_ = 0;
    std::int64_t attempted_ = 0;
};

struct ConditionedDraw {
    Word word;
    std::int64_t attempts = 0;  // includes the accepted attempt

    ConditionedDraw() : word(1) {}
};

// Tight-loop equivalents for the two stock samplers: the abelianization is
// tracked letter by letter in a reused buffer, so rejected attempts never
// build a Word. Same acceptance law and starvation rule as the generic
// wrapper around random_geodesic_word / random_walk_word.
ConditionedDraw conditioned_geodesic(int rank, std::int64_t n, Rng& rng,
                                     std::int64_t probe_batch = 1000000);
ConditionedDraw conditioned_walk(int rank, std::int64_t n, Rng& rng,
                                 std::int64_t probe_batch = 1000000);

// ---------------------------------------------------------------------------
// Distribution fitting
// ---------------------------------------------------------------------------

// KS distance is taken against the normal with the sample's own mean and
// variance. Fitting shrinks the distance relative to a known-parameter test,
// so the usual critical values do not apply; gates on this number are fixed
// thresholds chosen per experiment, not p-values.
struct NormalFit {
    double mean = 0.0;
    double variance = 0.0;
    double skewness = 0.0;
    double ks_distance = 0.0;
    bool degenerate = false;  // all samples equal; ks_distance forced to 1
};

NormalFit normal_fit_tests(const std::vector<double>& samples);

// ---------------------------------------------------------------------------
// Experiment configuration and reports
// ---------------------------------------------------------------------------

struct ExperimentConfig {
    std::string experiment;
    int rank = 2;
    std::vector<std::int64_t> n_list = {1024};
    std::int64_t trials = 1000;
    double ell = 0.9;
    double L = 2.5;
    double epsilon = 0.1;
    double alpha = 1.5707963267948966;
    double step = 0.3;
    std::uint64_t master_seed = 1;
    std::string mode = "geodesic";  // or "walk"
    bool condition_commutator = false;
    int threads = 1;
    std::string out_path;  // optional CSV destination; empty keeps samples in-report

    void validate() const;
    std::string to_json() const;
    // Keys present in the text override base; absent keys keep base values,
    // which is how config files layer under command-line flags.
    static ExperimentConfig from_json(const std::string& text, const ExperimentConfig& base);
    static ExperimentConfig from_json(const std::string& text);
};

struct SummaryRow {
    std::int64_t n = 0;
    std::int64_t trials_ok = 0;
    std::int64_t trials_failed = 0;
    std::vector<std::pair<std::string, double>> metrics;  // insertion order kept

    double metric(const std::string& key) const;
    bool has_metric(const std::string& key) const;
    void set_metric(const std::string& key, double value);
};

struct Report {
    std::string experiment;
    std::string config_json;  // canonical echo of the driving config
    std::uint64_t master_seed = 0;
    bool partial = false;
    std::vector<std::string> trial_errors;
    std::vector<SummaryRow> rows;
    std::vector<std::pair<std::string, double>> totals;  // cross-n fits and gates
    std::string samples_csv;  // raw samples; may be empty for heavy experiments
    bool gates_passed = true;
    std::vector<std::string> gate_notes;

    double total(const std::string& key) const;
    void set_total(const std::string& key, double value);
    std::string to_json() const;  // no timestamps: same config + seed, same bytes
};

}  // namespace sclab
