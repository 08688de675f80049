#include "sclab/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include <nlohmann/json.hpp>

#include "sclab/stats.hpp"

namespace sclab {

namespace {

// Letters as dense indices 0..2k-1: first the k generators, then their
// inverses. Keeps the non-backtracking draw branch-free apart from one shift.
inline LetterCode code_of_index(int idx, int rank) {
    return idx < rank ? LetterCode(idx + 1) : LetterCode(-(idx - rank + 1));
}

inline int inverse_index(int idx, int rank) { return idx < rank ? idx + rank : idx - rank; }

// Maps a full 64-bit draw onto [0, n) by the multiply-high trick: one RNG
// call per letter, no rejection, so the stream position is a pure function
// of the letter count. The bias is at most n / 2^64 per draw, far below
// anything these experiments could detect, while the division inside the
// exact rejection method would otherwise dominate the whole sampler.
inline int fast_below(Rng& rng, std::uint32_t n) {
    return int(std::uint64_t((unsigned __int128)rng.next_u64() * n >> 64));
}

inline int draw_first(Rng& rng, int rank) { return fast_below(rng, std::uint32_t(2 * rank)); }

inline int draw_non_backtracking(Rng& rng, int rank, int prev_idx) {
    const int forbidden = inverse_index(prev_idx, rank);
    int r = fast_below(rng, std::uint32_t(2 * rank - 1));
    if (r >= forbidden) ++r;
    return r;
}

void check_sampler_args(int rank, std::int64_t n) {
    Word::check_rank(rank);
    if (n < 1) throw Error("word sampler: n must be at least 1");
}

}  // namespace

// ---------------------------------------------------------------------------
// Trial engine
// ---------------------------------------------------------------------------

TrialBatch run_trial_batch(std::int64_t trials, std::uint64_t master_seed, int threads,
                           const TrialFn& fn) {
    if (trials < 1) throw Error("run_trial_batch: trials must be at least 1");
    if (!fn) throw Error("run_trial_batch: empty trial function");

    TrialBatch batch;
    batch.rows.resize(std::size_t(trials));
    batch.errors.resize(std::size_t(trials));

    auto run_strided = [&](std::int64_t first, std::int64_t stride) {
        for (std::int64_t i = first; i < trials; i += stride) {
            const std::uint64_t seed = derive_seed(master_seed, std::uint64_t(i));
            try {
                batch.rows[std::size_t(i)] = fn(i, seed);
            } catch (const std::exception& e) {
                batch.errors[std::size_t(i)] = e.what();
            } catch (...) {
                batch.errors[std::size_t(i)] = "non-standard exception";
            }
        }
    };

    const int workers = threads <= 1 ? 1 : threads;
    if (workers == 1) {
        run_strided(0, 1);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(std::size_t(workers));
        for (int w = 0; w < workers; ++w) pool.emplace_back(run_strided, w, workers);
        for (auto& t : pool) t.join();
    }

    for (const auto& e : batch.errors)
        if (!e.empty()) ++batch.failed;
    return batch;
}

// ---------------------------------------------------------------------------
// Word samplers
// ---------------------------------------------------------------------------

Word random_geodesic_word(int rank, std::int64_t n, Rng& rng) {
    check_sampler_args(rank, n);
    std::vector<LetterCode> letters(static_cast<std::size_t>(n));
    int idx = draw_first(rng, rank);
    letters[0] = code_of_index(idx, rank);
    for (std::int64_t i = 1; i < n; ++i) {
        idx = draw_non_backtracking(rng, rank, idx);
        letters[std::size_t(i)] = code_of_index(idx, rank);
    }
    return Word(rank, std::move(letters));
}

Word random_walk_word(int rank, std::int64_t n, Rng& rng) {
    check_sampler_args(rank, n);
    std::vector<LetterCode> letters(static_cast<std::size_t>(n));
    for (std::int64_t i = 0; i < n; ++i)
        letters[std::size_t(i)] = code_of_index(draw_first(rng, rank), rank);
    return Word(rank, std::move(letters));
}

// ---------------------------------------------------------------------------
// Conditioning by rejection
// ---------------------------------------------------------------------------

ConditionedSampler::ConditionedSampler(std::function<Word(Rng&)> base, std::int64_t probe_batch)
    : base_(std::move(base)), probe_batch_(probe_batch) {
    if (!base_) throw Error("ConditionedSampler: empty base sampler");
    if (probe_batch_ < 1) throw Error("ConditionedSampler: probe batch must be at least 1");
}

Word ConditionedSampler::sample(Rng& rng) {
    for (std::int64_t tries = 1;; ++tries) {
        Word w = base_(rng);
        ++attempted_;
        if (is_homologically_trivial(w)) {
            ++accepted_;
            return w;
        }
        if (tries >= probe_batch_) {
            throw StarvationError(
                "conditioned sampler: no acceptance in " + std::to_string(tries) +
                    " attempts; acceptance rate is below " + std::to_string(1.0 / double(tries)),
                1.0 / double(tries));
        }
    }
}

double ConditionedSampler::acceptance_rate() const {
    return attempted_ == 0 ? 0.0 : double(accepted_) / double(attempted_);
}

namespace {

// Shared rejection loop for the two tight samplers. draw_letters fills buf
// and returns the abelianization through ab; only the accepted attempt pays
// for Word construction.
template <typename DrawFn>
ConditionedDraw rejection_loop(int rank, std::int64_t n, std::int64_t probe_batch,
                               const char* name, DrawFn draw_letters) {
    check_sampler_args(rank, n);
    if (probe_batch < 1) throw Error(std::string(name) + ": probe batch must be at least 1");

    std::vector<LetterCode> buf(static_cast<std::size_t>(n));
    std::vector<std::int64_t> ab(static_cast<std::size_t>(rank));
    for (std::int64_t attempt = 1;; ++attempt) {
        std::fill(ab.begin(), ab.end(), 0);
        draw_letters(buf, ab);
        bool zero = true;
        for (const auto v : ab)
            if (v != 0) {
                zero = false;
                break;
            }
        if (zero) {
            ConditionedDraw out;
            out.word = Word(rank, buf);
            out.attempts = attempt;
            return out;
        }
        if (attempt >= probe_batch) {
            throw StarvationError(
                std::string(name) + ": no acceptance in " + std::to_string(attempt) +
                    " attempts at n = " + std::to_string(n) + "; acceptance rate is below " +
                    std::to_string(1.0 / double(attempt)),
                1.0 / double(attempt));
        }
    }
}

// Rank-2 letter tables, indices 0..3 = a, b, a^-1, b^-1. Table lookups keep
// the hot loops free of data-dependent branches; the conditioning rejects all
// but ~1/n of attempts, so mispredictions on random letter signs would
// otherwise dominate the run time at the large n the experiments use.
constexpr LetterCode kCode2[4] = {1, 2, -1, -2};
constexpr std::int64_t kDeltaA[4] = {1, 0, -1, 0};
constexpr std::int64_t kDeltaB[4] = {0, 1, 0, -1};

}  // namespace

ConditionedDraw conditioned_geodesic(int rank, std::int64_t n, Rng& rng,
                                     std::int64_t probe_batch) {
    return rejection_loop(rank, n, probe_batch, "conditioned_geodesic",
                          [&](std::vector<LetterCode>& buf, std::vector<std::int64_t>& ab) {
                              if (rank == 2) {
                                  // Same stream as the generic path: every draw
                                  // is one RNG call through the multiply trick.
                                  std::int64_t aa = 0, bb = 0;
                                  int idx = fast_below(rng, 4);
                                  buf[0] = kCode2[idx];
                                  aa += kDeltaA[idx];
                                  bb += kDeltaB[idx];
                                  for (std::size_t i = 1; i < buf.size(); ++i) {
                                      const int forbidden = idx ^ 2;
                                      int r = fast_below(rng, 3);
                                      r += int(r >= forbidden);
                                      idx = r;
                                      buf[i] = kCode2[idx];
                                      aa += kDeltaA[idx];
                                      bb += kDeltaB[idx];
                                  }
                                  ab[0] = aa;
                                  ab[1] = bb;
                                  return;
                              }
                              int idx = draw_first(rng, rank);
                              buf[0] = code_of_index(idx, rank);
                              ab[std::size_t(idx < rank ? idx : idx - rank)] += idx < rank ? 1 : -1;
                              for (std::size_t i = 1; i < buf.size(); ++i) {
                                  idx = draw_non_backtracking(rng, rank, idx);
                                  buf[i] = code_of_index(idx, rank);
                                  ab[std::size_t(idx < rank ? idx : idx - rank)] += idx < rank ? 1 : -1;
                              }
                          });
}

ConditionedDraw conditioned_walk(int rank, std::int64_t n, Rng& rng, std::int64_t probe_batch) {
    return rejection_loop(rank, n, probe_batch, "conditioned_walk",
                          [&](std::vector<LetterCode>& buf, std::vector<std::int64_t>& ab) {
                              if (rank == 2) {
                                  std::int64_t aa = 0, bb = 0;
                                  for (auto& slot : buf) {
                                      const int idx = fast_below(rng, 4);
                                      slot = kCode2[idx];
                                      aa += kDeltaA[idx];
                                      bb += kDeltaB[idx];
                                  }
                                  ab[0] = aa;
                                  ab[1] = bb;
                                  return;
                              }
                              for (auto& slot : buf) {
                                  const int idx = draw_first(rng, rank);
                                  slot = code_of_index(idx, rank);
                                  ab[std::size_t(idx < rank ? idx : idx - rank)] += idx < rank ? 1 : -1;
                              }
                          });
}

// ---------------------------------------------------------------------------
// Distribution fitting
// ---------------------------------------------------------------------------

NormalFit normal_fit_tests(const std::vector<double>& samples) {
    if (samples.size() < 100)
        throw Error("normal_fit_tests: need at least 100 samples, got " +
                    std::to_string(samples.size()));
    NormalFit fit;
    const SummaryStats s = summarize(samples);
    fit.mean = s.mean;
    fit.variance = s.variance;
    fit.skewness = s.skewness;
    const auto [mn, mx] = std::minmax_element(samples.begin(), samples.end());
    if (*mn == *mx) {
        fit.degenerate = true;
        fit.ks_distance = 1.0;
        return fit;
    }
    fit.ks_distance = ks_to_fitted_normal(samples);
    return fit;
}

// ---------------------------------------------------------------------------
// Experiment configuration and reports
// ---------------------------------------------------------------------------

void ExperimentConfig::validate() const {
    Word::check_rank(rank);
    if (trials < 1) throw Error("experiment config: trials must be at least 1");
    if (n_list.empty()) throw Error("experiment config: n list must be nonempty");
    for (const auto n : n_list)
        if (n < 4) throw Error("experiment config: every n must be at least 4");
    if (mode != "geodesic" && mode != "walk")
        throw Error("experiment config: mode must be 'geodesic' or 'walk', got '" + mode + "'");
    if (!(ell > 0.0 && ell < 1.0)) throw Error("experiment config: ell must lie in (0, 1)");
    if (!(L > 0.0)) throw Error("experiment config: L must be positive");
    if (!(epsilon > 0.0)) throw Error("experiment config: epsilon must be positive");
    if (!(alpha > 0.0 && alpha < 3.141592653589793))
        throw Error("experiment config: alpha must lie in (0, pi)");
    if (!(step > 0.0)) throw Error("experiment config: step must be positive");
    if (threads < 1) throw Error("experiment config: threads must be at least 1");
}

std::string ExperimentConfig::to_json() const {
    nlohmann::ordered_json j;
    j["experiment"] = experiment;
    j["rank"] = rank;
    j["n_list"] = n_list;
    j["trials"] = trials;
    j["ell"] = ell;
    j["L"] = L;
    j["epsilon"] = epsilon;
    j["alpha"] = alpha;
    j["step"] = step;
    j["master_seed"] = master_seed;
    j["mode"] = mode;
    j["condition_commutator"] = condition_commutator;
    j["threads"] = threads;
    j["out_path"] = out_path;
    return j.dump(2);
}

ExperimentConfig ExperimentConfig::from_json(const std::string& text) {
    return from_json(text, ExperimentConfig{});
}

ExperimentConfig ExperimentConfig::from_json(const std::string& text,
                                             const ExperimentConfig& base) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("experiment config: ") + e.what());
    }
    if (!j.is_object()) throw ParseError("experiment config: top level must be an object");

    static const std::vector<std::string> known = {
        "experiment", "rank",        "n",    "n_list",      "trials",
        "ell",        "L",           "epsilon", "alpha",    "step",
        "master_seed", "mode",       "condition_commutator", "threads",
        "out_path"};
    for (const auto& item : j.items()) {
        if (std::find(known.begin(), known.end(), item.key()) == known.end())
            throw ParseError("experiment config: unknown key '" + item.key() + "'");
    }
    if (j.contains("n") && j.contains("n_list"))
        throw ParseError("experiment config: give 'n' or 'n_list', not both");

    ExperimentConfig c = base;
    try {
        if (j.contains("experiment")) c.experiment = j["experiment"].get<std::string>();
        if (j.contains("rank")) c.rank = j["rank"].get<int>();
        if (j.contains("n")) c.n_list = {j["n"].get<std::int64_t>()};
        if (j.contains("n_list")) c.n_list = j["n_list"].get<std::vector<std::int64_t>>();
        if (j.contains("trials")) c.trials = j["trials"].get<std::int64_t>();
        if (j.contains("ell")) c.ell = j["ell"].get<double>();
        if (j.contains("L")) c.L = j["L"].get<double>();
        if (j.contains("epsilon")) c.epsilon = j["epsilon"].get<double>();
        if (j.contains("alpha")) c.alpha = j["alpha"].get<double>();
        if (j.contains("step")) c.step = j["step"].get<double>();
        if (j.contains("master_seed")) c.master_seed = j["master_seed"].get<std::uint64_t>();
        if (j.contains("mode")) c.mode = j["mode"].get<std::string>();
        if (j.contains("condition_commutator"))
            c.condition_commutator = j["condition_commutator"].get<bool>();
        if (j.contains("threads")) c.threads = j["threads"].get<int>();
        if (j.contains("out_path")) c.out_path = j["out_path"].get<std::string>();
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("experiment config: ") + e.what());
    }
    return c;
}

double SummaryRow::metric(const std::string& key) const {
    for (const auto& [k, v] : metrics)
        if (k == key) return v;
    throw Error("summary row: no metric '" + key + "'");
}

bool SummaryRow::has_metric(const std::string& key) const {
    for (const auto& [k, v] : metrics)
        if (k == key) return true;
    return false;
}

void SummaryRow::set_metric(const std::string& key, double value) {
    for (auto& [k, v] : metrics)
        if (k == key) {
            v = value;
            return;
        }
    metrics.emplace_back(key, value);
}

double Report::total(const std::string& key) const {
    for (const auto& [k, v] : totals)
        if (k == key) return v;
    throw Error("report: no total '" + key + "'");
}

void Report::set_total(const std::string& key, double value) {
    for (auto& [k, v] : totals)
        if (k == key) {
            v = value;
            return;
        }
    totals.emplace_back(key, value);
}

std::string Report::to_json() const {
    nlohmann::ordered_json j;
    j["experiment"] = experiment;
    try {
        j["config"] = nlohmann::ordered_json::parse(config_json);
    } catch (const nlohmann::json::exception&) {
        j["config"] = config_json;
    }
    j["master_seed"] = master_seed;
    j["partial"] = partial;
    j["trial_errors"] = trial_errors;

    nlohmann::ordered_json rows_json = nlohmann::ordered_json::array();
    for (const auto& row : rows) {
        nlohmann::ordered_json r;
        r["n"] = row.n;
        r["trials_ok"] = row.trials_ok;
        r["trials_failed"] = row.trials_failed;
        nlohmann::ordered_json m;
        for (const auto& [k, v] : row.metrics) m[k] = v;
        r["metrics"] = m;
        rows_json.push_back(std::move(r));
    }
    j["rows"] = std::move(rows_json);

    nlohmann::ordered_json totals_json;
    for (const auto& [k, v] : totals) totals_json[k] = v;
    j["totals"] = std::move(totals_json);

    j["samples_csv_embedded"] = !samples_csv.empty();
    j["gates_passed"] = gates_passed;
    j["gate_notes"] = gate_notes;
    return j.dump(2);
}

}  // namespace sclab
