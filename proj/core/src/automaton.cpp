#include "sclab/automaton.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <unordered_map>

#include <nlohmann/json.hpp>

#include "sclab/detail/rolling_hash.hpp"
#include "sclab/errors.hpp"

namespace sclab {

namespace {

using Matrix = std::vector<std::vector<double>>;

LetterCode letter_from_label(const std::string& label, int rank) {
    if (label.size() != 1) throw ParseError("edge label must be a single letter: \"" + label + "\"");
    const char ch = label[0];
    int index = 0;
    int sign = 0;
    if (ch >= 'a' && ch <= 'z') {
        index = ch - 'a' + 1;
        sign = 1;
    } else if (ch >= 'A' && ch <= 'Z') {
        index = ch - 'A' + 1;
        sign = -1;
    } else {
        throw ParseError(std::string("bad edge label character '") + ch + "'");
    }
    if (index > rank)
        throw ParseError(std::string("edge label '") + ch + "' outside rank " +
                         std::to_string(rank));
    return sign > 0 ? index : -index;
}

std::string label_from_letter(LetterCode code) {
    const Letter l = letter_of(code);
    const char base = l.sign > 0 ? 'a' : 'A';
    return std::string(1, static_cast<char>(base + l.index - 1));
}

// Power iteration on A + I. The shift leaves eigenvectors alone and moves the
// top eigenvalue to lambda + 1, and it makes every irreducible block
// aperiodic, so the sup-normalized iterates converge geometrically with no
// special handling for periodic components. Plain iteration with two-iterate
// averaging looks tempting for period two, but the average of the
// sup-normalized alternating pair is not an eigenvector (off by several
// percent already on a weighted 2-cycle), so the shift is used throughout.
double perron_shifted(const Matrix& A, double tol, long max_iter, std::vector<double>& vec) {
    const std::size_t n = A.size();
    std::vector<double> x(n, 1.0);
    std::vector<double> y(n, 0.0);
    double value = 0.0;
    for (long iter = 0; iter < max_iter; ++iter) {
        double sup = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double acc = x[i];
            const auto& row = A[i];
            for (std::size_t j = 0; j < n; ++j) acc += row[j] * x[j];
            y[i] = acc;
            if (acc > sup) sup = acc;
        }
        if (sup <= 0.0) throw SpectralError("power iteration collapsed to zero");
        double delta = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            y[i] /= sup;
            delta = std::max(delta, std::abs(y[i] - x[i]));
        }
        x.swap(y);
        const double new_value = sup - 1.0;
        const bool value_ok = std::abs(new_value - value) <= tol * std::max(1.0, std::abs(new_value));
        value = new_value;
        if (delta <= tol && value_ok && iter > 0) {
            vec = x;
            return value;
        }
    }
    throw SpectralError("power iteration did not converge within the iteration budget");
}

// Iterative Tarjan. Components come out in reverse topological order of the
// condensation: every edge between distinct components points to a component
// with a smaller index.
struct SccResult {
    std::vector<int> comp_of;
    int count = 0;
};

SccResult tarjan_scc(int n, const std::vector<std::vector<int>>& succ) {
    SccResult res;
    res.comp_of.assign(n, -1);
    std::vector<int> index(n, -1), low(n, 0);
    std::vector<char> on_stack(n, 0);
    std::vector<int> stack;
    int next_index = 0;

    struct Frame {
        int v;
        std::size_t child;
    };
    std::vector<Frame> frames;

    for (int start = 0; start < n; ++start) {
        if (index[start] != -1) continue;
        frames.push_back({start, 0});
        while (!frames.empty()) {
            Frame& f = frames.back();
            const int v = f.v;
            if (f.child == 0) {
                index[v] = low[v] = next_index++;
                stack.push_back(v);
                on_stack[v] = 1;
            }
            if (f.child < succ[v].size()) {
                const int w = succ[v][f.child++];
                if (index[w] == -1) {
                    frames.push_back({w, 0});
                } else if (on_stack[w]) {
                    low[v] = std::min(low[v], index[w]);
                }
            } else {
                if (low[v] == index[v]) {
                    while (true) {
                        const int w = stack.back();
                        stack.pop_back();
                        on_stack[w] = 0;
                        res.comp_of[w] = res.count;
                        if (w == v) break;
                    }
                    ++res.count;
                }
                frames.pop_back();
                if (!frames.empty()) {
                    const int parent = frames.back().v;
                    low[parent] = std::min(low[parent], low[v]);
                }
            }
        }
    }
    return res;
}

// Spectral and component data shared by validate() and analyze().
struct SpectralCore {
    int n = 0;
    Matrix M;
    std::vector<int> comp_of;
    std::vector<ComponentInfo> components;
    double lambda = 0.0;
    bool coornaert = false;
};

SpectralCore spectral_core(const CombingAutomaton& aut) {
    SpectralCore core;
    core.n = aut.vertex_count();
    core.M.assign(core.n, std::vector<double>(core.n, 0.0));
    std::vector<std::vector<int>> succ(core.n);
    for (const AutEdge& e : aut.edges()) {
        core.M[e.from][e.to] += 1.0;
        succ[e.from].push_back(e.to);
    }

    const SccResult scc = tarjan_scc(core.n, succ);
    core.comp_of = scc.comp_of;
    core.components.resize(scc.count);
    for (int v = 0; v < core.n; ++v) core.components[core.comp_of[v]].vertices.push_back(v);

    // Per-component Perron eigenvalue on the induced submatrix.
    for (ComponentInfo& comp : core.components) {
        const std::size_t m = comp.vertices.size();
        Matrix sub(m, std::vector<double>(m, 0.0));
        for (std::size_t a = 0; a < m; ++a)
            for (std::size_t b = 0; b < m; ++b)
                sub[a][b] = core.M[comp.vertices[a]][comp.vertices[b]];
        std::vector<double> ignore;
        comp.lambda = perron_shifted(sub, 1e-12, 1000000, ignore);
        if (comp.lambda < 0.0 && comp.lambda > -1e-9) comp.lambda = 0.0;
        core.lambda = std::max(core.lambda, comp.lambda);
    }
    for (ComponentInfo& comp : core.components)
        comp.maximal = comp.lambda >= core.lambda * (1.0 - 1e-9) && core.lambda > 0.0;

    // Condensation walk: does any directed path meet two maximal components?
    // Components in increasing index order have all successors already done.
    std::vector<int> best(scc.count, 0);
    std::vector<std::vector<char>> cond_edge(scc.count, std::vector<char>(scc.count, 0));
    for (int v = 0; v < core.n; ++v)
        for (int w : succ[v])
            if (core.comp_of[v] != core.comp_of[w]) cond_edge[core.comp_of[v]][core.comp_of[w]] = 1;
    bool ok = true;
    for (int c = 0; c < scc.count; ++c) {
        int down = 0;
        for (int d = 0; d < c; ++d)
            if (cond_edge[c][d]) down = std::max(down, best[d]);
        best[c] = down + (core.components[c].maximal ? 1 : 0);
        if (best[c] > 1) ok = false;
    }
    core.coornaert = ok;
    return core;
}

}  // namespace

CombingAutomaton::CombingAutomaton(int vertex_count, int initial, int rank,
                                   std::vector<AutEdge> edges)
    : vertex_count_(vertex_count), initial_(initial), rank_(rank), edges_(std::move(edges)) {
    Word::check_rank(rank_);
    if (vertex_count_ < 1) throw ParseError("automaton needs at least one vertex");
    if (initial_ < 0 || initial_ >= vertex_count_)
        throw ParseError("initial vertex " + std::to_string(initial_) + " out of range");

    out_.resize(vertex_count_);
    std::vector<std::unordered_map<LetterCode, int>> seen(vertex_count_);
    for (std::size_t i = 0; i < edges_.size(); ++i) {
        const AutEdge& e = edges_[i];
        if (e.from < 0 || e.from >= vertex_count_ || e.to < 0 || e.to >= vertex_count_)
            throw ParseError("edge endpoint out of range");
        const int idx = e.label > 0 ? e.label : -e.label;
        if (idx < 1 || idx > rank_)
            throw ParseError("edge label code " + std::to_string(e.label) + " outside rank " +
                             std::to_string(rank_));
        auto [it, fresh] = seen[e.from].emplace(e.label, static_cast<int>(i));
        if (!fresh)
            throw ParseError("determinism violated: vertex " + std::to_string(e.from) +
                             " has two out-edges labeled " + label_from_letter(e.label));
        out_[e.from].push_back(static_cast<int>(i));
    }

    std::vector<char> reached(vertex_count_, 0);
    std::queue<int> frontier;
    reached[initial_] = 1;
    frontier.push(initial_);
    while (!frontier.empty()) {
        const int v = frontier.front();
        frontier.pop();
        for (int ei : out_[v]) {
            const int w = edges_[ei].to;
            if (!reached[w]) {
                reached[w] = 1;
                frontier.push(w);
            }
        }
    }
    for (int v = 0; v < vertex_count_; ++v)
        if (!reached[v])
            throw ParseError("vertex " + std::to_string(v) + " unreachable from the initial vertex");
}

CombingAutomaton CombingAutomaton::free_group(int rank) {
    Word::check_rank(rank);
    // Vertex 0 is the start hub; vertex for letter code c is c when positive
    // and rank + |c| when negative, so 1..2k cover the last-letter states.
    const auto vertex_of = [rank](LetterCode c) { return c > 0 ? c : rank - c; };
    std::vector<AutEdge> edges;
    edges.reserve(static_cast<std::size_t>(2 * rank) * (2 * rank));
    std::vector<LetterCode> alphabet;
    for (int i = 1; i <= rank; ++i) {
        alphabet.push_back(i);
        alphabet.push_back(-i);
    }
    for (LetterCode c : alphabet) edges.push_back({0, vertex_of(c), c});
    for (LetterCode c : alphabet)
        for (LetterCode d : alphabet)
            if (d != -c) edges.push_back({vertex_of(c), vertex_of(d), d});
    return CombingAutomaton(2 * rank + 1, 0, rank, std::move(edges));
}

CombingAutomaton CombingAutomaton::from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("automaton JSON: ") + e.what());
    }
    try {
        const int vertices = j.at("vertices").get<int>();
        const int initial = j.at("initial").get<int>();
        const int rank = j.at("rank").get<int>();
        std::vector<AutEdge> edges;
        for (const auto& je : j.at("edges")) {
            AutEdge e;
            e.from = je.at("from").get<int>();
            e.to = je.at("to").get<int>();
            e.label = letter_from_label(je.at("label").get<std::string>(), rank);
            edges.push_back(e);
        }
        return CombingAutomaton(vertices, initial, rank, std::move(edges));
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("automaton JSON: ") + e.what());
    }
}

std::string CombingAutomaton::to_json() const {
    nlohmann::json j;
    j["vertices"] = vertex_count_;
    j["initial"] = initial_;
    j["rank"] = rank_;
    j["edges"] = nlohmann::json::array();
    for (const AutEdge& e : edges_)
        j["edges"].push_back({{"from", e.from}, {"to", e.to}, {"label", label_from_letter(e.label)}});
    return j.dump(2);
}

ValidationReport validate(const CombingAutomaton& aut) {
    ValidationReport report;
    report.deterministic = true;  // enforced at construction
    report.reachable = true;
    try {
        const SpectralCore core = spectral_core(aut);
        report.coornaert = core.coornaert;
        int maximal = 0;
        for (const ComponentInfo& c : core.components) maximal += c.maximal ? 1 : 0;
        report.notes.push_back(std::to_string(aut.vertex_count()) + " vertices, " +
                               std::to_string(aut.edges().size()) + " edges");
        report.notes.push_back("lambda " + std::to_string(core.lambda));
        report.notes.push_back(std::to_string(core.components.size()) + " components, " +
                               std::to_string(maximal) + " maximal");
        if (!core.coornaert)
            report.notes.push_back("a condensation path meets two maximal components");
    } catch (const SpectralError& e) {
        report.coornaert = false;
        report.notes.push_back(std::string("spectral analysis failed: ") + e.what());
    }
    return report;
}

MarkovModel MarkovModel::analyze(const CombingAutomaton& aut) {
    MarkovModel model(aut);
    SpectralCore core = spectral_core(aut);
    model.n = core.n;
    model.M = core.M;
    model.lambda = core.lambda;
    model.components = std::move(core.components);
    model.comp_of = std::move(core.comp_of);
    model.coornaert = core.coornaert;
    if (model.lambda <= 0.0)
        throw SpectralError("automaton has no cycles, growth rate is zero");

    // Growth profile: the limit of (path counts of length t from each vertex)
    // scaled by lambda^-t. It is a nonnegative eigenvector of M, strictly
    // positive exactly on the vertices from which a maximal component is
    // reachable, so those entries are pinned to zero structurally first.
    std::vector<double> growth;
    perron_shifted(model.M, 1e-12, 1000000, growth);
    std::vector<char> reaches_maximal(model.n, 0);
    {
        // reverse reachability from the union of maximal components
        std::vector<std::vector<int>> pred(model.n);
        for (const AutEdge& e : aut.edges()) pred[e.to].push_back(e.from);
        std::queue<int> frontier;
        for (int v = 0; v < model.n; ++v)
            if (model.components[model.comp_of[v]].maximal) {
                reaches_maximal[v] = 1;
                frontier.push(v);
            }
        while (!frontier.empty()) {
            const int v = frontier.front();
            frontier.pop();
            for (int u : pred[v])
                if (!reaches_maximal[u]) {
                    reaches_maximal[u] = 1;
                    frontier.push(u);
                }
        }
    }
    for (int v = 0; v < model.n; ++v)
        if (!reaches_maximal[v]) growth[v] = 0.0;
    double sup = 0.0;
    for (double g : growth) sup = std::max(sup, g);
    if (sup <= 0.0) throw SpectralError("growth vector vanished");
    for (double& g : growth) g /= sup;
    model.growth = growth;

    // Maximal-entropy transitions N_ij = M_ij g_j / (lambda g_i). The row sums
    // equal 1 exactly when g is an eigenvector, so a large residual means the
    // iteration silently failed.
    model.N.assign(model.n, std::vector<double>(model.n, 0.0));
    for (int i = 0; i < model.n; ++i) {
        if (growth[i] <= 0.0) continue;
        double row_sum = 0.0;
        for (int j = 0; j < model.n; ++j) {
            model.N[i][j] = model.M[i][j] * growth[j] / (model.lambda * growth[i]);
            row_sum += model.N[i][j];
        }
        if (std::abs(row_sum - 1.0) > 1e-10)
            throw NumericalIntegrityError("stochastic row sum off by " +
                                          std::to_string(row_sum - 1.0));
        for (int j = 0; j < model.n; ++j) model.N[i][j] /= row_sum;
    }

    if (growth[aut.initial()] <= 0.0)
        throw SpectralError("initial vertex cannot reach a maximal component");

    // Push the initial distribution forward until the transient mass is gone;
    // what lands in each maximal component is its entry probability.
    std::vector<double> dist(model.n, 0.0);
    dist[aut.initial()] = 1.0;
    std::vector<char> in_maximal(model.n, 0);
    for (int v = 0; v < model.n; ++v)
        if (model.components[model.comp_of[v]].maximal) in_maximal[v] = 1;
    {
        std::vector<double> next(model.n, 0.0);
        long iter = 0;
        for (;; ++iter) {
            double transient = 0.0;
            for (int v = 0; v < model.n; ++v)
                if (!in_maximal[v]) transient += dist[v];
            if (transient <= 1e-15) break;
            if (iter >= 1000000)
                throw SpectralError("transient mass failed to drain into maximal components");
            std::fill(next.begin(), next.end(), 0.0);
            for (int i = 0; i < model.n; ++i) {
                if (dist[i] <= 0.0) continue;
                for (int j = 0; j < model.n; ++j)
                    if (model.N[i][j] > 0.0) next[j] += dist[i] * model.N[i][j];
            }
            dist.swap(next);
        }
    }
    model.entry_probability.assign(model.components.size(), 0.0);
    for (int v = 0; v < model.n; ++v)
        if (in_maximal[v]) model.entry_probability[model.comp_of[v]] += dist[v];

    // Stationary measure: per-component left Perron vector of N restricted to
    // the component (lazy halving keeps periodic components convergent),
    // weighted by the entry probabilities.
    model.mu.assign(model.n, 0.0);
    for (std::size_t c = 0; c < model.components.size(); ++c) {
        const ComponentInfo& comp = model.components[c];
        if (!comp.maximal || model.entry_probability[c] <= 0.0) continue;
        const std::size_t m = comp.vertices.size();
        std::vector<double> pi(m, 1.0 / static_cast<double>(m)), next(m, 0.0);
        for (long iter = 0;; ++iter) {
            if (iter >= 1000000)
                throw SpectralError("stationary measure iteration did not converge");
            for (std::size_t b = 0; b < m; ++b) {
                double acc = 0.5 * pi[b];
                for (std::size_t a = 0; a < m; ++a)
                    acc += 0.5 * pi[a] * model.N[comp.vertices[a]][comp.vertices[b]];
                next[b] = acc;
            }
            double total = 0.0, delta = 0.0;
            for (std::size_t b = 0; b < m; ++b) total += next[b];
            for (std::size_t b = 0; b < m; ++b) {
                next[b] /= total;
                delta = std::max(delta, std::abs(next[b] - pi[b]));
            }
            pi.swap(next);
            if (delta <= 1e-14 && iter > 0) break;
        }
        for (std::size_t b = 0; b < m; ++b)
            model.mu[comp.vertices[b]] = model.entry_probability[c] * pi[b];
    }

    // mu N = mu is the defining identity; refuse to hand back a model that
    // fails it.
    double stationarity = 0.0;
    for (int j = 0; j < model.n; ++j) {
        double acc = 0.0;
        for (int i = 0; i < model.n; ++i)
            if (model.mu[i] > 0.0) acc += model.mu[i] * model.N[i][j];
        stationarity = std::max(stationarity, std::abs(acc - model.mu[j]));
    }
    if (stationarity > 1e-10)
        throw NumericalIntegrityError("stationary measure residual " +
                                      std::to_string(stationarity));

    model.nu.assign(model.N[aut.initial()].begin(), model.N[aut.initial()].end());
    return model;
}

PathSample sample_geodesic(const MarkovModel& model, std::int64_t n, std::uint64_t seed) {
    const CombingAutomaton& aut = model.automaton;
    PathSample sample;
    sample.vertices.push_back(aut.initial());
    std::vector<LetterCode> letters;
    Rng rng(seed);

    int v = aut.initial();
    if (model.components[model.comp_of[v]].maximal) sample.component_entered = model.comp_of[v];
    for (std::int64_t step = 0; step < n; ++step) {
        const auto& outs = aut.out_edges()[v];
        double total = 0.0;
        for (int ei : outs) {
            const AutEdge& e = aut.edges()[ei];
            if (model.growth[e.to] > 0.0)
                total += model.growth[e.to] / (model.lambda * model.growth[v]);
        }
        if (total <= 0.0) throw SpectralError("walk reached a vertex with no growing successor");
        const double u = rng.uniform() * total;
        double acc = 0.0;
        int chosen = -1;
        for (int ei : outs) {
            const AutEdge& e = aut.edges()[ei];
            if (model.growth[e.to] <= 0.0) continue;
            acc += model.growth[e.to] / (model.lambda * model.growth[v]);
            chosen = ei;
            if (u < acc) break;
        }
        const AutEdge& e = aut.edges()[chosen];
        letters.push_back(e.label);
        v = e.to;
        sample.vertices.push_back(v);
        if (sample.component_entered < 0 && model.components[model.comp_of[v]].maximal)
            sample.component_entered = model.comp_of[v];
    }
    sample.word = Word(aut.rank(), std::move(letters));
    return sample;
}

std::int64_t count_subword(const std::vector<int>& sigma, const std::vector<int>& gamma) {
    if (sigma.empty()) return static_cast<std::int64_t>(gamma.size());
    if (sigma.size() > gamma.size()) return 0;
    std::int64_t count = 0;
    const std::size_t last = gamma.size() - sigma.size();
    for (std::size_t start = 0; start <= last; ++start) {
        bool match = true;
        for (std::size_t i = 0; i < sigma.size(); ++i)
            if (gamma[start + i] != sigma[i]) {
                match = false;
                break;
            }
        if (match) ++count;
    }
    return count;
}

double path_measure(const MarkovModel& model, const std::vector<int>& sigma) {
    if (sigma.empty()) return 1.0;
    double p = model.mu[sigma.front()];
    for (std::size_t i = 0; i + 1 < sigma.size(); ++i) {
        if (p <= 0.0) return 0.0;
        p *= model.N[sigma[i]][sigma[i + 1]];
    }
    return p;
}

ChernoffReport chernoff_experiment(const MarkovModel& model, const ChernoffParams& params) {
    if (params.ell <= 0.0 || params.ell >= 1.0)
        throw Error("ell must lie strictly between 0 and 1");
    if (model.lambda <= 1.0)
        throw SpectralError("subword statistics need growth rate above 1");
    const double m = std::log(static_cast<double>(params.n)) / std::log(model.lambda);
    const int t = static_cast<int>(std::floor(params.ell * m));
    if (t < 1)
        throw Error("block length " + std::to_string(t) + " too short, n too small for ell");

    ChernoffReport report;
    report.n = params.n;
    report.trials = params.trials;
    report.block_edges = t;
    report.lambda = model.lambda;
    report.threshold =
        std::pow(static_cast<double>(params.n), params.epsilon + (1.0 - params.ell) / 2.0);

    // Cumulative rows of N for sampling sigma from the stationary chain.
    std::vector<double> mu_cum(model.n, 0.0);
    {
        double acc = 0.0;
        for (int v = 0; v < model.n; ++v) {
            acc += model.mu[v];
            mu_cum[v] = acc;
        }
    }

    report.per_trial_max.resize(params.trials);
    std::int64_t violations = 0;
    for (std::int64_t trial = 0; trial < params.trials; ++trial) {
        const std::uint64_t seed = derive_seed(params.master_seed, static_cast<std::uint64_t>(trial));
        const PathSample gamma = sample_geodesic(model, params.n, seed);
        Rng rng(derive_seed(seed, 0x5157u));

        double worst = 0.0;
        for (int s = 0; s < params.sigmas_per_trial; ++s) {
            std::vector<int> sigma;
            const double u0 = rng.uniform();
            int v = model.n - 1;
            for (int cand = 0; cand < model.n; ++cand)
                if (u0 < mu_cum[cand]) {
                    v = cand;
                    break;
                }
            sigma.push_back(v);
            for (int step = 0; step < t; ++step) {
                const double u = rng.uniform();
                double acc = 0.0;
                int next = -1;
                for (int j = 0; j < model.n; ++j) {
                    if (model.N[v][j] <= 0.0) continue;
                    acc += model.N[v][j];
                    next = j;
                    if (u < acc) break;
                }
                v = next;
                sigma.push_back(v);
            }
            const std::int64_t c = count_subword(sigma, gamma.vertices);
            const double expected = static_cast<double>(params.n) * path_measure(model, sigma);
            const double stat = std::abs(static_cast<double>(c) - expected) / report.threshold;
            worst = std::max(worst, stat);
        }
        report.per_trial_max[trial] = worst;
        if (worst >= 1.0) ++violations;
    }
    report.violation_fraction =
        static_cast<double>(violations) / static_cast<double>(params.trials);
    return report;
}

double antialign_fraction(const Word& g, double L) {
    const std::size_t n = g.size();
    if (n < 2) throw Error("word too short for block decomposition");
    const double base = 2.0 * g.rank() - 1.0;
    if (base <= 1.0) throw Error("anti-alignment needs rank at least 2");
    const auto b = static_cast<std::size_t>(
        std::floor(L * std::log(static_cast<double>(n)) / std::log(base)));
    if (b < 2) throw Error("block length " + std::to_string(b) + " below 2, raise L or n");
    const std::size_t blocks = n / b;
    if (blocks == 0) throw Error("word shorter than one block");

    const auto& letters = g.letters();
    const detail::RollingHash hash(letters);
    std::unordered_map<std::uint64_t, std::vector<std::size_t>> windows;
    windows.reserve(n);
    for (std::size_t start = 0; start + b <= n; ++start)
        windows[hash.slice(start, b)].push_back(start);

    std::size_t hits = 0;
    std::vector<LetterCode> inv(b);
    for (std::size_t block = 0; block < blocks; ++block) {
        const std::size_t begin = block * b;
        for (std::size_t i = 0; i < b; ++i) inv[i] = -letters[begin + b - 1 - i];
        std::uint64_t h = 0;
        for (std::size_t i = 0; i < b; ++i)
            h = h * detail::RollingHash::kMul +
                static_cast<std::uint64_t>(static_cast<std::int64_t>(inv[i])) + 0x123456789abcdefULL;
        const auto it = windows.find(h);
        if (it == windows.end()) continue;
        bool found = false;
        for (std::size_t start : it->second) {
            bool same = true;
            for (std::size_t i = 0; i < b; ++i)
                if (letters[start + i] != inv[i]) {
                    same = false;
                    break;
                }
            if (same) {
                found = true;
                break;
            }
        }
        if (found) ++hits;
    }
    return static_cast<double>(hits) / static_cast<double>(blocks);
}

}  // namespace sclab
