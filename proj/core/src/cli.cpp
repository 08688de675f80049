#include "sclab/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "sclab/automaton.hpp"
#include "sclab/experiments.hpp"
#include "sclab/scl_bounds.hpp"

namespace sclab {

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void spill(const std::string& path, const std::string& content) {
    std::ofstream file(path, std::ios::binary);
    if (!file) throw Error("cannot write '" + path + "'");
    file << content;
    if (!file) throw Error("short write to '" + path + "'");
}

// One set of shared experiment flags per subcommand. Each option remembers
// whether the user set it, so precedence is: built-in defaults, then the
// config file, then explicit flags.
struct CommonFlags {
    std::string config_path;
    int rank = 0;
    std::int64_t n = 0;
    std::vector<std::int64_t> n_list;
    std::int64_t trials = 0;
    std::uint64_t seed = 0;
    std::string mode;
    bool condition = false;
    double ell = 0.0, big_l = 0.0, epsilon = 0.0, alpha = 0.0, step = 0.0;
    int threads = 0;
    std::string out;

    CLI::Option *o_rank = nullptr, *o_n = nullptr, *o_nlist = nullptr, *o_trials = nullptr,
                *o_seed = nullptr, *o_mode = nullptr, *o_cond = nullptr, *o_ell = nullptr,
                *o_big_l = nullptr, *o_eps = nullptr, *o_alpha = nullptr, *o_step = nullptr,
                *o_threads = nullptr, *o_out = nullptr, *o_config = nullptr;

    void attach(CLI::App* sub) {
        o_rank = sub->add_option("--rank", rank, "free group rank");
        o_n = sub->add_option("--n", n, "single length");
        o_nlist = sub->add_option("--n-list", n_list, "comma-separated lengths")->delimiter(',');
        o_n->excludes(o_nlist);
        o_trials = sub->add_option("--trials", trials, "trials per n");
        o_seed = sub->add_option("--seed", seed, "master seed");
        o_mode = sub->add_option("--mode", mode, "sampling mode")
                     ->check(CLI::IsMember({"geodesic", "walk"}));
        o_cond = sub->add_flag("--condition-commutator", condition,
                               "restrict samples to the commutator subgroup");
        o_ell = sub->add_option("--ell", ell, "block-scale parameter in (0,1)");
        o_big_l = sub->add_option("--L", big_l, "block-length multiplier");
        o_eps = sub->add_option("--epsilon", epsilon, "concentration margin");
        o_alpha = sub->add_option("--alpha", alpha, "turn angle in (0,pi)");
        o_step = sub->add_option("--step", step, "hyperbolic step length");
        o_threads = sub->add_option("--threads", threads, "worker threads");
        o_out = sub->add_option("--out", out, "write raw samples CSV to this path");
        o_config = sub->add_option("--config", config_path, "JSON config file (flags win)");
    }

    ExperimentConfig resolve(const ExperimentConfig& defaults) const {
        ExperimentConfig cfg = defaults;
        if (*o_config) cfg = ExperimentConfig::from_json(slurp(config_path), defaults);
        if (*o_rank) cfg.rank = rank;
        if (*o_n) cfg.n_list = {n};
        if (*o_nlist) cfg.n_list = n_list;
        if (*o_trials) cfg.trials = trials;
        if (*o_seed) cfg.master_seed = seed;
        if (*o_mode) cfg.mode = mode;
        if (*o_cond) cfg.condition_commutator = condition;
        if (*o_ell) cfg.ell = ell;
        if (*o_big_l) cfg.L = big_l;
        if (*o_eps) cfg.epsilon = epsilon;
        if (*o_alpha) cfg.alpha = alpha;
        if (*o_step) cfg.step = step;
        if (*o_threads) cfg.threads = threads;
        if (*o_out) cfg.out_path = out;
        return cfg;
    }
};

struct Shared {
    std::ostream& out;
    std::ostream& err;
    int code = 0;
};

void run_experiment_cmd(Shared& sh, const std::string& id, const CommonFlags& flags,
                        const ExperimentConfig& defaults, const std::string& generators_json) {
    ExperimentConfig cfg = flags.resolve(defaults);
    cfg.experiment = id;
    const Report rep = generators_json.empty()
                           ? run_trials(id, cfg)
                           : run_rotation_with_generators(cfg, generators_json);
    if (!cfg.out_path.empty()) {
        // The CSV file stands alone, so it carries the same config echo as
        // the report, as comment lines ahead of the header.
        std::ostringstream csv;
        csv << "# config: " << nlohmann::json::parse(rep.config_json).dump() << "\n";
        csv << "# master_seed: " << rep.master_seed << "\n";
        csv << rep.samples_csv;
        spill(cfg.out_path, csv.str());
    }
    sh.out << rep.to_json() << "\n";
    sh.code = rep.gates_passed ? 0 : 2;
}

ExperimentConfig defaults_for(const std::string& id) {
    ExperimentConfig d;
    d.experiment = id;
    if (id == "homology") {
        d.n_list = {64, 128, 256, 512, 1024};
        d.trials = 100000;
    } else if (id == "growth") {
        d.n_list = {4096, 8192, 16384};
        d.trials = 200;
        d.condition_commutator = true;
    } else if (id == "chernoff") {
        d.n_list = {4096};
        d.trials = 1000;
        d.ell = 0.5;
    } else if (id == "antialign") {
        d.n_list = {256, 1024, 4096, 16384};
        d.trials = 100;
        d.L = 1.5;
    } else if (id == "translation") {
        d.n_list = {1000};
        d.trials = 10000;
    } else if (id == "turtle") {
        d.n_list = {10000};
        d.trials = 10000;
    } else if (id == "rotation") {
        d.n_list = {4096};
        d.trials = 20000;
    }
    return d;
}

void add_experiment_subcommands(CLI::App& app, Shared& sh,
                                std::vector<std::unique_ptr<CommonFlags>>& keep) {
    const std::vector<std::pair<std::string, std::string>> subs = {
        {"homology", "decay exponent of Pr(abelianization = 0) over n"},
        {"growth", "upper and lower scl bounds on conditioned words, n/log n scale"},
        {"chernoff", "subword-count concentration gate on the combing chain"},
        {"antialign", "decay of the anti-aligned block fraction"},
        {"translation", "linear growth of translation length under random walks"},
        {"turtle", "winding and area statistics of random hyperbolic turtle loops"},
        {"rotation", "drift and normal fit of rot under random lift products"},
    };
    for (const auto& [id, blurb] : subs) {
        CLI::App* sub = app.add_subcommand(id, blurb);
        keep.push_back(std::make_unique<CommonFlags>());
        CommonFlags* flags = keep.back().get();
        flags->attach(sub);
        if (id == "rotation") {
            auto gen_path = std::make_shared<std::string>();
            CLI::Option* o_gen = sub->add_option("--generators", *gen_path,
                                                 "JSON generator-set file for the main case");
            sub->callback([&sh, id, flags, gen_path, o_gen] {
                const std::string gens = *o_gen ? slurp(*gen_path) : std::string();
                run_experiment_cmd(sh, id, *flags, defaults_for(id), gens);
            });
        } else {
            const std::string id_copy = id;
            sub->callback([&sh, id_copy, flags] {
                run_experiment_cmd(sh, id_copy, *flags, defaults_for(id_copy), "");
            });
        }
    }
}

void add_sandwich_subcommand(CLI::App& app, Shared& sh) {
    auto word_text = std::make_shared<std::string>();
    auto rank = std::make_shared<int>(2);
    auto ell = std::make_shared<double>(0.9);
    auto big_l = std::make_shared<double>(2.5);
    auto seed = std::make_shared<std::uint64_t>(1);
    auto out_path = std::make_shared<std::string>();

    CLI::App* sub = app.add_subcommand("sandwich", "certified scl bounds for one word");
    sub->add_option("word", *word_text, "word in letters a..z / A..Z")->required();
    sub->add_option("--rank", *rank, "free group rank");
    sub->add_option("--ell", *ell, "block-scale parameter in (0,1)");
    sub->add_option("--L", *big_l, "block-length multiplier for the lower route");
    sub->add_option("--seed", *seed, "seed for the lower route");
    sub->add_option("--out", *out_path, "also write the certificate JSON here");
    sub->callback([&sh, word_text, rank, ell, big_l, seed, out_path] {
        SandwichParams params;
        params.ell = *ell;
        params.L = *big_l;
        params.seed = *seed;
        const SclSandwich result = sandwich(Word::parse(*word_text, *rank), params);
        nlohmann::ordered_json j;
        j["config"] = {{"word", *word_text}, {"rank", *rank}, {"ell", *ell},
                       {"L", *big_l},        {"seed", *seed}};
        for (auto& [key, value] : nlohmann::ordered_json::parse(result.to_json()).items())
            j[key] = std::move(value);
        const std::string json = j.dump(2);
        if (!out_path->empty()) spill(*out_path, json);
        sh.out << json << "\n";
        sh.code = 0;
    });
}

CombingAutomaton load_automaton_arg(const std::string& file, int rank) {
    if (!file.empty()) return CombingAutomaton::from_json(slurp(file));
    return CombingAutomaton::free_group(rank);
}

void add_automaton_subcommand(CLI::App& app, Shared& sh) {
    CLI::App* aut = app.add_subcommand("automaton", "combing automaton tools");
    aut->require_subcommand(1);

    auto file = std::make_shared<std::string>();
    auto rank = std::make_shared<int>(2);

    CLI::App* info = aut->add_subcommand("info", "spectral summary of the combing chain");
    info->add_option("--file", *file, "automaton JSON (default: free group of --rank)");
    info->add_option("--rank", *rank, "free group rank");
    info->callback([&sh, file, rank] {
        const MarkovModel model = MarkovModel::analyze(load_automaton_arg(*file, *rank));
        nlohmann::ordered_json j;
        j["vertices"] = model.automaton.vertex_count();
        j["edges"] = model.automaton.edges().size();
        j["initial"] = model.automaton.initial();
        j["rank"] = model.automaton.rank();
        j["lambda"] = model.lambda;
        j["coornaert"] = model.coornaert;
        j["components"] = nlohmann::ordered_json::array();
        for (const auto& comp : model.components) {
            nlohmann::ordered_json c;
            c["size"] = comp.vertices.size();
            c["lambda"] = comp.lambda;
            c["maximal"] = comp.maximal;
            j["components"].push_back(std::move(c));
        }
        sh.out << j.dump(2) << "\n";
    });

    CLI::App* val = aut->add_subcommand("validate", "structural and dynamical checks");
    val->add_option("--file", *file, "automaton JSON (default: free group of --rank)");
    val->add_option("--rank", *rank, "free group rank");
    val->callback([&sh, file, rank] {
        const ValidationReport rep = validate(load_automaton_arg(*file, *rank));
        nlohmann::ordered_json j;
        j["deterministic"] = rep.deterministic;
        j["reachable"] = rep.reachable;
        j["coornaert"] = rep.coornaert;
        j["notes"] = rep.notes;
        sh.out << j.dump(2) << "\n";
    });

    auto n = std::make_shared<std::int64_t>(16);
    auto trials = std::make_shared<std::int64_t>(10);
    auto seed = std::make_shared<std::uint64_t>(1);
    auto out_path = std::make_shared<std::string>();
    CLI::App* samp = aut->add_subcommand("sample", "draw geodesics from the maximal-entropy chain");
    samp->add_option("--file", *file, "automaton JSON (default: free group of --rank)");
    samp->add_option("--rank", *rank, "free group rank");
    samp->add_option("--n", *n, "path length");
    samp->add_option("--trials", *trials, "number of samples");
    samp->add_option("--seed", *seed, "master seed");
    samp->add_option("--out", *out_path, "write CSV here instead of stdout");
    samp->callback([&sh, file, rank, n, trials, seed, out_path] {
        const MarkovModel model = MarkovModel::analyze(load_automaton_arg(*file, *rank));
        std::ostringstream csv;
        csv << "# config: {\"automaton\": \"" << (file->empty() ? "free" : *file)
            << "\", \"rank\": " << *rank << ", \"n\": " << *n << ", \"trials\": " << *trials
            << "}\n";
        csv << "# master_seed: " << *seed << "\n";
        csv << "trial,length,word\n";
        for (std::int64_t t = 0; t < *trials; ++t) {
            const PathSample sample = sample_geodesic(model, *n, derive_seed(*seed, t));
            csv << t << "," << sample.word.size() << "," << sample.word.str() << "\n";
        }
        if (!out_path->empty())
            spill(*out_path, csv.str());
        else
            sh.out << csv.str();
    });
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"scl laboratory: scaling, concentration, and circle-action experiments "
                 "on free groups"};
    app.require_subcommand(1);
    Shared sh{out, err};
    std::vector<std::unique_ptr<CommonFlags>> keep;
    add_experiment_subcommands(app, sh, keep);
    add_sandwich_subcommand(app, sh);
    add_automaton_subcommand(app, sh);

    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("sclab");
    for (const auto& a : args) argv.push_back(a.c_str());

    try {
        app.parse(int(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        err << "run with --help for usage\n";
        return 1;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return sh.code;
}

int dispatch(int argc, const char* const* argv) {
    std::vector<std::string> args;
    args.reserve(std::size_t(argc > 0 ? argc - 1 : 0));
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return dispatch(args, std::cout, std::cerr);
}

}  // namespace sclab
