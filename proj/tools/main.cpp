// Command-line front end: run a selection mechanism on one graph, generate
// graphs from the named families, or execute a verification suite over a
// corpus. Exit codes: 0 = success, 1 = a suite found a violation (the witness
// graph is dumped to a file), 2 = usage or input errors.
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dagsel/analysis.hpp"
#include "dagsel/generators.hpp"
#include "dagsel/graph.hpp"
#include "dagsel/influential.hpp"
#include "dagsel/mechanisms.hpp"
#include "dagsel/serialize.hpp"
#include "dagsel/upper_bound.hpp"

namespace {

using namespace dagsel;

// A config mistake the user can fix; distinct from a verification failure.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

double parse_beta(const std::string& text) {
    if (text == "optimal") return OPTIMAL_BETA;
    try {
        std::size_t pos = 0;
        double v = std::stod(text, &pos);
        if (pos != text.size()) throw std::invalid_argument(text);
        return v;
    } catch (const std::exception&) {
        throw UsageError("--beta must be a number in [0,1] or \"optimal\", got \"" + text + "\"");
    }
}

Dag load_graph_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot open input file " + path);
    Json j;
    try {
        j = Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw UsageError(path + ": " + e.what());
    }
    return dag_from_json(j);
}

// Everything the three subcommands can take; option presence is tracked via
// the CLI11 option pointers where a bare default would be ambiguous.
struct Options {
    std::string input_path;
    std::string family;
    int y = 0;
    int m = 0;
    int n = 0;
    double p = 0.0;
    std::uint64_t seed = 1;
    int max_out = -1;  // -1 = per-suite default (6 for ic-random, else uncapped)

    std::string mechanism;   // empty = suite default set
    std::string beta_text = "optimal";

    std::string output_path;
    std::string csv_path;
    std::string witness_path = "witness.json";
    int sample_count = 0;
    int count = 10000;
    int n_max = 0;  // 0 = per-suite default
    std::int64_t budget = 1'000'000;
    std::string suite;

    CLI::Option* y_opt = nullptr;
    CLI::Option* m_opt = nullptr;
    CLI::Option* n_opt = nullptr;
    CLI::Option* p_opt = nullptr;
    CLI::Option* seed_opt = nullptr;
};

FamilyParams family_params(const Options& o) {
    FamilyParams fp;
    if (o.y_opt && o.y_opt->count()) fp.y = o.y;
    if (o.m_opt && o.m_opt->count()) fp.m = o.m;
    if (o.n_opt && o.n_opt->count()) fp.n = o.n;
    if (o.p_opt && o.p_opt->count()) fp.p = o.p;
    if (o.seed_opt && o.seed_opt->count()) fp.seed = o.seed;
    fp.max_out_degree = o.max_out > 0 ? o.max_out : 0;
    return fp;
}

Dag resolve_input(const Options& o) {
    const bool have_file = !o.input_path.empty();
    const bool have_family = !o.family.empty();
    if (have_file == have_family)
        throw UsageError("exactly one of --input and --family is required");
    if (have_file) return load_graph_file(o.input_path);
    return make_family(o.family, family_params(o));
}

void emit(const Json& doc, const std::string& output_path) {
    const std::string text = dump_json(doc);
    if (output_path.empty())
        std::cout << text;
    else
        write_text_file(output_path, text);
}

// --- select --------------------------------------------------------------------

int cmd_select(const Options& o) {
    Dag g = resolve_input(o);
    if (o.mechanism.empty()) throw UsageError("--mechanism is required");
    Mechanism mech = make_mechanism(o.mechanism, parse_beta(o.beta_text));
    SelectionDistribution dist = mech.run(g);
    Json doc = to_json(dist);
    if (o.sample_count > 0) {
        SplitMix64 rng(o.seed);
        Json samples = Json::array();
        const auto& outcomes = dist.outcomes();
        for (int s = 0; s < o.sample_count; ++s) {
            double u = rng.next_double();
            double cum = 0.0;
            std::size_t pick = outcomes.size() - 1;  // absorb rounding dust
            for (std::size_t t = 0; t < outcomes.size(); ++t) {
                cum += outcomes[t].prob;
                if (u < cum) {
                    pick = t;
                    break;
                }
            }
            samples.push_back(outcomes[pick].agents);
        }
        doc["sample_seed"] = o.seed;
        doc["samples"] = std::move(samples);
    }
    emit(doc, o.output_path);
    return 0;
}

// --- generate ------------------------------------------------------------------

int cmd_generate(const Options& o) {
    if (o.family.empty()) throw UsageError("--family is required");
    Dag g = make_family(o.family, family_params(o));
    emit(to_json(g), o.output_path);
    return 0;
}

// --- verify --------------------------------------------------------------------

struct SuiteMechanism {
    Mechanism mech;
    double floor = 0.0;  // ratio suites only
};

std::vector<SuiteMechanism> suite_mechanisms(const Options& o, bool floors) {
    std::vector<SuiteMechanism> out;
    if (!o.mechanism.empty()) {
        double beta = parse_beta(o.beta_text);
        double floor = 0.0;
        if (o.mechanism == "beta-lm")
            floor = lm_ratio_floor(beta);
        else if (o.mechanism == "ldm")
            floor = 0.5;
        else if (o.mechanism == "lald")
            floor = lald_ratio_floor();
        out.push_back({make_mechanism(o.mechanism, beta), floor});
        return out;
    }
    if (floors) {
        out.push_back({make_beta_lm(OPTIMAL_BETA), lm_ratio_floor(OPTIMAL_BETA)});
        out.push_back({make_ldm(), 0.5});
        out.push_back({make_lald(), lald_ratio_floor()});
    } else {
        for (double beta : {0.5, OPTIMAL_BETA, 0.75, 1.0})
            out.push_back({make_beta_lm(beta), 0.0});
        out.push_back({make_ldm(), 0.0});
        out.push_back({make_lald(), 0.0});
    }
    return out;
}

void write_witness(const Options& o, const Json& w) {
    write_text_file(o.witness_path, dump_json(w));
    std::cout << "witness written to " << o.witness_path << "\n";
}

void write_csv_file(const Options& o, std::span<const Dag> corpus,
                    const std::vector<double>* ratios, const std::vector<int>* violations) {
    std::ostringstream csv;
    write_sweep_csv(csv, corpus, ratios, violations);
    write_text_file(o.csv_path, csv.str());
}

// The per-graph CSV is unambiguous only for a single mechanism.
void require_single_mechanism_for_csv(const Options& o, std::size_t n_mechs) {
    if (!o.csv_path.empty() && n_mechs != 1)
        throw UsageError("--csv needs a single mechanism; pass --mechanism to choose one");
}

int run_ic_suite(const Options& o, bool exhaustive) {
    const int n_max = o.n_max > 0 ? o.n_max : (exhaustive ? 5 : 10);
    const int max_out = o.max_out >= 0 ? o.max_out : (exhaustive ? 0 : 6);
    std::vector<Dag> corpus;
    Json corpus_json;
    if (exhaustive) {
        corpus = exhaustive_corpus(n_max);
        corpus_json = Json{{"kind", "exhaustive"}, {"n_max", n_max}, {"graphs", corpus.size()}};
        std::cout << "corpus: every labeled dag with n <= " << n_max << " (" << corpus.size()
                  << " graphs)\n";
    } else {
        corpus = random_corpus(o.count, n_max, o.seed, max_out);
        corpus_json = Json{{"kind", "random"},   {"count", o.count},
                           {"n_max", n_max},     {"max_out_degree", max_out},
                           {"seed", o.seed},     {"graphs", corpus.size()}};
        std::cout << "corpus: " << corpus.size() << " random dags, n <= " << n_max
                  << ", out-degree cap " << max_out << ", seed " << o.seed << "\n";
    }

    auto mechs = suite_mechanisms(o, false);
    require_single_mechanism_for_csv(o, mechs.size());

    IcOptions opts;
    opts.subset_budget = o.budget;

    Json results = Json::array();
    bool all_passed = true;
    bool witness_done = false;
    for (const SuiteMechanism& sm : mechs) {
        IcSweepResult r = ic_sweep(sm.mech, corpus, opts);
        Json rj;
        rj["mechanism"] = r.mechanism;
        rj["graphs"] = r.graphs;
        rj["subsets_examined"] = r.subsets_examined;
        rj["failing_graphs"] = r.failing_indices.size();
        rj["passed"] = r.passed();
        if (!r.passed()) {
            all_passed = false;
            Json fails = Json::array();
            for (std::size_t t = 0; t < r.failing_indices.size() && t < 10; ++t) {
                const std::size_t idx = r.failing_indices[t];
                fails.push_back(Json{{"index", idx},
                                     {"graph_hash", graph_hash_hex(corpus[idx])},
                                     {"graph", to_json(corpus[idx])},
                                     {"report", to_json(r.failing_reports[t])}});
            }
            rj["failures"] = std::move(fails);
            if (!witness_done) {
                const std::size_t idx = r.failing_indices[0];
                write_witness(o, Json{{"suite", o.suite},
                                      {"mechanism", r.mechanism},
                                      {"graph_index", idx},
                                      {"graph_hash", graph_hash_hex(corpus[idx])},
                                      {"graph", to_json(corpus[idx])},
                                      {"report", to_json(r.failing_reports[0])}});
                witness_done = true;
            }
        }
        std::cout << "  " << r.mechanism << ": "
                  << (r.passed() ? "no violations" : "VIOLATIONS in " +
                          std::to_string(r.failing_indices.size()) + " graph(s)")
                  << " (" << r.subsets_examined << " hiding subsets examined)\n";
        if (!o.csv_path.empty()) write_csv_file(o, corpus, nullptr, &r.violation_counts);
        results.push_back(std::move(rj));
    }

    if (!o.output_path.empty()) {
        Json report{{"suite", o.suite},
                    {"corpus", corpus_json},
                    {"results", results},
                    {"passed", all_passed}};
        write_text_file(o.output_path, dump_json(report));
    }
    std::cout << (all_passed ? "PASS" : "FAIL") << "\n";
    return all_passed ? 0 : 1;
}

int run_ratio_suite(const Options& o) {
    const int n_max = o.n_max > 0 ? o.n_max : 12;
    const int max_out = o.max_out >= 0 ? o.max_out : 0;
    std::vector<Dag> corpus = exhaustive_corpus(5);
    const std::size_t exhaustive_count = corpus.size();
    if (o.count > 0) {
        std::vector<Dag> extra = random_corpus(o.count, n_max, o.seed, max_out);
        corpus.insert(corpus.end(), std::make_move_iterator(extra.begin()),
                      std::make_move_iterator(extra.end()));
    }
    std::cout << "corpus: " << exhaustive_count << " exhaustive (n <= 5) + "
              << (corpus.size() - exhaustive_count) << " random (n <= " << n_max << ", seed "
              << o.seed << ")\n";

    auto mechs = suite_mechanisms(o, true);
    require_single_mechanism_for_csv(o, mechs.size());

    Json results = Json::array();
    bool all_passed = true;
    bool witness_done = false;
    for (const SuiteMechanism& sm : mechs) {
        RatioSweepResult r = ratio_sweep(sm.mech, corpus);
        const bool ok = r.min_ratio >= sm.floor - 1e-9;
        Json rj = ratio_report_json(r, corpus);
        rj["floor"] = sm.floor;
        rj["passed"] = ok;
        std::cout << "  " << r.mechanism << ": min ratio " << r.min_ratio
                  << (ok ? " >= " : " < ") << "floor " << sm.floor << (ok ? "" : "  VIOLATION")
                  << "\n";
        if (!ok) {
            all_passed = false;
            if (!witness_done) {
                write_witness(o, Json{{"suite", o.suite},
                                      {"mechanism", r.mechanism},
                                      {"floor", sm.floor},
                                      {"min_ratio", r.min_ratio},
                                      {"graph_index", r.argmin_index},
                                      {"graph_hash", graph_hash_hex(corpus[r.argmin_index])},
                                      {"graph", to_json(corpus[r.argmin_index])}});
                witness_done = true;
            }
        }
        if (!o.csv_path.empty()) write_csv_file(o, corpus, &r.ratios, nullptr);
        results.push_back(std::move(rj));
    }

    if (!o.output_path.empty()) {
        Json report{{"suite", o.suite},
                    {"corpus", Json{{"exhaustive_n_max", 5},
                                    {"random_count", o.count},
                                    {"random_n_max", n_max},
                                    {"seed", o.seed},
                                    {"graphs", corpus.size()}}},
                    {"results", results},
                    {"passed", all_passed}};
        write_text_file(o.output_path, dump_json(report));
    }
    std::cout << (all_passed ? "PASS" : "FAIL") << "\n";
    return all_passed ? 0 : 1;
}

int run_observations_suite(const Options& o) {
    const int n_max = o.n_max > 0 ? o.n_max : 12;
    const int max_out = o.max_out >= 0 ? o.max_out : 0;
    std::vector<Dag> corpus = exhaustive_corpus(5);
    const std::size_t exhaustive_count = corpus.size();
    if (o.count > 0) {
        std::vector<Dag> extra = random_corpus(o.count, n_max, o.seed, max_out);
        corpus.insert(corpus.end(), std::make_move_iterator(extra.begin()),
                      std::make_move_iterator(extra.end()));
    }
    std::cout << "corpus: " << exhaustive_count << " exhaustive (n <= 5) + "
              << (corpus.size() - exhaustive_count) << " random (n <= " << n_max << ", seed "
              << o.seed << ")\n";

    StructureSweepResult r = structure_sweep(corpus);
    std::cout << "  structural checks on influential sets: " << r.graphs << " graphs, "
              << r.failing_indices.size() << " failure(s)\n";

    Json failures = Json::array();
    for (std::size_t t = 0; t < r.failing_indices.size() && t < 10; ++t) {
        const std::size_t idx = r.failing_indices[t];
        InfluentialPair sets = influential_sets(corpus[idx]);
        failures.push_back(Json{{"index", idx},
                                {"graph_hash", graph_hash_hex(corpus[idx])},
                                {"graph", to_json(corpus[idx])},
                                {"k1_report", to_json(check_structure(corpus[idx], sets.s1))},
                                {"k2_report", to_json(check_structure(corpus[idx], sets.s2))}});
    }
    if (!r.passed()) {
        const std::size_t idx = r.failing_indices[0];
        InfluentialPair sets = influential_sets(corpus[idx]);
        write_witness(o, Json{{"suite", o.suite},
                              {"graph_index", idx},
                              {"graph_hash", graph_hash_hex(corpus[idx])},
                              {"graph", to_json(corpus[idx])},
                              {"k1_report", to_json(check_structure(corpus[idx], sets.s1))},
                              {"k2_report", to_json(check_structure(corpus[idx], sets.s2))}});
    }
    if (!o.csv_path.empty()) {
        std::vector<int> flags(corpus.size(), 0);
        for (std::size_t idx : r.failing_indices) flags[idx] = 1;
        write_csv_file(o, corpus, nullptr, &flags);
    }
    if (!o.output_path.empty()) {
        Json report{{"suite", o.suite},
                    {"corpus", Json{{"exhaustive_n_max", 5},
                                    {"random_count", o.count},
                                    {"random_n_max", n_max},
                                    {"seed", o.seed},
                                    {"graphs", corpus.size()}}},
                    {"graphs", r.graphs},
                    {"failures", failures},
                    {"passed", r.passed()}};
        write_text_file(o.output_path, dump_json(report));
    }
    std::cout << (r.passed() ? "PASS" : "FAIL") << "\n";
    return r.passed() ? 0 : 1;
}

int run_upper_bound_suite(const Options& o) {
    if (!o.csv_path.empty()) throw UsageError("--csv does not apply to the upper-bound suite");
    try {
        UpperBoundCertificate cert = verify_upper_bound();
        std::cout << "  network ratios: " << rat_to_string(cert.ratios[0]) << ", "
                  << rat_to_string(cert.ratios[1]) << ", " << rat_to_string(cert.ratios[2])
                  << "\n";
        std::cout << "  certificate min ratio: " << rat_to_string(cert.min_ratio) << "\n";
        std::cout << "  lp optimum: " << rat_to_string(cert.lp_optimum) << "\n";
        if (!o.output_path.empty()) {
            Json report = to_json(cert);
            report["suite"] = o.suite;
            report["passed"] = true;
            write_text_file(o.output_path, dump_json(report));
        }
        std::cout << "PASS\n";
        return 0;
    } catch (const CertificateViolation& e) {
        std::cout << "  certificate check failed: " << e.what() << "\n";
        write_witness(o, Json{{"suite", o.suite}, {"error", e.what()}});
        if (!o.output_path.empty())
            write_text_file(o.output_path,
                            dump_json(Json{{"suite", o.suite},
                                           {"error", e.what()},
                                           {"passed", false}}));
        std::cout << "FAIL\n";
        return 1;
    }
}

int cmd_verify(const Options& o) {
    std::cout << "suite: " << o.suite << "\n";
    if (o.suite == "ic-exhaustive") return run_ic_suite(o, true);
    if (o.suite == "ic-random") return run_ic_suite(o, false);
    if (o.suite == "ratio-floors") return run_ratio_suite(o);
    if (o.suite == "observations") return run_observations_suite(o);
    if (o.suite == "upper-bound") return run_upper_bound_suite(o);
    throw UsageError("unknown suite " + o.suite);  // unreachable; CLI11 validates
}

void add_family_options(CLI::App* cmd, Options& o) {
    cmd->add_option("--family", o.family,
                    "graph family: figure1, figure4, two_star, lm_tight_chain, "
                    "figure3a, figure3b, figure3c, random");
    o.y_opt = cmd->add_option("--y", o.y, "two_star: agents per star");
    o.m_opt = cmd->add_option("--m", o.m, "lm_tight_chain: chain length");
    o.n_opt = cmd->add_option("--n", o.n, "random: number of agents");
    o.p_opt = cmd->add_option("--p", o.p, "random: edge probability in [0,1]");
    o.seed_opt = cmd->add_option("--seed", o.seed, "rng seed (random family, sampling)");
    cmd->add_option("--max-out", o.max_out, "random: out-degree cap, 0 = uncapped");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"influencer-selection mechanisms on follower dags"};
    app.require_subcommand(1);
    Options o;

    CLI::App* sel = app.add_subcommand(
        "select", "compute a mechanism's selection distribution for one graph");
    sel->add_option("--input", o.input_path, "graph json file");
    add_family_options(sel, o);
    sel->add_option("--mechanism", o.mechanism, "beta-lm, ldm, or lald");
    sel->add_option("--beta", o.beta_text, "beta-lm parameter in [0,1], or \"optimal\"");
    sel->add_option("--sample", o.sample_count, "also draw this many subsets with the seed");
    sel->add_option("--output", o.output_path, "write the distribution json here (default stdout)");

    CLI::App* gen = app.add_subcommand("generate", "emit a family graph as json");
    add_family_options(gen, o);
    gen->add_option("--output", o.output_path, "write the graph json here (default stdout)");

    CLI::App* ver = app.add_subcommand("verify", "run a verification suite over a graph corpus");
    ver->add_option("suite", o.suite, "which suite to run")
        ->required()
        ->check(CLI::IsMember(
            {"ic-exhaustive", "ic-random", "ratio-floors", "upper-bound", "observations"}));
    ver->add_option("--mechanism", o.mechanism,
                    "restrict to one mechanism (default: the suite's full set)");
    ver->add_option("--beta", o.beta_text, "beta-lm parameter in [0,1], or \"optimal\"");
    ver->add_option("--count", o.count, "random corpus size (default 10000)");
    ver->add_option("--n-max", o.n_max,
                    "largest graph size (defaults: ic-exhaustive 5, ic-random 10, others 12)");
    ver->add_option("--max-out", o.max_out,
                    "out-degree cap for random corpora (default 6 for ic-random, else uncapped)");
    ver->add_option("--seed", o.seed, "random corpus seed (default 1)");
    ver->add_option("--budget", o.budget, "hiding-subset budget per graph (default 1000000)");
    ver->add_option("--witness", o.witness_path,
                    "where to dump the witness graph on violation (default witness.json)");
    ver->add_option("--output", o.output_path, "write the full suite report json here");
    ver->add_option("--csv", o.csv_path,
                    "write a per-graph csv (single mechanism suites only)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (app.got_subcommand(sel)) return cmd_select(o);
        if (app.got_subcommand(gen)) return cmd_generate(o);
        return cmd_verify(o);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
