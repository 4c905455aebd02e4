// Command-line front end: run, eval, synth, tag, rules-dump.
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "paradigm/parallel.h"
#include "paradigm/pipeline.h"
#include "paradigm/synthetic.h"

namespace fs = std::filesystem;
using namespace paradigm;

namespace {

struct Dumps {
    std::string report;
    std::string report_format = "text";
    std::string census;
    std::string discovered;
    std::string tags;
    std::string merges;
    std::string rules;
    std::string model;
};

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path);
    return out;
}

void add_model_options(CLI::App* app, paradigm::Config& c) {
    app->add_option("--states", c.tagger.states, "HMM hidden states")->capture_default_str();
    app->add_option("--tagger-iterations,--tagger_iterations", c.tagger.iterations, "EM iterations")->capture_default_str();
    app->add_option("--seed", c.tagger.seed, "HMM initialisation seed")->capture_default_str();
    app->add_option("--unk-threshold,--unk_threshold", c.tagger.unk_threshold, "types rarer than this become UNK")
        ->capture_default_str();
}

void add_pipeline_options(CLI::App* app, paradigm::Config& c, std::string& mode, int& iterations) {
    app->add_option("--mode", mode, "pcs-i, pcs-ii-a, pcs-ii-b, pcs-iii, pcs-ii+iii, lb, conll17-k")
        ->capture_default_str();
    app->add_option("--lambda-p,--lambda_p", c.lambda_p, "candidate LCS ratio threshold")->capture_default_str();
    app->add_option("--phi-fc,--phi_fc", c.phi_fc, "tree frequency fraction")->capture_default_str();
    app->add_option("--phi-nl,--phi_nl", c.phi_nl, "new lemma fraction")->capture_default_str();
    app->add_option("--theta-nl,--theta_nl", c.theta_nl, "bootstrap weight decay")->capture_default_str();
    app->add_option("--lambda-s,--lambda_s", c.lambda_s, "slot merge threshold")->capture_default_str();
    app->add_option("--window", c.window, "context window size (odd)")->capture_default_str();
    app->add_option("--iterations", iterations, "bootstrap rounds (default: per mode)");
    add_model_options(app, c);
    app->add_flag("--unweighted-rules{false},--unweighted_rules{false}", c.weighted_rules, "count rule supports without lemma weights");
    app->add_flag("--observed-only,--observed_only", c.observed_only, "emit a slot only for lemmas observed with it");
    app->add_option("--lb-slots,--lb_slots", c.lb_slots, "slot count of the lemma baseline")->capture_default_str();
    app->add_flag("--lb-truth,--lb_truth", c.lb_truth, "lemma baseline with the gold paradigm size");
    app->add_option("--conll-k,--conll_k", c.conll_k, "gold paradigms sampled for conll17-k")->capture_default_str();
    app->add_option("--conll-seed,--conll_seed", c.conll_seed, "sampling seed for conll17-k")->capture_default_str();
}

void write_dumps(const PipelineResult& r, const Dumps& d) {
    if (!d.report.empty()) {
        auto out = open_output(d.report);
        if (d.report_format == "kv") {
            if (r.report.evaluation) write_report_keyvalue(*r.report.evaluation, out);
        } else {
            write_run_report(r.report, out);
        }
    }
    if (!d.census.empty() && r.discovery) {
        auto out = open_output(d.census);
        write_tree_census(r.discovery->retained.census, out);
    }
    if (!d.discovered.empty() && r.discovery) {
        auto out = open_output(d.discovered);
        write_discovered_lemmas(*r.discovery, out);
    }
    if (!d.merges.empty() && r.clustering) {
        auto out = open_output(d.merges);
        write_merge_log(r.clustering->merges, out);
    }
    if (!d.rules.empty() && r.rules) {
        auto out = open_output(d.rules);
        write_rules(*r.rules, out);
    }
    if (!d.model.empty() && r.model) {
        auto out = open_output(d.model);
        r.model->save(out);
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Unsupervised paradigm completion from a raw corpus and a lemma list"};
    app.require_subcommand(1);
    app.fallthrough();
    unsigned workers = default_workers();
    paradigm::Config config;
    std::string mode = mode_name(config.mode);
    int iterations = -1;
    // Shared settings live on the top level so that one config file serves
    // every subcommand; subcommands fall through to them.
    app.set_config("--config", "", "config file, TOML/INI keys named like the flags");
    app.add_option("--workers", workers, "worker threads")->capture_default_str();
    app.add_flag("--keep-case{false},--keep_case{false}", config.lowercase, "do not lowercase inputs");
    add_pipeline_options(&app, config, mode, iterations);
    PipelinePaths paths;
    Dumps dumps;
    std::string tagged_out;

    auto* run = app.add_subcommand("run", "run a pipeline mode and write predictions");
    run->add_option("--corpus", paths.corpus, "corpus, one sentence per line")->required();
    run->add_option("--lexicon", paths.lexicon, "lemmas, one per line")->required();
    run->add_option("--out", paths.output, "predictions TSV")->required();
    run->add_option("--gold", paths.gold, "gold TSV to score against");
    run->add_option("--report", dumps.report, "write the run report here");
    run->add_option("--report-format", dumps.report_format, "text or kv")->check(CLI::IsMember({"text", "kv"}));
    run->add_option("--dump-census", dumps.census, "tree census TSV");
    run->add_option("--dump-discovered", dumps.discovered, "bootstrapped lemmas TSV");
    run->add_option("--dump-tags", dumps.tags, "tagged corpus");
    run->add_option("--dump-merges", dumps.merges, "slot merge log");
    run->add_option("--dump-rules", dumps.rules, "rule table TSV");
    run->add_option("--save-model", dumps.model, "trained HMM");

    auto* eval = app.add_subcommand("eval", "score predictions against gold tables");
    eval->add_option("--gold", paths.gold, "gold TSV")->required();
    eval->add_option("--predictions", paths.predictions, "predictions TSV")->required();
    eval->add_option("--format", dumps.report_format, "text or kv")->check(CLI::IsMember({"text", "kv"}));

    SyntheticSpec spec;
    fs::path synth_dir;
    auto* synth = app.add_subcommand("synth", "generate a synthetic language");
    synth->add_option("--out-dir", synth_dir, "directory for corpus.txt, lexicon.txt, gold.tsv")->required();
    synth->add_option("--slots", spec.slots, "paradigm size")->capture_default_str();
    synth->add_option("--lemmas", spec.lemmas, "listed lemmas")->capture_default_str();
    synth->add_option("--classes", spec.classes, "inflection classes")->capture_default_str();
    synth->add_option("--tokens", spec.tokens, "corpus length")->capture_default_str();
    synth->add_option("--seed", spec.seed, "generator seed")->capture_default_str();
    synth->add_option("--hidden", spec.hidden_lemmas, "unlisted lemmas (default lemmas/5)");

    fs::path load_model;
    auto* tag = app.add_subcommand("tag", "train the HMM tagger and tag a corpus");
    tag->add_option("--corpus", paths.corpus, "corpus")->required();
    tag->add_option("--out", tagged_out, "tagged corpus (token TAB tag)")->required();
    tag->add_option("--save-model", dumps.model, "write the trained model");
    tag->add_option("--model", load_model, "tag with a saved model instead of training");

    auto* rules = app.add_subcommand("rules-dump", "learn the rule table and write it as TSV");
    rules->add_option("--corpus", paths.corpus, "corpus")->required();
    rules->add_option("--lexicon", paths.lexicon, "lemmas")->required();
    rules->add_option("--out", dumps.rules, "rule table TSV")->required();
    rules->add_option("--gold", paths.gold, "gold TSV (conll17-k)");

    CLI11_PARSE(app, argc, argv);

    try {
        config.workers = std::max(1u, workers);
        if (iterations >= 0) config.iterations = iterations;

        if (run->parsed() || rules->parsed()) {
            config.mode = parse_mode(mode);
            if (config.mode == Mode::Eval) throw std::invalid_argument("use the eval subcommand to score predictions");
            if (rules->parsed() && config.mode != Mode::PcsIII && config.mode != Mode::PcsIIPlusIII &&
                config.mode != Mode::Conll17K) {
                throw std::invalid_argument("mode " + mode + " learns no rules");
            }
            const auto result = run_pipeline(config, paths);
            if (!dumps.tags.empty() && result.tags) {
                auto out = open_output(dumps.tags);
                const auto corpus = load_corpus(paths.corpus, LoadOptions{config.lowercase});
                write_tagged_corpus(corpus.corpus, corpus.vocab, *result.tags, out);
            }
            write_dumps(result, dumps);
            if (run->parsed()) {
                write_run_report(result.report, std::cout);
            } else {
                std::cout << "rules: " << dumps.rules << "\n";
            }
        } else if (eval->parsed()) {
            config.mode = Mode::Eval;
            const auto result = run_pipeline(config, paths);
            if (dumps.report_format == "kv") write_report_keyvalue(*result.report.evaluation, std::cout);
            else write_report_text(*result.report.evaluation, std::cout);
        } else if (synth->parsed()) {
            const auto language = generate_synthetic_language(spec);
            write_synthetic_language(language, synth_dir);
            std::cout << "wrote " << (synth_dir / "corpus.txt").string() << ", lexicon.txt, gold.tsv\n";
        } else if (tag->parsed()) {
            config.validate();
            const auto corpus = load_corpus(paths.corpus, LoadOptions{config.lowercase});
            HmmModel model;
            if (!load_model.empty()) {
                std::ifstream in(load_model, std::ios::binary);
                if (!in) throw std::runtime_error("cannot open " + load_model.string());
                model = HmmModel::load(in);
            } else {
                HmmSettings settings = config.tagger;
                settings.workers = config.workers;
                auto training = train_hmm(corpus.corpus, corpus.vocab, settings);
                std::cout << "log-likelihood " << training.log_likelihood.front() << " -> "
                          << training.log_likelihood.back() << "\n";
                model = std::move(training.model);
            }
            const auto tags = tag_corpus(model, corpus.corpus, corpus.vocab, config.workers);
            auto out = open_output(tagged_out);
            write_tagged_corpus(corpus.corpus, corpus.vocab, tags, out);
            if (!dumps.model.empty()) {
                auto model_out = open_output(dumps.model);
                model.save(model_out);
            }
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
