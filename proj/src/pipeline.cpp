#include "paradigm/pipeline.h"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <map>
#include <ostream>
#include <set>

#include "paradigm/format.h"
#include "paradigm/random.h"

namespace paradigm {

namespace {

const std::pair<Mode, const char*> kModeNames[] = {
    {Mode::PcsI, "pcs-i"},           {Mode::PcsIIa, "pcs-ii-a"},       {Mode::PcsIIb, "pcs-ii-b"},
    {Mode::PcsIII, "pcs-iii"},       {Mode::PcsIIPlusIII, "pcs-ii+iii"}, {Mode::LemmaBaseline, "lb"},
    {Mode::Conll17K, "conll17-k"},   {Mode::Eval, "eval"},
};

template <typename F>
auto run_stage(const char* name, RunReport& report, F&& body) {
    const auto start = std::chrono::steady_clock::now();
    auto finish = [&] {
        const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
        report.timings.push_back({name, elapsed.count()});
    };
    try {
        if constexpr (std::is_void_v<decltype(body())>) {
            body();
            finish();
        } else {
            auto value = body();
            finish();
            return value;
        }
    } catch (const StageError&) {
        throw;
    } catch (const std::exception& e) {
        throw StageError(name, e.what());
    }
}

std::vector<Word> unique_lemmas(const std::vector<Word>& lexicon) {
    std::vector<Word> out;
    std::set<Word> seen;
    for (const auto& l : lexicon) {
        if (seen.insert(l).second) out.push_back(l);
    }
    return out;
}

size_t slot_count(const Paradigms& p) {
    std::set<int> ids;
    for (const auto& [lemma, cells] : p) {
        for (const auto& cell : cells) ids.insert(cell.first);
    }
    return ids.size();
}

DiscoverySettings discovery_settings(const Config& c) {
    DiscoverySettings s;
    s.lambda_p = c.lambda_p;
    s.phi_fc = c.phi_fc;
    s.phi_nl = c.phi_nl;
    s.theta_nl = c.theta_nl;
    s.workers = c.workers;
    return s;
}

void run_discovery(const Config& config, const PipelineInput& input, const std::vector<Word>& lemmas,
                   PipelineResult& result) {
    auto& report = result.report;
    const auto settings = discovery_settings(config);
    auto state = run_stage("discovery", report, [&] { return discover(input.corpus.vocab, lemmas, settings); });
    const int rounds = config.bootstrap_rounds();
    if (rounds > 0) {
        state = run_stage("bootstrap", report,
                          [&] { return bootstrap_iterate(input.corpus.vocab, std::move(state), settings, rounds); });
    }
    report.discovered = state.lexicon.size() - state.lexicon.gold_size();
    report.trees = state.trees().size();
    result.discovery = std::move(state);
}

// Each retained tree is its own slot.
void predict_tree_slots(const Config& config, const PipelineInput& input, const std::vector<Word>& lemmas,
                        PipelineResult& result) {
    const auto& trees = result.discovery->trees();
    run_stage("generation", result.report, [&] {
        for (const auto& lemma : lemmas) {
            for (size_t t = 0; t < trees.size(); ++t) {
                auto form = trees[t].apply(lemma);
                if (!form) continue;
                if (config.observed_only && !input.corpus.vocab.contains(*form)) continue;
                result.predictions[lemma][static_cast<int>(t) + 1] = std::move(*form);
            }
        }
    });
}

void predict_clustered_slots(const Config& config, const PipelineInput& input, const std::vector<Word>& lemmas,
                             PipelineResult& result) {
    auto& report = result.report;
    const auto& corpus = input.corpus;
    const auto& state = *result.discovery;

    auto training = run_stage("tagging", report, [&] {
        HmmSettings hmm = config.tagger;
        hmm.workers = config.workers;
        return train_hmm(corpus.corpus, corpus.vocab, hmm);
    });
    result.tags = run_stage("decoding", report,
                            [&] { return tag_corpus(training.model, corpus.corpus, corpus.vocab, config.workers); });
    result.model = std::move(training.model);

    ClusteringSettings cs;
    cs.lambda_s = config.lambda_s;
    cs.half_width = (config.window - 1) / 2;
    cs.workers = config.workers;
    result.clustering = run_stage("clustering", report, [&] {
        return group_surface_changes(state.trees(), corpus.corpus, corpus.vocab, *result.tags, state.lexicon, cs);
    });
    report.merges = result.clustering->merges;

    const auto& slots = result.clustering->slots;
    result.rules = run_stage("rules", report, [&] {
        std::vector<TrainingTriple> triples;
        for (const auto& slot : slots) {
            for (const auto& p : slot.productions) {
                const auto& entry = state.lexicon[p.lemma];
                triples.push_back({slot.id, entry.lemma, corpus.vocab.word(p.form), entry.weight});
            }
        }
        RuleOptions options;
        options.weighted = config.weighted_rules;
        auto table = extract_affix_rules(triples, options);
        for (size_t i : table.skipped) {
            report.warnings.push_back("no common substring, triple skipped: " + unicode::encode(triples[i].lemma) +
                                      " -> " + unicode::encode(triples[i].form));
        }
        return table;
    });

    run_stage("generation", report, [&] {
        for (const auto& slot : slots) {
            std::set<Word> observed;
            if (config.observed_only) {
                for (size_t l : slot.lemmas) observed.insert(state.lexicon[l].lemma);
            }
            for (const auto& lemma : lemmas) {
                if (config.observed_only && !observed.count(lemma)) continue;
                result.predictions[lemma][slot.id] = inflect(*result.rules, slot.id, lemma);
            }
        }
    });
}

void predict_conll(const Config& config, const PipelineInput& input, const std::vector<Word>& lemmas,
                   PipelineResult& result) {
    auto& report = result.report;
    const GoldTable& gold = *input.gold;
    std::map<std::string, int> slot_ids;
    for (const auto& [lemma, cells] : gold) {
        for (const auto& cell : cells) slot_ids.emplace(cell.first, 0);
    }
    int next = 1;
    for (auto& [label, id] : slot_ids) id = next++;

    result.rules = run_stage("rules", report, [&] {
        const std::set<Word> lexicon(lemmas.begin(), lemmas.end());
        std::vector<Word> held_out, overlapping;
        for (const auto& entry : gold) (lexicon.count(entry.first) ? overlapping : held_out).push_back(entry.first);
        Rng rng(config.conll_seed);
        rng.shuffle(held_out);
        rng.shuffle(overlapping);
        std::vector<Word> sample(held_out.begin(), held_out.begin() + std::min<size_t>(held_out.size(), config.conll_k));
        if (sample.size() < static_cast<size_t>(config.conll_k)) {
            const size_t extra = std::min(overlapping.size(), config.conll_k - sample.size());
            sample.insert(sample.end(), overlapping.begin(), overlapping.begin() + extra);
            if (extra > 0) {
                report.warnings.push_back(std::to_string(extra) +
                                          " training paradigms overlap the lexicon (too few held-out gold lemmas)");
            }
        }
        std::sort(sample.begin(), sample.end());
        std::vector<TrainingTriple> triples;
        for (const auto& lemma : sample) {
            for (const auto& [label, form] : gold.at(lemma)) triples.push_back({slot_ids.at(label), lemma, form, 1.0});
        }
        auto table = extract_affix_rules(triples);
        // Slots absent from the sample still get identity predictions.
        for (const auto& entry : slot_ids) table.slots.try_emplace(entry.second);
        for (size_t i : table.skipped) {
            report.warnings.push_back("no common substring, triple skipped: " + unicode::encode(triples[i].lemma) +
                                      " -> " + unicode::encode(triples[i].form));
        }
        return table;
    });
    run_stage("generation", report, [&] {
        for (const auto& lemma : lemmas) {
            for (int id : result.rules->slot_ids()) result.predictions[lemma][id] = inflect(*result.rules, id, lemma);
        }
    });
}

}  // namespace

std::string mode_name(Mode mode) {
    for (const auto& [m, name] : kModeNames) {
        if (m == mode) return name;
    }
    return "?";
}

Mode parse_mode(const std::string& name) {
    for (const auto& [m, n] : kModeNames) {
        if (name == n) return m;
    }
    throw std::invalid_argument("unknown mode '" + name + "'");
}

int Config::bootstrap_rounds() const {
    if (iterations) return *iterations;
    switch (mode) {
        case Mode::PcsIIa: return 1;
        case Mode::PcsIIb: return 2;
        case Mode::PcsIIPlusIII: return 1;
        default: return 0;
    }
}

void Config::validate() const {
    auto fail = [](const std::string& field, const std::string& range) {
        throw std::invalid_argument(field + " must be " + range);
    };
    if (!(lambda_p >= 0.0 && lambda_p < 1.0)) fail("lambda_p", "in [0, 1)");
    if (!(phi_fc > 0.0 && phi_fc <= 1.0)) fail("phi_fc", "in (0, 1]");
    if (!(phi_nl > 0.0 && phi_nl <= 1.0)) fail("phi_nl", "in (0, 1]");
    if (!(theta_nl > 0.0 && theta_nl <= 1.0)) fail("theta_nl", "in (0, 1]");
    if (!(lambda_s > 0.0 && lambda_s < 1.0)) fail("lambda_s", "in (0, 1)");
    if (window < 1 || window % 2 == 0) fail("window", "a positive odd number");
    if (iterations && *iterations < 0) fail("iterations", ">= 0");
    if (tagger.states < 1 || tagger.states > 65535) fail("states", "in [1, 65535]");
    if (tagger.iterations < 1) fail("tagger_iterations", ">= 1");
    if (workers < 1) fail("workers", ">= 1");
    if (lb_slots < 1) fail("lb_slots", ">= 1");
    if (conll_k < 1) fail("conll_k", ">= 1");
}

PipelineResult run_pipeline(const Config& config, const PipelineInput& input) {
    config.validate();
    PipelineResult result;
    auto& report = result.report;
    report.mode = config.mode;
    const auto lemmas = unique_lemmas(input.lexicon);
    report.lemmas = lemmas.size();

    auto need_gold = [&](const char* why) {
        if (!input.gold) throw StageError("input", std::string("a gold table is required for ") + why);
    };

    switch (config.mode) {
        case Mode::PcsI:
        case Mode::PcsIIa:
        case Mode::PcsIIb:
            run_discovery(config, input, lemmas, result);
            predict_tree_slots(config, input, lemmas, result);
            break;
        case Mode::PcsIII:
        case Mode::PcsIIPlusIII:
            run_discovery(config, input, lemmas, result);
            if (result.discovery->trees().empty()) {
                report.warnings.push_back("no surface form change retained; nothing to cluster");
                break;
            }
            predict_clustered_slots(config, input, lemmas, result);
            break;
        case Mode::LemmaBaseline: {
            int slots = config.lb_slots;
            if (config.lb_truth) {
                need_gold("lb with lb_truth");
                slots = static_cast<int>(gold_slot_count(*input.gold));
                if (slots < 1) throw StageError("input", "gold table is empty");
            }
            result.predictions = run_stage("generation", report, [&] { return lemma_baseline(lemmas, slots); });
            break;
        }
        case Mode::Conll17K:
            need_gold("conll17-k");
            predict_conll(config, input, lemmas, result);
            break;
        case Mode::Eval:
            need_gold("eval");
            if (!input.predictions) throw StageError("input", "eval needs a predictions file");
            result.predictions = *input.predictions;
            break;
    }
    report.predicted_slots = slot_count(result.predictions);
    if (input.gold) {
        report.evaluation = run_stage("evaluation", report, [&] { return bmacc(*input.gold, result.predictions); });
    }
    return result;
}

PipelineResult run_pipeline(const Config& config, const PipelinePaths& paths) {
    config.validate();
    RunReport load_report;
    LoadOptions options;
    options.lowercase = config.lowercase;
    PipelineInput input = run_stage("load", load_report, [&] {
        PipelineInput in;
        if (config.mode != Mode::Eval) {
            in.corpus = load_corpus(paths.corpus, options);
            in.lexicon = load_lexicon(paths.lexicon, options);
        } else {
            in.predictions = load_predictions(paths.predictions);
        }
        if (!paths.gold.empty()) in.gold = load_gold(paths.gold, options);
        return in;
    });
    auto result = run_pipeline(config, input);
    result.report.timings.insert(result.report.timings.begin(), load_report.timings.begin(), load_report.timings.end());
    if (!paths.output.empty() && config.mode != Mode::Eval) {
        run_stage("write", result.report, [&] { write_predictions(result.predictions, paths.output); });
    }
    return result;
}

void write_run_report(const RunReport& r, std::ostream& out) {
    out << "mode " << mode_name(r.mode) << "\n";
    out << "lemmas " << r.lemmas << "\n";
    out << "discovered lemmas " << r.discovered << "\n";
    out << "retained trees " << r.trees << "\n";
    out << "predicted slots (M) " << r.predicted_slots << "\n";
    for (const auto& t : r.timings) {
        char buffer[32];
        std::snprintf(buffer, sizeof(buffer), "%.3f", t.seconds);
        out << "time " << t.stage << " " << buffer << "s\n";
    }
    for (const auto& m : r.merges) out << "merge " << m.left << " " << m.right << " " << format_double(m.score) << "\n";
    for (const auto& w : r.warnings) out << "warning " << w << "\n";
    if (r.evaluation) write_report_text(*r.evaluation, out);
}

}  // namespace paradigm
