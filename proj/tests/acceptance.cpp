// Acceptance checks: one PASS/FAIL line per criterion, nonzero exit on any
// failure. PARADIGM_SMOKE_CORPUS (and optionally PARADIGM_SMOKE_LEXICON)
// point the smoke run at a real corpus; otherwise a generated one is used.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>
#include <string>

#include "oracles.h"
#include "paradigm/bootstrap.h"
#include "paradigm/discovery.h"
#include "paradigm/lexicon.h"
#include "paradigm/pipeline.h"
#include "paradigm/synthetic.h"

using namespace paradigm;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

CorpusData corpus_from(const std::string& text) {
    std::istringstream in(text);
    return parse_corpus(in);
}

PipelineInput synthetic_input(const SyntheticLanguage& lang) {
    PipelineInput input;
    input.corpus = corpus_from(corpus_text(lang));
    input.lexicon = lang.lexicon;
    input.gold = lang.gold;
    return input;
}

Outcome edit_tree_fidelity() {
    Outcome o;
    const auto tree = construct_edit_tree(U"najtrudniejszy", U"trudny");
    const auto apples = tree.apply(U"najappleiejszs");
    const bool worked = apples && *apples == U"apples";
    const bool blocked = !tree.apply(U"trudny");
    oracle::UnicodeStrings gen(2024);
    size_t failures = 0;
    const size_t pairs = 10000;
    const auto start = Clock::now();
    for (size_t i = 0; i < pairs; ++i) {
        const auto x = gen.next(12);
        const auto y = gen.next(12);
        const auto out = construct_edit_tree(x, y).apply(x);
        if (!out || *out != y) ++failures;
    }
    const double t = seconds_since(start);
    o.pass = worked && blocked && failures == 0 && t < 10.0;
    o.detail = std::string("apples ") + (worked ? "ok" : "WRONG") + ", trudny " + (blocked ? "n/a" : "APPLIED") + ", " +
               std::to_string(failures) + "/" + std::to_string(pairs) + " round-trip failures, " +
               std::to_string(t) + "s";
    return o;
}

Outcome thresholds() {
    Outcome o;
    o.pass = frequency_threshold(100, 0.05) == 5.0 && frequency_threshold(10, 0.05) == 2.0 &&
             new_lemma_threshold(10, 0.2) == 3.0 && new_lemma_threshold(40, 0.2) == 8.0 &&
             lemma_weight(0.5, 0) == 1.0 && lemma_weight(0.5, 1) == 0.5 && lemma_weight(0.5, 2) == 0.25;
    std::ostringstream d;
    d << "fc(100)=" << frequency_threshold(100, 0.05) << " fc(10)=" << frequency_threshold(10, 0.05)
      << " nl(10)=" << new_lemma_threshold(10, 0.2) << " nl(40)=" << new_lemma_threshold(40, 0.2) << " theta="
      << lemma_weight(0.5, 0) << "," << lemma_weight(0.5, 1) << "," << lemma_weight(0.5, 2);
    o.detail = d.str();
    return o;
}

Outcome matching_oracle() {
    Outcome o;
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<int> size(1, 6), value(0, 50);
    size_t mismatches = 0;
    const auto start = Clock::now();
    for (int trial = 0; trial < 1000; ++trial) {
        const size_t n = static_cast<size_t>(size(rng)), m = static_cast<size_t>(size(rng));
        std::vector<std::vector<double>> w(n, std::vector<double>(m));
        for (auto& row : w)
            for (auto& x : row) x = value(rng);
        if (best_match(w).total != oracle::brute_force_matching(w)) ++mismatches;
    }
    const double t = seconds_since(start);
    o.pass = mismatches == 0 && t < 30.0;
    o.detail = std::to_string(mismatches) + "/1000 mismatches, " + std::to_string(t) + "s";
    return o;
}

Outcome metric_sanity() {
    Outcome o;
    const auto lang = generate_synthetic_language(SyntheticSpec{});
    Paradigms perfect, disjoint;
    std::vector<int> ids = {1, 2, 3, 4};
    for (const auto& [lemma, cells] : lang.gold) {
        int k = 0;
        for (const auto& cell : cells) {
            perfect[lemma][ids[k]] = cell.second;
            disjoint[lemma][ids[k]] = cell.second + U"qq";
            ++k;
        }
    }
    const auto p = bmacc(lang.gold, perfect);
    const auto z = bmacc(lang.gold, disjoint);

    // Relabel a noisy prediction with random pseudo-slot ids.
    Paradigms noisy;
    std::mt19937_64 rng(5);
    for (const auto& [lemma, cells] : perfect) {
        for (const auto& [slot, form] : cells) {
            noisy[lemma][slot] = rng() % 3 == 0 ? lemma : form;
        }
    }
    bool invariant = true;
    const auto base = bmacc(lang.gold, noisy);
    for (int round = 0; round < 20; ++round) {
        std::vector<int> relabel = {11, 23, 37, 42};
        std::shuffle(relabel.begin(), relabel.end(), rng);
        Paradigms moved;
        for (const auto& [lemma, cells] : noisy) {
            for (const auto& [slot, form] : cells) moved[lemma][relabel[slot - 1]] = form;
        }
        const auto r = bmacc(lang.gold, moved);
        invariant = invariant && r.macro == base.macro && r.micro == base.micro;
    }
    o.pass = p.macro == 1.0 && p.micro == 1.0 && z.macro == 0.0 && z.micro == 0.0 && invariant;
    std::ostringstream d;
    d << "perfect " << p.macro << "/" << p.micro << ", disjoint " << z.macro << "/" << z.micro << ", relabel "
      << (invariant ? "invariant" : "CHANGED");
    o.detail = d.str();
    return o;
}

Outcome lemma_baseline_default() {
    Outcome o;
    const auto input = synthetic_input(generate_synthetic_language(SyntheticSpec{}));
    Config c;
    c.mode = Mode::LemmaBaseline;
    const auto r = run_pipeline(c, input);
    const size_t merged = r.report.evaluation ? r.report.evaluation->predicted_slots : 0;
    o.pass = c.lb_slots == 48 && kLemmaBaselineDevSlots == 48 && r.report.predicted_slots == 48 && merged == 1;
    o.detail = "default " + std::to_string(c.lb_slots) + " slots, M after merging " + std::to_string(merged);
    return o;
}

Outcome synthetic_recovery() {
    Outcome o;
    const auto start = Clock::now();
    SyntheticSpec spec;
    spec.slots = 4;
    spec.lemmas = 30;
    spec.classes = 2;
    spec.tokens = 20000;
    spec.seed = 7;
    const auto input = synthetic_input(generate_synthetic_language(spec));
    Config c;
    c.mode = Mode::PcsIIPlusIII;
    const auto r = run_pipeline(c, input);
    const double t = seconds_since(start);
    const auto& e = *r.report.evaluation;
    o.pass = e.predicted_slots == 4 && e.micro >= 0.9 && t < 120.0;
    std::ostringstream d;
    d << "M=" << e.predicted_slots << " micro=" << e.micro << " macro=" << e.macro << ", " << t << "s";
    o.detail = d.str();
    return o;
}

Outcome smoke_run() {
    Outcome o;
    PipelineInput input;
    std::string source;
    if (const char* path = std::getenv("PARADIGM_SMOKE_CORPUS")) {
        source = path;
        input.corpus = load_corpus(path);
        if (const char* lex = std::getenv("PARADIGM_SMOKE_LEXICON")) {
            input.lexicon = load_lexicon(lex);
        } else {
            // No lemma list: the 1000 most frequent types stand in.
            std::vector<TypeId> ids(input.corpus.vocab.size());
            std::iota(ids.begin(), ids.end(), TypeId{0});
            std::stable_sort(ids.begin(), ids.end(), [&](TypeId a, TypeId b) {
                return input.corpus.vocab.count(a) > input.corpus.vocab.count(b);
            });
            ids.resize(std::min<size_t>(ids.size(), 1000));
            for (TypeId id : ids) input.lexicon.push_back(input.corpus.vocab.word(id));
        }
    } else {
        SyntheticSpec spec;
        spec.slots = 12;
        spec.lemmas = 400;
        spec.classes = 4;
        spec.tokens = 100000;
        spec.seed = 3;
        source = "generated";
        input = synthetic_input(generate_synthetic_language(spec));
    }
    const auto start = Clock::now();
    Config c;
    c.mode = Mode::PcsI;
    const auto r = run_pipeline(c, input);
    const double t = seconds_since(start);
    o.pass = t < 300.0 && !r.predictions.empty();
    o.detail = source + " corpus, " + std::to_string(input.corpus.corpus.size()) + " tokens, " +
               std::to_string(r.report.predicted_slots) + " slots, " + std::to_string(t) + "s";
    return o;
}

Outcome em_properties() {
    Outcome o;
    std::vector<std::pair<std::string, CorpusData>> corpora;
    corpora.emplace_back("synthetic seed 7", corpus_from(corpus_text(generate_synthetic_language(SyntheticSpec{}))));
    SyntheticSpec other;
    other.classes = 3;
    other.slots = 6;
    other.seed = 11;
    other.tokens = 30000;
    corpora.emplace_back("synthetic seed 11", corpus_from(corpus_text(generate_synthetic_language(other))));
    corpora.emplace_back("english toy", corpus_from("the dog walked home\nthe cat walks home\na dog walks\n"
                                                    "the cats walked to the dog\nwe walk\nshe talked to a cat\n"
                                                    "they talk\nthe dog talks to the cats\n"));
    std::ostringstream d;
    for (const auto& [name, data] : corpora) {
        HmmSettings s;
        s.iterations = 20;
        const auto training = train_hmm(data.corpus, data.vocab, s);
        const auto& ll = training.log_likelihood;
        double worst_drop = 0.0;
        for (size_t i = 1; i < ll.size(); ++i) worst_drop = std::max(worst_drop, ll[i - 1] - ll[i]);
        const double norm = training.model.normalization_error();
        const bool ok = ll.size() == 21 && worst_drop <= 1e-6 && norm <= 1e-9;
        o.pass = o.pass && ok;
        d << name << ": drop " << worst_drop << " norm " << norm << (ok ? "" : " FAIL") << "; ";
    }
    o.detail = d.str();
    return o;
}

Outcome determinism() {
    Outcome o;
    const auto input = synthetic_input(generate_synthetic_language(SyntheticSpec{}));
    std::string files[2];
    const unsigned workers[2] = {1, 8};
    for (int i = 0; i < 2; ++i) {
        Config c;
        c.mode = Mode::PcsIIPlusIII;
        c.workers = workers[i];
        std::ostringstream out;
        write_predictions(run_pipeline(c, input).predictions, out);
        files[i] = out.str();
    }
    o.pass = !files[0].empty() && files[0] == files[1];
    o.detail = std::to_string(files[0].size()) + " bytes, workers 1 vs 8 " + (o.pass ? "identical" : "DIFFER");
    return o;
}

}  // namespace

int main() {
    const std::pair<const char*, std::function<Outcome()>> criteria[] = {
        {"edit-tree fidelity", edit_tree_fidelity},
        {"threshold arithmetic", thresholds},
        {"matching oracle", matching_oracle},
        {"metric sanity", metric_sanity},
        {"lemma baseline default", lemma_baseline_default},
        {"synthetic recovery", synthetic_recovery},
        {"pcs-i smoke run", smoke_run},
        {"EM tagger properties", em_properties},
        {"determinism", determinism},
    };
    int failed = 0;
    int k = 0;
    for (const auto& [name, check] : criteria) {
        ++k;
        Outcome o;
        try {
            o = check();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        if (!o.pass) ++failed;
        std::cout << (o.pass ? "PASS" : "FAIL") << " " << k << " " << name << ": " << o.detail << std::endl;
    }
    return failed == 0 ? 0 : 1;
}
