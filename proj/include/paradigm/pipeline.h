#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "paradigm/bootstrap.h"
#include "paradigm/corpus_io.h"
#include "paradigm/evaluation.h"
#include "paradigm/inflection.h"
#include "paradigm/slot_clustering.h"
#include "paradigm/tagger.h"

namespace paradigm {

enum class Mode { PcsI, PcsIIa, PcsIIb, PcsIII, PcsIIPlusIII, LemmaBaseline, Conll17K, Eval };

std::string mode_name(Mode mode);
/// Accepts pcs-i, pcs-ii-a, pcs-ii-b, pcs-iii, pcs-ii+iii, lb, conll17-k, eval.
Mode parse_mode(const std::string& name);

struct Config {
    Mode mode = Mode::PcsIIPlusIII;
    double lambda_p = 0.5;
    double phi_fc = 0.05;
    double phi_nl = 0.2;
    double theta_nl = 0.5;
    double lambda_s = 0.3;
    int window = 3;
    /// Bootstrap rounds; unset means the mode's own count (pcs-ii-a 1,
    /// pcs-ii-b 2, pcs-ii+iii 1, others 0).
    std::optional<int> iterations;
    HmmSettings tagger;
    unsigned workers = 1;
    bool lowercase = true;
    /// Rule supports weighted by lemma confidence.
    bool weighted_rules = true;
    /// Only emit a slot's form for lemmas the slot was observed with.
    bool observed_only = false;
    int lb_slots = kLemmaBaselineDevSlots;
    /// Use the gold paradigm size for the lemma baseline.
    bool lb_truth = false;
    int conll_k = 10;
    uint64_t conll_seed = 0;

    int bootstrap_rounds() const;
    /// Throws std::invalid_argument naming the offending field.
    void validate() const;
};

struct StageTiming {
    std::string stage;
    double seconds;
};

struct RunReport {
    Mode mode = Mode::PcsI;
    size_t lemmas = 0;
    size_t discovered = 0;
    size_t trees = 0;
    size_t predicted_slots = 0;  // M
    std::vector<StageTiming> timings;
    std::vector<MergeRecord> merges;
    std::vector<std::string> warnings;
    std::optional<EvalResult> evaluation;
};

struct PipelineResult {
    Paradigms predictions;
    RunReport report;
    // Intermediate products, filled by the stages that ran.
    std::optional<DiscoveryState> discovery;
    std::optional<HmmModel> model;
    std::optional<TagSequence> tags;
    std::optional<SlotClustering> clustering;
    std::optional<RuleTable> rules;
};

/// Raised when a stage fails; what() is "<stage>: <cause>".
class StageError : public std::runtime_error {
public:
    StageError(const std::string& stage, const std::string& cause)
        : std::runtime_error(stage + ": " + cause), stage_(stage) {}
    const std::string& stage() const { return stage_; }

private:
    std::string stage_;
};

struct PipelineInput {
    CorpusData corpus;
    std::vector<Word> lexicon;
    std::optional<GoldTable> gold;  // required by lb with lb_truth, conll17-k and eval
    std::optional<Paradigms> predictions;  // eval only
};

/// Runs the stages required by config.mode. Scores against the gold table
/// when one is given.
PipelineResult run_pipeline(const Config& config, const PipelineInput& input);

struct PipelinePaths {
    std::filesystem::path corpus;
    std::filesystem::path lexicon;
    std::filesystem::path output;  // predictions; empty to skip writing
    std::filesystem::path gold;    // optional
    std::filesystem::path predictions;  // eval input
};

/// Loads the inputs, runs, and writes the predictions file.
PipelineResult run_pipeline(const Config& config, const PipelinePaths& paths);

void write_run_report(const RunReport& report, std::ostream& out);

}  // namespace paradigm
