#include "paradigm/inflection.h"

#include <algorithm>
#include <optional>
#include <ostream>
#include <stdexcept>

#include "paradigm/edit_tree.h"
#include "paradigm/format.h"

namespace paradigm {

namespace {

void add_rule(AffixRules& rules, Word old_affix, Word new_affix, double support) {
    rules[std::move(old_affix)][std::move(new_affix)] += support;
}

// Highest support, then the smallest new affix.
const Word* pick(const std::map<Word, double>& options) {
    const Word* best = nullptr;
    double best_support = 0.0;
    for (const auto& [affix, support] : options) {
        if (!best || support > best_support) {
            best = &affix;
            best_support = support;
        }
    }
    return best;
}

std::optional<Word> apply_suffix(const SlotRules& rules, const Word& word) {
    for (size_t k = std::min(rules.longest_suffix, word.size()) + 1; k-- > 0;) {
        auto it = rules.suffix.find(word.substr(word.size() - k));
        if (it == rules.suffix.end()) continue;
        return word.substr(0, word.size() - k) + *pick(it->second);
    }
    return std::nullopt;
}

std::optional<Word> apply_prefix(const SlotRules& rules, const Word& word) {
    for (size_t k = std::min(rules.longest_prefix, word.size()) + 1; k-- > 0;) {
        auto it = rules.prefix.find(word.substr(0, k));
        if (it == rules.prefix.end()) continue;
        return *pick(it->second) + word.substr(k);
    }
    return std::nullopt;
}

void write_affixes(std::ostream& out, int slot, const char* kind, const AffixRules& rules) {
    for (const auto& [old_affix, options] : rules) {
        for (const auto& [new_affix, support] : options) {
            out << slot << '\t' << kind << '\t' << unicode::encode(old_affix) << '\t' << unicode::encode(new_affix)
                << '\t' << format_double(support) << '\n';
        }
    }
}

}  // namespace

std::vector<int> RuleTable::slot_ids() const {
    std::vector<int> ids;
    for (const auto& entry : slots) ids.push_back(entry.first);
    return ids;
}

RuleTable extract_affix_rules(const std::vector<TrainingTriple>& training, const RuleOptions& options) {
    RuleTable table;
    for (size_t i = 0; i < training.size(); ++i) {
        const auto& t = training[i];
        if (!(t.weight > 0.0)) throw std::invalid_argument("training weight must be positive");
        const auto lcs = longest_common_substring(t.lemma, t.form);
        auto& rules = table.slots[t.slot];
        if (lcs.length == 0) {
            table.skipped.push_back(i);
            continue;
        }
        const double support = options.weighted ? t.weight : 1.0;
        add_rule(rules.prefix, t.lemma.substr(0, lcs.start_x), t.form.substr(0, lcs.start_y), support);

        const Word lemma_suffix = t.lemma.substr(lcs.start_x + lcs.length);
        const Word form_suffix = t.form.substr(lcs.start_y + lcs.length);
        const Word stem = t.lemma.substr(lcs.start_x, lcs.length);
        for (size_t k = 0; k <= stem.size(); ++k) {
            const Word kept = stem.substr(stem.size() - k);
            add_rule(rules.suffix, kept + lemma_suffix, kept + form_suffix, support);
        }
    }
    for (auto& [slot, rules] : table.slots) {
        for (const auto& r : rules.suffix) rules.longest_suffix = std::max(rules.longest_suffix, r.first.size());
        for (const auto& r : rules.prefix) rules.longest_prefix = std::max(rules.longest_prefix, r.first.size());
    }
    return table;
}

Word inflect(const RuleTable& table, int slot, const Word& lemma) {
    auto it = table.slots.find(slot);
    if (it == table.slots.end()) throw std::out_of_range("unknown slot " + std::to_string(slot));
    const SlotRules& rules = it->second;
    Word form = apply_suffix(rules, lemma).value_or(lemma);
    return apply_prefix(rules, form).value_or(form);
}

void write_rules(const RuleTable& table, std::ostream& out) {
    for (const auto& [slot, rules] : table.slots) {
        write_affixes(out, slot, "prefix", rules.prefix);
        write_affixes(out, slot, "suffix", rules.suffix);
    }
}

}  // namespace paradigm
