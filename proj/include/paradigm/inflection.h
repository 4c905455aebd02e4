#pragma once

#include <iosfwd>
#include <map>
#include <utility>
#include <vector>

#include "paradigm/unicode.h"

namespace paradigm {

/// One training example: form is the inflection of lemma in slot.
struct TrainingTriple {
    int slot;
    Word lemma;
    Word form;
    double weight = 1.0;
};

/// old affix -> (new affix -> support).
using AffixRules = std::map<Word, std::map<Word, double>>;

struct SlotRules {
    AffixRules prefix;
    AffixRules suffix;
    size_t longest_suffix = 0;  // longest old suffix, bounds the lookup
    size_t longest_prefix = 0;
};

struct RuleOptions {
    /// Supports are lemma weights when true, plain counts otherwise.
    bool weighted = true;
};

class RuleTable {
public:
    std::map<int, SlotRules> slots;
    /// Indices of training triples skipped because lemma and form share no
    /// code point.
    std::vector<size_t> skipped;

    bool has_slot(int slot) const { return slots.count(slot) != 0; }
    std::vector<int> slot_ids() const;
};

/// Learns prefix and stem+suffix rewrite rules from LCS-anchored
/// decompositions of every triple.
RuleTable extract_affix_rules(const std::vector<TrainingTriple>& training, const RuleOptions& options = {});

/// Applies the longest matching suffix rule and then the longest matching
/// prefix rule. Returns the lemma unchanged when nothing applies. Throws
/// std::out_of_range for a slot the table has never seen.
Word inflect(const RuleTable& table, int slot, const Word& lemma);

/// slot<TAB>kind<TAB>old<TAB>new<TAB>support, kind is "prefix" or "suffix".
void write_rules(const RuleTable& table, std::ostream& out);

}  // namespace paradigm
