#include "paradigm/evaluation.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <set>
#include <stdexcept>

#include "paradigm/format.h"

namespace paradigm {

namespace {

// Minimum-cost assignment of every row to a distinct column, rows <= cols.
// Potentials formulation with 1-based sentinels.
std::vector<size_t> assign_rows(const std::vector<std::vector<double>>& cost) {
    const size_t n = cost.size();
    const size_t m = cost[0].size();
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> u(n + 1, 0.0), v(m + 1, 0.0);
    std::vector<size_t> p(m + 1, 0), way(m + 1, 0);
    for (size_t i = 1; i <= n; ++i) {
        p[0] = i;
        size_t j0 = 0;
        std::vector<double> minv(m + 1, inf);
        std::vector<char> used(m + 1, 0);
        do {
            used[j0] = 1;
            const size_t i0 = p[j0];
            double delta = inf;
            size_t j1 = 0;
            for (size_t j = 1; j <= m; ++j) {
                if (used[j]) continue;
                const double cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (size_t j = 0; j <= m; ++j) {
                if (used[j]) {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (p[j0] != 0);
        do {
            const size_t j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
        } while (j0 != 0);
    }
    std::vector<size_t> row_to_col(n, 0);
    for (size_t j = 1; j <= m; ++j) {
        if (p[j] != 0) row_to_col[p[j] - 1] = j - 1;
    }
    return row_to_col;
}

std::string percent(double x) {
    char buffer[32];
    std::snprintf(buffer, sizeof(buffer), "%.2f", 100.0 * x);
    return buffer;
}

}  // namespace

Matching best_match(const std::vector<std::vector<double>>& weights) {
    Matching result;
    const size_t n = weights.size();
    if (n == 0) return result;
    const size_t m = weights[0].size();
    for (const auto& row : weights) {
        if (row.size() != m) throw std::invalid_argument("ragged weight matrix");
        for (double w : row) {
            if (!std::isfinite(w) || w < 0.0) throw std::invalid_argument("weights must be finite and >= 0");
        }
    }
    if (m == 0) return result;

    const bool transpose = n > m;
    const size_t rows = transpose ? m : n;
    const size_t cols = transpose ? n : m;
    std::vector<std::vector<double>> cost(rows, std::vector<double>(cols));
    for (size_t i = 0; i < rows; ++i) {
        for (size_t j = 0; j < cols; ++j) cost[i][j] = -(transpose ? weights[j][i] : weights[i][j]);
    }
    const auto assigned = assign_rows(cost);
    for (size_t i = 0; i < rows; ++i) {
        if (transpose) result.pairs.emplace_back(assigned[i], i);
        else result.pairs.emplace_back(i, assigned[i]);
    }
    std::sort(result.pairs.begin(), result.pairs.end());
    // Sum from the input in row order so the total does not carry the
    // rounding of the potentials.
    for (auto [i, j] : result.pairs) result.total += weights[i][j];
    return result;
}

size_t gold_slot_count(const GoldTable& gold) {
    std::set<std::string> slots;
    for (const auto& [lemma, cells] : gold) {
        for (const auto& cell : cells) slots.insert(cell.first);
    }
    return slots.size();
}

EvalResult bmacc(const GoldTable& gold_in, const Paradigms& predictions) {
    const GoldTable gold = merge_syncretic_slots(gold_in);
    Paradigms restricted;
    for (const auto& [lemma, cells] : predictions) {
        if (gold.count(lemma) && !cells.empty()) restricted.emplace(lemma, cells);
    }
    const Paradigms pred = merge_syncretic_slots(restricted);

    std::vector<std::string> gold_slots;
    {
        std::set<std::string> s;
        for (const auto& [lemma, cells] : gold) {
            for (const auto& cell : cells) s.insert(cell.first);
        }
        gold_slots.assign(s.begin(), s.end());
    }
    if (gold_slots.empty()) throw std::invalid_argument("gold table is empty");
    std::vector<int> pred_slots;
    {
        std::set<int> s;
        for (const auto& [lemma, cells] : pred) {
            for (const auto& cell : cells) s.insert(cell.first);
        }
        pred_slots.assign(s.begin(), s.end());
    }

    EvalResult result;
    const size_t N = gold_slots.size();
    const size_t M = pred_slots.size();
    result.gold_slots = N;
    result.predicted_slots = M;
    if (M == 0) return result;

    std::map<std::string, size_t> gold_index;
    for (size_t i = 0; i < N; ++i) gold_index[gold_slots[i]] = i;
    std::map<int, size_t> pred_index;
    for (size_t j = 0; j < M; ++j) pred_index[pred_slots[j]] = j;

    std::vector<size_t> g_a(N, 0);
    std::vector<std::vector<size_t>> g_t(N, std::vector<size_t>(M, 0));
    for (const auto& [lemma, cells] : gold) {
        auto row = pred.find(lemma);
        for (const auto& [slot, form] : cells) {
            const size_t i = gold_index[slot];
            ++g_a[i];
            if (row == pred.end()) continue;
            for (const auto& [pslot, pform] : row->second) {
                if (pform == form) ++g_t[i][pred_index[pslot]];
            }
        }
    }

    std::vector<std::vector<double>> acc(N, std::vector<double>(M)), hits(N, std::vector<double>(M));
    size_t total_gold = 0;
    for (size_t i = 0; i < N; ++i) {
        total_gold += g_a[i];
        for (size_t j = 0; j < M; ++j) {
            acc[i][j] = static_cast<double>(g_t[i][j]) / static_cast<double>(g_a[i]);
            hits[i][j] = static_cast<double>(g_t[i][j]);
        }
    }
    const double norm = static_cast<double>(std::max(N, M));
    const auto macro = best_match(acc);
    const auto micro = best_match(hits);
    result.macro = macro.total / norm;
    result.micro = static_cast<double>(N) / norm * micro.total / static_cast<double>(total_gold);
    for (auto [i, j] : macro.pairs) {
        result.matched.push_back({gold_slots[i], pred_slots[j], g_t[i][j], g_a[i]});
    }
    return result;
}

Paradigms lemma_baseline(const std::vector<Word>& lemmas, int slot_count) {
    if (slot_count < 1) throw std::invalid_argument("slot count must be >= 1");
    Paradigms out;
    for (const auto& lemma : lemmas) {
        auto& row = out[lemma];
        for (int s = 1; s <= slot_count; ++s) row[s] = lemma;
    }
    return out;
}

void write_report_text(const EvalResult& r, std::ostream& out) {
    out << "macro BMAcc  " << percent(r.macro) << " (" << r.predicted_slots << ")\n";
    out << "micro BMAcc  " << percent(r.micro) << " (" << r.predicted_slots << ")\n";
    out << "gold slots   " << r.gold_slots << "\n";
    for (const auto& s : r.matched) {
        out << "  " << s.gold_slot << " <- " << s.predicted_slot << "  " << s.correct << "/" << s.total << "  "
            << percent(s.accuracy()) << "\n";
    }
}

void write_report_keyvalue(const EvalResult& r, std::ostream& out) {
    out << "macro=" << format_double(r.macro) << "\n";
    out << "micro=" << format_double(r.micro) << "\n";
    out << "N=" << r.gold_slots << "\n";
    out << "M=" << r.predicted_slots << "\n";
    for (const auto& s : r.matched) {
        out << "slot." << s.gold_slot << "=" << s.predicted_slot << ":" << format_double(s.accuracy()) << "\n";
    }
}

}  // namespace paradigm
