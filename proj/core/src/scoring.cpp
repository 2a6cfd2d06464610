#include "entity_guard/scoring.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "entity_guard/errors.hpp"
#include "entity_guard/unicode.hpp"

namespace entity_guard {

std::string_view to_string(TransferOutcome::Kind kind) {
    switch (kind) {
        case TransferOutcome::Kind::exact: return "exact";
        case TransferOutcome::Kind::modified: return "modified";
        case TransferOutcome::Kind::no_match: return "no_match";
    }
    return {};
}

std::optional<TransferOutcome::Kind> outcome_kind_from_string(std::string_view name) {
    if (name == "exact") return TransferOutcome::Kind::exact;
    if (name == "modified") return TransferOutcome::Kind::modified;
    if (name == "no_match") return TransferOutcome::Kind::no_match;
    return std::nullopt;
}

std::uint32_t levenshtein(std::u32string_view a, std::u32string_view b) {
    if (a.size() > b.size()) std::swap(a, b);
    const std::size_t m = a.size();
    const std::size_t n = b.size();
    if (m == 0) return static_cast<std::uint32_t>(n);

    std::vector<std::uint32_t> row(m + 1);
    std::iota(row.begin(), row.end(), 0u);
    for (std::size_t j = 1; j <= n; ++j) {
        std::uint32_t prev_diag = row[0];
        row[0] = static_cast<std::uint32_t>(j);
        for (std::size_t i = 1; i <= m; ++i) {
            const std::uint32_t prev_row = row[i];
            const std::uint32_t subst = prev_diag + (a[i - 1] == b[j - 1] ? 0u : 1u);
            row[i] = std::min({row[i - 1] + 1u, prev_row + 1u, subst});
            prev_diag = prev_row;
        }
    }
    return row[m];
}

std::uint32_t levenshtein(std::string_view a_utf8, std::string_view b_utf8) {
    return levenshtein(uni::decode_utf8(a_utf8), uni::decode_utf8(b_utf8));
}

PairScore score_pair(const Sample& sample, std::string_view target_text) {
    const auto matches = detect_entities(target_text, sample.category);
    if (matches.empty()) return {TransferOutcome::no_match(), std::nullopt};

    const std::u32string source = uni::decode_utf8(sample.entity.surface);
    for (const auto& m : matches) {
        if (m.surface == sample.entity.surface) {
            return {TransferOutcome::exact(), sample.entity.surface};
        }
    }

    // Minimum-distance match, leftmost on ties.
    std::uint32_t best = 0;
    const EntityMatch* best_match = nullptr;
    for (const auto& m : matches) {
        const std::uint32_t d = levenshtein(source, uni::decode_utf8(m.surface));
        if (!best_match || d < best) {
            best = d;
            best_match = &m;
        }
    }
    return {TransferOutcome::modified(best), best_match->surface};
}

std::vector<ScoreRecord> score_corpus(const std::vector<Sample>& corpus,
                                      const std::vector<TranslationRecord>& translations) {
    std::map<std::string_view, const Sample*> by_id;
    for (const auto& s : corpus) by_id.emplace(s.id, &s);

    std::set<std::string> unknown;
    for (const auto& t : translations) {
        if (!by_id.contains(t.sample_id)) unknown.insert(t.sample_id);
    }
    if (!unknown.empty()) {
        throw UnknownSampleId(std::vector<std::string>(unknown.begin(), unknown.end()),
                              "translations reference " + std::to_string(unknown.size()) +
                                  " unknown sample id(s)");
    }

    std::vector<const TranslationRecord*> ordered;
    ordered.reserve(translations.size());
    for (const auto& t : translations) ordered.push_back(&t);
    std::stable_sort(ordered.begin(), ordered.end(),
                     [](const TranslationRecord* x, const TranslationRecord* y) {
                         return std::tie(x->system_id, x->direction, x->sample_id) <
                                std::tie(y->system_id, y->direction, y->sample_id);
                     });

    std::vector<ScoreRecord> out;
    out.reserve(ordered.size());
    for (const auto* t : ordered) {
        const Sample& sample = *by_id.at(t->sample_id);
        auto pair = score_pair(sample, t->target_text);
        ScoreRecord rec;
        rec.sample_id = t->sample_id;
        rec.system_id = t->system_id;
        rec.direction = t->direction;
        rec.category = sample.category;
        rec.source_entity = sample.entity.surface;
        rec.outcome = pair.outcome;
        rec.matched_target_entity = std::move(pair.matched_target_entity);
        out.push_back(std::move(rec));
    }
    return out;
}

}  // namespace entity_guard
