// Line-delimited record files for every pipeline stage. One JSON object
// per line, UTF-8, fields in a fixed order so outputs are byte-stable.
// All writers go through an atomic write-temp-then-rename.
#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "entity_guard/corpus.hpp"
#include "entity_guard/gateway.hpp"
#include "entity_guard/scoring.hpp"

namespace entity_guard::records {

// ---- generic helpers -------------------------------------------------------

std::string read_file(const std::string& path);                 // throws IoError
void atomic_write_file(const std::string& path, std::string_view content);
std::vector<std::string> read_lines(const std::string& path);   // drops trailing \r

// ---- corpus: {id, language, category, text, entity_text, entity_start, entity_end}

std::string to_line(const Sample& sample);
Sample sample_from_line(std::string_view line);  // throws SchemaError

void write_corpus(const std::string& path, const std::vector<Sample>& corpus);
std::vector<Sample> read_corpus(const std::string& path);

// ---- candidates: {text, language, category} --------------------------------

std::string to_line(const CandidateSentence& candidate);
CandidateSentence candidate_from_line(std::string_view line);

void write_candidates(const std::string& path, const std::vector<CandidateSentence>& candidates);
std::vector<CandidateSentence> read_candidates(const std::string& path);

// ---- translations: {sample_id, source_lang, target_lang, system_id, target_text}

std::string to_line(const TranslationRecord& record);
TranslationRecord translation_from_line(std::string_view line);

void write_translations(const std::string& path, const std::vector<TranslationRecord>& records);
std::vector<TranslationRecord> read_translations(const std::string& path);

// ---- scores: {sample_id, system_id, source_lang, target_lang, category,
//               outcome, distance?, target_entity?}

std::string to_line(const ScoreRecord& record);
ScoreRecord score_from_line(std::string_view line);

void write_scores(const std::string& path, const std::vector<ScoreRecord>& scores);
std::vector<ScoreRecord> read_scores(const std::string& path);

// ---- rejection log: {text, reason} ------------------------------------------

void write_rejects(const std::string& path, const std::vector<RejectedCandidate>& rejects);

// ---- token-count sidecar: {sample_id, token_count} ---------------------------

void write_token_counts(const std::string& path, const std::map<std::string, std::size_t>& counts);
std::map<std::string, std::size_t> read_token_counts(const std::string& path);

}  // namespace entity_guard::records
