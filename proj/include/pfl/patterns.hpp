// pfl/patterns.hpp

// Copyright 2026  pfl authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef PFL_PATTERNS_HPP_
#define PFL_PATTERNS_HPP_

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pfl/core.hpp"
#include "pfl/tagcodec.hpp"

namespace pfl {

// Word -> first-variant pronunciation, stress digits stripped. Symbols are
// restricted to the 39-symbol stress-free ARPABET set.
struct Lexicon {
  std::map<std::string, std::vector<std::string>> entries;

  const std::vector<std::string>* find(const std::string& word) const {
    auto it = entries.find(word);
    return it == entries.end() ? nullptr : &it->second;
  }
};

bool is_arpabet_symbol(std::string_view symbol);

// CMUdict-style text file: "WORD  PH PH PH", variants as "WORD(2)", comments
// starting with ";;;". First pronunciation per word wins.
Lexicon load_lexicon(const std::filesystem::path& path);

// Which labels drive the fake counts: the ground-truth ref labels, or the
// tags decoded from each utterance's hyp_text.
enum class LabelSource { kGroundTruth, kPredicted };

// Per-utterance token streams for the chosen label source. Decode warnings
// from predicted labels are accumulated into *warnings when given.
std::vector<std::vector<TaggedToken>> labeled_tokens(
    const Corpus& corpus, LabelSource source, const TagConfig& cfg = {},
    DecodeWarnings* warnings = nullptr);

// (word-or-phoneme, occurrence count), sorted by count descending with
// lexicographic tie-break.
using RankedCounts = std::vector<std::pair<std::string, std::int64_t>>;

RankedCounts rank_counts(const std::map<std::string, std::int64_t>& counts,
                         std::size_t k);

// Occurrence counts of fake-labeled words, top k.
RankedCounts top_fake_words(const std::vector<std::vector<TaggedToken>>& seqs,
                            std::size_t k);
RankedCounts top_fake_words(const Corpus& corpus, std::size_t k,
                            LabelSource source, const TagConfig& cfg = {});

struct PhonemeCounts {
  RankedCounts top_phonemes;  // capped at k
  RankedCounts oov_words;     // every fake word missing from the lexicon
};

// Each fake token occurrence contributes one count per phoneme occurrence in
// its pronunciation (a phoneme appearing twice counts twice). OOV fake words
// are skipped from the phoneme table but always reported.
PhonemeCounts top_fake_phonemes(
    const std::vector<std::vector<TaggedToken>>& seqs, const Lexicon& lexicon,
    std::size_t k);
PhonemeCounts top_fake_phonemes(const Corpus& corpus, const Lexicon& lexicon,
                                std::size_t k, LabelSource source,
                                const TagConfig& cfg = {});

struct PatternReport {
  RankedCounts top_words;
  RankedCounts top_phonemes;
  RankedCounts oov_words;
  std::size_t k = 0;
};

PatternReport build_pattern_report(
    const std::vector<std::vector<TaggedToken>>& seqs, const Lexicon& lexicon,
    std::size_t k);
PatternReport build_pattern_report(const Corpus& corpus,
                                   const Lexicon& lexicon, std::size_t k,
                                   LabelSource source,
                                   const TagConfig& cfg = {});

// Fake-occurrence counts per word from a labeled training corpus: a text-only
// prior over which words tend to be edited.
struct WordPrior {
  std::map<std::string, std::int64_t> counts;
  std::int64_t total_fake = 0;
  std::int64_t total_words = 0;

  bool operator==(const WordPrior&) const = default;
};

WordPrior fit_lexical_prior(const Corpus& train);

WordPrior load_word_prior(const std::filesystem::path& path);
void write_word_prior(const WordPrior& prior,
                      const std::filesystem::path& path);

// Marks a word fake iff its training fake count reaches theta (>= 1). Audio
// is never consulted; this is the text-only diagnostic localizer.
std::vector<TaggedToken> apply_lexical_prior(
    const WordPrior& prior, const std::vector<std::string>& transcript,
    std::int64_t theta);

}  // namespace pfl

#endif  // PFL_PATTERNS_HPP_
