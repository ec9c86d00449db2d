// pfl/scorer.hpp

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

#ifndef PFL_SCORER_HPP_
#define PFL_SCORER_HPP_

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "pfl/core.hpp"

namespace pfl {

enum class EditKind { kMatch, kSubstitute, kInsert, kDelete };

// One step of a word alignment path. Match/substitute carry both indices,
// insert only hyp_index, delete only ref_index.
struct AlignmentOp {
  EditKind kind = EditKind::kMatch;
  std::optional<std::size_t> ref_index;
  std::optional<std::size_t> hyp_index;

  bool operator==(const AlignmentOp&) const = default;
};

// Minimal-cost word alignment under unit costs (match is free). The backtrace
// resolves ties deterministically, preferring match > substitute > delete >
// insert, so repeated runs give identical paths.
std::vector<AlignmentOp> align(const std::vector<std::string>& ref,
                               const std::vector<std::string>& hyp);

struct ScoreReport {
  double wer = 0.0;
  double word_f1 = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  std::int64_t tp = 0;
  std::int64_t fp = 0;
  std::int64_t fn = 0;
  std::int64_t n_sub = 0;
  std::int64_t n_ins = 0;
  std::int64_t n_del = 0;
  std::int64_t n_ref = 0;
  std::int64_t n_scored_words = 0;  // aligned (match + substitute) pairs

  bool operator==(const ScoreReport&) const = default;
};

// (substitutions + insertions + deletions) / reference length. Throws on an
// empty reference, where WER is undefined.
double wer(const std::vector<std::string>& ref,
           const std::vector<std::string>& hyp);

// Aligns on words only, then compares labels on aligned pairs with fake as
// the positive class. A deleted fake reference word counts as a miss (FN);
// inserted hypothesis words have no reference label and are excluded. The
// insertion/deletion counts in the report make both policies auditable.
ScoreReport word_f1(const std::vector<TaggedToken>& ref,
                    const std::vector<TaggedToken>& hyp);

using TokenPair = std::pair<std::vector<TaggedToken>, std::vector<TaggedToken>>;

// Micro-averaged corpus score: confusion and edit counts are pooled across
// utterances before any ratio is computed, so utterances with no fake words
// cannot dominate. Requires at least one pair and a non-empty pooled
// reference.
ScoreReport corpus_score(const std::vector<TokenPair>& pairs);

}  // namespace pfl

#endif  // PFL_SCORER_HPP_
