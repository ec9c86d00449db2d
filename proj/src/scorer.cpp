// scorer.cpp

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

#include "pfl/scorer.hpp"

#include <algorithm>

namespace pfl {

std::vector<AlignmentOp> align(const std::vector<std::string>& ref,
                               const std::vector<std::string>& hyp) {
  const std::size_t n = ref.size();
  const std::size_t m = hyp.size();
  // Lexicographic objective per cell: minimal edit cost, then minimal
  // substitutions. Unit cost alone leaves the op counts ambiguous (two
  // substitutions trade against insert + delete + match), and only the
  // substitution-minimal alignment has counts that are symmetric under
  // swapping ref and hyp.
  std::vector<int> cost((n + 1) * (m + 1), 0);
  std::vector<int> subs((n + 1) * (m + 1), 0);
  auto cell = [m](std::size_t i, std::size_t j) { return i * (m + 1) + j; };
  for (std::size_t i = 0; i <= n; ++i) cost[cell(i, 0)] = static_cast<int>(i);
  for (std::size_t j = 0; j <= m; ++j) cost[cell(0, j)] = static_cast<int>(j);
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= m; ++j) {
      const int differ = ref[i - 1] != hyp[j - 1];
      int best_c = cost[cell(i - 1, j - 1)] + differ;
      int best_s = subs[cell(i - 1, j - 1)] + differ;
      for (const std::size_t prev : {cell(i - 1, j), cell(i, j - 1)}) {
        const int c = cost[prev] + 1;
        const int s = subs[prev];
        if (c < best_c || (c == best_c && s < best_s)) {
          best_c = c;
          best_s = s;
        }
      }
      cost[cell(i, j)] = best_c;
      subs[cell(i, j)] = best_s;
    }
  }

  // Backtrace; tie policy match > substitute > delete > insert.
  std::vector<AlignmentOp> ops;
  ops.reserve(n + m);
  std::size_t i = n, j = m;
  while (i > 0 || j > 0) {
    const int c = cost[cell(i, j)];
    const int s = subs[cell(i, j)];
    if (i > 0 && j > 0 && ref[i - 1] == hyp[j - 1] &&
        c == cost[cell(i - 1, j - 1)] && s == subs[cell(i - 1, j - 1)]) {
      ops.push_back({EditKind::kMatch, i - 1, j - 1});
      --i, --j;
    } else if (i > 0 && j > 0 && ref[i - 1] != hyp[j - 1] &&
               c == cost[cell(i - 1, j - 1)] + 1 &&
               s == subs[cell(i - 1, j - 1)] + 1) {
      ops.push_back({EditKind::kSubstitute, i - 1, j - 1});
      --i, --j;
    } else if (i > 0 && c == cost[cell(i - 1, j)] + 1 &&
               s == subs[cell(i - 1, j)]) {
      ops.push_back({EditKind::kDelete, i - 1, std::nullopt});
      --i;
    } else {
      ops.push_back({EditKind::kInsert, std::nullopt, j - 1});
      --j;
    }
  }
  std::reverse(ops.begin(), ops.end());
  return ops;
}

namespace {

// Raw tallies; pooled across utterances before ratios are taken.
struct Tally {
  std::int64_t tp = 0, fp = 0, fn = 0;
  std::int64_t n_sub = 0, n_ins = 0, n_del = 0, n_ref = 0;
  std::int64_t n_scored = 0;

  Tally& operator+=(const Tally& o) {
    tp += o.tp; fp += o.fp; fn += o.fn;
    n_sub += o.n_sub; n_ins += o.n_ins; n_del += o.n_del; n_ref += o.n_ref;
    n_scored += o.n_scored;
    return *this;
  }
};

std::vector<std::string> words_of(const std::vector<TaggedToken>& tokens) {
  std::vector<std::string> out;
  out.reserve(tokens.size());
  for (const auto& t : tokens) out.push_back(t.word);
  return out;
}

Tally tally_pair(const std::vector<TaggedToken>& ref,
                 const std::vector<TaggedToken>& hyp) {
  Tally t;
  t.n_ref = static_cast<std::int64_t>(ref.size());
  for (const auto& op : align(words_of(ref), words_of(hyp))) {
    switch (op.kind) {
      case EditKind::kMatch:
      case EditKind::kSubstitute: {
        if (op.kind == EditKind::kSubstitute) ++t.n_sub;
        ++t.n_scored;
        const bool rf = ref[*op.ref_index].is_fake;
        const bool hf = hyp[*op.hyp_index].is_fake;
        if (rf && hf) ++t.tp;
        else if (!rf && hf) ++t.fp;
        else if (rf && !hf) ++t.fn;
        break;
      }
      case EditKind::kDelete:
        ++t.n_del;
        if (ref[*op.ref_index].is_fake) ++t.fn;  // missing fake word: a miss
        break;
      case EditKind::kInsert:
        ++t.n_ins;  // no reference label; excluded from F1
        break;
    }
  }
  return t;
}

ScoreReport finalize(const Tally& t) {
  ScoreReport r;
  r.tp = t.tp; r.fp = t.fp; r.fn = t.fn;
  r.n_sub = t.n_sub; r.n_ins = t.n_ins; r.n_del = t.n_del; r.n_ref = t.n_ref;
  r.n_scored_words = t.n_scored;
  const std::int64_t errors = t.n_sub + t.n_ins + t.n_del;
  r.wer = t.n_ref > 0
              ? static_cast<double>(errors) / static_cast<double>(t.n_ref)
              : 0.0;
  r.precision = (t.tp + t.fp) > 0
                    ? static_cast<double>(t.tp) /
                          static_cast<double>(t.tp + t.fp)
                    : 0.0;
  r.recall = (t.tp + t.fn) > 0
                 ? static_cast<double>(t.tp) /
                       static_cast<double>(t.tp + t.fn)
                 : 0.0;
  r.word_f1 = (r.precision + r.recall) > 0.0
                  ? 2.0 * r.precision * r.recall / (r.precision + r.recall)
                  : 0.0;
  return r;
}

}  // namespace

double wer(const std::vector<std::string>& ref,
           const std::vector<std::string>& hyp) {
  if (ref.empty()) throw Error("wer: undefined for an empty reference");
  std::int64_t errors = 0;
  for (const auto& op : align(ref, hyp)) {
    errors += (op.kind != EditKind::kMatch);
  }
  return static_cast<double>(errors) / static_cast<double>(ref.size());
}

ScoreReport word_f1(const std::vector<TaggedToken>& ref,
                    const std::vector<TaggedToken>& hyp) {
  return finalize(tally_pair(ref, hyp));
}

ScoreReport corpus_score(const std::vector<TokenPair>& pairs) {
  if (pairs.empty()) throw Error("corpus_score: empty corpus");
  Tally total;
  for (const auto& [ref, hyp] : pairs) total += tally_pair(ref, hyp);
  if (total.n_ref == 0) {
    throw Error("corpus_score: no reference words; WER undefined");
  }
  return finalize(total);
}

}  // namespace pfl
