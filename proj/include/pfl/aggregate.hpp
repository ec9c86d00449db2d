// pfl/aggregate.hpp

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

#ifndef PFL_AGGREGATE_HPP_
#define PFL_AGGREGATE_HPP_

#include <string>
#include <string_view>
#include <vector>

#include "pfl/core.hpp"

namespace pfl {

enum class AggPolicy { kMean, kMax, kMedian };

AggPolicy agg_policy_from_string(std::string_view s);
const char* to_string(AggPolicy policy);

// Per-word fake score pooled from the frames inside the word's span.
struct WordScore {
  std::string word;
  double q = 0.0;     // in [min, max] of the pooled frame scores
  int n_frames = 0;   // >= 1

  bool operator==(const WordScore&) const = default;
};

// Returns the 0-based indices t whose frame-center time (t + 0.5) / rate_hz
// lies in [start_s, end_s], clipped to [0, t_count). When that set is empty
// (word shorter than one frame) returns the single index whose center is
// nearest the span midpoint, so every word receives a score.
std::vector<int> frames_in_span(const WordSpan& span, double rate_hz,
                                int t_count);

// One WordScore per span, in order. Mean pooling averages the frame scores
// inside each span; max and median are offered alongside it.
std::vector<WordScore> word_scores(const FrameScores& frames,
                                   const std::vector<WordSpan>& spans,
                                   AggPolicy policy);

// Thresholds word scores into real/fake tokens; the cut is inclusive
// (q >= threshold means fake).
std::vector<TaggedToken> decide(const std::vector<WordScore>& scores,
                                double threshold);

}  // namespace pfl

#endif  // PFL_AGGREGATE_HPP_
