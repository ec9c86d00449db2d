// aggregate.cpp

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

#include "pfl/aggregate.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace pfl {

AggPolicy agg_policy_from_string(std::string_view s) {
  if (s == "mean") return AggPolicy::kMean;
  if (s == "max") return AggPolicy::kMax;
  if (s == "median") return AggPolicy::kMedian;
  throw Error("unknown aggregation policy \"" + std::string(s) +
              "\" (expected mean|max|median)");
}

const char* to_string(AggPolicy policy) {
  switch (policy) {
    case AggPolicy::kMean: return "mean";
    case AggPolicy::kMax: return "max";
    case AggPolicy::kMedian: return "median";
  }
  return "?";
}

std::vector<int> frames_in_span(const WordSpan& span, double rate_hz,
                                int t_count) {
  if (!(rate_hz > 0.0)) throw Error("frames_in_span: rate_hz must be > 0");
  if (t_count < 1) throw Error("frames_in_span: frame count must be >= 1");

  // Candidate window; the exact inclusion test below decides membership.
  // Clamped as doubles first so extreme spans cannot overflow the cast.
  const double lo_d = std::floor(span.start_s * rate_hz - 0.5) - 1.0;
  const double hi_d = std::ceil(span.end_s * rate_hz - 0.5) + 1.0;
  const long long lo = static_cast<long long>(
      std::clamp(lo_d, 0.0, static_cast<double>(t_count - 1)));
  const long long hi = static_cast<long long>(
      std::clamp(hi_d, 0.0, static_cast<double>(t_count - 1)));

  std::vector<int> out;
  for (long long t = lo; t <= hi; ++t) {
    const double center = (static_cast<double>(t) + 0.5) / rate_hz;
    if (center >= span.start_s && center <= span.end_s) {
      out.push_back(static_cast<int>(t));
    }
  }
  if (out.empty()) {
    // Word shorter than one frame: nearest frame center to the span midpoint.
    const double mid = 0.5 * (span.start_s + span.end_s);
    const double t = std::round(mid * rate_hz - 0.5);
    out.push_back(static_cast<int>(
        std::clamp(t, 0.0, static_cast<double>(t_count - 1))));
  }
  return out;
}

namespace {

double pool(const std::vector<double>& values, AggPolicy policy) {
  switch (policy) {
    case AggPolicy::kMean: {
      const double mean = std::accumulate(values.begin(), values.end(), 0.0) /
                          static_cast<double>(values.size());
      // Summation error can push the mean an ulp outside the value range;
      // the per-word score must stay within [min, max] of its frames.
      const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
      return std::clamp(mean, *lo, *hi);
    }
    case AggPolicy::kMax:
      return *std::max_element(values.begin(), values.end());
    case AggPolicy::kMedian: {
      std::vector<double> v(values);
      std::sort(v.begin(), v.end());
      const std::size_t n = v.size();
      return (n % 2 == 1) ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
    }
  }
  throw Error("word_scores: bad policy");
}

}  // namespace

std::vector<WordScore> word_scores(const FrameScores& frames,
                                   const std::vector<WordSpan>& spans,
                                   AggPolicy policy) {
  const int t_count = static_cast<int>(frames.scores.size());
  std::vector<WordScore> out;
  out.reserve(spans.size());
  for (const auto& span : spans) {
    const std::vector<int> idx = frames_in_span(span, frames.rate_hz, t_count);
    std::vector<double> values;
    values.reserve(idx.size());
    for (int t : idx) values.push_back(frames.scores[t]);
    out.push_back({span.word, pool(values, policy),
                   static_cast<int>(idx.size())});
  }
  return out;
}

std::vector<TaggedToken> decide(const std::vector<WordScore>& scores,
                                double threshold) {
  if (!(threshold >= 0.0 && threshold <= 1.0)) {
    throw Error("decide: threshold must be in [0, 1]");
  }
  std::vector<TaggedToken> out;
  out.reserve(scores.size());
  for (const auto& ws : scores) {
    out.push_back({ws.word, ws.q >= threshold});
  }
  return out;
}

}  // namespace pfl
