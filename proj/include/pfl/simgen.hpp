// pfl/simgen.hpp

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

#ifndef PFL_SIMGEN_HPP_
#define PFL_SIMGEN_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "pfl/core.hpp"

namespace pfl {

// One polarity pair: occurrences of `source` may be replaced by
// `replacement` and labeled fake.
struct EditPair {
  std::string source;
  std::string replacement;

  bool operator==(const EditPair&) const = default;
};

// Simulated frame detector quality. kModel separates real/fake score
// distributions by a margin that grows with d (d = 0 means no information);
// kPerfect emits exactly 0.0/1.0; kZero emits all zeros (a detector that
// never fires, so every word is decided real downstream).
struct DetectorQuality {
  enum class Kind { kModel, kPerfect, kZero };
  Kind kind = Kind::kModel;
  double d = 8.0;  // >= 0, used by kModel only

  bool operator==(const DetectorQuality&) const = default;
};

struct SimConfig {
  int n_utterances = 100;
  int words_min = 6;               // words_per_utt range
  int words_max = 14;
  double edit_rate = 0.25;         // probability a source word is replaced
  std::vector<EditPair> edit_vocab;
  DetectorQuality detector;
  double asr_wer = 0.0;            // per-word corruption probability
  double frame_rate_hz = 50.0;
  double word_dur_min_s = 0.12;    // word_dur_s range
  double word_dur_max_s = 0.50;
  std::uint64_t seed = 1;
  std::vector<std::string> base_vocab;  // empty -> builtin word list
};

// Flat key=value config file; '#' starts a comment line. Ranges are written
// "lo..hi", edit_vocab as "source>replacement,source>replacement,...".
SimConfig load_sim_config(const std::filesystem::path& path);

void validate_sim_config(const SimConfig& cfg);

const std::vector<std::string>& builtin_vocab();

// base vocabulary plus any edit sources not already in it, in a fixed order.
std::vector<std::string> effective_vocab(const SimConfig& cfg);

// Ground-truth corpus: contiguous word spans on the frame grid, each source
// word replaced by its pair with probability edit_rate and labeled fake.
// Deterministic in (cfg, seed) regardless of jobs.
Corpus generate_corpus(const SimConfig& cfg, int jobs = 1);

// Detector score for one frame; exposed so tests can probe the score model.
double detector_frame_score(const SimConfig& cfg, const std::string& utt_id,
                            int frame_index, bool is_fake);

// Per-utterance frame posteriors: real words draw from a low-mean unimodal
// distribution, fake words from a high-mean one.
FrameScores simulate_detector(const Utterance& utt, const SimConfig& cfg);
std::vector<FrameScores> simulate_detector(const Corpus& corpus,
                                           const SimConfig& cfg,
                                           int jobs = 1);

// Simulated ASR pass over the ground-truth words: each word is independently
// substituted (asr_wer * 0.7), deleted (asr_wer * 0.3), or copied. The result
// is a corpus whose ref spans are the surviving hypothesis words, unlabeled.
Corpus simulate_asr(const Corpus& corpus, const SimConfig& cfg, int jobs = 1);

}  // namespace pfl

#endif  // PFL_SIMGEN_HPP_
