// pfl/core.hpp

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

#ifndef PFL_CORE_HPP_
#define PFL_CORE_HPP_

#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace pfl {

// Every recoverable failure (bad input file, invariant breach, bad config)
// is reported as pfl::Error. The CLI maps it to exit code 1.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// One ASR word with its time span, in seconds.
struct WordSpan {
  std::string word;  // normalized, non-empty
  double start_s = 0.0;
  double end_s = 0.0;

  bool operator==(const WordSpan&) const = default;
};

// Uniform-rate sequence of fake posteriors, each in [0, 1].
struct FrameScores {
  double rate_hz = 0.0;
  std::vector<double> scores;

  bool operator==(const FrameScores&) const = default;
};

// A word paired with a real/fake decision.
struct TaggedToken {
  std::string word;  // normalized
  bool is_fake = false;

  bool operator==(const TaggedToken&) const = default;
};

// Reference word: span plus its ground-truth label.
struct RefWord {
  WordSpan span;
  bool is_fake = false;

  bool operator==(const RefWord&) const = default;
};

// One utterance of a corpus. Frame scores are carried either inline or as a
// sidecar path relative to the corpus file; never both.
struct Utterance {
  std::string id;
  std::vector<RefWord> ref;  // non-overlapping, sorted by start_s
  std::optional<std::string> hyp_text;
  std::optional<std::string> frame_scores_path;
  std::optional<FrameScores> frame_scores;

  std::vector<std::string> ref_words() const;
  std::vector<TaggedToken> ref_tokens() const;

  bool operator==(const Utterance&) const = default;
};

struct Corpus {
  std::vector<Utterance> utterances;
  std::map<std::string, std::string> meta;  // provenance (dataset, seed, ...)

  bool operator==(const Corpus&) const = default;
};

// Tagged-token sequences as exchanged between subcommands
// ({"id": ..., "tokens": [{"w": ..., "q": ..., "fake": ...}]} JSONL).
struct ScoredToken {
  std::string word;
  bool is_fake = false;
  std::optional<double> q;

  TaggedToken tagged() const { return {word, is_fake}; }

  bool operator==(const ScoredToken&) const = default;
};

struct TokenSeq {
  std::string id;
  std::vector<ScoredToken> tokens;

  std::vector<TaggedToken> tagged() const;

  bool operator==(const TokenSeq&) const = default;
};

// Lowercases and strips non-alphanumeric characters from both ends; internal
// apostrophes and hyphens survive. Returns "" for punctuation-only input;
// callers drop such tokens. Total and idempotent.
std::string normalize_word(std::string_view raw);

// Line-delimited JSON corpus I/O. Words are normalized on load and all type
// invariants are checked; violations raise pfl::Error naming the line number
// or utterance id.
Corpus load_corpus(const std::filesystem::path& path);
void write_corpus(const Corpus& corpus, const std::filesystem::path& path);

// Validates all corpus invariants (used by load_corpus; public so generated
// corpora can be checked directly).
void validate_corpus(const Corpus& corpus);

// Frame-score sidecar: first line "rate_hz=<decimal>", then whitespace
// separated decimals in [0, 1].
FrameScores load_frame_scores(const std::filesystem::path& path);
void write_frame_scores(const FrameScores& frames,
                        const std::filesystem::path& path);

// Resolves an utterance's frame scores: inline if present, else the sidecar
// path interpreted relative to corpus_dir. Throws if the utterance has none.
FrameScores utterance_frame_scores(const Utterance& utt,
                                   const std::filesystem::path& corpus_dir);

// Tagged-token JSONL I/O (aggregate/prior output, score input).
std::vector<TokenSeq> load_token_seqs(const std::filesystem::path& path);
void write_token_seqs(const std::vector<TokenSeq>& seqs,
                      const std::filesystem::path& path);

// Shortest decimal string that parses back to exactly the same double.
std::string format_double(double v);

}  // namespace pfl

#endif  // PFL_CORE_HPP_
