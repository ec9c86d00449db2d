// simgen.cpp

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

#include "pfl/simgen.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <unordered_map>
#include <unordered_set>

#include "pfl/parallel.hpp"
#include "pfl/rng.hpp"

namespace pfl {

namespace {

// Purpose tags for per-item seed derivation.
enum : std::uint64_t {
  kSeedShape = 1,
  kSeedSlot = 2,
  kSeedDetector = 3,
  kSeedAsr = 4,
};

double parse_double(const std::string& s, const std::string& ctx) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw Error(ctx + "cannot parse number \"" + s + "\"");
  }
}

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    std::size_t end = s.find(sep, start);
    if (end == std::string::npos) end = s.size();
    out.push_back(trim(s.substr(start, end - start)));
    start = end + 1;
  }
  return out;
}

// "lo..hi" or a single value.
std::pair<double, double> parse_range(const std::string& s,
                                      const std::string& ctx) {
  const std::size_t sep = s.find("..");
  if (sep == std::string::npos) {
    const double v = parse_double(s, ctx);
    return {v, v};
  }
  return {parse_double(trim(s.substr(0, sep)), ctx),
          parse_double(trim(s.substr(sep + 2)), ctx)};
}

int duration_frames_min(const SimConfig& cfg) {
  return std::max<int>(
      1, static_cast<int>(
             std::ceil(cfg.word_dur_min_s * cfg.frame_rate_hz - 1e-9)));
}

int duration_frames_max(const SimConfig& cfg) {
  return static_cast<int>(
      std::floor(cfg.word_dur_max_s * cfg.frame_rate_hz + 1e-9));
}

std::string utterance_id(int index) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "u%06d", index + 1);
  return buf;
}

}  // namespace

const std::vector<std::string>& builtin_vocab() {
  static const std::vector<std::string> kVocab = {
      "the",     "a",        "an",       "to",       "of",       "in",
      "on",      "at",       "is",       "was",      "are",      "were",
      "be",      "been",     "it",       "this",     "that",     "these",
      "those",   "i",        "you",      "we",       "they",     "he",
      "she",     "and",      "or",       "but",      "with",     "for",
      "from",    "into",     "about",    "over",     "under",    "again",
      "then",    "now",      "here",     "there",    "day",      "night",
      "morning", "weather",  "journey",  "manager",  "data",     "silver",
      "blue",    "green",    "river",    "mountain", "city",     "house",
      "music",   "story",    "coffee",   "garden",   "window",   "market",
      "people",  "family",   "friend",   "teacher",  "student",  "doctor",
      "speech",  "voice",    "word",     "words",    "time",     "year",
      "week",    "world",    "water",    "light",    "paper",    "book",
      "road",    "train",    "plane",    "food",     "dinner",   "meeting",
      "project", "plan",     "idea",     "news",     "game",     "team",
      "work",    "school",   "home",     "money",    "question", "answer",
      "good",    "great",    "happy",    "like",     "love",     "interesting",
      "best",    "easy",     "nice",     "wonderful", "calm",    "bright",
      "clean",   "fresh",    "warm",     "kind",     "smart",    "safe",
      "quiet",   "strong",   "very",     "not",      "do",       "did",
  };
  return kVocab;
}

std::vector<std::string> effective_vocab(const SimConfig& cfg) {
  const std::vector<std::string>& base =
      cfg.base_vocab.empty() ? builtin_vocab() : cfg.base_vocab;
  std::vector<std::string> vocab;
  std::unordered_set<std::string> seen;
  for (const auto& w : base) {
    if (seen.insert(w).second) vocab.push_back(w);
  }
  for (const auto& pair : cfg.edit_vocab) {
    if (seen.insert(pair.source).second) vocab.push_back(pair.source);
  }
  return vocab;
}

void validate_sim_config(const SimConfig& cfg) {
  if (cfg.n_utterances < 1) throw Error("sim config: n_utterances must be >= 1");
  if (cfg.words_min < 1 || cfg.words_max < cfg.words_min) {
    throw Error("sim config: words_per_utt range is empty");
  }
  if (!(cfg.edit_rate >= 0.0 && cfg.edit_rate <= 1.0)) {
    throw Error("sim config: edit_rate must be in [0, 1]");
  }
  if (cfg.edit_vocab.empty() && cfg.edit_rate > 0.0) {
    throw Error("sim config: edit_vocab is empty but edit_rate > 0");
  }
  std::unordered_set<std::string> sources;
  for (const auto& p : cfg.edit_vocab) {
    if (p.source.empty() || p.replacement.empty()) {
      throw Error("sim config: edit pair with empty word");
    }
    if (normalize_word(p.source) != p.source ||
        normalize_word(p.replacement) != p.replacement) {
      throw Error("sim config: edit pair \"" + p.source + ">" + p.replacement +
                  "\" is not normalized");
    }
    if (p.source == p.replacement) {
      throw Error("sim config: edit pair replaces \"" + p.source +
                  "\" with itself");
    }
    if (!sources.insert(p.source).second) {
      throw Error("sim config: duplicate edit source \"" + p.source + "\"");
    }
  }
  if (!(cfg.asr_wer >= 0.0 && cfg.asr_wer <= 1.0)) {
    throw Error("sim config: asr_wer must be in [0, 1]");
  }
  if (!(cfg.frame_rate_hz > 0.0) || !std::isfinite(cfg.frame_rate_hz)) {
    throw Error("sim config: frame_rate_hz must be > 0 and finite");
  }
  if (!(cfg.word_dur_min_s > 0.0) || cfg.word_dur_max_s < cfg.word_dur_min_s ||
      !std::isfinite(cfg.word_dur_max_s)) {
    throw Error("sim config: word_dur_s range is empty");
  }
  if (duration_frames_max(cfg) < duration_frames_min(cfg)) {
    throw Error("sim config: word_dur_s range is narrower than one frame");
  }
  if (cfg.detector.kind == DetectorQuality::Kind::kModel &&
      !(cfg.detector.d >= 0.0)) {
    throw Error("sim config: detector_quality must be >= 0");
  }
  for (const auto& w : cfg.base_vocab) {
    if (w.empty() || normalize_word(w) != w) {
      throw Error("sim config: base_vocab word \"" + w + "\" is not normalized");
    }
  }
  if (effective_vocab(cfg).size() < 2) {
    throw Error("sim config: vocabulary needs at least two words");
  }
}

SimConfig load_sim_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open sim config: " + path.string());
  SimConfig cfg;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string ctx =
        path.string() + ": line " + std::to_string(lineno) + ": ";
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const std::size_t eq = t.find('=');
    if (eq == std::string::npos) {
      throw Error(ctx + "expected key=value, got \"" + t + "\"");
    }
    const std::string key = trim(t.substr(0, eq));
    const std::string value = trim(t.substr(eq + 1));
    if (key == "n_utterances") {
      cfg.n_utterances = static_cast<int>(parse_double(value, ctx));
    } else if (key == "words_per_utt") {
      auto [lo, hi] = parse_range(value, ctx);
      cfg.words_min = static_cast<int>(lo);
      cfg.words_max = static_cast<int>(hi);
    } else if (key == "edit_rate") {
      cfg.edit_rate = parse_double(value, ctx);
    } else if (key == "edit_vocab") {
      cfg.edit_vocab.clear();
      for (const auto& item : split(value, ',')) {
        if (item.empty()) continue;
        const std::size_t gt = item.find('>');
        if (gt == std::string::npos) {
          throw Error(ctx + "edit_vocab entry \"" + item +
                      "\" is not source>replacement");
        }
        cfg.edit_vocab.push_back(
            {trim(item.substr(0, gt)), trim(item.substr(gt + 1))});
      }
    } else if (key == "detector_quality") {
      if (value == "perfect" || value == "inf") {
        cfg.detector = {DetectorQuality::Kind::kPerfect, 0.0};
      } else if (value == "zero") {
        cfg.detector = {DetectorQuality::Kind::kZero, 0.0};
      } else {
        cfg.detector = {DetectorQuality::Kind::kModel,
                        parse_double(value, ctx)};
      }
    } else if (key == "asr_wer") {
      cfg.asr_wer = parse_double(value, ctx);
    } else if (key == "frame_rate_hz") {
      cfg.frame_rate_hz = parse_double(value, ctx);
    } else if (key == "word_dur_s") {
      auto [lo, hi] = parse_range(value, ctx);
      cfg.word_dur_min_s = lo;
      cfg.word_dur_max_s = hi;
    } else if (key == "seed") {
      char* end = nullptr;
      cfg.seed = std::strtoull(value.c_str(), &end, 10);
      if (end == value.c_str() || *end != '\0') {
        throw Error(ctx + "cannot parse seed \"" + value + "\"");
      }
    } else if (key == "base_vocab") {
      cfg.base_vocab.clear();
      for (const auto& w : split(value, ',')) {
        if (!w.empty()) cfg.base_vocab.push_back(w);
      }
    } else {
      throw Error(ctx + "unknown key \"" + key + "\"");
    }
  }
  validate_sim_config(cfg);
  return cfg;
}

namespace {

Utterance generate_utterance(const SimConfig& cfg,
                             const std::vector<std::string>& vocab,
                             const std::unordered_map<std::string, std::string>&
                                 replacement_of,
                             int index) {
  Utterance u;
  u.id = utterance_id(index);
  const std::uint64_t id_hash = fnv1a64(u.id);

  auto shape_eng = engine_for({cfg.seed, id_hash, kSeedShape, 0});
  const int n_words =
      static_cast<int>(uniform_int(shape_eng, cfg.words_min, cfg.words_max));

  const int dmin = duration_frames_min(cfg);
  const int dmax = duration_frames_max(cfg);

  // Word boundaries sit on the frame grid, so every frame center falls
  // strictly inside exactly one word.
  std::int64_t cum_frames = 0;
  for (int slot = 0; slot < n_words; ++slot) {
    auto eng = engine_for({cfg.seed, id_hash, kSeedSlot,
                           static_cast<std::uint64_t>(slot)});
    std::string word = vocab[below(eng, vocab.size())];
    const int dur = static_cast<int>(uniform_int(eng, dmin, dmax));
    bool fake = false;
    auto rep = replacement_of.find(word);
    if (rep != replacement_of.end() && unit_real(eng) < cfg.edit_rate) {
      word = rep->second;
      fake = true;
    }
    RefWord rw;
    rw.span.word = std::move(word);
    rw.span.start_s = static_cast<double>(cum_frames) / cfg.frame_rate_hz;
    cum_frames += dur;
    rw.span.end_s = static_cast<double>(cum_frames) / cfg.frame_rate_hz;
    rw.is_fake = fake;
    u.ref.push_back(std::move(rw));
  }
  return u;
}

}  // namespace

Corpus generate_corpus(const SimConfig& cfg, int jobs) {
  validate_sim_config(cfg);
  const std::vector<std::string> vocab = effective_vocab(cfg);
  std::unordered_map<std::string, std::string> replacement_of;
  for (const auto& p : cfg.edit_vocab) {
    replacement_of[p.source] = p.replacement;
  }

  Corpus corpus;
  corpus.meta["generator"] = "pfl-sim";
  corpus.meta["seed"] = std::to_string(cfg.seed);
  corpus.utterances.resize(cfg.n_utterances);
  parallel_for(static_cast<std::size_t>(cfg.n_utterances), jobs,
               [&](std::size_t i) {
                 corpus.utterances[i] = generate_utterance(
                     cfg, vocab, replacement_of, static_cast<int>(i));
               });
  return corpus;
}

double detector_frame_score(const SimConfig& cfg, const std::string& utt_id,
                            int frame_index, bool is_fake) {
  switch (cfg.detector.kind) {
    case DetectorQuality::Kind::kZero:
      return 0.0;
    case DetectorQuality::Kind::kPerfect:
      return is_fake ? 1.0 : 0.0;
    case DetectorQuality::Kind::kModel:
      break;
  }
  // Means 0.5 -/+ m(d); Bates(4) noise keeps the family unimodal on [0, 1].
  const double m = 0.5 * cfg.detector.d / (1.0 + cfg.detector.d);
  const double mu = is_fake ? 0.5 + m : 0.5 - m;
  auto eng = engine_for({cfg.seed, fnv1a64(utt_id), kSeedDetector,
                         static_cast<std::uint64_t>(frame_index)});
  const double noise = 0.25 * (unit_real(eng) + unit_real(eng) +
                               unit_real(eng) + unit_real(eng));
  return std::clamp(mu + noise - 0.5, 0.0, 1.0);
}

FrameScores simulate_detector(const Utterance& utt, const SimConfig& cfg) {
  FrameScores fs;
  fs.rate_hz = cfg.frame_rate_hz;
  const double total_s = utt.ref.empty() ? 0.0 : utt.ref.back().span.end_s;
  if (!(total_s * cfg.frame_rate_hz < 1e9)) {
    throw Error("utterance \"" + utt.id + "\" too long to simulate frames");
  }
  const int t_count =
      std::max<int>(1, static_cast<int>(std::llround(total_s *
                                                     cfg.frame_rate_hz)));
  fs.scores.reserve(t_count);
  std::size_t wi = 0;
  for (int t = 0; t < t_count; ++t) {
    const double center = (t + 0.5) / cfg.frame_rate_hz;
    while (wi < utt.ref.size() && center > utt.ref[wi].span.end_s) ++wi;
    const bool fake = wi < utt.ref.size() &&
                      center >= utt.ref[wi].span.start_s &&
                      utt.ref[wi].is_fake;
    fs.scores.push_back(detector_frame_score(cfg, utt.id, t, fake));
  }
  return fs;
}

std::vector<FrameScores> simulate_detector(const Corpus& corpus,
                                           const SimConfig& cfg, int jobs) {
  std::vector<FrameScores> out(corpus.utterances.size());
  parallel_for(corpus.utterances.size(), jobs, [&](std::size_t i) {
    out[i] = simulate_detector(corpus.utterances[i], cfg);
  });
  return out;
}

Corpus simulate_asr(const Corpus& corpus, const SimConfig& cfg, int jobs) {
  const std::vector<std::string> vocab = effective_vocab(cfg);
  Corpus out;
  out.meta = corpus.meta;
  out.meta["view"] = "asr";
  out.utterances.resize(corpus.utterances.size());
  parallel_for(corpus.utterances.size(), jobs, [&](std::size_t i) {
    const Utterance& src = corpus.utterances[i];
    Utterance hyp;
    hyp.id = src.id;
    hyp.frame_scores_path = src.frame_scores_path;
    hyp.frame_scores = src.frame_scores;
    const std::uint64_t id_hash = fnv1a64(src.id);
    for (std::size_t p = 0; p < src.ref.size(); ++p) {
      auto eng = engine_for({cfg.seed, id_hash, kSeedAsr,
                             static_cast<std::uint64_t>(p)});
      const double u = unit_real(eng);
      if (u < cfg.asr_wer * 0.7) {
        // Substitution: any vocabulary word other than the original.
        std::string w;
        do {
          w = vocab[below(eng, vocab.size())];
        } while (w == src.ref[p].span.word);
        RefWord rw;
        rw.span = src.ref[p].span;
        rw.span.word = std::move(w);
        hyp.ref.push_back(std::move(rw));
      } else if (u < cfg.asr_wer) {
        continue;  // deletion
      } else {
        RefWord rw;
        rw.span = src.ref[p].span;
        hyp.ref.push_back(std::move(rw));
      }
    }
    out.utterances[i] = std::move(hyp);
  });
  return out;
}

}  // namespace pfl
