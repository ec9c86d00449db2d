// patterns.cpp

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

#include "pfl/patterns.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace pfl {

namespace {

// The 39 stress-free ARPABET symbols.
constexpr std::array<std::string_view, 39> kArpabet = {
    "AA", "AE", "AH", "AO", "AW", "AY", "B",  "CH", "D",  "DH",
    "EH", "ER", "EY", "F",  "G",  "HH", "IH", "IY", "JH", "K",
    "L",  "M",  "N",  "NG", "OW", "OY", "P",  "R",  "S",  "SH",
    "T",  "TH", "UH", "UW", "V",  "W",  "Y",  "Z",  "ZH"};

std::string strip_stress(std::string_view symbol) {
  std::size_t e = symbol.size();
  while (e > 0 && std::isdigit(static_cast<unsigned char>(symbol[e - 1]))) {
    --e;
  }
  return std::string(symbol.substr(0, e));
}

std::string strip_variant_marker(std::string_view head) {
  // "READ(2)" -> "READ"
  if (!head.empty() && head.back() == ')') {
    const std::size_t open = head.rfind('(');
    if (open != std::string_view::npos) return std::string(head.substr(0, open));
  }
  return std::string(head);
}

}  // namespace

bool is_arpabet_symbol(std::string_view symbol) {
  return std::find(kArpabet.begin(), kArpabet.end(), symbol) != kArpabet.end();
}

Lexicon load_lexicon(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open lexicon file: " + path.string());
  Lexicon lex;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string ctx =
        path.string() + ": line " + std::to_string(lineno) + ": ";
    if (line.rfind(";;;", 0) == 0) continue;
    std::istringstream ss(line);
    std::string head;
    if (!(ss >> head)) continue;  // blank line
    const std::string word = normalize_word(strip_variant_marker(head));
    if (word.empty()) throw Error(ctx + "malformed headword \"" + head + "\"");
    std::vector<std::string> phonemes;
    std::string tok;
    while (ss >> tok) {
      std::string sym = strip_stress(tok);
      if (!is_arpabet_symbol(sym)) {
        throw Error(ctx + "unknown phoneme symbol \"" + tok + "\"");
      }
      phonemes.push_back(std::move(sym));
    }
    if (phonemes.empty()) throw Error(ctx + "no phonemes for \"" + head + "\"");
    lex.entries.try_emplace(word, std::move(phonemes));  // first variant wins
  }
  return lex;
}

std::vector<std::vector<TaggedToken>> labeled_tokens(const Corpus& corpus,
                                                     LabelSource source,
                                                     const TagConfig& cfg,
                                                     DecodeWarnings* warnings) {
  std::vector<std::vector<TaggedToken>> out;
  out.reserve(corpus.utterances.size());
  for (const auto& u : corpus.utterances) {
    if (source == LabelSource::kGroundTruth) {
      out.push_back(u.ref_tokens());
    } else {
      if (!u.hyp_text) {
        throw Error("utterance \"" + u.id +
                    "\" has no hyp_text; predicted labels unavailable");
      }
      DecodeResult r = decode_tags(*u.hyp_text, cfg);
      if (warnings) {
        warnings->leading_tags += r.warnings.leading_tags;
        warnings->duplicate_tags += r.warnings.duplicate_tags;
      }
      out.push_back(std::move(r.tokens));
    }
  }
  return out;
}

RankedCounts rank_counts(const std::map<std::string, std::int64_t>& counts,
                         std::size_t k) {
  RankedCounts ranked(counts.begin(), counts.end());
  // std::map iteration is already lexicographic; stable_sort keeps that
  // order within equal counts.
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const auto& a, const auto& b) {
                     return a.second > b.second;
                   });
  if (ranked.size() > k) ranked.resize(k);
  return ranked;
}

namespace {

std::map<std::string, std::int64_t> fake_word_counts(
    const std::vector<std::vector<TaggedToken>>& seqs) {
  std::map<std::string, std::int64_t> counts;
  for (const auto& seq : seqs) {
    for (const auto& t : seq) {
      if (t.is_fake) ++counts[t.word];
    }
  }
  return counts;
}

}  // namespace

RankedCounts top_fake_words(const std::vector<std::vector<TaggedToken>>& seqs,
                            std::size_t k) {
  return rank_counts(fake_word_counts(seqs), k);
}

RankedCounts top_fake_words(const Corpus& corpus, std::size_t k,
                            LabelSource source, const TagConfig& cfg) {
  return top_fake_words(labeled_tokens(corpus, source, cfg), k);
}

PhonemeCounts top_fake_phonemes(
    const std::vector<std::vector<TaggedToken>>& seqs, const Lexicon& lexicon,
    std::size_t k) {
  std::map<std::string, std::int64_t> phoneme_counts;
  std::map<std::string, std::int64_t> oov_counts;
  for (const auto& seq : seqs) {
    for (const auto& t : seq) {
      if (!t.is_fake) continue;
      if (const auto* pron = lexicon.find(t.word)) {
        for (const auto& ph : *pron) ++phoneme_counts[ph];
      } else {
        ++oov_counts[t.word];
      }
    }
  }
  PhonemeCounts out;
  out.top_phonemes = rank_counts(phoneme_counts, k);
  out.oov_words = rank_counts(oov_counts, oov_counts.size());
  return out;
}

PhonemeCounts top_fake_phonemes(const Corpus& corpus, const Lexicon& lexicon,
                                std::size_t k, LabelSource source,
                                const TagConfig& cfg) {
  return top_fake_phonemes(labeled_tokens(corpus, source, cfg), lexicon, k);
}

PatternReport build_pattern_report(
    const std::vector<std::vector<TaggedToken>>& seqs, const Lexicon& lexicon,
    std::size_t k) {
  PatternReport report;
  report.k = k;
  report.top_words = top_fake_words(seqs, k);
  PhonemeCounts pc = top_fake_phonemes(seqs, lexicon, k);
  report.top_phonemes = std::move(pc.top_phonemes);
  report.oov_words = std::move(pc.oov_words);
  return report;
}

PatternReport build_pattern_report(const Corpus& corpus,
                                   const Lexicon& lexicon, std::size_t k,
                                   LabelSource source, const TagConfig& cfg) {
  return build_pattern_report(labeled_tokens(corpus, source, cfg), lexicon, k);
}

WordPrior fit_lexical_prior(const Corpus& train) {
  WordPrior prior;
  for (const auto& u : train.utterances) {
    for (const auto& rw : u.ref) {
      ++prior.total_words;
      if (rw.is_fake) {
        ++prior.total_fake;
        ++prior.counts[rw.span.word];
      }
    }
  }
  if (prior.total_words == 0) {
    throw Error("fit_lexical_prior: corpus has no labeled tokens");
  }
  return prior;
}

WordPrior load_word_prior(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open prior file: " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& ex) {
    throw Error(path.string() + ": invalid JSON: " + ex.what());
  }
  WordPrior prior;
  if (!j.contains("counts") || !j["counts"].is_object()) {
    throw Error(path.string() + ": missing \"counts\" object");
  }
  std::int64_t sum = 0;
  for (const auto& [w, c] : j["counts"].items()) {
    const auto n = c.get<std::int64_t>();
    if (n < 1) {
      throw Error(path.string() + ": count for \"" + w + "\" must be >= 1");
    }
    prior.counts[w] = n;
    sum += n;
  }
  prior.total_fake = j.value("total_fake", sum);
  prior.total_words = j.value("total_words", prior.total_fake);
  if (prior.total_fake != sum || prior.total_words < prior.total_fake) {
    throw Error(path.string() + ": totals inconsistent with counts");
  }
  return prior;
}

void write_word_prior(const WordPrior& prior,
                      const std::filesystem::path& path) {
  nlohmann::ordered_json j;
  j["total_fake"] = prior.total_fake;
  j["total_words"] = prior.total_words;
  j["counts"] = nlohmann::ordered_json::object();
  for (const auto& [w, c] : prior.counts) j["counts"][w] = c;
  std::ofstream out(path);
  if (!out) throw Error("cannot write prior file: " + path.string());
  out << j.dump(2) << '\n';
}

std::vector<TaggedToken> apply_lexical_prior(
    const WordPrior& prior, const std::vector<std::string>& transcript,
    std::int64_t theta) {
  if (theta < 1) throw Error("apply_lexical_prior: theta must be >= 1");
  std::vector<TaggedToken> out;
  out.reserve(transcript.size());
  for (const auto& raw : transcript) {
    std::string w = normalize_word(raw);
    if (w.empty()) continue;
    auto it = prior.counts.find(w);
    const bool fake = it != prior.counts.end() && it->second >= theta;
    out.push_back({std::move(w), fake});
  }
  return out;
}

}  // namespace pfl
