// core.cpp

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

#include "pfl/core.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include "json.hpp"

namespace pfl {

namespace {

using ojson = nlohmann::ordered_json;

bool is_blank(const std::string& s) {
  for (unsigned char c : s) {
    if (!std::isspace(c)) return false;
  }
  return true;
}

std::string line_prefix(const std::filesystem::path& path, int lineno) {
  return path.string() + ": line " + std::to_string(lineno) + ": ";
}

double require_number(const ojson& j, const char* key,
                      const std::string& ctx) {
  if (!j.contains(key) || !j[key].is_number()) {
    throw Error(ctx + "missing or non-numeric field \"" + key + "\"");
  }
  return j[key].get<double>();
}

Utterance utterance_from_json(const ojson& j, const std::string& ctx) {
  Utterance u;
  if (!j.contains("id") || !j["id"].is_string() ||
      j["id"].get<std::string>().empty()) {
    throw Error(ctx + "missing or empty \"id\"");
  }
  u.id = j["id"].get<std::string>();
  const std::string uctx = ctx + "utterance \"" + u.id + "\": ";

  if (j.contains("ref")) {
    if (!j["ref"].is_array()) throw Error(uctx + "\"ref\" must be an array");
    for (const auto& e : j["ref"]) {
      if (!e.contains("w") || !e["w"].is_string()) {
        throw Error(uctx + "ref entry missing \"w\"");
      }
      RefWord rw;
      rw.span.word = normalize_word(e["w"].get<std::string>());
      rw.span.start_s = require_number(e, "s", uctx);
      rw.span.end_s = require_number(e, "e", uctx);
      rw.is_fake = e.value("fake", false);
      if (rw.span.word.empty()) continue;  // punctuation-only token
      u.ref.push_back(std::move(rw));
    }
  }
  if (j.contains("hyp_text")) {
    if (!j["hyp_text"].is_string()) {
      throw Error(uctx + "\"hyp_text\" must be a string");
    }
    u.hyp_text = j["hyp_text"].get<std::string>();
  }
  if (j.contains("frame_scores")) {
    const auto& fs = j["frame_scores"];
    if (fs.is_string()) {
      u.frame_scores_path = fs.get<std::string>();
    } else if (fs.is_array()) {
      FrameScores inl;
      inl.rate_hz = require_number(j, "rate_hz", uctx);
      for (const auto& v : fs) {
        if (!v.is_number()) {
          throw Error(uctx + "frame_scores entries must be numbers");
        }
        inl.scores.push_back(v.get<double>());
      }
      u.frame_scores = std::move(inl);
    } else {
      throw Error(uctx + "\"frame_scores\" must be a path or an array");
    }
  }
  return u;
}

ojson utterance_to_json(const Utterance& u) {
  ojson j;
  j["id"] = u.id;
  ojson ref = ojson::array();
  for (const auto& rw : u.ref) {
    ojson e;
    e["w"] = rw.span.word;
    e["s"] = rw.span.start_s;
    e["e"] = rw.span.end_s;
    e["fake"] = rw.is_fake;
    ref.push_back(std::move(e));
  }
  j["ref"] = std::move(ref);
  if (u.hyp_text) j["hyp_text"] = *u.hyp_text;
  if (u.frame_scores_path) j["frame_scores"] = *u.frame_scores_path;
  if (u.frame_scores) {
    j["frame_scores"] = u.frame_scores->scores;
    j["rate_hz"] = u.frame_scores->rate_hz;
  }
  return j;
}

void validate_frame_scores(const FrameScores& fs, const std::string& ctx) {
  if (!(fs.rate_hz > 0.0)) {
    throw Error(ctx + "invalid rate_hz " + format_double(fs.rate_hz) +
                " (must be > 0)");
  }
  if (fs.scores.empty()) throw Error(ctx + "empty score list");
  for (std::size_t i = 0; i < fs.scores.size(); ++i) {
    const double v = fs.scores[i];
    if (!(v >= 0.0 && v <= 1.0)) {
      throw Error(ctx + "score " + format_double(v) + " at index " +
                  std::to_string(i) + " outside [0, 1]");
    }
  }
}

void validate_utterance(const Utterance& u) {
  const std::string ctx = "utterance \"" + u.id + "\": ";
  if (u.id.empty()) throw Error("utterance with empty id");
  for (const auto& rw : u.ref) {
    if (rw.span.word.empty()) throw Error(ctx + "empty word");
    if (rw.span.start_s < 0.0) {
      throw Error(ctx + "negative start time " +
                  format_double(rw.span.start_s));
    }
    if (rw.span.end_s < rw.span.start_s) {
      throw Error(ctx + "word \"" + rw.span.word + "\" has end_s " +
                  format_double(rw.span.end_s) + " < start_s " +
                  format_double(rw.span.start_s));
    }
  }
  for (std::size_t i = 1; i < u.ref.size(); ++i) {
    if (u.ref[i].span.start_s < u.ref[i - 1].span.end_s) {
      throw Error(ctx + "spans overlap or are unsorted near word \"" +
                  u.ref[i].span.word + "\"");
    }
  }
  if (u.frame_scores_path && u.frame_scores) {
    throw Error(ctx + "both inline frame scores and a sidecar path given");
  }
  if (u.frame_scores) validate_frame_scores(*u.frame_scores, ctx);
}

}  // namespace

std::vector<std::string> Utterance::ref_words() const {
  std::vector<std::string> out;
  out.reserve(ref.size());
  for (const auto& rw : ref) out.push_back(rw.span.word);
  return out;
}

std::vector<TaggedToken> Utterance::ref_tokens() const {
  std::vector<TaggedToken> out;
  out.reserve(ref.size());
  for (const auto& rw : ref) out.push_back({rw.span.word, rw.is_fake});
  return out;
}

std::vector<TaggedToken> TokenSeq::tagged() const {
  std::vector<TaggedToken> out;
  out.reserve(tokens.size());
  for (const auto& t : tokens) out.push_back(t.tagged());
  return out;
}

std::string normalize_word(std::string_view raw) {
  auto alnum = [](unsigned char c) { return std::isalnum(c) != 0; };
  std::size_t b = 0, e = raw.size();
  while (b < e && !alnum(static_cast<unsigned char>(raw[b]))) ++b;
  while (e > b && !alnum(static_cast<unsigned char>(raw[e - 1]))) --e;
  std::string out;
  out.reserve(e - b);
  for (std::size_t i = b; i < e; ++i) {
    out.push_back(static_cast<char>(
        std::tolower(static_cast<unsigned char>(raw[i]))));
  }
  return out;
}

std::string format_double(double v) {
  char buf[64];
  auto r = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, r.ptr);
}

void validate_corpus(const Corpus& corpus) {
  std::unordered_set<std::string> seen;
  for (const auto& u : corpus.utterances) {
    validate_utterance(u);
    if (!seen.insert(u.id).second) {
      throw Error("duplicate utterance id \"" + u.id + "\"");
    }
  }
}

Corpus load_corpus(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open corpus file: " + path.string());
  Corpus corpus;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (is_blank(line)) continue;
    ojson j;
    try {
      j = ojson::parse(line);
    } catch (const nlohmann::json::exception& ex) {
      throw Error(line_prefix(path, lineno) + "invalid JSON: " + ex.what());
    }
    if (!j.is_object()) {
      throw Error(line_prefix(path, lineno) + "expected a JSON object");
    }
    if (j.contains("meta") && !j.contains("id")) {
      if (!j["meta"].is_object()) {
        throw Error(line_prefix(path, lineno) + "\"meta\" must be an object");
      }
      for (const auto& [k, v] : j["meta"].items()) {
        corpus.meta[k] = v.is_string() ? v.get<std::string>() : v.dump();
      }
      continue;
    }
    Utterance u;
    try {
      u = utterance_from_json(j, "");
    } catch (const Error& ex) {
      throw Error(line_prefix(path, lineno) + ex.what());
    } catch (const nlohmann::json::exception& ex) {
      throw Error(line_prefix(path, lineno) + ex.what());
    }
    corpus.utterances.push_back(std::move(u));
  }
  validate_corpus(corpus);
  return corpus;
}

void write_corpus(const Corpus& corpus, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write corpus file: " + path.string());
  if (!corpus.meta.empty()) {
    ojson m;
    m["meta"] = ojson(corpus.meta);
    out << m.dump() << '\n';
  }
  for (const auto& u : corpus.utterances) {
    out << utterance_to_json(u).dump() << '\n';
  }
  if (!out) throw Error("write failed: " + path.string());
}

FrameScores load_frame_scores(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open frame-score file: " + path.string());
  const std::string ctx = path.string() + ": ";
  std::string header;
  if (!std::getline(in, header)) throw Error(ctx + "empty file");
  // Header: rate_hz=<decimal>
  const std::string key = "rate_hz=";
  std::size_t pos = header.find(key);
  if (pos == std::string::npos) {
    throw Error(ctx + "first line must be rate_hz=<decimal>");
  }
  FrameScores fs;
  try {
    fs.rate_hz = std::stod(header.substr(pos + key.size()));
  } catch (const std::exception&) {
    throw Error(ctx + "cannot parse rate from \"" + header + "\"");
  }
  std::string tok;
  while (in >> tok) {
    double v = 0.0;
    auto r = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (r.ec != std::errc() || r.ptr != tok.data() + tok.size()) {
      throw Error(ctx + "cannot parse score \"" + tok + "\" at index " +
                  std::to_string(fs.scores.size()));
    }
    fs.scores.push_back(v);
  }
  validate_frame_scores(fs, ctx);
  return fs;
}

void write_frame_scores(const FrameScores& frames,
                        const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write frame-score file: " + path.string());
  out << "rate_hz=" << format_double(frames.rate_hz) << '\n';
  for (std::size_t i = 0; i < frames.scores.size(); ++i) {
    out << format_double(frames.scores[i]);
    out << ((i % 16 == 15 || i + 1 == frames.scores.size()) ? '\n' : ' ');
  }
  if (!out) throw Error("write failed: " + path.string());
}

FrameScores utterance_frame_scores(const Utterance& utt,
                                   const std::filesystem::path& corpus_dir) {
  if (utt.frame_scores) return *utt.frame_scores;
  if (utt.frame_scores_path) {
    std::filesystem::path p(*utt.frame_scores_path);
    if (p.is_relative()) p = corpus_dir / p;
    return load_frame_scores(p);
  }
  throw Error("utterance \"" + utt.id + "\" has no frame scores");
}

std::vector<TokenSeq> load_token_seqs(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open token file: " + path.string());
  std::vector<TokenSeq> seqs;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (is_blank(line)) continue;
    ojson j;
    try {
      j = ojson::parse(line);
    } catch (const nlohmann::json::exception& ex) {
      throw Error(line_prefix(path, lineno) + "invalid JSON: " + ex.what());
    }
    if (j.contains("meta") && !j.contains("id")) continue;
    const std::string ctx = line_prefix(path, lineno);
    TokenSeq seq;
    if (!j.contains("id") || !j["id"].is_string()) {
      throw Error(ctx + "missing \"id\"");
    }
    seq.id = j["id"].get<std::string>();
    if (!j.contains("tokens") || !j["tokens"].is_array()) {
      throw Error(ctx + "missing \"tokens\" array");
    }
    for (const auto& e : j["tokens"]) {
      if (!e.contains("w") || !e["w"].is_string()) {
        throw Error(ctx + "token entry missing \"w\"");
      }
      ScoredToken t;
      t.word = normalize_word(e["w"].get<std::string>());
      t.is_fake = e.value("fake", false);
      if (e.contains("q")) {
        if (!e["q"].is_number()) throw Error(ctx + "\"q\" must be a number");
        t.q = e["q"].get<double>();
      }
      if (t.word.empty()) continue;
      seq.tokens.push_back(std::move(t));
    }
    seqs.push_back(std::move(seq));
  }
  return seqs;
}

void write_token_seqs(const std::vector<TokenSeq>& seqs,
                      const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write token file: " + path.string());
  for (const auto& seq : seqs) {
    ojson j;
    j["id"] = seq.id;
    ojson toks = ojson::array();
    for (const auto& t : seq.tokens) {
      ojson e;
      e["w"] = t.word;
      if (t.q) e["q"] = *t.q;
      e["fake"] = t.is_fake;
      toks.push_back(std::move(e));
    }
    j["tokens"] = std::move(toks);
    out << j.dump() << '\n';
  }
  if (!out) throw Error("write failed: " + path.string());
}

}  // namespace pfl
