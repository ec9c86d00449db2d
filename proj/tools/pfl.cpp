// tools/pfl.cpp

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

// pfl: word-level localization of fake words in partially fake speech.
//
//   pfl simulate   generate a synthetic labeled corpus + detector sidecars
//   pfl aggregate  pool frame posteriors into per-word fake decisions
//   pfl tag        encode/decode the "[fake]" suffix convention
//   pfl score      WER and WordF1 (fake = positive class) via word alignment
//   pfl analyze    fake-word / fake-phoneme frequency tables
//   pfl prior      text-only lexical-prior localizer (fit/apply)
//   pfl pipeline   simulate -> aggregate -> score -> analyze in one run

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "pfl/aggregate.hpp"
#include "pfl/core.hpp"
#include "pfl/manifest.hpp"
#include "pfl/parallel.hpp"
#include "pfl/patterns.hpp"
#include "pfl/scorer.hpp"
#include "pfl/simgen.hpp"
#include "pfl/tagcodec.hpp"

namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;

namespace {

void require_exists(const std::string& path) {
  if (!fs::exists(path)) throw pfl::Error("no such file: " + path);
}

void write_report(const fs::path& path, const ojson& j) {
  if (!path.parent_path().empty()) {
    fs::create_directories(path.parent_path());
  }
  std::ofstream out(path);
  if (!out) throw pfl::Error("cannot write report: " + path.string());
  out << j.dump(2) << '\n';
  if (!out) throw pfl::Error("write failed: " + path.string());
}

ojson score_to_json(const pfl::ScoreReport& r) {
  ojson j;
  j["wer"] = r.wer;
  j["word_f1"] = r.word_f1;
  j["precision"] = r.precision;
  j["recall"] = r.recall;
  j["tp"] = r.tp;
  j["fp"] = r.fp;
  j["fn"] = r.fn;
  j["n_sub"] = r.n_sub;
  j["n_ins"] = r.n_ins;
  j["n_del"] = r.n_del;
  j["n_ref"] = r.n_ref;
  j["n_scored_words"] = r.n_scored_words;
  return j;
}

ojson ranked_to_json(const pfl::RankedCounts& ranked, const char* key) {
  ojson arr = ojson::array();
  for (const auto& [name, count] : ranked) {
    ojson e;
    e[key] = name;
    e["count"] = count;
    arr.push_back(std::move(e));
  }
  return arr;
}

ojson pattern_to_json(const pfl::PatternReport& p, bool with_phonemes) {
  ojson j;
  j["k"] = p.k;
  j["top_words"] = ranked_to_json(p.top_words, "word");
  if (with_phonemes) {
    j["top_phonemes"] = ranked_to_json(p.top_phonemes, "phoneme");
    j["oov_words"] = ranked_to_json(p.oov_words, "word");
  }
  return j;
}

// A tagged-token JSONL line carries a "tokens" array; a corpus line does not.
bool is_token_file(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw pfl::Error("cannot open file: " + path.string());
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
    try {
      auto j = nlohmann::json::parse(line);
      if (j.contains("meta") && !j.contains("id")) continue;
      return j.contains("tokens");
    } catch (const nlohmann::json::exception&) {
      return false;  // let the real loader produce the line-numbered error
    }
  }
  return false;
}

using LabeledSeqs =
    std::vector<std::pair<std::string, std::vector<pfl::TaggedToken>>>;

// Reference side of scoring: a corpus file (ground-truth ref labels) or a
// tagged-token file.
LabeledSeqs load_ref_side(const fs::path& path) {
  LabeledSeqs out;
  if (is_token_file(path)) {
    for (const auto& seq : pfl::load_token_seqs(path)) {
      out.emplace_back(seq.id, seq.tagged());
    }
  } else {
    for (const auto& u : pfl::load_corpus(path).utterances) {
      out.emplace_back(u.id, u.ref_tokens());
    }
  }
  return out;
}

// Hypothesis side: a tagged-token file, or a corpus file whose hyp_text
// fields are decoded.
LabeledSeqs load_hyp_side(const fs::path& path, const pfl::TagConfig& cfg,
                          pfl::DecodeWarnings* warnings) {
  LabeledSeqs out;
  if (is_token_file(path)) {
    for (const auto& seq : pfl::load_token_seqs(path)) {
      out.emplace_back(seq.id, seq.tagged());
    }
  } else {
    for (const auto& u : pfl::load_corpus(path).utterances) {
      if (!u.hyp_text) {
        throw pfl::Error("utterance \"" + u.id + "\" in " + path.string() +
                         " has no hyp_text");
      }
      auto r = pfl::decode_tags(*u.hyp_text, cfg);
      if (warnings) {
        warnings->leading_tags += r.warnings.leading_tags;
        warnings->duplicate_tags += r.warnings.duplicate_tags;
      }
      out.emplace_back(u.id, std::move(r.tokens));
    }
  }
  return out;
}

pfl::TokenSeq aggregate_utterance(const pfl::Utterance& utt,
                                  const pfl::FrameScores& frames,
                                  pfl::AggPolicy policy, double threshold) {
  std::vector<pfl::WordSpan> spans;
  spans.reserve(utt.ref.size());
  for (const auto& rw : utt.ref) spans.push_back(rw.span);
  const auto scores = pfl::word_scores(frames, spans, policy);
  const auto tokens = pfl::decide(scores, threshold);
  pfl::TokenSeq seq;
  seq.id = utt.id;
  seq.tokens.reserve(tokens.size());
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    seq.tokens.push_back({tokens[i].word, tokens[i].is_fake, scores[i].q});
  }
  return seq;
}

// ---------------------------------------------------------------------------
// subcommand options

struct AggregateOpts {
  std::string corpus, out;
  std::string policy = "mean";
  double threshold = 0.5;
};

struct TagOpts {
  std::string in, out;
  std::string tag = "[fake]";
  bool case_sensitive = false;
};

struct ScoreOpts {
  std::string ref, hyp, report;
  bool no_timestamp = false;
};

struct AnalyzeOpts {
  std::string corpus, tokens, lexicon, report;
  std::string labels = "ground-truth";
  std::size_t top = 10;
  bool no_timestamp = false;
};

struct PriorFitOpts {
  std::string train, out;
  bool no_timestamp = false;
};

struct PriorApplyOpts {
  std::string prior, corpus, out;
  std::int64_t theta = 1;
};

struct SimulateOpts {
  std::string config, out_dir;
  std::optional<std::uint64_t> seed;
  int jobs = 1;
  bool no_timestamp = false;
};

struct PipelineOpts {
  std::string config, report, lexicon;
  std::string out_dir = "pipeline_out";
  std::string policy = "mean";
  double threshold = 0.5;
  std::size_t top = 10;
  std::optional<std::uint64_t> seed;
  int jobs = 1;
  bool no_timestamp = false;
};

// ---------------------------------------------------------------------------

int run_aggregate(const AggregateOpts& o) {
  require_exists(o.corpus);
  const pfl::Corpus corpus = pfl::load_corpus(o.corpus);
  const pfl::AggPolicy policy = pfl::agg_policy_from_string(o.policy);
  if (!(o.threshold >= 0.0 && o.threshold <= 1.0)) {
    throw pfl::Error("--threshold must be in [0, 1]");
  }
  const fs::path corpus_dir = fs::path(o.corpus).parent_path();
  std::vector<pfl::TokenSeq> out(corpus.utterances.size());
  for (std::size_t i = 0; i < corpus.utterances.size(); ++i) {
    const auto& u = corpus.utterances[i];
    out[i] = aggregate_utterance(u, pfl::utterance_frame_scores(u, corpus_dir),
                                 policy, o.threshold);
  }
  pfl::write_token_seqs(out, o.out);
  std::cout << "aggregate: " << out.size() << " utterances -> " << o.out
            << "\n";
  return 0;
}

int run_tag_encode(const TagOpts& o) {
  require_exists(o.in);
  pfl::TagConfig cfg{o.tag, !o.case_sensitive};
  std::ofstream out(o.out);
  if (!out) throw pfl::Error("cannot write: " + o.out);
  std::size_t n = 0;
  for (const auto& seq : pfl::load_token_seqs(o.in)) {
    ojson j;
    j["id"] = seq.id;
    j["text"] = pfl::encode_tags(seq.tagged(), cfg);
    out << j.dump() << '\n';
    ++n;
  }
  std::cout << "encode: " << n << " utterances -> " << o.out << "\n";
  return 0;
}

int run_tag_decode(const TagOpts& o) {
  require_exists(o.in);
  pfl::TagConfig cfg{o.tag, !o.case_sensitive};
  std::ifstream in(o.in);
  if (!in) throw pfl::Error("cannot open file: " + o.in);
  std::vector<pfl::TokenSeq> seqs;
  pfl::DecodeWarnings warnings;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
    ojson j;
    try {
      j = ojson::parse(line);
    } catch (const nlohmann::json::exception& ex) {
      throw pfl::Error(o.in + ": line " + std::to_string(lineno) +
                       ": invalid JSON: " + ex.what());
    }
    if (j.contains("meta") && !j.contains("id")) continue;
    const std::string ctx = o.in + ": line " + std::to_string(lineno) + ": ";
    if (!j.contains("id") || !j["id"].is_string()) {
      throw pfl::Error(ctx + "missing \"id\"");
    }
    std::string text;
    if (j.contains("text") && j["text"].is_string()) {
      text = j["text"].get<std::string>();
    } else if (j.contains("hyp_text") && j["hyp_text"].is_string()) {
      text = j["hyp_text"].get<std::string>();
    } else {
      throw pfl::Error(ctx + "missing \"text\" (or \"hyp_text\")");
    }
    auto r = pfl::decode_tags(text, cfg);
    warnings.leading_tags += r.warnings.leading_tags;
    warnings.duplicate_tags += r.warnings.duplicate_tags;
    pfl::TokenSeq seq;
    seq.id = j["id"].get<std::string>();
    for (auto& t : r.tokens) seq.tokens.push_back({std::move(t.word), t.is_fake, std::nullopt});
    seqs.push_back(std::move(seq));
  }
  pfl::write_token_seqs(seqs, o.out);
  std::cerr << "decode: " << warnings.leading_tags
            << " leading-tag and " << warnings.duplicate_tags
            << " duplicate-tag warnings (" << warnings.total()
            << " tags dropped)\n";
  std::cout << "decode: " << seqs.size() << " utterances -> " << o.out << "\n";
  return 0;
}

int run_score(const ScoreOpts& o) {
  require_exists(o.ref);
  require_exists(o.hyp);
  pfl::DecodeWarnings warnings;
  const LabeledSeqs ref = load_ref_side(o.ref);
  const LabeledSeqs hyp = load_hyp_side(o.hyp, {}, &warnings);
  if (warnings.total() > 0) {
    std::cerr << "score: dropped " << warnings.total()
              << " malformed tags while decoding hypotheses\n";
  }

  std::unordered_map<std::string, const std::vector<pfl::TaggedToken>*> by_id;
  for (const auto& [id, tokens] : hyp) by_id[id] = &tokens;
  if (by_id.size() != hyp.size()) {
    throw pfl::Error("duplicate utterance id in " + o.hyp);
  }
  std::vector<pfl::TokenPair> pairs;
  ojson per_utt = ojson::array();
  for (const auto& [id, ref_tokens] : ref) {
    auto it = by_id.find(id);
    if (it == by_id.end()) {
      throw pfl::Error("utterance \"" + id + "\" missing from " + o.hyp);
    }
    pairs.emplace_back(ref_tokens, *it->second);
    ojson e;
    e["id"] = id;
    e.update(score_to_json(pfl::word_f1(ref_tokens, *it->second)));
    per_utt.push_back(std::move(e));
    by_id.erase(it);
  }
  if (!by_id.empty()) {
    throw pfl::Error("utterance \"" + by_id.begin()->first +
                     "\" in hypothesis has no reference");
  }
  const pfl::ScoreReport corpus = pfl::corpus_score(pairs);

  pfl::RunManifest manifest;
  manifest.subcommand = "score";
  manifest.config = {{"ref", o.ref}, {"hyp", o.hyp}, {"report", o.report}};
  manifest.add_input(o.ref);
  manifest.add_input(o.hyp);
  if (!o.no_timestamp) manifest.timestamp = pfl::iso8601_utc_now();

  ojson j;
  j["manifest"] = manifest.to_json();
  j["corpus"] = score_to_json(corpus);
  j["utterances"] = std::move(per_utt);
  write_report(o.report, j);

  std::cout << "score: WordF1 " << pfl::format_double(corpus.word_f1)
            << " precision " << pfl::format_double(corpus.precision)
            << " recall " << pfl::format_double(corpus.recall) << " WER "
            << pfl::format_double(corpus.wer) << " over " << pairs.size()
            << " utterances -> " << o.report << "\n";
  return 0;
}

int run_analyze(const AnalyzeOpts& o) {
  if (o.corpus.empty() && o.tokens.empty()) {
    throw pfl::Error("one of --corpus or --tokens is required");
  }
  pfl::LabelSource source = pfl::LabelSource::kGroundTruth;
  if (o.labels == "predicted") {
    source = pfl::LabelSource::kPredicted;
  } else if (o.labels != "ground-truth") {
    throw pfl::Error("--labels must be ground-truth or predicted");
  }
  require_exists(o.lexicon);
  const pfl::Lexicon lexicon = pfl::load_lexicon(o.lexicon);

  pfl::PatternReport report;
  pfl::DecodeWarnings warnings;
  std::string input;
  if (!o.tokens.empty()) {
    require_exists(o.tokens);
    input = o.tokens;
    std::vector<std::vector<pfl::TaggedToken>> seqs;
    for (const auto& seq : pfl::load_token_seqs(o.tokens)) {
      seqs.push_back(seq.tagged());
    }
    report = pfl::build_pattern_report(seqs, lexicon, o.top);
  } else {
    require_exists(o.corpus);
    input = o.corpus;
    const pfl::Corpus corpus = pfl::load_corpus(o.corpus);
    report = pfl::build_pattern_report(
        pfl::labeled_tokens(corpus, source, {}, &warnings), lexicon, o.top);
  }
  if (warnings.total() > 0) {
    std::cerr << "analyze: dropped " << warnings.total()
              << " malformed tags while decoding hyp_text\n";
  }

  pfl::RunManifest manifest;
  manifest.subcommand = "analyze";
  manifest.config = {{"labels", o.tokens.empty() ? o.labels : "tokens"},
                     {"lexicon", o.lexicon},
                     {"top", std::to_string(o.top)}};
  manifest.add_input(input);
  manifest.add_input(o.lexicon);
  if (!o.no_timestamp) manifest.timestamp = pfl::iso8601_utc_now();

  ojson j;
  j["manifest"] = manifest.to_json();
  j.update(pattern_to_json(report, true));
  write_report(o.report, j);
  std::cout << "analyze: " << report.top_words.size() << " words, "
            << report.top_phonemes.size() << " phonemes, "
            << report.oov_words.size() << " OOV -> " << o.report << "\n";
  return 0;
}

int run_prior_fit(const PriorFitOpts& o) {
  require_exists(o.train);
  const pfl::WordPrior prior = pfl::fit_lexical_prior(pfl::load_corpus(o.train));

  pfl::RunManifest manifest;
  manifest.subcommand = "prior fit";
  manifest.config = {{"train", o.train}};
  manifest.add_input(o.train);
  if (!o.no_timestamp) manifest.timestamp = pfl::iso8601_utc_now();

  ojson j;
  j["manifest"] = manifest.to_json();
  j["total_fake"] = prior.total_fake;
  j["total_words"] = prior.total_words;
  j["counts"] = ojson::object();
  for (const auto& [w, c] : prior.counts) j["counts"][w] = c;
  write_report(o.out, j);
  std::cout << "prior fit: " << prior.counts.size() << " edited word types, "
            << prior.total_fake << "/" << prior.total_words
            << " fake tokens -> " << o.out << "\n";
  return 0;
}

int run_prior_apply(const PriorApplyOpts& o) {
  require_exists(o.prior);
  require_exists(o.corpus);
  const pfl::WordPrior prior = pfl::load_word_prior(o.prior);
  const pfl::Corpus corpus = pfl::load_corpus(o.corpus);
  std::vector<pfl::TokenSeq> out;
  out.reserve(corpus.utterances.size());
  for (const auto& u : corpus.utterances) {
    pfl::TokenSeq seq;
    seq.id = u.id;
    for (const auto& t :
         pfl::apply_lexical_prior(prior, u.ref_words(), o.theta)) {
      seq.tokens.push_back({t.word, t.is_fake, std::nullopt});
    }
    out.push_back(std::move(seq));
  }
  pfl::write_token_seqs(out, o.out);
  std::cout << "prior apply: theta " << o.theta << ", " << out.size()
            << " utterances -> " << o.out << "\n";
  return 0;
}

struct SimOutputs {
  pfl::Corpus corpus;               // ground truth, sidecar paths set
  pfl::Corpus asr;                  // hypothesis words, same sidecars
  std::vector<pfl::FrameScores> sidecars;
  std::int64_t n_words = 0, n_fake = 0;
};

SimOutputs run_simulation(const pfl::SimConfig& cfg, const fs::path& out_dir,
                          int jobs) {
  SimOutputs sim;
  sim.corpus = pfl::generate_corpus(cfg, jobs);
  for (auto& u : sim.corpus.utterances) {
    u.frame_scores_path = "scores/" + u.id + ".txt";
    sim.n_words += static_cast<std::int64_t>(u.ref.size());
    for (const auto& rw : u.ref) sim.n_fake += rw.is_fake;
  }
  sim.sidecars = pfl::simulate_detector(sim.corpus, cfg, jobs);
  sim.asr = pfl::simulate_asr(sim.corpus, cfg, jobs);

  fs::create_directories(out_dir / "scores");
  for (std::size_t i = 0; i < sim.corpus.utterances.size(); ++i) {
    pfl::write_frame_scores(
        sim.sidecars[i],
        out_dir / *sim.corpus.utterances[i].frame_scores_path);
  }
  pfl::write_corpus(sim.corpus, out_dir / "corpus.jsonl");
  pfl::write_corpus(sim.asr, out_dir / "asr.jsonl");
  return sim;
}

int run_simulate(const SimulateOpts& o) {
  require_exists(o.config);
  pfl::SimConfig cfg = pfl::load_sim_config(o.config);
  if (o.seed) cfg.seed = *o.seed;
  const fs::path out_dir(o.out_dir);
  const SimOutputs sim = run_simulation(cfg, out_dir, o.jobs);

  pfl::RunManifest manifest;
  manifest.subcommand = "simulate";
  // Worker count is an execution detail; output bytes do not depend on it,
  // so it stays out of the reproducibility record.
  manifest.config = {{"config", o.config}, {"out_dir", o.out_dir}};
  manifest.add_input(o.config);
  manifest.seed = cfg.seed;
  if (!o.no_timestamp) manifest.timestamp = pfl::iso8601_utc_now();

  ojson j;
  j["manifest"] = manifest.to_json();
  j["outputs"] = {{"corpus", "corpus.jsonl"},
                  {"asr", "asr.jsonl"},
                  {"scores_dir", "scores"}};
  j["stats"] = {{"n_utterances", sim.corpus.utterances.size()},
                {"n_words", sim.n_words},
                {"n_fake", sim.n_fake}};
  write_report(out_dir / "manifest.json", j);

  std::cout << "simulate: " << sim.corpus.utterances.size() << " utterances, "
            << sim.n_words << " words, " << sim.n_fake << " fake -> "
            << o.out_dir << "\n";
  return 0;
}

int run_pipeline(const PipelineOpts& o) {
  require_exists(o.config);
  pfl::SimConfig cfg = pfl::load_sim_config(o.config);
  if (o.seed) cfg.seed = *o.seed;
  const pfl::AggPolicy policy = pfl::agg_policy_from_string(o.policy);
  if (!(o.threshold >= 0.0 && o.threshold <= 1.0)) {
    throw pfl::Error("--threshold must be in [0, 1]");
  }
  std::optional<pfl::Lexicon> lexicon;
  if (!o.lexicon.empty()) {
    require_exists(o.lexicon);
    lexicon = pfl::load_lexicon(o.lexicon);
  }

  const fs::path out_dir(o.out_dir);
  const SimOutputs sim = run_simulation(cfg, out_dir, o.jobs);
  std::cout << "pipeline: simulated " << sim.corpus.utterances.size()
            << " utterances (" << sim.n_fake << "/" << sim.n_words
            << " fake words)\n";

  // Aggregate frame scores over the ASR spans.
  std::vector<pfl::TokenSeq> tagged(sim.asr.utterances.size());
  pfl::parallel_for(sim.asr.utterances.size(), o.jobs, [&](std::size_t i) {
    tagged[i] = aggregate_utterance(sim.asr.utterances[i], sim.sidecars[i],
                                    policy, o.threshold);
  });
  pfl::write_token_seqs(tagged, out_dir / "tagged.jsonl");

  // Score against the ground truth.
  std::vector<pfl::TokenPair> pairs;
  pairs.reserve(tagged.size());
  std::vector<std::vector<pfl::TaggedToken>> predicted;
  predicted.reserve(tagged.size());
  for (std::size_t i = 0; i < tagged.size(); ++i) {
    predicted.push_back(tagged[i].tagged());
    pairs.emplace_back(sim.corpus.utterances[i].ref_tokens(),
                       predicted.back());
  }
  const pfl::ScoreReport score = pfl::corpus_score(pairs);
  std::cout << "pipeline: WordF1 " << pfl::format_double(score.word_f1)
            << " WER " << pfl::format_double(score.wer) << "\n";

  pfl::RunManifest manifest;
  manifest.subcommand = "pipeline";
  manifest.config = {{"config", o.config},
                     {"out_dir", o.out_dir},
                     {"policy", o.policy},
                     {"threshold", pfl::format_double(o.threshold)},
                     {"top", std::to_string(o.top)}};
  if (!o.lexicon.empty()) manifest.config["lexicon"] = o.lexicon;
  manifest.add_input(o.config);
  if (!o.lexicon.empty()) manifest.add_input(o.lexicon);
  manifest.seed = cfg.seed;
  if (!o.no_timestamp) manifest.timestamp = pfl::iso8601_utc_now();

  const pfl::Lexicon empty_lexicon;
  const pfl::Lexicon& lex = lexicon ? *lexicon : empty_lexicon;
  std::vector<std::vector<pfl::TaggedToken>> truth;
  truth.reserve(sim.corpus.utterances.size());
  for (const auto& u : sim.corpus.utterances) truth.push_back(u.ref_tokens());

  ojson j;
  j["manifest"] = manifest.to_json();
  j["sim"] = {{"n_utterances", sim.corpus.utterances.size()},
              {"n_words", sim.n_words},
              {"n_fake", sim.n_fake},
              {"fake_ratio",
               sim.n_words > 0 ? static_cast<double>(sim.n_fake) /
                                     static_cast<double>(sim.n_words)
                               : 0.0}};
  j["aggregate"] = {{"policy", o.policy}, {"threshold", o.threshold}};
  j["score"] = score_to_json(score);
  j["patterns"] = {
      {"ground_truth",
       pattern_to_json(pfl::build_pattern_report(truth, lex, o.top),
                       lexicon.has_value())},
      {"predicted",
       pattern_to_json(pfl::build_pattern_report(predicted, lex, o.top),
                       lexicon.has_value())}};
  write_report(o.report, j);
  std::cout << "pipeline: report -> " << o.report << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"word-level fake-speech localization toolkit"};
  app.require_subcommand(1);

  AggregateOpts agg;
  auto* sc_agg = app.add_subcommand(
      "aggregate", "pool frame posteriors into per-word fake decisions");
  sc_agg->add_option("--corpus", agg.corpus, "corpus JSONL with word spans")
      ->required();
  sc_agg->add_option("--policy", agg.policy, "mean|max|median");
  sc_agg->add_option("--threshold", agg.threshold,
                     "fake decision cut, inclusive");
  sc_agg->add_option("--out", agg.out, "tagged-token JSONL output")
      ->required();

  TagOpts tag;
  auto* sc_tag = app.add_subcommand("tag", "[fake]-suffix text codec");
  sc_tag->require_subcommand(1);
  auto* sc_tag_enc = sc_tag->add_subcommand("encode", "tokens -> tagged text");
  auto* sc_tag_dec = sc_tag->add_subcommand("decode", "tagged text -> tokens");
  for (auto* sc : {sc_tag_enc, sc_tag_dec}) {
    sc->add_option("--in", tag.in, "input JSONL")->required();
    sc->add_option("--out", tag.out, "output JSONL")->required();
    sc->add_option("--tag", tag.tag, "marker token");
    sc->add_flag("--case-sensitive", tag.case_sensitive,
                 "match the tag case-sensitively");
  }

  ScoreOpts score;
  auto* sc_score = app.add_subcommand(
      "score", "WER and WordF1 with fake as the positive class");
  sc_score->add_option("--ref", score.ref, "reference corpus or tokens JSONL")
      ->required();
  sc_score->add_option("--hyp", score.hyp, "hypothesis tokens or corpus JSONL")
      ->required();
  sc_score->add_option("--report", score.report, "report JSON path")
      ->required();
  sc_score->add_flag("--no-timestamp", score.no_timestamp,
                     "omit timestamp (golden-file runs)");

  AnalyzeOpts analyze;
  auto* sc_analyze = app.add_subcommand(
      "analyze", "fake-word and fake-phoneme frequency tables");
  auto* opt_corpus =
      sc_analyze->add_option("--corpus", analyze.corpus, "corpus JSONL");
  sc_analyze->add_option("--tokens", analyze.tokens, "tagged-token JSONL")
      ->excludes(opt_corpus);
  sc_analyze->add_option("--labels", analyze.labels,
                         "ground-truth|predicted (corpus input)");
  sc_analyze->add_option("--lexicon", analyze.lexicon, "CMUdict-style lexicon")
      ->required();
  sc_analyze->add_option("--top", analyze.top, "list length k");
  sc_analyze->add_option("--report", analyze.report, "report JSON path")
      ->required();
  sc_analyze->add_flag("--no-timestamp", analyze.no_timestamp,
                       "omit timestamp (golden-file runs)");

  PriorFitOpts pfit;
  PriorApplyOpts papply;
  auto* sc_prior =
      app.add_subcommand("prior", "text-only lexical-prior localizer");
  sc_prior->require_subcommand(1);
  auto* sc_pfit = sc_prior->add_subcommand("fit", "count fake words");
  sc_pfit->add_option("--train", pfit.train, "labeled training corpus JSONL")
      ->required();
  sc_pfit->add_option("--out", pfit.out, "prior JSON path")->required();
  sc_pfit->add_flag("--no-timestamp", pfit.no_timestamp,
                    "omit timestamp (golden-file runs)");
  auto* sc_papply =
      sc_prior->add_subcommand("apply", "tag transcripts from the prior");
  sc_papply->add_option("--prior", papply.prior, "prior JSON path")
      ->required();
  sc_papply->add_option("--corpus", papply.corpus, "corpus JSONL")->required();
  sc_papply->add_option("--theta", papply.theta, "minimum fake count (>= 1)");
  sc_papply->add_option("--out", papply.out, "tagged-token JSONL output")
      ->required();

  SimulateOpts simulate;
  auto* sc_sim = app.add_subcommand(
      "simulate", "generate a synthetic labeled corpus with sidecars");
  sc_sim->add_option("--config", simulate.config, "flat key=value config")
      ->required();
  sc_sim->add_option("--seed", simulate.seed, "override the config seed");
  sc_sim->add_option("--out-dir", simulate.out_dir, "output directory")
      ->required();
  sc_sim->add_option("--jobs", simulate.jobs, "worker threads");
  sc_sim->add_flag("--no-timestamp", simulate.no_timestamp,
                   "omit timestamp (golden-file runs)");

  PipelineOpts pipeline;
  auto* sc_pipe = app.add_subcommand(
      "pipeline", "simulate -> aggregate -> score -> analyze");
  sc_pipe->add_option("--config", pipeline.config, "flat key=value config")
      ->required();
  sc_pipe->add_option("--seed", pipeline.seed, "override the config seed");
  sc_pipe->add_option("--report", pipeline.report, "combined report JSON")
      ->required();
  sc_pipe->add_option("--out-dir", pipeline.out_dir,
                      "directory for intermediate files");
  sc_pipe->add_option("--policy", pipeline.policy, "mean|max|median");
  sc_pipe->add_option("--threshold", pipeline.threshold,
                      "fake decision cut, inclusive");
  sc_pipe->add_option("--top", pipeline.top, "pattern list length k");
  sc_pipe->add_option("--lexicon", pipeline.lexicon,
                      "CMUdict-style lexicon for phoneme tables");
  sc_pipe->add_option("--jobs", pipeline.jobs, "worker threads");
  sc_pipe->add_flag("--no-timestamp", pipeline.no_timestamp,
                    "omit timestamp (golden-file runs)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;  // usage error
  }

  try {
    if (app.got_subcommand(sc_agg)) return run_aggregate(agg);
    if (app.got_subcommand(sc_tag)) {
      if (sc_tag->got_subcommand(sc_tag_enc)) return run_tag_encode(tag);
      return run_tag_decode(tag);
    }
    if (app.got_subcommand(sc_score)) return run_score(score);
    if (app.got_subcommand(sc_analyze)) return run_analyze(analyze);
    if (app.got_subcommand(sc_prior)) {
      if (sc_prior->got_subcommand(sc_pfit)) return run_prior_fit(pfit);
      return run_prior_apply(papply);
    }
    if (app.got_subcommand(sc_sim)) return run_simulate(simulate);
    if (app.got_subcommand(sc_pipe)) return run_pipeline(pipeline);
  } catch (const pfl::Error& e) {
    std::cerr << "pfl: error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "pfl: error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
