// tests/test_patterns.cpp

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

#include <map>

#include "doctest.h"
#include "pfl/simgen.hpp"
#include "test_util.hpp"

using namespace pfl;
using pfl_test::TempDir;
using pfl_test::write_file;

#ifndef PFL_DATA_DIR
#define PFL_DATA_DIR "data"
#endif

namespace {

// Corpus with hand-placed fake labels; durations are irrelevant here.
Corpus label_corpus(
    const std::vector<std::vector<std::pair<std::string, bool>>>& utts) {
  Corpus c;
  int n = 0;
  for (const auto& words : utts) {
    Utterance u;
    u.id = "u" + std::to_string(++n);
    double t = 0.0;
    for (const auto& [w, fake] : words) {
      u.ref.push_back({{w, t, t + 0.2}, fake});
      t += 0.2;
    }
    c.utterances.push_back(std::move(u));
  }
  return c;
}

}  // namespace

TEST_CASE("lexicon parses CMUdict-style entries") {
  TempDir tmp;
  write_file(tmp.file("lex.txt"),
             ";;; comment line\n"
             "SILVER  S IH1 L V ER0\n"
             "READ R EH1 D\n"
             "READ(2) R IY1 D\n"
             "\n"
             "DON'T  D OW1 N T\n");
  const Lexicon lex = load_lexicon(tmp.file("lex.txt"));
  REQUIRE(lex.find("silver"));
  CHECK(*lex.find("silver") ==
        std::vector<std::string>{"S", "IH", "L", "V", "ER"});
  REQUIRE(lex.find("read"));
  CHECK(*lex.find("read") == std::vector<std::string>{"R", "EH", "D"});
  REQUIRE(lex.find("don't"));
  CHECK(lex.entries.size() == 3);
}

TEST_CASE("lexicon rejects malformed input with line numbers") {
  TempDir tmp;
  SUBCASE("unknown phoneme symbol") {
    write_file(tmp.file("lex.txt"), "GOOD G UH1 D\nBAD B QX1 D\n");
    CHECK_THROWS_WITH_AS(load_lexicon(tmp.file("lex.txt")),
                         doctest::Contains("QX1"), Error);
    CHECK_THROWS_WITH_AS(load_lexicon(tmp.file("lex.txt")),
                         doctest::Contains("line 2"), Error);
  }
  SUBCASE("word without phonemes") {
    write_file(tmp.file("lex.txt"), "LONELY\n");
    CHECK_THROWS_WITH_AS(load_lexicon(tmp.file("lex.txt")),
                         doctest::Contains("line 1"), Error);
  }
  SUBCASE("missing file names the path") {
    CHECK_THROWS_WITH_AS(load_lexicon("/nope/lex.txt"),
                         doctest::Contains("/nope/lex.txt"), Error);
  }
}

TEST_CASE("bundled mini lexicon loads and covers the sim vocabulary") {
  const Lexicon lex =
      load_lexicon(std::filesystem::path(PFL_DATA_DIR) / "minilex.txt");
  REQUIRE(lex.find("silver"));
  CHECK(*lex.find("silver") ==
        std::vector<std::string>{"S", "IH", "L", "V", "ER"});
  for (const auto& w : builtin_vocab()) {
    CAPTURE(w);
    CHECK(lex.find(w) != nullptr);
  }
}

TEST_CASE("top_fake_words counts occurrences of fake-labeled words") {
  // "terrible" fake 5x, "bad" fake 3x, plus real noise.
  Corpus c = label_corpus({
      {{"terrible", true}, {"bad", true}, {"the", false}},
      {{"terrible", true}, {"day", false}, {"bad", true}},
      {{"terrible", true}, {"terrible", true}},
      {{"bad", true}, {"terrible", true}, {"terrible", false}},
  });
  const auto top = top_fake_words(c, 2, LabelSource::kGroundTruth);
  REQUIRE(top.size() == 2);
  CHECK(top[0] == std::pair<std::string, std::int64_t>{"terrible", 5});
  CHECK(top[1] == std::pair<std::string, std::int64_t>{"bad", 3});
  CHECK(top_fake_words(c, 0, LabelSource::kGroundTruth).empty());
}

TEST_CASE("no fake tokens yields an empty table") {
  Corpus c = label_corpus({{{"the", false}, {"day", false}}});
  CHECK(top_fake_words(c, 10, LabelSource::kGroundTruth).empty());
}

TEST_CASE("count ties break lexicographically") {
  Corpus c = label_corpus({
      {{"zeta", true}, {"alpha", true}},
      {{"zeta", true}, {"alpha", true}},
      {{"zeta", true}, {"alpha", true}},
  });
  const auto top = top_fake_words(c, 1, LabelSource::kGroundTruth);
  REQUIRE(top.size() == 1);
  CHECK(top[0].first == "alpha");
}

TEST_CASE("predicted labels come from decoded hyp_text") {
  Corpus c = label_corpus({{{"good", false}, {"day", false}}});
  c.utterances[0].hyp_text = "good [fake] day";
  const auto top = top_fake_words(c, 5, LabelSource::kPredicted);
  REQUIRE(top.size() == 1);
  CHECK(top[0].first == "good");

  Corpus no_hyp = label_corpus({{{"good", false}}});
  CHECK_THROWS_WITH_AS(top_fake_words(no_hyp, 5, LabelSource::kPredicted),
                       doctest::Contains("hyp_text"), Error);
}

TEST_CASE("phoneme counts respect multiplicity") {
  TempDir tmp;
  write_file(tmp.file("lex.txt"),
             "SILVER  S IH1 L V ER0\nBANANA B AH0 N AE1 N AH0\n");
  const Lexicon lex = load_lexicon(tmp.file("lex.txt"));

  SUBCASE("single fake occurrence of silver") {
    Corpus c = label_corpus({{{"silver", true}}});
    const auto pc = top_fake_phonemes(c, lex, 10, LabelSource::kGroundTruth);
    std::map<std::string, std::int64_t> got(pc.top_phonemes.begin(),
                                            pc.top_phonemes.end());
    const std::map<std::string, std::int64_t> expect = {
        {"S", 1}, {"IH", 1}, {"L", 1}, {"V", 1}, {"ER", 1}};
    CHECK(got == expect);
    CHECK(pc.oov_words.empty());
  }
  SUBCASE("banana counts AH and N twice") {
    Corpus c = label_corpus({{{"banana", true}}});
    const auto pc = top_fake_phonemes(c, lex, 10, LabelSource::kGroundTruth);
    REQUIRE(pc.top_phonemes.size() == 4);
    CHECK(pc.top_phonemes[0] ==
          std::pair<std::string, std::int64_t>{"AH", 2});
    CHECK(pc.top_phonemes[1] == std::pair<std::string, std::int64_t>{"N", 2});
    CHECK(pc.top_phonemes[2] == std::pair<std::string, std::int64_t>{"AE", 1});
    CHECK(pc.top_phonemes[3] == std::pair<std::string, std::int64_t>{"B", 1});
  }
  SUBCASE("all fake words OOV") {
    Corpus c = label_corpus({{{"zzz", true}, {"qqq", true}, {"zzz", true}}});
    const auto pc = top_fake_phonemes(c, lex, 10, LabelSource::kGroundTruth);
    CHECK(pc.top_phonemes.empty());
    REQUIRE(pc.oov_words.size() == 2);
    CHECK(pc.oov_words[0] == std::pair<std::string, std::int64_t>{"zzz", 2});
    CHECK(pc.oov_words[1] == std::pair<std::string, std::int64_t>{"qqq", 1});
  }
}

TEST_CASE("pattern tables match a brute-force recount on generated corpora") {
  SimConfig cfg;
  cfg.n_utterances = 120;
  cfg.edit_rate = 0.5;
  cfg.edit_vocab = {{"good", "terrible"}, {"happy", "sad"},
                    {"like", "dislike"}, {"great", "awful"}};
  cfg.seed = 404;
  const Corpus c = generate_corpus(cfg);
  const Lexicon lex =
      load_lexicon(std::filesystem::path(PFL_DATA_DIR) / "minilex.txt");

  // Independent recount.
  std::map<std::string, std::int64_t> words;
  std::map<std::string, std::int64_t> phonemes;
  std::int64_t pron_len_sum = 0;
  for (const auto& u : c.utterances) {
    for (const auto& rw : u.ref) {
      if (!rw.is_fake) continue;
      ++words[rw.span.word];
      const auto* pron = lex.find(rw.span.word);
      REQUIRE(pron);
      pron_len_sum += static_cast<std::int64_t>(pron->size());
      for (const auto& ph : *pron) ++phonemes[ph];
    }
  }
  const std::size_t all = words.size() + phonemes.size() + 8;
  CHECK(top_fake_words(c, all, LabelSource::kGroundTruth) ==
        rank_counts(words, all));
  const auto pc = top_fake_phonemes(c, lex, all, LabelSource::kGroundTruth);
  CHECK(pc.top_phonemes == rank_counts(phonemes, all));
  CHECK(pc.oov_words.empty());

  std::int64_t phoneme_total = 0;
  for (const auto& [ph, n] : pc.top_phonemes) phoneme_total += n;
  CHECK(phoneme_total == pron_len_sum);
}

TEST_CASE("fit_lexical_prior counts fake occurrences") {
  Corpus c = label_corpus({
      {{"terrible", true}, {"day", false}},
      {{"terrible", true}, {"terrible", true}},
      {{"terrible", true}, {"terrible", true}, {"sad", true}},
  });
  const WordPrior prior = fit_lexical_prior(c);
  CHECK(prior.counts.at("terrible") == 5);
  CHECK(prior.counts.at("sad") == 1);
  CHECK(prior.counts.count("day") == 0);
  CHECK(prior.total_fake == 6);
  CHECK(prior.total_words == 7);

  CHECK_THROWS_AS(fit_lexical_prior(Corpus{}), Error);
}

TEST_CASE("prior files round trip") {
  TempDir tmp;
  Corpus c = label_corpus({{{"terrible", true}, {"day", false}}});
  const WordPrior prior = fit_lexical_prior(c);
  write_word_prior(prior, tmp.file("p.json"));
  CHECK(load_word_prior(tmp.file("p.json")) == prior);
}

TEST_CASE("prior loader rejects inconsistent totals") {
  TempDir tmp;
  write_file(tmp.file("p.json"),
             R"({"total_fake": 3, "total_words": 10, "counts": {"bad": 1}})");
  CHECK_THROWS_WITH_AS(load_word_prior(tmp.file("p.json")),
                       doctest::Contains("inconsistent"), Error);
  write_file(tmp.file("p2.json"),
             R"({"total_fake": 1, "total_words": 0, "counts": {"bad": 1}})");
  CHECK_THROWS_AS(load_word_prior(tmp.file("p2.json")), Error);
}

TEST_CASE("apply_lexical_prior marks words reaching theta") {
  WordPrior prior;
  prior.counts = {{"terrible", 5}};
  prior.total_fake = 5;
  prior.total_words = 50;

  const auto tokens =
      apply_lexical_prior(prior, {"the", "day", "was", "terrible"}, 1);
  REQUIRE(tokens.size() == 4);
  CHECK(tokens[3].is_fake);
  CHECK(!tokens[0].is_fake);
  CHECK(!tokens[1].is_fake);
  CHECK(!tokens[2].is_fake);

  // theta above every count: all real.
  for (const auto& t :
       apply_lexical_prior(prior, {"the", "terrible"}, 100)) {
    CHECK_FALSE(t.is_fake);
  }
  CHECK_THROWS_AS(apply_lexical_prior(prior, {"x"}, 0), Error);
}

TEST_CASE("apply is monotone in theta") {
  Corpus c = label_corpus({
      {{"terrible", true}, {"sad", true}, {"day", false}},
      {{"terrible", true}, {"night", false}},
  });
  const WordPrior prior = fit_lexical_prior(c);
  const std::vector<std::string> transcript = {"terrible", "sad", "day",
                                               "night"};
  auto fakes = [&](std::int64_t theta) {
    int n = 0;
    for (const auto& t : apply_lexical_prior(prior, transcript, theta)) {
      n += t.is_fake;
    }
    return n;
  };
  for (std::int64_t theta = 1; theta < 5; ++theta) {
    CHECK(fakes(theta) >= fakes(theta + 1));
  }
}

TEST_CASE("fit then apply recovers every repeated fake word on train") {
  SimConfig cfg;
  cfg.n_utterances = 80;
  cfg.edit_rate = 0.4;
  cfg.edit_vocab = {{"good", "terrible"}, {"nice", "nasty"}};
  cfg.seed = 11;
  const Corpus train = generate_corpus(cfg);
  const WordPrior prior = fit_lexical_prior(train);
  std::int64_t tp = 0, fn = 0;
  for (const auto& u : train.utterances) {
    const auto tokens = apply_lexical_prior(prior, u.ref_words(), 1);
    REQUIRE(tokens.size() == u.ref.size());
    for (std::size_t i = 0; i < tokens.size(); ++i) {
      if (u.ref[i].is_fake) {
        (tokens[i].is_fake ? tp : fn) += 1;
      }
    }
  }
  CHECK(fn == 0);  // every fake word appears fake at least once, by fitting
  CHECK(tp == prior.total_fake);
}

TEST_CASE("a disjoint edit vocabulary collapses the prior to all-real") {
  SimConfig train_cfg;
  train_cfg.n_utterances = 60;
  train_cfg.edit_rate = 0.5;
  train_cfg.edit_vocab = {{"good", "terrible"}, {"happy", "sad"}};
  train_cfg.seed = 21;
  const WordPrior prior = fit_lexical_prior(generate_corpus(train_cfg));

  SimConfig test_cfg = train_cfg;
  test_cfg.edit_vocab = {{"calm", "furious"}, {"bright", "gloomy"}};
  test_cfg.seed = 22;
  const Corpus other = generate_corpus(test_cfg);
  for (const auto& u : other.utterances) {
    for (const auto& t : apply_lexical_prior(prior, u.ref_words(), 1)) {
      CHECK_FALSE(t.is_fake);
    }
  }
}
