// tests/test_scorer.cpp

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
#include <cmath>
#include <random>

#include "doctest.h"

using namespace pfl;

namespace {

using Words = std::vector<std::string>;

// Exhaustive-recursion edit distance, independent of the DP implementation.
int brute_edit_distance(const Words& a, std::size_t i, const Words& b,
                        std::size_t j) {
  if (i == a.size()) return static_cast<int>(b.size() - j);
  if (j == b.size()) return static_cast<int>(a.size() - i);
  int best = brute_edit_distance(a, i + 1, b, j + 1) + (a[i] != b[j]);
  best = std::min(best, brute_edit_distance(a, i + 1, b, j) + 1);
  best = std::min(best, brute_edit_distance(a, i, b, j + 1) + 1);
  return best;
}

int cost_of(const std::vector<AlignmentOp>& ops) {
  int c = 0;
  for (const auto& op : ops) c += (op.kind != EditKind::kMatch);
  return c;
}

// Type invariant: ops visit ref and hyp indices each exactly once, in order.
void check_path(const std::vector<AlignmentOp>& ops, std::size_t n_ref,
                std::size_t n_hyp) {
  std::size_t ri = 0, hi = 0;
  for (const auto& op : ops) {
    switch (op.kind) {
      case EditKind::kMatch:
      case EditKind::kSubstitute:
        REQUIRE(op.ref_index.has_value());
        REQUIRE(op.hyp_index.has_value());
        CHECK(*op.ref_index == ri++);
        CHECK(*op.hyp_index == hi++);
        break;
      case EditKind::kDelete:
        REQUIRE(op.ref_index.has_value());
        CHECK_FALSE(op.hyp_index.has_value());
        CHECK(*op.ref_index == ri++);
        break;
      case EditKind::kInsert:
        REQUIRE(op.hyp_index.has_value());
        CHECK_FALSE(op.ref_index.has_value());
        CHECK(*op.hyp_index == hi++);
        break;
    }
  }
  CHECK(ri == n_ref);
  CHECK(hi == n_hyp);
}

// All sequences over {a, b, c} with length <= max_len.
std::vector<Words> all_sequences(int max_len) {
  std::vector<Words> out = {{}};
  std::vector<Words> frontier = {{}};
  for (int len = 1; len <= max_len; ++len) {
    std::vector<Words> next;
    for (const auto& seq : frontier) {
      for (const char* s : {"a", "b", "c"}) {
        Words w = seq;
        w.push_back(s);
        next.push_back(w);
        out.push_back(std::move(w));
      }
    }
    frontier = std::move(next);
  }
  return out;
}

Words random_words(std::mt19937_64& rng, int max_len, int alphabet) {
  Words w;
  const int n = static_cast<int>(rng() % (max_len + 1));
  for (int i = 0; i < n; ++i) {
    w.push_back(std::string(1, static_cast<char>('a' + rng() % alphabet)));
  }
  return w;
}

std::vector<TaggedToken> tagged(std::initializer_list<const char*> words,
                                std::initializer_list<int> fakes) {
  std::vector<TaggedToken> out;
  for (const char* w : words) out.push_back({w, false});
  for (int i : fakes) out[i].is_fake = true;
  return out;
}

}  // namespace

TEST_CASE("align handles the documented cases") {
  SUBCASE("identity") {
    const auto ops = align({"a", "b", "c"}, {"a", "b", "c"});
    REQUIRE(ops.size() == 3);
    for (const auto& op : ops) CHECK(op.kind == EditKind::kMatch);
  }
  SUBCASE("mixed path under the tie policy") {
    const auto ops = align({"a", "b", "c", "d"}, {"a", "x", "c"});
    REQUIRE(ops.size() == 4);
    CHECK(ops[0].kind == EditKind::kMatch);
    CHECK(ops[1].kind == EditKind::kSubstitute);
    CHECK(ops[2].kind == EditKind::kMatch);
    CHECK(ops[3].kind == EditKind::kDelete);
    CHECK(cost_of(ops) == 2);
  }
  SUBCASE("empty reference") {
    const auto ops = align({}, {"a"});
    REQUIRE(ops.size() == 1);
    CHECK(ops[0].kind == EditKind::kInsert);
    CHECK(*ops[0].hyp_index == 0);
  }
  SUBCASE("both empty") { CHECK(align({}, {}).empty()); }
}

TEST_CASE("align cost equals brute force for short sequences") {
  const auto seqs = all_sequences(3);
  for (const auto& ref : seqs) {
    for (const auto& hyp : seqs) {
      const auto ops = align(ref, hyp);
      CHECK(cost_of(ops) == brute_edit_distance(ref, 0, hyp, 0));
      check_path(ops, ref.size(), hyp.size());
    }
  }
}

TEST_CASE("align cost equals brute force on random length-6 pairs") {
  std::mt19937_64 rng(31337);
  for (int it = 0; it < 2000; ++it) {
    const Words ref = random_words(rng, 6, 3);
    const Words hyp = random_words(rng, 6, 3);
    CHECK(cost_of(align(ref, hyp)) == brute_edit_distance(ref, 0, hyp, 0));
  }
}

TEST_CASE("align paths are valid for long random inputs") {
  std::mt19937_64 rng(4242);
  for (int it = 0; it < 60; ++it) {
    const Words ref = random_words(rng, 200, 4);
    const Words hyp = random_words(rng, 200, 4);
    check_path(align(ref, hyp), ref.size(), hyp.size());
  }
}

TEST_CASE("swapping ref and hyp swaps insertions and deletions") {
  std::mt19937_64 rng(99);
  for (int it = 0; it < 500; ++it) {
    const Words ref = random_words(rng, 12, 3);
    const Words hyp = random_words(rng, 12, 3);
    auto count = [](const std::vector<AlignmentOp>& ops) {
      int sub = 0, ins = 0, del = 0;
      for (const auto& op : ops) {
        sub += op.kind == EditKind::kSubstitute;
        ins += op.kind == EditKind::kInsert;
        del += op.kind == EditKind::kDelete;
      }
      return std::tuple{sub, ins, del};
    };
    const auto [s1, i1, d1] = count(align(ref, hyp));
    const auto [s2, i2, d2] = count(align(hyp, ref));
    CHECK(s1 == s2);
    CHECK(i1 == d2);
    CHECK(d1 == i2);
  }
}

TEST_CASE("wer on the documented cases") {
  CHECK(wer({"a", "b", "c"}, {"a", "b", "c"}) == 0.0);
  // 1 substitution + 1 deletion over 4 reference words.
  CHECK(wer({"a", "b", "c", "d"}, {"a", "x", "c"}) == 0.5);
  CHECK(wer({"a"}, {"a", "b", "c"}) == 2.0);
  CHECK_THROWS_AS(wer({}, {"a"}), Error);
}

TEST_CASE("wer is zero exactly when the sequences match") {
  std::mt19937_64 rng(5);
  for (int it = 0; it < 300; ++it) {
    Words ref = random_words(rng, 10, 3);
    if (ref.empty()) ref.push_back("a");
    const Words hyp = random_words(rng, 10, 3);
    if (wer(ref, hyp) == 0.0) {
      CHECK(ref == hyp);
    } else {
      CHECK(ref != hyp);
    }
    CHECK(wer(ref, ref) == 0.0);
  }
}

TEST_CASE("word_f1 on a perfect prediction") {
  const auto ref = tagged({"w1", "w2", "w3", "w4"}, {2});
  const auto r = word_f1(ref, ref);
  CHECK(r.precision == 1.0);
  CHECK(r.recall == 1.0);
  CHECK(r.word_f1 == 1.0);
  CHECK(r.tp == 1);
  CHECK(r.fp == 0);
  CHECK(r.fn == 0);
  CHECK(r.wer == 0.0);
  CHECK(r.n_scored_words == 4);
}

TEST_CASE("word_f1 collapses to zero when everything is called real") {
  const auto ref = tagged({"w1", "w2", "w3", "w4"}, {2});
  const auto hyp = tagged({"w1", "w2", "w3", "w4"}, {});
  const auto r = word_f1(ref, hyp);
  CHECK(r.recall == 0.0);
  CHECK(r.word_f1 == 0.0);
  CHECK(r.fn == 1);
}

TEST_CASE("word_f1 counts the confusion cells over aligned words") {
  // ref fakes {w3}, hyp fakes {w1, w3}: TP=1, FP=1, FN=0.
  const auto ref = tagged({"w1", "w2", "w3", "w4"}, {2});
  const auto hyp = tagged({"w1", "w2", "w3", "w4"}, {0, 2});
  const auto r = word_f1(ref, hyp);
  CHECK(r.tp == 1);
  CHECK(r.fp == 1);
  CHECK(r.fn == 0);
  CHECK(r.precision == 0.5);
  CHECK(r.recall == 1.0);
  CHECK(r.word_f1 == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("deleted fake reference words count as misses") {
  const auto ref = tagged({"a", "b"}, {0});
  const auto hyp = tagged({"b"}, {});
  const auto r = word_f1(ref, hyp);
  CHECK(r.fn == 1);
  CHECK(r.tp == 0);
  CHECK(r.recall == 0.0);
  CHECK(r.n_del == 1);
}

TEST_CASE("inserted hypothesis words are excluded from F1") {
  const auto ref = tagged({"a"}, {});
  const auto hyp = tagged({"a", "x"}, {1});  // fake tag on an insertion
  const auto r = word_f1(ref, hyp);
  CHECK(r.tp == 0);
  CHECK(r.fp == 0);
  CHECK(r.fn == 0);
  CHECK(r.word_f1 == 0.0);
  CHECK(r.n_ins == 1);
  CHECK(r.n_scored_words == 1);
}

TEST_CASE("labels are compared on substituted pairs too") {
  const auto ref = tagged({"good", "day"}, {0});
  const auto hyp = tagged({"terrible", "day"}, {0});
  const auto r = word_f1(ref, hyp);
  CHECK(r.tp == 1);
  CHECK(r.n_sub == 1);
  CHECK(r.word_f1 == 1.0);  // fake found despite the ASR substitution
}

TEST_CASE("corpus_score pools micro counts") {
  const auto perfect_ref = tagged({"a", "b", "c", "d"}, {1});
  const auto all_real_ref = tagged({"e", "f", "g"}, {0});
  const auto all_real_hyp = tagged({"e", "f", "g"}, {});

  SUBCASE("singleton pooling equals per-pair scoring") {
    const std::vector<TokenPair> pairs = {{perfect_ref, perfect_ref}};
    CHECK(corpus_score(pairs) == word_f1(perfect_ref, perfect_ref));
  }
  SUBCASE("pooled recall over one hit and one miss") {
    const std::vector<TokenPair> pairs = {{perfect_ref, perfect_ref},
                                          {all_real_ref, all_real_hyp}};
    const auto r = corpus_score(pairs);
    CHECK(r.tp == 1);
    CHECK(r.fn == 1);
    CHECK(r.recall == 0.5);
  }
  SUBCASE("duplicating a pair k times changes nothing") {
    const std::vector<TokenPair> once = {{perfect_ref, perfect_ref},
                                         {all_real_ref, all_real_hyp}};
    std::vector<TokenPair> thrice;
    for (int k = 0; k < 3; ++k) {
      thrice.insert(thrice.end(), once.begin(), once.end());
    }
    CHECK(corpus_score(once).word_f1 == corpus_score(thrice).word_f1);
    CHECK(corpus_score(once).recall == corpus_score(thrice).recall);
    CHECK(corpus_score(once).wer == corpus_score(thrice).wer);
  }
  SUBCASE("utterance order does not matter") {
    std::vector<TokenPair> pairs = {{perfect_ref, perfect_ref},
                                    {all_real_ref, all_real_hyp}};
    const auto r1 = corpus_score(pairs);
    std::reverse(pairs.begin(), pairs.end());
    CHECK(corpus_score(pairs) == r1);
  }
  SUBCASE("empty corpus is an error") {
    CHECK_THROWS_AS(corpus_score({}), Error);
  }
  SUBCASE("all-empty references leave WER undefined") {
    const std::vector<TokenPair> pairs = {{{}, tagged({"a"}, {})}};
    CHECK_THROWS_AS(corpus_score(pairs), Error);
  }
}

TEST_CASE("f1 bounds hold on random labeled pairs") {
  std::mt19937_64 rng(2718);
  for (int it = 0; it < 500; ++it) {
    auto mk = [&rng](int max_len) {
      std::vector<TaggedToken> v;
      const int n = static_cast<int>(rng() % (max_len + 1));
      for (int i = 0; i < n; ++i) {
        v.push_back({std::string(1, static_cast<char>('a' + rng() % 3)),
                     (rng() & 3) == 0});
      }
      return v;
    };
    const auto r = word_f1(mk(15), mk(15));
    CHECK(r.precision >= 0.0);
    CHECK(r.precision <= 1.0);
    CHECK(r.recall >= 0.0);
    CHECK(r.recall <= 1.0);
    CHECK(r.word_f1 >= 0.0);
    CHECK(r.word_f1 <= 1.0);
    if (r.tp == 0) CHECK(r.word_f1 == 0.0);
    if (r.word_f1 == 1.0) {
      CHECK(r.tp > 0);
      CHECK(r.fp == 0);
      CHECK(r.fn == 0);
    }
  }
}
