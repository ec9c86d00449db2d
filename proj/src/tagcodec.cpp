// tagcodec.cpp

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

#include "pfl/tagcodec.hpp"

#include <cctype>

namespace pfl {

namespace {

void validate_config(const TagConfig& cfg) {
  if (cfg.tag.empty()) throw Error("tag config: tag must be non-empty");
  for (unsigned char c : cfg.tag) {
    if (std::isspace(c)) throw Error("tag config: tag contains whitespace");
  }
}

bool equals_ci(std::string_view a, std::string_view b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::tolower(static_cast<unsigned char>(a[i])) !=
        std::tolower(static_cast<unsigned char>(b[i]))) {
      return false;
    }
  }
  return true;
}

bool matches_tag(std::string_view tok, const TagConfig& cfg) {
  return cfg.case_insensitive_parse ? equals_ci(tok, cfg.tag)
                                    : tok == cfg.tag;
}

}  // namespace

std::string encode_tags(const std::vector<TaggedToken>& tokens,
                        const TagConfig& cfg) {
  validate_config(cfg);
  std::string out;
  for (const auto& t : tokens) {
    if (matches_tag(t.word, cfg)) {
      throw Error("encode: token word \"" + t.word +
                  "\" collides with the tag \"" + cfg.tag + "\"");
    }
    if (!out.empty()) out.push_back(' ');
    out += t.word;
    if (t.is_fake) {
      out.push_back(' ');
      out += cfg.tag;
    }
  }
  return out;
}

DecodeResult decode_tags(std::string_view text, const TagConfig& cfg) {
  validate_config(cfg);
  DecodeResult r;
  std::size_t i = 0;
  const std::size_t n = text.size();
  while (i < n) {
    while (i < n && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    std::size_t j = i;
    while (j < n && !std::isspace(static_cast<unsigned char>(text[j]))) ++j;
    if (j == i) break;
    const std::string_view tok = text.substr(i, j - i);
    i = j;

    std::string word;
    bool is_tag = matches_tag(tok, cfg);
    if (!is_tag) {
      word = normalize_word(tok);
      if (word.empty()) continue;  // punctuation-only token
      // A normalized word that collapses onto the tag (possible with an
      // unbracketed custom tag like "fake.") still counts as a tag.
      is_tag = matches_tag(word, cfg);
    }
    if (is_tag) {
      if (r.tokens.empty()) {
        ++r.warnings.leading_tags;
      } else if (r.tokens.back().is_fake) {
        ++r.warnings.duplicate_tags;
      } else {
        r.tokens.back().is_fake = true;
      }
      continue;
    }
    r.tokens.push_back({std::move(word), false});
  }
  return r;
}

}  // namespace pfl
