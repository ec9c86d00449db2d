// pfl/tagcodec.hpp

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

#ifndef PFL_TAGCODEC_HPP_
#define PFL_TAGCODEC_HPP_

#include <string>
#include <string_view>
#include <vector>

#include "pfl/core.hpp"

namespace pfl {

// The marker convention: the tag is attached immediately after each word
// judged fake ("the weather terrible [fake]").
struct TagConfig {
  std::string tag = "[fake]";           // non-empty, no whitespace
  bool case_insensitive_parse = true;   // accept "[FAKE]" on decode
};

struct DecodeWarnings {
  int leading_tags = 0;    // tag with no preceding word, dropped
  int duplicate_tags = 0;  // extra tag on an already-tagged word, dropped
  int total() const { return leading_tags + duplicate_tags; }

  bool operator==(const DecodeWarnings&) const = default;
};

struct DecodeResult {
  std::vector<TaggedToken> tokens;
  DecodeWarnings warnings;
};

// Joins words with single spaces, each fake word immediately followed by the
// tag. Throws if a token word collides with the tag (ambiguous output).
std::string encode_tags(const std::vector<TaggedToken>& tokens,
                        const TagConfig& cfg = {});

// Whitespace-tokenizes; each tag marks the immediately preceding word fake.
// Words are normalized and punctuation-only tokens dropped. Never fails on
// malformed input: misplaced tags are dropped and counted as warnings, so the
// number of dropped tags always equals (tags in text) - (fake tokens out).
DecodeResult decode_tags(std::string_view text, const TagConfig& cfg = {});

}  // namespace pfl

#endif  // PFL_TAGCODEC_HPP_
