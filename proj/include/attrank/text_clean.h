// Copyright 2026 The attrank Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef ATTRANK_TEXT_CLEAN_H_
#define ATTRANK_TEXT_CLEAN_H_

#include <string>
#include <string_view>
#include <vector>

namespace attrank {

// Converts HTML to plain text. Block-level tags become line breaks, other
// tags are removed, character entities are decoded, script/style bodies and
// comments are dropped. Lines are trimmed, blank lines removed. A '<' that
// never closes is kept as literal text.
std::string strip_html(std::string_view raw);

enum class DiscardReason { kNone, kEmpty, kNonEnglish, kSpam };

const char *to_string(DiscardReason reason);

struct FilterConfig {
  double min_latin_fraction = 0.6;
  int max_urls = 3;         // discard when url count >= max_urls
  int max_char_run = 10;    // discard when a character repeats this often
};

struct FilterDecision {
  bool keep = true;
  DiscardReason reason = DiscardReason::kNone;
};

FilterDecision filter_invalid(std::string_view text,
                              const FilterConfig &config = {});

// Fraction of alphabetic code points that are basic Latin letters; 0 when
// the text has no letters at all.
double latin_letter_fraction(std::string_view text);

int count_urls(std::string_view text);

// Longest run of one repeated non-space code point.
int longest_char_run(std::string_view text);

// Splits on . ! ? ; and line breaks. A '.' or ',' between two digits is part
// of a number and does not split. Fragments are trimmed; empty ones dropped.
std::vector<std::string> split_sentences(std::string_view text);

}  // namespace attrank

#endif  // ATTRANK_TEXT_CLEAN_H_
