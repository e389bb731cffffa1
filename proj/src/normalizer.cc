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

#include "attrank/normalizer.h"

#include <algorithm>

#include "attrank/common.h"
#include "attrank/utf8.h"

namespace attrank {

namespace {

bool is_digit(char32_t c) { return c >= U'0' && c <= U'9'; }

bool is_operator(char32_t c) {
  return c == U'x' || c == U'*' || c == U'/' || c == 0xD7 || c == U'+' ||
         c == U'-' || c == U'^' || c == U':';
}

// Parses digits ([.,] digits)* (e [+-]? digits)? starting at pos (a digit).
std::size_t scan_number(const std::u32string &s, std::size_t pos) {
  while (pos < s.size() && is_digit(s[pos])) ++pos;
  while (pos + 1 < s.size() && (s[pos] == U'.' || s[pos] == U',') &&
         is_digit(s[pos + 1])) {
    pos += 1;
    while (pos < s.size() && is_digit(s[pos])) ++pos;
  }
  if (pos < s.size() && s[pos] == U'e') {
    std::size_t p = pos + 1;
    if (p < s.size() && (s[p] == U'+' || s[p] == U'-')) ++p;
    if (p < s.size() && is_digit(s[p])) {
      while (p < s.size() && is_digit(s[p])) ++p;
      pos = p;
    }
  }
  return pos;
}

// A full arithmetic expression: number (operator number)*.
std::size_t scan_expression(const std::u32string &s, std::size_t pos) {
  pos = scan_number(s, pos);
  while (pos + 1 < s.size() && is_operator(s[pos]) && is_digit(s[pos + 1])) {
    pos = scan_number(s, pos + 1);
  }
  return pos;
}

std::string without_carets(std::string_view token) {
  std::string out;
  for (char c : token) {
    if (c != '^') out.push_back(c);
  }
  return out;
}

}  // namespace

StopWordList::StopWordList(const std::vector<std::string> &words) {
  for (const std::string &word : words) {
    std::string folded = case_fold(trim(word));
    if (!folded.empty()) words_.insert(std::move(folded));
  }
}

StopWordList StopWordList::load(const std::string &path) {
  return StopWordList(read_lines(path));
}

UnitLexicon::UnitLexicon(const std::vector<std::string> &entries) {
  for (const std::string &entry : entries) {
    std::vector<std::string> fields = split_whitespace(case_fold(entry));
    if (fields.size() < 2) {
      throw DataError("unit entry needs a surface form and a canonical form: " +
                      entry);
    }
    std::string key = without_carets(fields.front());
    fields.erase(fields.begin());
    units_[key] = std::move(fields);
  }
  for (const auto &[key, canonical] : units_) {
    for (const std::string &token : canonical) {
      auto it = units_.find(token);
      if (it != units_.end() &&
          it->second != std::vector<std::string>{token}) {
        throw DataError("canonical unit token \"" + token +
                        "\" is itself a unit key");
      }
    }
  }
}

UnitLexicon UnitLexicon::load(const std::string &path) {
  return UnitLexicon(read_lines(path));
}

const std::vector<std::string> *UnitLexicon::find(
    std::string_view surface) const {
  auto it = units_.find(surface);
  if (it == units_.end() && surface.find('^') != std::string_view::npos) {
    it = units_.find(without_carets(surface));
  }
  return it == units_.end() ? nullptr : &it->second;
}

std::set<std::string> UnitLexicon::canonical_tokens() const {
  std::set<std::string> tokens;
  for (const auto &[key, canonical] : units_) {
    tokens.insert(canonical.begin(), canonical.end());
  }
  return tokens;
}

bool has_digit(std::string_view token) {
  return std::any_of(token.begin(), token.end(),
                     [](char c) { return c >= '0' && c <= '9'; });
}

std::vector<std::string> tokenize(std::string_view text) {
  static const std::u32string kPlaceholder = U"#number#";
  std::u32string s = utf8::decode(text);
  std::vector<std::string> tokens;
  std::size_t i = 0;
  while (i < s.size()) {
    if (s.compare(i, kPlaceholder.size(), kPlaceholder) == 0) {
      tokens.emplace_back(kNumberToken);
      i += kPlaceholder.size();
      continue;
    }
    if (!utf8::is_word_char(s[i])) {
      ++i;
      continue;
    }
    std::u32string current;
    while (i < s.size()) {
      char32_t c = s[i];
      if (utf8::is_word_char(c)) {
        current.push_back(c);
        ++i;
        continue;
      }
      if (i + 1 >= s.size() || !is_digit(s[i + 1])) break;
      char32_t prev = current.back();
      bool keep = false;
      if ((c == U'.' || c == U',' || c == U'/' || c == U'*' || c == U'+' ||
           c == U'-' || c == U':') &&
          is_digit(prev)) {
        keep = true;
      } else if ((c == U'+' || c == U'-') && prev == U'e' &&
                 current.size() >= 2 && is_digit(current[current.size() - 2])) {
        keep = true;
      } else if (c == U'^') {
        keep = true;
      }
      if (!keep) break;
      current.push_back(c);
      ++i;
    }
    tokens.push_back(utf8::encode(current));
  }
  return tokens;
}

Normalizer::Normalizer(StopWordList stop_words, UnitLexicon units)
    : stop_words_(std::move(stop_words)), units_(std::move(units)) {}

Normalizer::Normalizer(StopWordList stop_words, UnitLexicon units,
                       Vocabulary vocab, std::size_t min_correct_length)
    : stop_words_(std::move(stop_words)), units_(std::move(units)) {
  for (const std::string &token : units_.canonical_tokens()) {
    vocab.try_emplace(token, 0);
  }
  for (auto it = vocab.begin(); it != vocab.end();) {
    if (!vocabulary_candidate(it->first) &&
        units_.canonical_tokens().count(it->first) == 0) {
      it = vocab.erase(it);
    } else {
      ++it;
    }
  }
  speller_.emplace(vocab, min_correct_length);
}

void Normalizer::memoize_corrections(const std::vector<std::string> &tokens) {
  if (!speller_) return;
  for (const std::string &token : tokens) {
    if (corrections_.count(token) > 0) continue;
    corrections_.emplace(token, speller_->correct(token));
  }
}

bool Normalizer::vocabulary_candidate(std::string_view token) const {
  if (token.empty() || token == kNumberToken) return false;
  if (has_digit(token) || token.find('#') != std::string_view::npos) {
    return false;
  }
  return !units_.contains(token);
}

bool Normalizer::unit_needs_number(std::string_view key) const {
  return utf8::decode(key).size() == 1 || stop_words_.contains(key);
}

void Normalizer::expand_numeric(std::string_view token,
                                std::vector<std::string> &out) const {
  std::u32string s = utf8::decode(token);
  std::size_t pos = 0;
  while (pos < s.size()) {
    if (is_digit(s[pos])) {
      pos = scan_expression(s, pos);
      out.emplace_back(kNumberToken);
      continue;
    }
    // Longest unit key that ends the token or is followed by a digit.
    std::size_t end = pos;
    while (end < s.size() && !is_digit(s[end])) ++end;
    std::size_t matched = 0;
    for (std::size_t stop = s.size(); stop > pos; --stop) {
      if (stop < s.size() && !is_digit(s[stop])) continue;
      std::string candidate = utf8::encode(s.substr(pos, stop - pos));
      if (units_.contains(candidate)) {
        matched = stop;
        break;
      }
    }
    if (matched > 0) {
      out.push_back(utf8::encode(s.substr(pos, matched - pos)));
      pos = matched;
    } else {
      std::string run = utf8::encode(s.substr(pos, end - pos));
      if (run != "^") out.push_back(std::move(run));
      pos = end;
    }
  }
}

std::vector<std::string> Normalizer::number_tokens(
    std::string_view sentence) const {
  std::vector<std::string> out;
  for (std::string &token : tokenize(case_fold(sentence))) {
    if (!token.empty() && token[0] >= '0' && token[0] <= '9') {
      expand_numeric(token, out);
    } else {
      out.push_back(std::move(token));
    }
  }
  return out;
}

std::vector<std::string> Normalizer::normalize(
    std::string_view sentence) const {
  std::vector<std::string> tokens = number_tokens(sentence);
  if (speller_) {
    for (std::string &token : tokens) {
      if (token == kNumberToken || has_digit(token) ||
          units_.contains(token) || stop_words_.contains(token)) {
        continue;
      }
      auto memo = corrections_.find(token);
      token = memo != corrections_.end() ? memo->second
                                         : speller_->correct(token);
    }
  }
  std::vector<std::string> out;
  out.reserve(tokens.size());
  auto emit = [&](const std::string &token) {
    if (token == kNumberToken && !out.empty() && out.back() == kNumberToken) {
      return;
    }
    out.push_back(token);
  };
  for (const std::string &token : tokens) {
    if (const std::vector<std::string> *canonical = units_.find(token)) {
      bool after_number = !out.empty() && out.back() == kNumberToken;
      if (after_number || !unit_needs_number(token)) {
        for (const std::string &part : *canonical) emit(part);
        continue;
      }
    }
    if (stop_words_.contains(token)) continue;
    emit(token);
  }
  return out;
}

}  // namespace attrank
