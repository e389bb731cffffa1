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

#ifndef ATTRANK_UTF8_H_
#define ATTRANK_UTF8_H_

#include <string>
#include <string_view>

namespace attrank::utf8 {

// Decodes the code point starting at `pos` and advances `pos`. Invalid bytes
// decode as U+FFFD and consume one byte.
char32_t next(std::string_view text, std::size_t &pos);

void append(std::string &out, char32_t cp);

std::u32string decode(std::string_view text);
std::string encode(std::u32string_view text);

// Letters, digits and word-internal symbols (degree sign, multiplication
// sign, superscripts). Punctuation and symbol blocks are not word characters.
bool is_word_char(char32_t cp);

// Alphabetic code points; basic Latin letters are A-Z and a-z.
bool is_letter(char32_t cp);
inline bool is_basic_latin_letter(char32_t cp) {
  return (cp >= 'a' && cp <= 'z') || (cp >= 'A' && cp <= 'Z');
}

}  // namespace attrank::utf8

#endif  // ATTRANK_UTF8_H_
