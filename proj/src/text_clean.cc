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

#include "attrank/text_clean.h"

#include <array>
#include <cctype>
#include <regex>
#include <utility>

#include "attrank/common.h"
#include "attrank/utf8.h"

namespace attrank {

namespace {

constexpr std::array<std::pair<std::string_view, char32_t>, 36> kEntities = {{
    {"amp", U'&'},       {"lt", U'<'},        {"gt", U'>'},
    {"quot", U'"'},      {"apos", U'\''},     {"nbsp", U' '},
    {"copy", 0xA9},      {"reg", 0xAE},       {"trade", 0x2122},
    {"deg", 0xB0},       {"times", 0xD7},     {"divide", 0xF7},
    {"hellip", 0x2026},  {"mdash", 0x2014},   {"ndash", 0x2013},
    {"lsquo", 0x2018},   {"rsquo", 0x2019},   {"ldquo", 0x201C},
    {"rdquo", 0x201D},   {"euro", 0x20AC},    {"pound", 0xA3},
    {"yen", 0xA5},       {"cent", 0xA2},      {"middot", 0xB7},
    {"bull", 0x2022},    {"frac12", 0xBD},    {"frac14", 0xBC},
    {"frac34", 0xBE},    {"sup2", 0xB2},      {"sup3", 0xB3},
    {"micro", 0xB5},     {"plusmn", 0xB1},    {"laquo", 0xAB},
    {"raquo", 0xBB},     {"ensp", U' '},      {"emsp", U' '},
}};

constexpr std::array<std::string_view, 33> kBlockTags = {
    "address", "article", "aside",   "blockquote", "br",     "dd",
    "div",     "dl",      "dt",      "fieldset",   "figure", "footer",
    "form",    "h1",      "h2",      "h3",         "h4",     "h5",
    "h6",      "header",  "hr",      "li",         "main",   "nav",
    "ol",      "p",       "pre",     "section",    "table",  "td",
    "th",      "tr",      "ul",
};

bool is_block_tag(std::string_view name) {
  for (std::string_view tag : kBlockTags) {
    if (tag == name) return true;
  }
  return false;
}

bool is_ascii_alpha(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}

bool is_ascii_digit(char c) { return c >= '0' && c <= '9'; }

// Decodes an entity starting at text[pos] == '&'. On success appends the
// character and returns the number of bytes consumed; 0 otherwise.
std::size_t decode_entity(std::string_view text, std::size_t pos,
                          std::string &out) {
  std::size_t semi = text.find(';', pos + 1);
  if (semi == std::string_view::npos || semi - pos > 12 || semi == pos + 1) {
    return 0;
  }
  std::string_view body = text.substr(pos + 1, semi - pos - 1);
  if (body[0] == '#') {
    bool hex = body.size() > 1 && (body[1] == 'x' || body[1] == 'X');
    std::string_view digits = body.substr(hex ? 2 : 1);
    if (digits.empty()) return 0;
    char32_t cp = 0;
    for (char c : digits) {
      int v;
      if (is_ascii_digit(c)) {
        v = c - '0';
      } else if (hex && std::isxdigit(static_cast<unsigned char>(c))) {
        v = std::tolower(static_cast<unsigned char>(c)) - 'a' + 10;
      } else {
        return 0;
      }
      cp = cp * (hex ? 16 : 10) + static_cast<char32_t>(v);
      if (cp > 0x10FFFF) return 0;
    }
    utf8::append(out, cp == 0xA0 ? U' ' : cp);
    return semi - pos + 1;
  }
  for (const auto &[name, cp] : kEntities) {
    if (name == body) {
      utf8::append(out, cp);
      return semi - pos + 1;
    }
  }
  return 0;
}

// Normalizes the intermediate text: trims lines, collapses horizontal
// whitespace, drops blank lines.
std::string tidy_lines(std::string_view text) {
  std::string out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string line = collapse_whitespace(text.substr(start, end - start));
    if (!line.empty()) {
      if (!out.empty()) out.push_back('\n');
      out += line;
    }
    start = end + 1;
  }
  return out;
}

}  // namespace

std::string strip_html(std::string_view raw) {
  std::string out;
  out.reserve(raw.size());
  std::size_t i = 0;
  while (i < raw.size()) {
    char c = raw[i];
    if (c == '&') {
      std::size_t used = decode_entity(raw, i, out);
      if (used > 0) {
        i += used;
        continue;
      }
      out.push_back(c);
      ++i;
      continue;
    }
    if (c == '\r') {
      out.push_back('\n');
      ++i;
      continue;
    }
    if (c != '<' || i + 1 >= raw.size()) {
      out.push_back(c);
      ++i;
      continue;
    }
    char n = raw[i + 1];
    if (raw.compare(i, 4, "<!--") == 0) {
      std::size_t close = raw.find("-->", i + 4);
      i = close == std::string_view::npos ? raw.size() : close + 3;
      out.push_back('\n');
      continue;
    }
    if (!(is_ascii_alpha(n) || n == '/' || n == '!' || n == '?')) {
      out.push_back(c);
      ++i;
      continue;
    }
    std::size_t close = raw.find('>', i + 1);
    if (close == std::string_view::npos) {
      out.push_back(c);
      ++i;
      continue;
    }
    std::size_t name_start = i + 1 + (n == '/' ? 1 : 0);
    std::size_t name_end = name_start;
    while (name_end < close && (is_ascii_alpha(raw[name_end]) ||
                                is_ascii_digit(raw[name_end]))) {
      ++name_end;
    }
    std::string name =
        case_fold(raw.substr(name_start, name_end - name_start));
    i = close + 1;
    if (n != '/' && (name == "script" || name == "style")) {
      std::string closing = "</" + name;
      std::string lowered = case_fold(raw.substr(i));
      std::size_t end = lowered.find(closing);
      if (end == std::string::npos) {
        i = raw.size();
      } else {
        std::size_t gt = raw.find('>', i + end);
        i = gt == std::string_view::npos ? raw.size() : gt + 1;
      }
      out.push_back('\n');
      continue;
    }
    if (is_block_tag(name)) out.push_back('\n');
  }
  return tidy_lines(out);
}

const char *to_string(DiscardReason reason) {
  switch (reason) {
    case DiscardReason::kNone:
      return "kept";
    case DiscardReason::kEmpty:
      return "empty";
    case DiscardReason::kNonEnglish:
      return "non_english";
    case DiscardReason::kSpam:
      return "spam";
  }
  return "unknown";
}

double latin_letter_fraction(std::string_view text) {
  std::size_t letters = 0;
  std::size_t latin = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    char32_t cp = utf8::next(text, pos);
    if (!utf8::is_letter(cp)) continue;
    ++letters;
    if (utf8::is_basic_latin_letter(cp)) ++latin;
  }
  if (letters == 0) return 0.0;
  return static_cast<double>(latin) / static_cast<double>(letters);
}

int count_urls(std::string_view text) {
  static const std::regex kUrl(R"((https?://|www\.)[^\s]+)",
                               std::regex::icase);
  std::string s(text);
  return static_cast<int>(std::distance(
      std::sregex_iterator(s.begin(), s.end(), kUrl), std::sregex_iterator()));
}

int longest_char_run(std::string_view text) {
  int best = 0;
  int run = 0;
  char32_t previous = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    char32_t cp = utf8::next(text, pos);
    if (cp == U' ' || cp == U'\t' || cp == U'\n') {
      run = 0;
      previous = 0;
      continue;
    }
    run = (cp == previous) ? run + 1 : 1;
    previous = cp;
    if (run > best) best = run;
  }
  return best;
}

FilterDecision filter_invalid(std::string_view text,
                              const FilterConfig &config) {
  if (trim(text).empty()) return {false, DiscardReason::kEmpty};
  if (latin_letter_fraction(text) < config.min_latin_fraction) {
    return {false, DiscardReason::kNonEnglish};
  }
  if (count_urls(text) >= config.max_urls ||
      longest_char_run(text) >= config.max_char_run) {
    return {false, DiscardReason::kSpam};
  }
  return {};
}

std::vector<std::string> split_sentences(std::string_view text) {
  std::vector<std::string> sentences;
  std::string current;
  auto flush = [&] {
    std::string_view fragment = trim(current);
    if (!fragment.empty()) sentences.emplace_back(fragment);
    current.clear();
  };
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    bool numeric_separator =
        (c == '.' || c == ',') && i > 0 && i + 1 < text.size() &&
        is_ascii_digit(text[i - 1]) && is_ascii_digit(text[i + 1]);
    bool boundary = !numeric_separator &&
                    (c == '.' || c == '!' || c == '?' || c == ';' ||
                     c == '\n' || c == '\r');
    if (boundary) {
      flush();
    } else {
      current.push_back(c);
    }
  }
  flush();
  return sentences;
}

}  // namespace attrank
