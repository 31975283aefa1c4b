//
// Copyright 2026 The cfprobe Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#include "cfprobe/text_util.h"

#include <array>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <utility>

namespace cfprobe {
namespace {

bool IsSpace(char c) { return std::isspace(static_cast<unsigned char>(c)); }
bool IsDigit(char c) { return c >= '0' && c <= '9'; }
bool IsAlpha(char c) {
  const auto u = static_cast<unsigned char>(c);
  return std::isalpha(u) || u >= 0x80;
}

constexpr std::array<std::pair<std::string_view, int>, 33> kNumberWords = {{
    {"zero", 0},       {"one", 1},          {"two", 2},
    {"three", 3},      {"four", 4},         {"five", 5},
    {"six", 6},        {"seven", 7},        {"eight", 8},
    {"nine", 9},       {"ten", 10},         {"eleven", 11},
    {"twelve", 12},    {"thirteen", 13},    {"fourteen", 14},
    {"fifteen", 15},   {"sixteen", 16},     {"seventeen", 17},
    {"eighteen", 18},  {"nineteen", 19},    {"twenty", 20},
    {"thirty", 30},    {"forty", 40},       {"fifty", 50},
    {"sixty", 60},     {"seventy", 70},     {"eighty", 80},
    {"ninety", 90},    {"hundred", 100},    {"thousand", 1000},
    {"million", 1000000}, {"billion", 1000000000}, {"dozen", 12},
}};

constexpr std::array<std::string_view, 12> kMonths = {
    "January", "February", "March",     "April",   "May",      "June",
    "July",    "August",   "September", "October", "November", "December"};

}  // namespace

std::string_view Trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && IsSpace(s[b])) ++b;
  while (e > b && IsSpace(s[e - 1])) --e;
  return s.substr(b, e - b);
}

std::string ToLower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::vector<std::string> Split(std::string_view s, char delim) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(delim, start);
    if (pos == std::string_view::npos) {
      parts.emplace_back(s.substr(start));
      break;
    }
    parts.emplace_back(s.substr(start, pos - start));
    start = pos + 1;
  }
  return parts;
}

std::string NormalizeText(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  bool pending_space = false;
  for (char c : Trim(s)) {
    if (IsSpace(c)) {
      pending_space = true;
      continue;
    }
    if (pending_space) out.push_back(' ');
    pending_space = false;
    out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  return out;
}

bool IsWordChar(char c) { return IsAlpha(c) || IsDigit(c); }

std::vector<Token> ScanTokens(std::string_view text) {
  std::vector<Token> tokens;
  const std::size_t n = text.size();
  std::size_t i = 0;
  while (i < n) {
    const char c = text[i];
    if (IsDigit(c)) {
      const std::size_t begin = i;
      while (i < n && IsDigit(text[i])) ++i;
      // Thousands groups: ",ddd" not followed by another digit.
      while (i + 3 < n && text[i] == ',' && IsDigit(text[i + 1]) &&
             IsDigit(text[i + 2]) && IsDigit(text[i + 3]) &&
             (i + 4 >= n || !IsDigit(text[i + 4]))) {
        i += 4;
      }
      if (i + 1 < n && text[i] == '.' && IsDigit(text[i + 1])) {
        ++i;
        while (i < n && IsDigit(text[i])) ++i;
      }
      if (i < n && IsAlpha(text[i])) {
        while (i < n && IsWordChar(text[i])) ++i;
        tokens.push_back({TokenType::kWord, begin, i, text.substr(begin, i - begin)});
      } else {
        tokens.push_back({TokenType::kNumber, begin, i, text.substr(begin, i - begin)});
      }
      continue;
    }
    if (IsAlpha(c)) {
      const std::size_t begin = i;
      while (i < n) {
        if (IsWordChar(text[i])) {
          ++i;
        } else if ((text[i] == '\'' || text[i] == '-') && i + 1 < n &&
                   IsWordChar(text[i + 1])) {
          ++i;
        } else {
          break;
        }
      }
      tokens.push_back({TokenType::kWord, begin, i, text.substr(begin, i - begin)});
      continue;
    }
    ++i;
  }
  return tokens;
}

bool IsYear(const Token& token) {
  if (token.type != TokenType::kNumber || token.text.size() != 4) return false;
  for (char c : token.text) {
    if (!IsDigit(c)) return false;
  }
  return token.text[0] == '1' || token.text[0] == '2';
}

std::optional<Numeral> ParseNumeral(std::string_view digits) {
  Numeral out;
  std::string plain;
  bool seen_point = false;
  for (char c : digits) {
    if (c == ',') {
      out.grouped = true;
    } else if (c == '.') {
      if (seen_point) return std::nullopt;
      seen_point = true;
      plain.push_back(c);
    } else if (IsDigit(c)) {
      if (seen_point) ++out.decimals;
      plain.push_back(c);
    } else {
      return std::nullopt;
    }
  }
  if (plain.empty() || plain == ".") return std::nullopt;
  out.value = std::stod(plain);
  return out;
}

std::string FormatNumeral(double value, int decimals, bool grouped) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", decimals, value);
  std::string s(buf);
  if (!grouped) return s;
  std::size_t point = s.find('.');
  if (point == std::string::npos) point = s.size();
  const std::size_t first_digit = (s[0] == '-') ? 1 : 0;
  std::string out = s.substr(point);
  std::size_t count = 0;
  for (std::size_t i = point; i > first_digit; --i) {
    if (count > 0 && count % 3 == 0) out.insert(out.begin(), ',');
    out.insert(out.begin(), s[i - 1]);
    ++count;
  }
  if (first_digit == 1) out.insert(out.begin(), '-');
  return out;
}

std::optional<int> NumberWordValue(std::string_view word) {
  const std::string lowered = ToLower(word);
  for (const auto& [name, value] : kNumberWords) {
    if (lowered == name) return value;
  }
  return std::nullopt;
}

std::optional<std::string> NumberWordFor(int value) {
  for (const auto& [name, v] : kNumberWords) {
    if (v == value && name != "dozen") return std::string(name);
  }
  return std::nullopt;
}

std::optional<int> MonthIndex(std::string_view word) {
  for (std::size_t i = 0; i < kMonths.size(); ++i) {
    if (word == kMonths[i]) return static_cast<int>(i);
  }
  return std::nullopt;
}

std::string_view MonthName(int index) {
  return kMonths[static_cast<std::size_t>(((index % 12) + 12) % 12)];
}

std::optional<int> OrdinalValue(std::string_view word) {
  std::size_t i = 0;
  while (i < word.size() && IsDigit(word[i])) ++i;
  if (i == 0 || i + 2 != word.size()) return std::nullopt;
  const std::string suffix = ToLower(word.substr(i));
  if (suffix != "st" && suffix != "nd" && suffix != "rd" && suffix != "th") {
    return std::nullopt;
  }
  return std::stoi(std::string(word.substr(0, i)));
}

std::string OrdinalFor(int value) {
  const int mod100 = value % 100;
  const int mod10 = value % 10;
  std::string suffix = "th";
  if (mod100 < 11 || mod100 > 13) {
    if (mod10 == 1) suffix = "st";
    if (mod10 == 2) suffix = "nd";
    if (mod10 == 3) suffix = "rd";
  }
  return std::to_string(value) + suffix;
}

std::string CapitalizeFirst(std::string_view s) {
  std::string out(s);
  if (!out.empty()) {
    out[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(out[0])));
  }
  return out;
}

std::string LowercaseFirst(std::string_view s) {
  std::string out(s);
  if (!out.empty()) {
    out[0] = static_cast<char>(std::tolower(static_cast<unsigned char>(out[0])));
  }
  return out;
}

char TrailingTerminator(std::string_view s) {
  s = Trim(s);
  if (s.empty()) return 0;
  const char last = s.back();
  return (last == '.' || last == '!' || last == '?') ? last : 0;
}

std::uint64_t Fnv1a64(std::string_view data, std::uint64_t basis) {
  std::uint64_t h = basis;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t SplitMix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::string HexU64(std::uint64_t value) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(value));
  return buf;
}

}  // namespace cfprobe
