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

#ifndef CFPROBE_TEXT_UTIL_H_
#define CFPROBE_TEXT_UTIL_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cfprobe {

std::string_view Trim(std::string_view s);
std::string ToLower(std::string_view s);
std::vector<std::string> Split(std::string_view s, char delim);

// Case-folds ASCII letters, collapses whitespace runs to one space and trims.
// Used for deduplication and cache keys.
std::string NormalizeText(std::string_view s);

bool IsWordChar(char c);

enum class TokenType { kWord, kNumber };

// A word or numeral with its byte offsets in the scanned text. Numerals are
// digit runs with optional thousands groups ("7,000") and a fraction
// ("3.5"); a digit run glued to letters ("19th") is a word.
struct Token {
  TokenType type;
  std::size_t begin;
  std::size_t end;
  std::string_view text;
};

std::vector<Token> ScanTokens(std::string_view text);

// Four plain digits in [1000, 2999].
bool IsYear(const Token& token);

struct Numeral {
  double value = 0.0;
  int decimals = 0;
  bool grouped = false;  // thousands separators present
};

std::optional<Numeral> ParseNumeral(std::string_view digits);
std::string FormatNumeral(double value, int decimals, bool grouped);

// Spelled-out number words ("four", "twenty", "hundred"); case-insensitive.
std::optional<int> NumberWordValue(std::string_view word);
// Spelled form for values that have one in the table above.
std::optional<std::string> NumberWordFor(int value);

// 0-based month index for a capitalized English month name.
std::optional<int> MonthIndex(std::string_view word);
std::string_view MonthName(int index);

// Ordinal such as "19th" or "1st"; returns the numeric part.
std::optional<int> OrdinalValue(std::string_view word);
std::string OrdinalFor(int value);

// Replaces the first letter's case. No-op for non-letters.
std::string CapitalizeFirst(std::string_view s);
std::string LowercaseFirst(std::string_view s);

// Sentence terminator at the end of s ('.', '!', '?'), or 0.
char TrailingTerminator(std::string_view s);

std::uint64_t Fnv1a64(std::string_view data,
                      std::uint64_t basis = 0xcbf29ce484222325ULL);
std::uint64_t SplitMix64(std::uint64_t x);
std::string HexU64(std::uint64_t value);

}  // namespace cfprobe

#endif  // CFPROBE_TEXT_UTIL_H_
