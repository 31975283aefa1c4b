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

#ifndef CFPROBE_PROBE_KIND_H_
#define CFPROBE_PROBE_KIND_H_

#include <array>
#include <cstdint>
#include <string_view>
#include <vector>

namespace cfprobe {

// The four dimensions along which a counterfactual probe perturbs a claim.
// Declaration order is the probe cycling order and the tie-break order used
// everywhere a kind must be chosen.
enum class ProbeKind : std::uint8_t {
  kFactual = 0,
  kTemporal = 1,
  kQuantitative = 2,
  kLogical = 3,
};

inline constexpr std::array<ProbeKind, 4> kAllProbeKinds = {
    ProbeKind::kFactual, ProbeKind::kTemporal, ProbeKind::kQuantitative,
    ProbeKind::kLogical};

// Lowercase name ("factual", "temporal", ...), used in every file format.
std::string_view ToString(ProbeKind kind);

// Inverse of ToString. Throws InvalidArgument on unknown names.
ProbeKind ParseProbeKind(std::string_view name);

inline constexpr std::size_t Index(ProbeKind kind) {
  return static_cast<std::size_t>(kind);
}

// Small value-type set of probe kinds backed by a bitmask.
class KindSet {
 public:
  constexpr KindSet() = default;
  constexpr KindSet(std::initializer_list<ProbeKind> kinds) {
    for (ProbeKind k : kinds) Insert(k);
  }

  constexpr void Insert(ProbeKind kind) { bits_ |= Bit(kind); }
  constexpr void Erase(ProbeKind kind) { bits_ &= ~Bit(kind); }
  constexpr bool Contains(ProbeKind kind) const {
    return (bits_ & Bit(kind)) != 0;
  }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr std::size_t size() const {
    std::size_t n = 0;
    for (ProbeKind k : kAllProbeKinds) n += Contains(k) ? 1 : 0;
    return n;
  }

  // Members in enum order.
  std::vector<ProbeKind> ToVector() const;

  friend constexpr bool operator==(KindSet, KindSet) = default;

 private:
  static constexpr std::uint8_t Bit(ProbeKind kind) {
    return static_cast<std::uint8_t>(1u << Index(kind));
  }

  std::uint8_t bits_ = 0;
};

// Parses a comma-separated list of kind names; empty input gives an empty set.
KindSet ParseKindList(std::string_view csv);

}  // namespace cfprobe

#endif  // CFPROBE_PROBE_KIND_H_
