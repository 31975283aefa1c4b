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

#include "cfprobe/confidence_backend.h"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <thread>
#include <unordered_map>
#include <utility>

#include "cfprobe/errors.h"
#include "cfprobe/text_util.h"
#include "json.hpp"

namespace cfprobe {
namespace {

using nlohmann::json;

constexpr std::string_view kUnparseablePrefix = "UNPARSEABLE: ";

double Clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

// Holds one slot of the in-flight limiter for the lifetime of a call.
class InFlightGuard {
 public:
  explicit InFlightGuard(std::counting_semaphore<1024>& sem) : sem_(sem) {
    sem_.acquire();
  }
  ~InFlightGuard() { sem_.release(); }
  InFlightGuard(const InFlightGuard&) = delete;
  InFlightGuard& operator=(const InFlightGuard&) = delete;

 private:
  std::counting_semaphore<1024>& sem_;
};

ConfidenceMethod ParseMethod(std::string_view s) {
  return s == "mock" ? ConfidenceMethod::kMock : ConfidenceMethod::kVerbalized;
}

ConfidenceScore FromRecord(const CacheRecord& record, bool cached) {
  ConfidenceScore score;
  score.value = record.value;
  score.raw = record.raw;
  score.method = record.method;
  score.cached = cached;
  score.unparseable = record.raw.starts_with(kUnparseablePrefix);
  return score;
}

}  // namespace

void BackendConfig::Validate() const {
  if (!(temperature >= 0.0)) throw InvalidArgument("temperature must be >= 0");
  if (!(generation_temperature >= 0.0)) {
    throw InvalidArgument("generation_temperature must be >= 0");
  }
  if (max_parallel < 1 || max_parallel > 1024) {
    throw InvalidArgument("max_parallel must be in [1, 1024]");
  }
  if (retries < 0) throw InvalidArgument("retries must be >= 0");
  if (!(timeout_seconds > 0.0)) throw InvalidArgument("timeout must be > 0");
  if (!(backoff_initial_seconds >= 0.0)) {
    throw InvalidArgument("backoff_initial_seconds must be >= 0");
  }
}

std::string_view ToString(ConfidenceMethod method) {
  return method == ConfidenceMethod::kMock ? "mock" : "verbalized";
}

std::string ElicitationPrompt(std::string_view statement) {
  std::string prompt(kElicitationInstruction);
  prompt += "\n";
  prompt += Trim(statement);
  return prompt;
}

std::string CacheKey(std::string_view text, std::string_view model_name,
                     double temperature) {
  char temp[32];
  std::snprintf(temp, sizeof(temp), "%.4f", temperature);
  std::string key = NormalizeText(text);
  key += '\x1f';
  key += model_name;
  key += '\x1f';
  key += temp;
  return key;
}

std::optional<double> ParseFirstDecimal(std::string_view reply) {
  const std::size_t n = reply.size();
  for (std::size_t i = 0; i < n; ++i) {
    const bool digit = std::isdigit(static_cast<unsigned char>(reply[i]));
    const bool point_digit = reply[i] == '.' && i + 1 < n &&
                             std::isdigit(static_cast<unsigned char>(reply[i + 1]));
    if (!digit && !point_digit) continue;
    std::size_t j = i;
    while (j < n && std::isdigit(static_cast<unsigned char>(reply[j]))) ++j;
    if (j < n && reply[j] == '.') {
      ++j;
      while (j < n && std::isdigit(static_cast<unsigned char>(reply[j]))) ++j;
    }
    std::string number(reply.substr(i, j - i));
    if (number.back() == '.') number.pop_back();
    double value = std::stod(number);
    if (i > 0 && reply[i - 1] == '-') value = -value;
    return value;
  }
  return std::nullopt;
}

// ---- Mock knowledge base ---------------------------------------------------

void MockKnowledgeBase::Add(std::string_view text, double confidence) {
  entries[NormalizeText(text)] = confidence;
}

void MockKnowledgeBase::AddGenerations(std::string_view statement,
                                       std::vector<std::string> counterfactuals) {
  generations[NormalizeText(statement)] = std::move(counterfactuals);
}

std::optional<double> MockKnowledgeBase::Lookup(std::string_view text) const {
  const auto it = entries.find(NormalizeText(text));
  if (it == entries.end()) return std::nullopt;
  return it->second;
}

void MockKnowledgeBase::Validate() const {
  if (!(default_confidence >= 0.0 && default_confidence <= 1.0)) {
    throw InvalidArgument("default_confidence must be in [0, 1]");
  }
  if (!(jitter >= 0.0 && jitter <= 0.1)) {
    throw InvalidArgument("jitter must be in [0, 0.1]");
  }
  for (const auto& [text, conf] : entries) {
    if (!(conf >= 0.0 && conf <= 1.0)) {
      throw InvalidArgument("confidence for '" + text + "' outside [0, 1]");
    }
  }
}

MockKnowledgeBase MockKnowledgeBase::Parse(std::istream& in) {
  MockKnowledgeBase kb;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (Trim(line).empty()) continue;
    json record;
    try {
      record = json::parse(line);
    } catch (const json::parse_error& e) {
      throw MalformedRecord(line_no, e.what());
    }
    if (!record.is_object()) throw MalformedRecord(line_no, "expected an object");
    if (record.contains("default_confidence")) {
      kb.default_confidence = record["default_confidence"].get<double>();
    }
    if (record.contains("jitter")) kb.jitter = record["jitter"].get<double>();
    if (!record.contains("text")) continue;
    if (!record["text"].is_string()) throw MalformedRecord(line_no, "text must be a string");
    const std::string text = record["text"].get<std::string>();
    if (record.contains("confidence")) {
      if (!record["confidence"].is_number()) {
        throw MalformedRecord(line_no, "confidence must be a number");
      }
      kb.Add(text, record["confidence"].get<double>());
    }
    if (record.contains("counterfactuals")) {
      kb.AddGenerations(text, record["counterfactuals"].get<std::vector<std::string>>());
    }
  }
  kb.Validate();
  return kb;
}

MockKnowledgeBase MockKnowledgeBase::Load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw MissingFile("cannot open mock knowledge base " + path.string());
  return Parse(in);
}

ConfidenceScore MockConfidence(std::string_view text,
                               const MockKnowledgeBase& kb, std::uint64_t seed) {
  const double base = kb.Lookup(text).value_or(kb.default_confidence);
  double value = base;
  if (kb.jitter > 0.0) {
    const std::uint64_t h =
        SplitMix64(Fnv1a64(NormalizeText(text)) ^ SplitMix64(seed));
    const double unit = static_cast<double>(h >> 11) * 0x1.0p-53;  // [0, 1)
    value = base + kb.jitter * (2.0 * unit - 1.0);
  }
  ConfidenceScore score;
  score.value = Clamp01(value);
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", score.value);
  score.raw = buf;
  score.method = ConfidenceMethod::kMock;
  return score;
}

MockBackend::MockBackend(MockKnowledgeBase kb, std::uint64_t seed,
                         std::string model_name)
    : kb_(std::move(kb)), seed_(seed), model_name_(std::move(model_name)) {
  kb_.Validate();
}

ConfidenceScore MockBackend::Estimate(std::string_view text, double /*temperature*/,
                                      std::uint64_t replicate) {
  const std::uint64_t seed =
      replicate == 0 ? seed_ : SplitMix64(seed_ + replicate);
  return MockConfidence(text, kb_, seed);
}

std::string MockBackend::Generate(std::string_view prompt, double /*temperature*/,
                                  std::uint64_t attempt) {
  constexpr std::string_view kMarker = "Statement:";
  std::size_t pos = prompt.find(kMarker);
  if (pos == std::string_view::npos) return "NONE";
  pos += kMarker.size();
  std::size_t end = prompt.find('\n', pos);
  if (end == std::string_view::npos) end = prompt.size();
  const std::string statement = NormalizeText(prompt.substr(pos, end - pos));
  const auto it = kb_.generations.find(statement);
  if (it == kb_.generations.end() || it->second.empty()) return "NONE";
  return it->second[attempt % it->second.size()];
}

// ---- Cache ------------------------------------------------------------------

ResponseCache::ResponseCache(std::optional<std::filesystem::path> path)
    : path_(std::move(path)) {
  if (!path_) return;
  std::ifstream in(*path_);
  if (!in) return;  // created on first append
  std::string line;
  while (std::getline(in, line)) {
    if (Trim(line).empty()) continue;
    json record;
    try {
      record = json::parse(line);
    } catch (const json::parse_error&) {
      continue;  // a torn trailing line from an interrupted run
    }
    if (!record.contains("key")) continue;
    CacheRecord value;
    value.value = record.value("value", 0.0);
    value.raw = record.value("raw", std::string());
    value.method = ParseMethod(record.value("method", std::string("verbalized")));
    std::promise<CacheRecord> ready;
    ready.set_value(std::move(value));
    entries_[record["key"].get<std::string>()] = ready.get_future().share();
  }
}

std::optional<CacheRecord> ResponseCache::Find(const std::string& key) const {
  std::shared_future<CacheRecord> future;
  {
    std::lock_guard lock(mu_);
    const auto it = entries_.find(key);
    if (it == entries_.end()) return std::nullopt;
    future = it->second;
  }
  try {
    return future.get();
  } catch (...) {
    return std::nullopt;
  }
}

std::pair<CacheRecord, bool> ResponseCache::GetOrCompute(
    const std::string& key, const std::function<CacheRecord()>& compute,
    const std::function<bool(const CacheRecord&)>& persist) {
  std::promise<CacheRecord> promise;
  {
    std::unique_lock lock(mu_);
    const auto it = entries_.find(key);
    if (it != entries_.end()) {
      std::shared_future<CacheRecord> future = it->second;
      lock.unlock();
      return {future.get(), true};
    }
    entries_.emplace(key, promise.get_future().share());
  }
  CacheRecord record;
  try {
    record = compute();
  } catch (...) {
    {
      std::lock_guard lock(mu_);
      entries_.erase(key);
    }
    promise.set_exception(std::current_exception());
    throw;
  }
  promise.set_value(record);
  if (persist && !persist(record)) {
    std::lock_guard lock(mu_);
    entries_.erase(key);
  } else {
    Append(key, record);
  }
  return {record, false};
}

std::size_t ResponseCache::size() const {
  std::lock_guard lock(mu_);
  return entries_.size();
}

void ResponseCache::Append(const std::string& key, const CacheRecord& record) {
  if (!path_) return;
  const json line = {{"key", key},
                     {"value", record.value},
                     {"raw", record.raw},
                     {"method", ToString(record.method)}};
  std::lock_guard lock(file_mu_);
  std::ofstream out(*path_, std::ios::app);
  out << line.dump() << '\n';
}

// ---- Service ----------------------------------------------------------------

ConfidenceService::ConfidenceService(std::shared_ptr<ConfidenceBackend> backend,
                                     BackendConfig config)
    : backend_(std::move(backend)),
      config_(std::move(config)),
      cache_(config_.cache_path.empty()
                 ? std::nullopt
                 : std::optional<std::filesystem::path>(config_.cache_path)),
      in_flight_(config_.max_parallel) {
  config_.Validate();
  if (!backend_) throw InvalidArgument("confidence service needs a backend");
}

ConfidenceScore ConfidenceService::Estimate(std::string_view text) {
  if (Trim(text).empty()) throw InvalidArgument("cannot estimate empty text");
  const std::string key = CacheKey(text, backend_->model_name(), config_.temperature);
  auto [record, cached] = cache_.GetOrCompute(
      key,
      [&] {
        InFlightGuard guard(in_flight_);
        backend_calls_.fetch_add(1);
        const ConfidenceScore score =
            backend_->Estimate(text, config_.temperature, 0);
        return CacheRecord{Clamp01(score.value), score.raw, score.method};
      },
      [](const CacheRecord& r) { return !r.raw.starts_with(kUnparseablePrefix); });
  return FromRecord(record, cached);
}

std::vector<BatchItem> ConfidenceService::EstimateBatch(
    std::span<const std::string> texts) {
  std::vector<BatchItem> out(texts.size());
  if (texts.empty()) return out;

  // First occurrence of each normalized text does the work.
  std::vector<std::size_t> first_of(texts.size());
  std::vector<std::size_t> unique;
  std::unordered_map<std::string, std::size_t> seen;
  for (std::size_t i = 0; i < texts.size(); ++i) {
    const auto [it, inserted] = seen.emplace(NormalizeText(texts[i]), i);
    first_of[i] = it->second;
    if (inserted) unique.push_back(i);
  }

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t u = next.fetch_add(1); u < unique.size(); u = next.fetch_add(1)) {
      const std::size_t i = unique[u];
      try {
        out[i].score = Estimate(texts[i]);
      } catch (const std::exception& e) {
        out[i].error = e.what();
        out[i].exception = std::current_exception();
      }
    }
  };
  const std::size_t workers =
      std::min<std::size_t>(static_cast<std::size_t>(config_.max_parallel), unique.size());
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
  }

  for (std::size_t i = 0; i < texts.size(); ++i) {
    if (first_of[i] == i) continue;
    out[i] = out[first_of[i]];
    if (out[i].score) out[i].score->cached = true;
  }
  return out;
}

ConfidenceScore ConfidenceService::Sample(std::string_view text, double temperature,
                                          std::uint64_t replicate) {
  InFlightGuard guard(in_flight_);
  backend_calls_.fetch_add(1);
  ConfidenceScore score = backend_->Estimate(text, temperature, replicate);
  score.value = Clamp01(score.value);
  score.cached = false;
  return score;
}

std::string ConfidenceService::Generate(std::string_view prompt,
                                        std::uint64_t attempt) {
  const std::string key =
      CacheKey(std::string(prompt) + "\x1e" + std::to_string(attempt),
               backend_->model_name(), config_.generation_temperature);
  auto [record, cached] = cache_.GetOrCompute(key, [&] {
    InFlightGuard guard(in_flight_);
    backend_calls_.fetch_add(1);
    return CacheRecord{0.0,
                       backend_->Generate(prompt, config_.generation_temperature, attempt),
                       ConfidenceMethod::kVerbalized};
  });
  return record.raw;
}

}  // namespace cfprobe
