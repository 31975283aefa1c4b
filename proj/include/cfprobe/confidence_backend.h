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

#ifndef CFPROBE_CONFIDENCE_BACKEND_H_
#define CFPROBE_CONFIDENCE_BACKEND_H_

#include <atomic>
#include <exception>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <future>
#include <memory>
#include <mutex>
#include <optional>
#include <semaphore>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace cfprobe {

struct BackendConfig {
  std::string endpoint = "https://api.openai.com/v1/chat/completions";
  std::string model_name = "gpt-4";
  double temperature = 0.1;             // confidence elicitation
  double generation_temperature = 0.7;  // model-generated probes
  int max_parallel = 4;                 // hard bound on in-flight requests
  int retries = 3;
  double timeout_seconds = 30.0;
  double backoff_initial_seconds = 1.0;
  std::string cache_path;  // empty: in-memory cache only

  // Throws InvalidArgument when an invariant is violated.
  void Validate() const;
};

enum class ConfidenceMethod { kVerbalized, kMock };

std::string_view ToString(ConfidenceMethod method);

struct ConfidenceScore {
  double value = 0.5;  // in [0, 1]
  std::string raw;     // verbatim reply; prefixed "UNPARSEABLE: " on fallback
  ConfidenceMethod method = ConfidenceMethod::kVerbalized;
  bool cached = false;
  bool unparseable = false;
};

// Fixed elicitation instruction; the statement follows on its own line.
inline constexpr std::string_view kElicitationInstruction =
    "Rate the probability that the following statement is factually true. "
    "Answer with only a number between 0 and 1.";

std::string ElicitationPrompt(std::string_view statement);

// Cache key: normalized text, model name and the temperature rendered with
// four decimals, joined by a unit separator. Stable across processes.
std::string CacheKey(std::string_view text, std::string_view model_name,
                     double temperature);

// First decimal number in a model reply, e.g. "0.85" in "0.85\n".
std::optional<double> ParseFirstDecimal(std::string_view reply);

// A source of Conf(.) and of free-form generations.
class ConfidenceBackend {
 public:
  virtual ~ConfidenceBackend() = default;

  // `replicate` distinguishes repeated samples of the same text; 0 is the
  // canonical estimate.
  virtual ConfidenceScore Estimate(std::string_view text, double temperature,
                                   std::uint64_t replicate) = 0;
  virtual std::string Generate(std::string_view prompt, double temperature,
                               std::uint64_t attempt) = 0;
  virtual std::string model_name() const = 0;
};

// Deterministic offline oracle table.
struct MockKnowledgeBase {
  std::unordered_map<std::string, double> entries;  // normalized text -> conf
  // normalized statement -> canned model-generated counterfactuals
  std::unordered_map<std::string, std::vector<std::string>> generations;
  double default_confidence = 0.6;
  double jitter = 0.02;

  void Add(std::string_view text, double confidence);
  void AddGenerations(std::string_view statement,
                      std::vector<std::string> counterfactuals);
  std::optional<double> Lookup(std::string_view text) const;
  void Validate() const;

  // Line-delimited JSON: {"text": ..., "confidence": ...} records, optional
  // "counterfactuals": [...] on a record, and an optional settings record
  // {"default_confidence": ..., "jitter": ...}.
  static MockKnowledgeBase Load(const std::filesystem::path& path);
  static MockKnowledgeBase Parse(std::istream& in);
};

// Entry (or default) confidence plus hash(text, seed)-derived jitter in
// [-jitter, +jitter], clamped to [0, 1].
ConfidenceScore MockConfidence(std::string_view text,
                               const MockKnowledgeBase& kb, std::uint64_t seed);

class MockBackend : public ConfidenceBackend {
 public:
  MockBackend(MockKnowledgeBase kb, std::uint64_t seed,
              std::string model_name = "mock");

  ConfidenceScore Estimate(std::string_view text, double temperature,
                           std::uint64_t replicate) override;
  // Finds the "Statement:" line of the prompt and replies with a canned
  // counterfactual for it, or "NONE".
  std::string Generate(std::string_view prompt, double temperature,
                       std::uint64_t attempt) override;
  std::string model_name() const override { return model_name_; }

  const MockKnowledgeBase& knowledge_base() const { return kb_; }

 private:
  MockKnowledgeBase kb_;
  std::uint64_t seed_;
  std::string model_name_;
};

struct CacheRecord {
  double value = 0.0;
  std::string raw;
  ConfidenceMethod method = ConfidenceMethod::kVerbalized;
};

// Thread-safe key/record store with single-flight computation. With a path,
// records are appended as JSON lines and reloaded on construction.
class ResponseCache {
 public:
  explicit ResponseCache(
      std::optional<std::filesystem::path> path = std::nullopt);

  ResponseCache(const ResponseCache&) = delete;
  ResponseCache& operator=(const ResponseCache&) = delete;

  std::optional<CacheRecord> Find(const std::string& key) const;

  // Returns the stored record (second = true) or runs `compute` exactly once
  // per key even under concurrent callers. Records for which `persist`
  // returns false are handed to the waiting callers but not kept.
  std::pair<CacheRecord, bool> GetOrCompute(
      const std::string& key, const std::function<CacheRecord()>& compute,
      const std::function<bool(const CacheRecord&)>& persist = nullptr);

  std::size_t size() const;

 private:
  void Append(const std::string& key, const CacheRecord& record);

  mutable std::mutex mu_;
  std::unordered_map<std::string, std::shared_future<CacheRecord>> entries_;
  std::optional<std::filesystem::path> path_;
  std::mutex file_mu_;
};

// Result slot of a batch call; exactly one of score/error is meaningful.
struct BatchItem {
  std::optional<ConfidenceScore> score;
  std::string error;
  std::exception_ptr exception;  // original failure, for rethrowing

  bool ok() const { return score.has_value(); }
};

// Backend + cache + in-flight limiter. Shareable across threads.
class ConfidenceService {
 public:
  ConfidenceService(std::shared_ptr<ConfidenceBackend> backend,
                    BackendConfig config);

  // Cached canonical estimate at the configured temperature.
  ConfidenceScore Estimate(std::string_view text);

  // Scores in input order; duplicates within the batch are computed once
  // and later copies are marked cached. Per-item failures are reported in
  // place.
  std::vector<BatchItem> EstimateBatch(std::span<const std::string> texts);

  // Uncached sample for consistency-style estimators.
  ConfidenceScore Sample(std::string_view text, double temperature,
                         std::uint64_t replicate);

  // Cached generation at the configured generation temperature.
  std::string Generate(std::string_view prompt, std::uint64_t attempt);

  const BackendConfig& config() const { return config_; }
  std::string model_name() const { return backend_->model_name(); }
  std::size_t backend_calls() const { return backend_calls_.load(); }

 private:
  std::shared_ptr<ConfidenceBackend> backend_;
  BackendConfig config_;
  ResponseCache cache_;
  std::counting_semaphore<1024> in_flight_;
  std::atomic<std::size_t> backend_calls_{0};
};

}  // namespace cfprobe

#endif  // CFPROBE_CONFIDENCE_BACKEND_H_
