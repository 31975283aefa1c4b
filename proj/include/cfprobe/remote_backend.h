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

#ifndef CFPROBE_REMOTE_BACKEND_H_
#define CFPROBE_REMOTE_BACKEND_H_

#include <chrono>
#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "cfprobe/confidence_backend.h"

namespace cfprobe {

// One chat-completion call: a single user message.
struct CompletionRequest {
  std::string model;
  double temperature = 0.0;
  std::string user_message;
};

// Carries a CompletionRequest to a model and returns the first choice's
// text. Implementations throw TransportError on network or protocol
// failure.
class Transport {
 public:
  virtual ~Transport() = default;
  virtual std::string Complete(const CompletionRequest& request) = 0;
};

// JSON request body: {"model", "temperature", "messages": [{"role": "user",
// "content"}]}.
std::string BuildCompletionBody(const CompletionRequest& request);

// choices[0].message.content (or choices[0].text). Throws TransportError on
// a body that does not have that shape.
std::string ParseCompletionReply(std::string_view body);

// HTTP(S) POST to an OpenAI-compatible chat-completions endpoint.
class HttpTransport : public Transport {
 public:
  HttpTransport(std::string endpoint, std::string api_key,
                double timeout_seconds);

  std::string Complete(const CompletionRequest& request) override;

 private:
  std::string origin_;  // scheme://host[:port]
  std::string path_;
  std::string api_key_;
  double timeout_seconds_;
};

// Reads the API key from CFPROBE_API_KEY (may be absent for local servers).
std::shared_ptr<Transport> MakeHttpTransportFromEnv(const BackendConfig& config);

using Sleeper = std::function<void(std::chrono::duration<double>)>;

// Verbalized-confidence backend with retry and jittered exponential backoff
// (initial delay doubling per attempt, +/-20%).
class RemoteBackend : public ConfidenceBackend {
 public:
  RemoteBackend(BackendConfig config, std::shared_ptr<Transport> transport,
                Sleeper sleeper = nullptr);

  // Retries transport failures and unparseable replies up to
  // config.retries times. Exhausted transport failures throw
  // TransportError; exhausted unparseable replies yield 0.5 flagged as
  // unparseable.
  ConfidenceScore Estimate(std::string_view text, double temperature,
                           std::uint64_t replicate) override;
  std::string Generate(std::string_view prompt, double temperature,
                       std::uint64_t attempt) override;
  std::string model_name() const override { return config_.model_name; }

  // Delays requested so far, in seconds (for tests and diagnostics).
  std::vector<double> backoff_history() const;

 private:
  void Backoff(int attempt);

  BackendConfig config_;
  std::shared_ptr<Transport> transport_;
  Sleeper sleeper_;
  mutable std::mutex mu_;
  std::mt19937_64 rng_;
  std::vector<double> backoff_history_;
};

}  // namespace cfprobe

#endif  // CFPROBE_REMOTE_BACKEND_H_
