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

#include "cfprobe/remote_backend.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <thread>
#include <utility>

#include "cfprobe/errors.h"
#include "httplib.h"
#include "json.hpp"

namespace cfprobe {
namespace {

using nlohmann::json;

void DefaultSleep(std::chrono::duration<double> d) {
  std::this_thread::sleep_for(d);
}

}  // namespace

std::string BuildCompletionBody(const CompletionRequest& request) {
  const json body = {
      {"model", request.model},
      {"temperature", request.temperature},
      {"messages", json::array({{{"role", "user"}, {"content", request.user_message}}})},
  };
  return body.dump();
}

std::string ParseCompletionReply(std::string_view body) {
  json parsed;
  try {
    parsed = json::parse(body);
  } catch (const json::parse_error& e) {
    throw TransportError(std::string("reply is not JSON: ") + e.what());
  }
  if (!parsed.contains("choices") || !parsed["choices"].is_array() ||
      parsed["choices"].empty()) {
    throw TransportError("reply has no choices");
  }
  const json& choice = parsed["choices"][0];
  if (choice.contains("message") && choice["message"].contains("content") &&
      choice["message"]["content"].is_string()) {
    return choice["message"]["content"].get<std::string>();
  }
  if (choice.contains("text") && choice["text"].is_string()) {
    return choice["text"].get<std::string>();
  }
  throw TransportError("first choice carries no text");
}

HttpTransport::HttpTransport(std::string endpoint, std::string api_key,
                             double timeout_seconds)
    : api_key_(std::move(api_key)), timeout_seconds_(timeout_seconds) {
  const std::size_t scheme = endpoint.find("://");
  if (scheme == std::string::npos) {
    throw InvalidArgument("endpoint must include a scheme: " + endpoint);
  }
  const std::size_t path = endpoint.find('/', scheme + 3);
  origin_ = endpoint.substr(0, path);
  path_ = path == std::string::npos ? "/" : endpoint.substr(path);
}

std::string HttpTransport::Complete(const CompletionRequest& request) {
  httplib::Client client(origin_);
  const auto secs = static_cast<time_t>(timeout_seconds_);
  const auto usecs = static_cast<time_t>((timeout_seconds_ - static_cast<double>(secs)) * 1e6);
  client.set_connection_timeout(secs, usecs);
  client.set_read_timeout(secs, usecs);
  client.set_write_timeout(secs, usecs);

  httplib::Headers headers;
  if (!api_key_.empty()) headers.emplace("Authorization", "Bearer " + api_key_);

  const httplib::Result res =
      client.Post(path_, headers, BuildCompletionBody(request), "application/json");
  if (!res) {
    throw TransportError("request to " + origin_ + path_ +
                         " failed: " + httplib::to_string(res.error()));
  }
  if (res->status < 200 || res->status >= 300) {
    throw TransportError("HTTP " + std::to_string(res->status) + ": " +
                         res->body.substr(0, 200));
  }
  return ParseCompletionReply(res->body);
}

std::shared_ptr<Transport> MakeHttpTransportFromEnv(const BackendConfig& config) {
  const char* key = std::getenv("CFPROBE_API_KEY");
  return std::make_shared<HttpTransport>(config.endpoint, key ? key : "",
                                         config.timeout_seconds);
}

RemoteBackend::RemoteBackend(BackendConfig config,
                             std::shared_ptr<Transport> transport, Sleeper sleeper)
    : config_(std::move(config)),
      transport_(std::move(transport)),
      sleeper_(sleeper ? std::move(sleeper) : Sleeper(DefaultSleep)),
      rng_(std::random_device{}()) {
  config_.Validate();
  if (!transport_) throw InvalidArgument("remote backend needs a transport");
}

void RemoteBackend::Backoff(int attempt) {
  double delay;
  {
    std::lock_guard lock(mu_);
    std::uniform_real_distribution<double> jitter(-0.2, 0.2);
    delay = config_.backoff_initial_seconds * std::ldexp(1.0, attempt) *
            (1.0 + jitter(rng_));
    backoff_history_.push_back(delay);
  }
  sleeper_(std::chrono::duration<double>(delay));
}

std::vector<double> RemoteBackend::backoff_history() const {
  std::lock_guard lock(mu_);
  return backoff_history_;
}

ConfidenceScore RemoteBackend::Estimate(std::string_view text, double temperature,
                                        std::uint64_t /*replicate*/) {
  const CompletionRequest request{config_.model_name, temperature,
                                  ElicitationPrompt(text)};
  const int attempts = config_.retries + 1;
  bool last_was_transport = false;
  std::string last_error;
  std::string last_reply;
  for (int a = 0; a < attempts; ++a) {
    if (a > 0) Backoff(a - 1);
    std::string reply;
    try {
      reply = transport_->Complete(request);
    } catch (const TransportError& e) {
      last_was_transport = true;
      last_error = e.what();
      continue;
    }
    last_was_transport = false;
    last_reply = reply;
    if (const std::optional<double> v = ParseFirstDecimal(reply)) {
      ConfidenceScore score;
      score.value = std::clamp(*v, 0.0, 1.0);
      score.raw = reply;
      score.method = ConfidenceMethod::kVerbalized;
      return score;
    }
  }
  if (last_was_transport) {
    throw TransportError("confidence request failed after " +
                         std::to_string(attempts) + " attempts: " + last_error);
  }
  ConfidenceScore fallback;
  fallback.value = 0.5;
  fallback.raw = "UNPARSEABLE: " + last_reply;
  fallback.method = ConfidenceMethod::kVerbalized;
  fallback.unparseable = true;
  return fallback;
}

std::string RemoteBackend::Generate(std::string_view prompt, double temperature,
                                    std::uint64_t /*attempt*/) {
  const CompletionRequest request{config_.model_name, temperature, std::string(prompt)};
  const int attempts = config_.retries + 1;
  std::string last_error;
  for (int a = 0; a < attempts; ++a) {
    if (a > 0) Backoff(a - 1);
    try {
      return transport_->Complete(request);
    } catch (const TransportError& e) {
      last_error = e.what();
    }
  }
  throw TransportError("generation request failed after " +
                       std::to_string(attempts) + " attempts: " + last_error);
}

}  // namespace cfprobe
