#include "icrl/remote_agent.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <condition_variable>
#include <cstdlib>
#include <mutex>
#include <thread>

#include <httplib.h>

#include "icrl/errors.hpp"

namespace icrl {
namespace {

constexpr std::string_view kDefaultBaseUrl = "https://api.openai.com/v1";

class RequestGate {
 public:
  void set_limit(int n) {
    std::lock_guard lock(mutex_);
    limit_ = std::max(n, 1);
    cv_.notify_all();
  }
  void acquire() {
    std::unique_lock lock(mutex_);
    cv_.wait(lock, [&] { return in_flight_ < limit_; });
    ++in_flight_;
  }
  void release() {
    std::lock_guard lock(mutex_);
    --in_flight_;
    cv_.notify_one();
  }

 private:
  std::mutex mutex_;
  std::condition_variable cv_;
  int limit_ = 8;
  int in_flight_ = 0;
};

RequestGate& gate() {
  static RequestGate g;
  return g;
}

struct GateHold {
  GateHold() { gate().acquire(); }
  ~GateHold() { gate().release(); }
  GateHold(const GateHold&) = delete;
  GateHold& operator=(const GateHold&) = delete;
};

std::string env_or(const std::string& name, std::string fallback) {
  if (name.empty()) return fallback;
  const char* v = std::getenv(name.c_str());
  return v && *v ? std::string(v) : fallback;
}

}  // namespace

RemoteConfig RemoteConfig::evaluation(std::string model) {
  RemoteConfig c;
  c.model = std::move(model);
  c.temperature = 0.6;
  c.top_p = 0.95;
  return c;
}

RemoteConfig RemoteConfig::training(std::string model) {
  RemoteConfig c;
  c.model = std::move(model);
  c.temperature = 1.0;
  c.top_p = 1.0;
  return c;
}

nlohmann::json remote_config_to_json(const RemoteConfig& c) {
  nlohmann::json j = {{"model", c.model},
                      {"base_url", c.base_url},
                      {"base_url_env", c.base_url_env},
                      {"api_key_env", c.api_key_env},
                      {"temperature", c.temperature},
                      {"top_p", c.top_p},
                      {"timeout_seconds", c.timeout_seconds},
                      {"max_retries", c.max_retries},
                      {"backoff_initial_seconds", c.backoff_initial_seconds},
                      {"backoff_max_seconds", c.backoff_max_seconds}};
  if (c.max_tokens) j["max_tokens"] = *c.max_tokens;
  if (c.reasoning_effort) j["reasoning_effort"] = *c.reasoning_effort;
  return j;
}

RemoteConfig remote_config_from_json(const nlohmann::json& j) {
  static const std::vector<std::string> kKeys = {
      "model",           "base_url",    "base_url_env", "api_key_env",
      "temperature",     "top_p",       "max_tokens",   "reasoning_effort",
      "timeout_seconds", "max_retries", "backoff_initial_seconds", "backoff_max_seconds"};
  if (!j.is_object()) throw ConfigError("remote agent settings must be an object");
  for (const auto& [key, value] : j.items()) {
    if (std::find(kKeys.begin(), kKeys.end(), key) == kKeys.end()) {
      throw ConfigError("unknown remote setting '" + key + "'");
    }
  }
  try {
    RemoteConfig c = RemoteConfig::evaluation(j.at("model").get<std::string>());
    c.base_url = j.value("base_url", c.base_url);
    c.base_url_env = j.value("base_url_env", c.base_url_env);
    c.api_key_env = j.value("api_key_env", c.api_key_env);
    c.temperature = j.value("temperature", c.temperature);
    c.top_p = j.value("top_p", c.top_p);
    if (j.contains("max_tokens")) c.max_tokens = j.at("max_tokens").get<int>();
    if (j.contains("reasoning_effort")) c.reasoning_effort = j.at("reasoning_effort").get<std::string>();
    c.timeout_seconds = j.value("timeout_seconds", c.timeout_seconds);
    c.max_retries = j.value("max_retries", c.max_retries);
    c.backoff_initial_seconds = j.value("backoff_initial_seconds", c.backoff_initial_seconds);
    c.backoff_max_seconds = j.value("backoff_max_seconds", c.backoff_max_seconds);
    if (c.model.empty()) throw ConfigError("remote model name is empty");
    if (c.max_retries < 0 || c.timeout_seconds <= 0) throw ConfigError("bad remote retry/timeout settings");
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("bad remote settings: ") + e.what());
  }
}

nlohmann::json build_chat_request(const RemoteConfig& config, std::span<const ChatMessage> history) {
  nlohmann::json messages = nlohmann::json::array();
  for (const auto& m : history) messages.push_back({{"role", to_string(m.role)}, {"content", m.content}});
  nlohmann::json j = {{"model", config.model},
                      {"messages", messages},
                      {"temperature", config.temperature},
                      {"top_p", config.top_p}};
  if (config.max_tokens) j["max_tokens"] = *config.max_tokens;
  if (config.reasoning_effort) j["reasoning_effort"] = *config.reasoning_effort;
  return j;
}

std::string parse_chat_response(std::string_view body) {
  const auto j = nlohmann::json::parse(body, nullptr, false);
  if (j.is_discarded()) throw ProtocolError("response is not JSON");
  if (!j.is_object() || !j.contains("choices") || !j["choices"].is_array() || j["choices"].empty()) {
    throw ProtocolError("response has no choices");
  }
  const auto& choice = j["choices"][0];
  if (!choice.contains("message") || !choice["message"].contains("content") ||
      !choice["message"]["content"].is_string()) {
    throw ProtocolError("first choice has no text content");
  }
  return choice["message"]["content"].get<std::string>();
}

void set_max_in_flight_requests(int n) { gate().set_limit(n); }

RemoteLlmAgent::RemoteLlmAgent(RemoteConfig config) : config_(std::move(config)) {
  std::string url = config_.base_url.empty() ? env_or(config_.base_url_env, std::string(kDefaultBaseUrl))
                                             : config_.base_url;
  while (!url.empty() && url.back() == '/') url.pop_back();
  const auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos) throw ConfigError("base url '" + url + "' has no scheme");
  const auto path_start = url.find('/', scheme_end + 3);
  scheme_host_ = url.substr(0, path_start);
  path_prefix_ = path_start == std::string::npos ? "" : url.substr(path_start);
#ifndef CPPHTTPLIB_OPENSSL_SUPPORT
  if (url.starts_with("https://")) throw ConfigError("this build has no TLS support; use an http:// endpoint");
#endif
  api_key_ = env_or(config_.api_key_env, "");
}

RemoteLlmAgent::~RemoteLlmAgent() = default;

std::string RemoteLlmAgent::act(std::span<const ChatMessage> history) {
  const std::string body = build_chat_request(config_, history).dump();
  httplib::Client client(scheme_host_);
  const auto timeout = std::chrono::duration<double>(config_.timeout_seconds);
  client.set_connection_timeout(std::chrono::duration_cast<std::chrono::microseconds>(timeout));
  client.set_read_timeout(std::chrono::duration_cast<std::chrono::microseconds>(timeout));
  client.set_write_timeout(std::chrono::duration_cast<std::chrono::microseconds>(timeout));
  httplib::Headers headers;
  if (!api_key_.empty()) headers.emplace("Authorization", "Bearer " + api_key_);

  std::string last_error;
  for (int attempt = 0; attempt <= config_.max_retries; ++attempt) {
    if (attempt > 0) {
      const double wait = std::min(config_.backoff_initial_seconds * std::pow(2.0, attempt - 1),
                                   config_.backoff_max_seconds);
      std::this_thread::sleep_for(std::chrono::duration<double>(wait));
    }
    ++attempts_;
    httplib::Result res;
    {
      GateHold hold;
      res = client.Post(path_prefix_ + "/chat/completions", headers, body, "application/json");
    }
    if (!res) {
      last_error = "connection failed: " + httplib::to_string(res.error());
      continue;
    }
    if (res->status == 200) return parse_chat_response(res->body);
    last_error = "HTTP " + std::to_string(res->status);
    if (res->status != 429 && res->status < 500) {
      throw TransportError("endpoint rejected the request with " + last_error);
    }
  }
  throw TransportError("giving up after " + std::to_string(config_.max_retries + 1) + " attempts (" +
                       last_error + ")");
}

}  // namespace icrl
