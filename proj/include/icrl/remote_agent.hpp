#pragma once

#include <optional>
#include <span>
#include <string>

#include <json.hpp>

#include "icrl/protocol.hpp"

namespace icrl {

/// OpenAI-compatible chat-completions endpoint settings.
struct RemoteConfig {
  std::string model;
  // Empty: read from base_url_env, then fall back to the public OpenAI URL.
  std::string base_url;
  std::string base_url_env = "OPENAI_BASE_URL";
  std::string api_key_env = "OPENAI_API_KEY";
  double temperature = 0.6;
  double top_p = 0.95;
  std::optional<int> max_tokens;
  std::optional<std::string> reasoning_effort;
  double timeout_seconds = 120.0;
  int max_retries = 5;
  double backoff_initial_seconds = 1.0;
  double backoff_max_seconds = 30.0;

  /// Sampling used for evaluation runs.
  static RemoteConfig evaluation(std::string model);
  /// Sampling used while collecting training rollouts.
  static RemoteConfig training(std::string model);
};

nlohmann::json remote_config_to_json(const RemoteConfig& c);
RemoteConfig remote_config_from_json(const nlohmann::json& j);

nlohmann::json build_chat_request(const RemoteConfig& config,
                                  std::span<const ChatMessage> history);

/// Assistant text of choices[0]. Throws ProtocolError on anything else.
std::string parse_chat_response(std::string_view body);

/// Caps concurrent requests across every RemoteLlmAgent in the process.
void set_max_in_flight_requests(int n);

class RemoteLlmAgent final : public Agent {
 public:
  explicit RemoteLlmAgent(RemoteConfig config);
  ~RemoteLlmAgent() override;

  /// Retries connection failures, 429 and 5xx with exponential backoff;
  /// throws TransportError once retries are exhausted.
  std::string act(std::span<const ChatMessage> history) override;

  int attempts_made() const { return attempts_; }

 private:
  RemoteConfig config_;
  std::string api_key_;
  std::string scheme_host_;
  std::string path_prefix_;
  int attempts_ = 0;
};

}  // namespace icrl
