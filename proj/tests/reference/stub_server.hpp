// Local chat-completions stand-in for remote agent tests.
#pragma once

#include <atomic>
#include <functional>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include <httplib.h>
#include <json.hpp>

namespace ref {

class StubServer {
 public:
  // Returns (status, body) for the n-th request (0-based) and its parsed JSON body.
  using Handler = std::function<std::pair<int, std::string>(int, const nlohmann::json&)>;

  explicit StubServer(Handler handler) : handler_(std::move(handler)) {
    server_.Post("/v1/chat/completions", [this](const httplib::Request& req, httplib::Response& res) {
      nlohmann::json body = nlohmann::json::parse(req.body, nullptr, false);
      int n = 0;
      {
        std::lock_guard lock(mutex_);
        n = static_cast<int>(requests_.size());
        requests_.push_back(body);
        auth_.push_back(req.get_header_value("Authorization"));
      }
      const auto [status, text] = handler_(n, body);
      res.status = status;
      res.set_content(text, "application/json");
    });
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }

  ~StubServer() {
    server_.stop();
    thread_.join();
  }

  std::string base_url() const { return "http://127.0.0.1:" + std::to_string(port_) + "/v1"; }

  std::vector<nlohmann::json> requests() const {
    std::lock_guard lock(mutex_);
    return requests_;
  }
  std::vector<std::string> auth_headers() const {
    std::lock_guard lock(mutex_);
    return auth_;
  }

  static std::string reply(const std::string& content) {
    return nlohmann::json{{"choices", {{{"index", 0}, {"message", {{"role", "assistant"}, {"content", content}}}}}}}
        .dump();
  }

 private:
  Handler handler_;
  httplib::Server server_;
  int port_ = 0;
  std::thread thread_;
  mutable std::mutex mutex_;
  std::vector<nlohmann::json> requests_;
  std::vector<std::string> auth_;
};

}  // namespace ref
