#pragma once
// Live completion transport over HTTP(S), built on cpp-httplib. Kept apart
// from llm.hpp so offline users need neither httplib nor a network stack.
//
// Request:  POST <endpoint> {"model", "prompt", "temperature", "max_tokens", "stop"}
// Response: the first of choices[0].text, completion, text, response.

#include <cstdlib>
#include <semaphore>
#include <string>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "stacksolve/llm.hpp"

namespace stacksolve::llm {

struct Endpoint {
  std::string url;  // e.g. https://api.example.com/v1/completions
  std::string api_key;
  std::string model;

  /// Reads LLM_ENDPOINT, LLM_API_KEY and LLM_MODEL.
  static Endpoint from_environment() {
    auto env = [](const char* name) {
      const char* v = std::getenv(name);
      return std::string(v ? v : "");
    };
    Endpoint e{env("LLM_ENDPOINT"), env("LLM_API_KEY"), env("LLM_MODEL")};
    if (e.url.empty()) throw TransportError("LLM_ENDPOINT is not set");
    return e;
  }
};

/// Splits "scheme://host[:port]/path" into ("scheme://host[:port]", "/path").
inline std::pair<std::string, std::string> split_url(const std::string& url) {
  const auto scheme = url.find("://");
  if (scheme == std::string::npos) throw TransportError("endpoint URL needs a scheme: " + url);
  const auto path = url.find('/', scheme + 3);
  if (path == std::string::npos) return {url, "/"};
  return {url.substr(0, path), url.substr(path)};
}

/// Extracts the completion text from a provider response body.
inline std::string completion_from_response(const std::string& body) {
  const auto j = nlohmann::json::parse(body, nullptr, false);
  if (j.is_discarded()) throw TransportError("response is not JSON");
  if (j.contains("choices") && j["choices"].is_array() && !j["choices"].empty()) {
    const auto& c = j["choices"][0];
    if (c.contains("text") && c["text"].is_string()) return c["text"].get<std::string>();
  }
  for (const char* key : {"completion", "text", "response"})
    if (j.contains(key) && j[key].is_string()) return j[key].get<std::string>();
  throw TransportError("response carries no completion text");
}

class LiveTransport : public Transport {
 public:
  explicit LiveTransport(Endpoint endpoint, std::ptrdiff_t max_in_flight = 4)
      : endpoint_(std::move(endpoint)), slots_(max_in_flight) {}

  std::string fetch(const std::string& prompt, const CompletionParams& params) override {
    nlohmann::json req{{"prompt", prompt},
                       {"temperature", params.temperature},
                       {"max_tokens", params.max_tokens},
                       {"stop", params.stop}};
    if (!endpoint_.model.empty()) req["model"] = endpoint_.model;

    const auto [base, path] = split_url(endpoint_.url);
    httplib::Headers headers;
    if (!endpoint_.api_key.empty()) headers.emplace("Authorization", "Bearer " + endpoint_.api_key);

    slots_.acquire();
    httplib::Result res;
    try {
      httplib::Client client(base);
      client.set_read_timeout(120, 0);
      res = client.Post(path, headers, req.dump(), "application/json");
    } catch (...) {
      slots_.release();
      throw;
    }
    slots_.release();

    if (!res) throw TransportError("request failed: " + httplib::to_string(res.error()));
    if (res->status == 401 || res->status == 403) throw TransportError("authentication rejected");
    if (res->status < 200 || res->status >= 300)
      throw TransportError("HTTP " + std::to_string(res->status) + ": " + res->body);
    return completion_from_response(res->body);
  }

 private:
  Endpoint endpoint_;
  std::counting_semaphore<64> slots_;
};

}  // namespace stacksolve::llm
