// Copyright (c) the fvel toolkit contributors.
// Licensed under the Apache 2.0 License.

#include "fvel/generator.hpp"

#include <cstdlib>
#include <deque>
#include <utility>
#include <vector>

#include "httplib.h"

#include "fvel/errors.hpp"

namespace fvel {

namespace {

class ScriptedGenerator final : public Generator {
 public:
  explicit ScriptedGenerator(Json script) {
    if (script.is_array()) {
      rules_.emplace_back("*", to_queue(script));
    } else if (script.is_object()) {
      for (auto& [key, value] : script.items()) rules_.emplace_back(key, to_queue(value));
    } else {
      throw GeneratorUnavailableError("scripted generator: script must be array or object");
    }
  }

  std::string generate(const std::string& instruction, const std::string& input,
                       double temperature) override {
    (void)instruction;
    (void)temperature;
    for (auto& [key, queue] : rules_) {
      if (key != "*" && input.find(key) == std::string::npos) continue;
      if (queue.empty())
        throw GeneratorUnavailableError("scripted generator exhausted for key: " + key);
      std::string reply = std::move(queue.front());
      queue.pop_front();
      return reply;
    }
    throw GeneratorUnavailableError("scripted generator has no rule matching the input");
  }

 private:
  static std::deque<std::string> to_queue(const Json& value) {
    std::deque<std::string> q;
    for (const auto& item : value) q.push_back(item.get<std::string>());
    return q;
  }

  std::vector<std::pair<std::string, std::deque<std::string>>> rules_;
};

class HttpGenerator final : public Generator {
 public:
  HttpGenerator(std::string endpoint, std::string model)
      : endpoint_(std::move(endpoint)), model_(std::move(model)) {
    if (endpoint_.empty()) {
      const char* env = std::getenv("FVEL_LLM_ENDPOINT");
      if (env) endpoint_ = env;
    }
    if (endpoint_.empty())
      throw GeneratorUnavailableError("no generator endpoint (set FVEL_LLM_ENDPOINT)");
  }

  std::string generate(const std::string& instruction, const std::string& input,
                       double temperature) override {
    Json body = {{"model", model_},
                 {"messages", Json::array({Json{{"role", "user"},
                                                {"content", instruction + "\n\n" + input}}})},
                 {"temperature", temperature}};

    auto [host, path] = split_url(endpoint_);
    httplib::Client client(host);
    client.set_read_timeout(300, 0);
    httplib::Headers headers;
    if (const char* key = std::getenv("FVEL_LLM_API_KEY"))
      headers.emplace("Authorization", std::string("Bearer ") + key);
    auto res = client.Post(path, headers, body.dump(), "application/json");
    if (!res)
      throw GeneratorUnavailableError("generator request failed: " +
                                      httplib::to_string(res.error()));
    if (res->status != 200)
      throw GeneratorUnavailableError("generator returned HTTP " +
                                      std::to_string(res->status));
    try {
      Json reply = Json::parse(res->body);
      return reply.at("choices").at(0).at("message").at("content").get<std::string>();
    } catch (const std::exception& e) {
      throw GeneratorUnavailableError(std::string("malformed generator reply: ") + e.what());
    }
  }

 private:
  // "http://host:port/v1/chat" -> ("http://host:port", "/v1/chat")
  static std::pair<std::string, std::string> split_url(const std::string& url) {
    auto scheme = url.find("://");
    auto path_start = url.find('/', scheme == std::string::npos ? 0 : scheme + 3);
    if (path_start == std::string::npos) return {url, "/"};
    return {url.substr(0, path_start), url.substr(path_start)};
  }

  std::string endpoint_;
  std::string model_;
};

}  // namespace

std::unique_ptr<Generator> make_scripted_generator(Json script) {
  return std::make_unique<ScriptedGenerator>(std::move(script));
}

std::unique_ptr<Generator> make_scripted_generator_from_file(const std::string& path) {
  return make_scripted_generator(read_json_file(path));
}

std::unique_ptr<Generator> make_http_generator(std::string endpoint, std::string model) {
  return std::make_unique<HttpGenerator>(std::move(endpoint), std::move(model));
}

std::unique_ptr<Generator> make_generator(const std::string& selector) {
  if (selector.rfind("scripted:", 0) == 0)
    return make_scripted_generator_from_file(selector.substr(9));
  if (selector == "http") return make_http_generator();
  if (selector.rfind("http:", 0) == 0 || selector.rfind("https:", 0) == 0)
    return make_http_generator(selector);
  throw GeneratorUnavailableError("unknown generator selector: " + selector);
}

}  // namespace fvel
