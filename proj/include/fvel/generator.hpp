// Copyright (c) the fvel toolkit contributors.
// Licensed under the Apache 2.0 License.

#pragma once

#include <memory>
#include <string>

#include "fvel/json_io.hpp"

namespace fvel {

// A proof/statement generator. The HTTP backend posts an OpenAI-style chat
// request; the scripted backend replays canned outputs for deterministic
// tests.
class Generator {
 public:
  virtual ~Generator() = default;
  virtual std::string generate(const std::string& instruction, const std::string& input,
                               double temperature) = 0;
};

// Script forms:
//   ["reply1", "reply2", ...]              one global queue
//   {"substr": ["r1", ...], "*": [...]}    first key contained in the input
//                                          wins, "*" is the fallback
// An exhausted queue throws GeneratorUnavailableError.
std::unique_ptr<Generator> make_scripted_generator(Json script);
std::unique_ptr<Generator> make_scripted_generator_from_file(const std::string& path);

// POSTs {model, messages, temperature} to `endpoint` (or FVEL_LLM_ENDPOINT)
// with a bearer token from FVEL_LLM_API_KEY.
std::unique_ptr<Generator> make_http_generator(std::string endpoint = "",
                                               std::string model = "fvel-llm");

// Selector forms: "scripted:<path>", "http", "http:<url>".
std::unique_ptr<Generator> make_generator(const std::string& selector);

}  // namespace fvel
