// Copyright (c) the fvel toolkit contributors.
// Licensed under the Apache 2.0 License.

#pragma once

#include <string>

#include "json.hpp"

namespace fvel {

// All emitted documents use insertion-ordered objects so key order is the
// schema's, not alphabetical.
using Json = nlohmann::ordered_json;

// Canonical serialization: 2-space indent, "\n" line ends, UTF-8 passthrough,
// trailing newline. Golden files are byte-compared against this form.
std::string canonical_dump(const Json& doc);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

// Writes canonical_dump(doc), creating parent directories as needed.
void write_json_file(const std::string& path, const Json& doc);
Json read_json_file(const std::string& path);

}  // namespace fvel
