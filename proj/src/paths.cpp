// Copyright (c) the fvel toolkit contributors.
// Licensed under the Apache 2.0 License.

#include "fvel/paths.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

namespace fvel {

std::string canon_path(std::string_view path) {
  std::vector<std::string> parts;
  std::size_t i = 0;
  while (i < path.size()) {
    while (i < path.size() && path[i] == '/') ++i;
    std::size_t start = i;
    while (i < path.size() && path[i] != '/') ++i;
    std::string_view part = path.substr(start, i - start);
    if (part.empty() || part == ".") continue;
    if (part == "..") {
      if (!parts.empty()) parts.pop_back();
      continue;
    }
    parts.emplace_back(part);
  }
  std::string out = "/";
  for (std::size_t k = 0; k < parts.size(); ++k) {
    if (k) out += '/';
    out += parts[k];
  }
  return parts.empty() ? "/" : out;
}

std::string join_path(std::string_view base, std::string_view rel) {
  std::string combined(base);
  combined += '/';
  combined += rel;
  return canon_path(combined);
}

std::string dir_of(std::string_view path) {
  std::string c = canon_path(path);
  auto pos = c.find_last_of('/');
  if (pos == 0) return "/";
  return c.substr(0, pos);
}

std::string base_name(std::string_view path) {
  std::string c = canon_path(path);
  auto pos = c.find_last_of('/');
  return c.substr(pos + 1);
}

std::string stem_of(std::string_view path) {
  std::string b = base_name(path);
  auto pos = b.find_last_of('.');
  if (pos == std::string::npos || pos == 0) return b;
  return b.substr(0, pos);
}

FileLoader make_fs_loader(std::string project_root) {
  return [root = std::move(project_root)](const std::string& path) -> std::optional<std::string> {
    std::filesystem::path full = std::filesystem::path(root) / canon_path(path).substr(1);
    std::ifstream in(full, std::ios::binary);
    if (!in) return std::nullopt;
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
  };
}

}  // namespace fvel
