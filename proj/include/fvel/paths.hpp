// Copyright (c) the fvel toolkit contributors.
// Licensed under the Apache 2.0 License.

#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>

namespace fvel {

// Project-relative paths are kept in a canonical form with a leading '/',
// '.' and '..' collapsed, matching the dataset's path keys
// (e.g. "/lib/Word_Lib/More_Word.thy"). The project root itself is "/".
std::string canon_path(std::string_view path);

// Joins and canonicalizes; `rel` may climb with "..".
std::string join_path(std::string_view base, std::string_view rel);

// "/lib/Word_Lib/More_Word.thy" -> "/lib/Word_Lib"; "/ROOT" -> "/".
std::string dir_of(std::string_view path);

// Last path component; "" for "/".
std::string base_name(std::string_view path);

// Base name with its last extension removed.
std::string stem_of(std::string_view path);

// Loads a canonical project path; nullopt when the file does not exist.
using FileLoader = std::function<std::optional<std::string>(const std::string&)>;

// Loader over a real directory tree rooted at `project_root`.
FileLoader make_fs_loader(std::string project_root);

}  // namespace fvel
