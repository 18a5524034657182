// Copyright (c) the fvel toolkit contributors.
// Licensed under the Apache 2.0 License.

#include "fvel/errors.hpp"

#include <sstream>

namespace fvel {

namespace {

std::string join_names(const char* prefix, const std::vector<std::string>& names) {
  std::ostringstream os;
  os << prefix;
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i) os << " -> ";
    os << names[i];
  }
  return os.str();
}

}  // namespace

CyclicSessionsError::CyclicSessionsError(std::vector<std::string> cycle_)
    : Error(join_names("cyclic sessions: ", cycle_)), cycle(std::move(cycle_)) {}

CycleDetectedError::CycleDetectedError(std::vector<std::string> cycle_)
    : Error(join_names("import cycle: ", cycle_)), cycle(std::move(cycle_)) {}

}  // namespace fvel
