// Copyright (c) the fvel toolkit contributors.
// Licensed under the Apache 2.0 License.

#pragma once

namespace fvel {

// `fvel` entry point. Exit codes: 0 success, 1 verification failure,
// 2 usage or infrastructure error.
int run_cli(int argc, char** argv);

}  // namespace fvel
