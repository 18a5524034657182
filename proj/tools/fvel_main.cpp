// Copyright (c) the fvel toolkit contributors.
// Licensed under the Apache 2.0 License.

#include "fvel/cli.hpp"

int main(int argc, char** argv) { return fvel::run_cli(argc, argv); }
