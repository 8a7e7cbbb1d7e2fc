#pragma once

// sparsec subcommands. Exit codes: 0 ok, 2 input error, 3 cap exceeded,
// 4 verification failure.

namespace sparsec {

int run_cli(int argc, char** argv);

}  // namespace sparsec
