#include "commands.hpp"

int main(int argc, char** argv) { return sparsec::run_cli(argc, argv); }
