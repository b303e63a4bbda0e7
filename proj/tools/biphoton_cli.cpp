#include "biphoton/cli.hpp"

int main(int argc, char** argv) { return biphoton::cli::run_cli(argc, argv); }
