#include "rentscope/cli.hpp"

int main(int argc, char** argv) { return rentscope::cli::run_command(argc, argv); }
