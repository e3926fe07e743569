#include "bootbench/cli.hpp"

int main(int argc, char** argv) { return bootbench::cli_main(argc, argv, false); }
