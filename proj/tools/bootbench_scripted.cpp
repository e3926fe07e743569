// Same tool, measuring against a scripted clock for reproducible reports.
#include "bootbench/cli.hpp"

int main(int argc, char** argv) { return bootbench::cli_main(argc, argv, true); }
