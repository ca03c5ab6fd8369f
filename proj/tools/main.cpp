// main.cpp -- risklab executable entry point.

#include "cli.hpp"

int main(int argc, char** argv) { return risklab::cli::run_cli(argc, argv); }
