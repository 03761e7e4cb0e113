#include "layoutbench/cli.hpp"

int main(int argc, char** argv) { return layoutbench::cli::main_entry(argc, argv); }
