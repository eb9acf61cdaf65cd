#include "mixedspec/cli.hpp"

int main(int argc, char** argv) { return mixedspec::cli_main(argc, argv); }
