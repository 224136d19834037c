#include "xdiff/cli.hpp"

int main(int argc, char** argv) { return xdiff::cli_main(argc, argv); }
