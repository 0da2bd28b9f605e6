#include "dualproc/cli.hpp"

int main(int argc, char** argv) { return dualproc::cli_main(argc, argv); }
