#include "cli.hpp"

int main(int argc, char** argv) { return pubench::cli_main(argc, argv); }
