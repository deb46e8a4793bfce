#include "ptfhard/cli.hpp"

int main(int argc, char** argv) { return ptfhard::cli::run(argc, argv); }
