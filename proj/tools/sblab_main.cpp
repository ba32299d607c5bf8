#include "sblab/cli.hpp"

int main(int argc, char** argv) { return sblab::cli::run(argc, argv); }
