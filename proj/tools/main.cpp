#include "cli.hpp"

int main(int argc, char** argv) { return bps::cli::run(argc, argv); }
