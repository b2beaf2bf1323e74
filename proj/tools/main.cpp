#include "cli.hpp"

int main(int argc, char** argv) { return dbarlab::cli::run(argc, argv); }
