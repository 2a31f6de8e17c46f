#include "cli.hpp"

int main(int argc, char** argv) { return snaplab::cli::run(argc, argv); }
