#include "cli.hpp"

int main(int argc, char** argv) { return bergman::cli::run(argc, argv); }
