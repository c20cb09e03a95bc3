#include "plasmon/cli.hpp"

int main(int argc, char** argv) { return plasmon::cli::run(argc, argv); }
