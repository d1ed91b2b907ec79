#include "sedsim/cli.hpp"

int main(int argc, char** argv) { return sedsim::cli::run_main(argc, argv); }
