#include "taildep/cli/commands.hpp"

int main(int argc, char** argv) { return taildep::cli::run_cli(argc, argv); }
