#include "gprig/cli.hpp"

int main(int argc, char** argv) { return gprig::cli::run_cli(argc, argv); }
