#include "moralsrc/cli.hpp"

int main(int argc, char** argv) { return moralsrc::run_cli(argc, argv); }
