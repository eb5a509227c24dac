#include "causaltree/cli.hpp"

int main(int argc, char** argv) { return causaltree::run_cli(argc, argv); }
