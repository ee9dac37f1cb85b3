#include "nframe/cli.hpp"

int main(int argc, char** argv) { return nframe::run_cli(argc, argv); }
