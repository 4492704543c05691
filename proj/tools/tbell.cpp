#include "tbell/cli.hpp"

int main(int argc, char** argv) { return tbell::run_cli(argc, argv); }
