#include "autstr/cli.hpp"

int main(int argc, char** argv) { return autstr::run_cli(argc, argv); }
