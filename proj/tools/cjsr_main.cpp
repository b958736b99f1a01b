#include "cjsr/cli.hpp"

int main(int argc, char** argv) { return cjsr::run_cli(argc, argv); }
