#include "iqls/cli.hpp"

int main(int argc, char** argv) { return iqls::run_cli(argc, argv); }
