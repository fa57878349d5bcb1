#include "ldlcpkc/cli_run.hpp"

int main(int argc, char** argv) { return ldlcpkc::cli_main(argc, argv); }
