#include "hyperdisk/cli_app.hpp"

int main(int argc, char** argv) { return hyperdisk::run_cli(argc, argv); }
