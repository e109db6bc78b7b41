#include "oscenv_cli/commands.hpp"

int main(int argc, char** argv) { return oscenv::cli::run_cli(argc, argv); }
