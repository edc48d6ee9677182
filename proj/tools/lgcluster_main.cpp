#include "lgcluster/cli.hpp"

int main(int argc, char** argv) { return lgcluster::cli::run_cli(argc, argv); }
