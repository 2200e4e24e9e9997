#include "decfit/run_cli.hpp"

int main(int argc, char** argv) { return decfit::run_cli(argc, argv); }
