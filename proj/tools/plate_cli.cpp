#include "plate/cli.hpp"

int main(int argc, char** argv) { return plate::run_cli(argc, argv); }
