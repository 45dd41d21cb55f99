#include "elsmark/cli.hpp"

int main(int argc, char** argv) { return elsmark::run_cli(argc, argv); }
