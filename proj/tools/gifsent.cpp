#include "gifsent/cli.hpp"

int main(int argc, char** argv) { return gifsent::run_cli(argc, argv); }
