#include "equichain/cli.hpp"

int main(int argc, char** argv) { return equichain::cli::main(argc, argv); }
