#include "gelswell/cli.hpp"

int main(int argc, char** argv) { return gelswell::cli::main(argc, argv); }
