#include "sisz/cli.hpp"

int main(int argc, char** argv) { return sisz::cli::main(argc, argv); }
